import pytest
import sympy
from hypothesis import given, strategies as st

from shiftilt.exactlinalg import FieldSpec, rank
from shiftilt.fixtures import (example_gamma_a5, fixture_universe, linear_a, module_universe,
                               square)
from shiftilt.quiver_algebra import path_algebra
from shiftilt.repmod import (DecompositionInconclusive, ModuleMap, Representation, add_equal,
                             cokernel, coregular, decompose, direct_sum, dual, hom_dim,
                             hom_space, image, indecomposables, injective, is_isomorphic,
                             kernel, nakayama, nakayama_inv, opposite, projective, radical,
                             regular, simple, socle, top, zero_module)

A2 = linear_a(2)


def oracle_hom_dim(m: Representation, n: Representation) -> int:
    """Solve the naturality equations with sympy, independently of hom_space."""
    a = m.algebra
    offsets, total = [], 0
    for v in range(a.n_vertices):
        offsets.append(total)
        total += m.dims[v] * n.dims[v]
    if total == 0:
        return 0
    eqs = []

    def var(v, i, j):                     # entry (i, j) of the block X_v: n_v x m_v
        return offsets[v] + i * m.dims[v] + j

    for arr, ma, na in zip(a.arrows, m.action, n.action):
        s, t = arr.source, arr.target
        for i in range(n.dims[t]):
            for j in range(m.dims[s]):
                row = [0] * total
                for k in range(n.dims[s]):          # (N_a X_s)_{ij}
                    if na[i, k]:
                        row[var(s, k, j)] += sympy.Rational(str(na[i, k]))
                for k in range(m.dims[t]):          # (X_t M_a)_{ij}
                    if ma[k, j]:
                        row[var(t, i, k)] -= sympy.Rational(str(ma[k, j]))
                eqs.append(row)
    if not eqs:
        return total
    return total - sympy.Matrix(eqs).rank()


@st.composite
def presented_modules(draw, algebra):
    """Cokernel of a random map between sums of indecomposable projectives."""
    n = algebra.n_vertices
    tops = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=3))
    rels = draw(st.lists(st.integers(0, n - 1), max_size=3))
    p0 = direct_sum([projective(algebra, v) for v in tops])[0]
    if not rels:
        return p0
    p1 = direct_sum([projective(algebra, v) for v in rels])[0]
    hs = hom_space(p1, p0)
    if hs.dim == 0:
        return p0
    coeffs = draw(st.lists(st.integers(-2, 2), min_size=hs.dim, max_size=hs.dim))
    return cokernel(hs.combine(coeffs))[0]


# ---------------------------------------------------------------------------
# standard modules


def test_linear_a2_standard_modules():
    assert projective(A2, 0).dims == (1, 1)
    assert projective(A2, 1).dims == (0, 1)
    assert injective(A2, 0).dims == (1, 0)
    assert is_isomorphic(injective(A2, 1), projective(A2, 0))


def test_square_projective_injective():
    g = square()
    p1 = projective(g, 0)
    assert p1.dims == (1, 1, 1, 1)
    assert is_isomorphic(p1, injective(g, 3))


def test_semisimple_point():
    pt = path_algebra([1], [])
    assert projective(pt, 0).dims == injective(pt, 0).dims == simple(pt, 0).dims == (1,)


def test_hom_examples():
    assert hom_dim(simple(A2, 0), simple(A2, 1)) == 0
    assert hom_dim(projective(square(), 0), projective(square(), 0)) == 1


def test_top_socle_radical():
    g = example_gamma_a5()
    for v in range(g.n_vertices):
        assert is_isomorphic(top(projective(g, v))[0], simple(g, v))
        assert is_isomorphic(socle(injective(g, v))[0], simple(g, v))
    three_four = cokernel(socle(projective(g, 2))[1])[0]
    assert three_four.dims == (0, 0, 1, 1, 0)
    assert is_isomorphic(top(three_four)[0], simple(g, 2))
    rad, _ = radical(projective(g, 0))
    assert rad.dims == (0, 1, 1, 0, 0)


def test_duality_examples():
    g = example_gamma_a5()
    op = opposite(g)
    for v in range(g.n_vertices):
        assert is_isomorphic(dual(projective(g, v)), injective(op, v))
        assert is_isomorphic(dual(simple(g, v)), simple(op, v))
    dg = indecomposables(dual(regular(g)))
    assert add_equal(direct_sum(dg)[0], coregular(op))


def test_nakayama_examples():
    g = square()
    assert nakayama(projective(g, 0)).dims == (1, 0, 0, 0)
    assert is_isomorphic(nakayama(regular(g)), coregular(g))
    d = fixture_universe()["dual numbers"]
    assert is_isomorphic(nakayama(projective(d, 0)), projective(d, 0))


def test_kernel_image_cokernel_examples():
    p = projective(A2, 0)
    k, _ = kernel(ModuleMap.identity(p))
    assert k.total_dim == 0
    c, _ = cokernel(ModuleMap.zero(zero_module(A2), p))
    assert is_isomorphic(c, p)
    # the top map P(1) -> S(1) + S(2) has per-vertex ranks (1, 0)
    semisimple = direct_sum([simple(A2, 0), simple(A2, 1)])[0]
    (f,) = hom_space(p, semisimple).basis
    assert [rank(b) for b in f.blocks] == [1, 0]
    im, _, _ = image(f)
    assert im.dims == (1, 0)


def test_decompose_examples():
    g = square()
    d = decompose(regular(g))
    assert sorted(d.multiplicities) == [1, 1, 1, 1]
    assert d.check()
    assert len(decompose(simple(g, 0))) == 1
    pp = direct_sum([projective(g, 0), projective(g, 0)])[0]
    dd = decompose(pp)
    assert dd.multiplicities == [2] and dd.check()


def test_isomorphism_examples():
    g = square()
    p1 = projective(g, 0)
    assert not is_isomorphic(p1, direct_sum([p1, p1])[0])


def test_decomposition_over_small_prime_field():
    a = path_algebra([1, 2], [("a", 1, 2), ("b", 1, 2)], field=FieldSpec(2))
    parts = indecomposables(regular(a))
    assert sorted(m.dims for m in parts) == [(0, 1), (1, 2)]


def test_decomposition_inconclusive_is_an_error_type():
    assert issubclass(DecompositionInconclusive, Exception)


# ---------------------------------------------------------------------------
# invariants on the fixture universe


@pytest.mark.parametrize("name", sorted(fixture_universe()))
def test_hom_dimension_identities(name):
    g = fixture_universe()[name]
    for m in module_universe(g):
        for v in range(g.n_vertices):
            assert hom_dim(projective(g, v), m) == m.dims[v]
            assert hom_dim(m, injective(g, v)) == m.dims[v]


@pytest.mark.parametrize("name", sorted(fixture_universe()))
def test_double_dual_and_nakayama(name):
    g = fixture_universe()[name]
    for m in module_universe(g):
        assert is_isomorphic(dual(dual(m)), m)
    for v in range(g.n_vertices):
        assert is_isomorphic(nakayama(projective(g, v)), injective(g, v))
        assert is_isomorphic(nakayama_inv(injective(g, v)), projective(g, v))
        assert is_isomorphic(nakayama_inv(nakayama(projective(g, v))), projective(g, v))


@pytest.mark.parametrize("name", sorted(fixture_universe()))
def test_decomposition_recomposes(name):
    g = fixture_universe()[name]
    for m in (regular(g), coregular(g)):
        assert decompose(m).check()


# ---------------------------------------------------------------------------
# random presented modules


@pytest.mark.parametrize("name", ["A5/rad3", "square", "Auslander A3", "cyclic Nakayama"])
@given(data=st.data())
def test_hom_dim_matches_oracle(name, data):
    g = fixture_universe()[name]
    m = data.draw(presented_modules(g))
    n = data.draw(presented_modules(g))
    assert hom_dim(m, n) == oracle_hom_dim(m, n)


@given(data=st.data())
def test_exact_sequences_are_additive(data):
    g = example_gamma_a5()
    m = data.draw(presented_modules(g))
    n = data.draw(presented_modules(g))
    hs = hom_space(m, n)
    if hs.dim == 0:
        return
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=hs.dim, max_size=hs.dim))
    f = hs.combine(coeffs)
    assert f.is_natural()
    k, _ = kernel(f)
    im, _, _ = image(f)
    c, _ = cokernel(f)
    for v in range(g.n_vertices):
        assert k.dims[v] + im.dims[v] == m.dims[v]
        assert im.dims[v] + c.dims[v] == n.dims[v]


@given(data=st.data())
def test_decomposition_of_random_modules(data):
    g = square()
    m = data.draw(presented_modules(g))
    d = decompose(m)
    assert d.check()
    assert sum(x.total_dim * k for x, k in d) == m.total_dim
