import pytest
from hypothesis import given, settings

from shiftilt.endo import (cartan_bijections, dual_hom_functor, end_algebra,
                          end_algebra_of_summands, hom_functor, nilpotency_index,
                          present_by_quiver, quiver_isomorphic)
from shiftilt.fixtures import (auslander_a3, example_gamma_a5, fixture_universe, linear_a,
                               module_universe, square)
from shiftilt.quiver_algebra import build_algebra
from shiftilt.repmod import (coregular, direct_sum, hom_dim, indecomposables, is_isomorphic,
                             opposite, regular)
from shiftilt.tilting import ShiftContext
from test_quiver_algebra import acyclic_presentations


def test_end_of_regular_and_coregular_recovers_algebra():
    for g in (square(), example_gamma_a5(), auslander_a3()):
        assert quiver_isomorphic(end_algebra(regular(g)), g)
        assert quiver_isomorphic(end_algebra(coregular(g)), g)


def test_end_dimension_is_sum_of_homs():
    g = example_gamma_a5()
    summands = ShiftContext(g).shifted_summands(1)
    b = end_algebra_of_summands(summands)
    assert b.dim == sum(hom_dim(x, y) for x in summands for y in summands)
    assert b.check_associative() and b.check_idempotents()


def test_end_of_a_single_summand_is_local():
    b = end_algebra(regular(linear_a(1)))
    assert b.n_vertices == 1 and b.dim == 1


def test_end_of_empty_list_rejected():
    with pytest.raises(ValueError):
        end_algebra_of_summands([])


@pytest.mark.parametrize("name", sorted(fixture_universe()))
def test_hom_functor_sends_t_to_regular(name):
    g = fixture_universe()[name]
    ctx = ShiftContext(g)
    for k in (0, 1) if ctx.d != 0 else (0,):
        b = ctx.shifted_algebra(k)
        t = ctx.shifted_summands(k)
        tm = direct_sum(t)[0] if len(t) > 1 else t[0]
        assert is_isomorphic(hom_functor(b, tm), regular(b))
        assert is_isomorphic(dual_hom_functor(b, tm), coregular(b))


def test_hom_functor_dimension_vectors():
    g = example_gamma_a5()
    ctx = ShiftContext(g)
    b = ctx.shifted_algebra(1)
    for x in module_universe(g):
        assert list(hom_functor(b, x).dims) == [hom_dim(t, x) for t in ctx.shifted_summands(1)]
        assert list(dual_hom_functor(b, x).dims) == [hom_dim(x, t)
                                                     for t in ctx.shifted_summands(1)]


def test_nilpotency_index():
    assert nilpotency_index(example_gamma_a5()) == 3
    assert nilpotency_index(square()) == 3
    assert nilpotency_index(linear_a(1)) == 1


@pytest.mark.parametrize("name", sorted(fixture_universe()))
def test_presentation_rebuilds(name):
    g = fixture_universe()[name]
    pres = present_by_quiver(g)
    rebuilt = pres.rebuild()
    assert rebuilt.dim == g.dim
    assert quiver_isomorphic(rebuilt, g)
    assert all(d >= 2 for d in pres.relation_degrees)


def test_presentation_of_shifted_algebras_rebuilds():
    ctx = ShiftContext(auslander_a3())
    for k in range(3):
        b = ctx.shifted_algebra(k)
        assert present_by_quiver(b).rebuild().dim == b.dim


def test_quiver_isomorphism_distinguishes():
    assert not quiver_isomorphic(linear_a(3), linear_a(3, 2))
    assert not quiver_isomorphic(linear_a(3), linear_a(4))
    assert quiver_isomorphic(square(), opposite(square()))
    assert not quiver_isomorphic(example_gamma_a5(), opposite(auslander_a3()))


def test_quiver_isomorphism_respects_fixed_vertices():
    a = linear_a(3)
    assert quiver_isomorphic(a, a, fixed={0: 0})
    assert not quiver_isomorphic(a, a, fixed={0: 2})


def test_cartan_bijections_with_tags():
    c = [[1, 1], [0, 1]]
    assert list(cartan_bijections(c, c)) == [[0, 1]]
    assert list(cartan_bijections(c, c, tag_p=[0], tag_q=[1])) == []


@settings(max_examples=25)
@given(acyclic_presentations())
def test_random_presentations_roundtrip(p):
    a = build_algebra(p)
    rebuilt = present_by_quiver(a).rebuild()
    assert rebuilt.dim == a.dim
    assert quiver_isomorphic(rebuilt, a)


@settings(max_examples=15)
@given(acyclic_presentations())
def test_random_end_of_regular(p):
    a = build_algebra(p)
    assert quiver_isomorphic(end_algebra(regular(a)), a)
    assert len(indecomposables(regular(a))) == a.n_vertices
