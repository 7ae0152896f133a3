import pytest

from shiftilt.endo import quiver_isomorphic
from shiftilt.fixtures import (auslander_a3, example_gamma_a5, fixture_universe, linear_a,
                               module_universe, square)
from shiftilt.homological import domdim
from shiftilt.recollement import (PreconditionViolated, RecollementContext, direct_intext_check,
                                  verify_intext_theorem)
from shiftilt.repmod import (coregular, hom_dim, injective, is_isomorphic, projective, regular,
                             simple)
from shiftilt.tilting import ShiftContext


def contexts():
    """Idempotent recollements ``(Γ, e)`` with ``e`` the projective-injective vertices."""
    out = {}
    for name, g in fixture_universe().items():
        ctx = ShiftContext(g)
        if ctx.pi_vertices:
            out[name] = RecollementContext(g, ctx.pi_vertices)
    return out


CONTEXTS = contexts()


def test_square_corner():
    rc = CONTEXTS["square"]
    assert rc.corner.dim == 1 and rc.others == [1, 2, 3]
    assert rc.restrict(regular(square())).dims == (1,)


def test_corner_of_gamma_a5_is_linear_a3():
    # e P(1), e P(2), e P(3) have dimensions 3, 2, 1
    rc = CONTEXTS["A5/rad3"]
    assert rc.corner.dim == 6
    assert quiver_isomorphic(rc.corner, linear_a(3))


@pytest.mark.parametrize("name", sorted(CONTEXTS))
def test_functors_on_projectives_and_injectives(name):
    rc = CONTEXTS[name]
    b = rc.b
    a = rc.corner
    for pos, v in enumerate(rc.vertices):
        # l(eBe e_v) = Be_v and r(D(e_v eBe)) = D(e_v B)
        assert is_isomorphic(rc.ell(projective(a, pos)), projective(b, v))
        assert is_isomorphic(rc.r_functor(injective(a, pos)), injective(b, v))


@pytest.mark.parametrize("name", sorted(CONTEXTS))
def test_adjunctions_and_restriction(name):
    rc = CONTEXTS[name]
    b_mods = module_universe(rc.b)
    for m in module_universe(rc.corner):
        ell, r, c = rc.ell(m), rc.r_functor(m), rc.c_functor(m)
        for f in (ell, r, c):
            assert is_isomorphic(rc.restrict(f), m)
        for n in b_mods:
            en = rc.restrict(n)
            assert hom_dim(ell, n) == hom_dim(m, en)
            assert hom_dim(n, r) == hom_dim(en, m)


@pytest.mark.parametrize("name", sorted(CONTEXTS))
def test_quotient_functors(name):
    rc = CONTEXTS[name]
    for m in module_universe(rc.b):
        q, p = rc.q_functor(m), rc.p_functor(m)
        assert all(q.dims[v] == 0 for v in rc.vertices)
        assert all(p.dims[v] == 0 for v in rc.vertices)
        assert q.total_dim <= m.total_dim and p.total_dim <= m.total_dim
        if rc.others:
            # i q and i p round-trip through the quotient algebra
            assert is_isomorphic(rc.i_functor(rc.as_quotient_module(q)), q)
            assert is_isomorphic(rc.i_functor(rc.as_quotient_module(p)), p)
            qa = rc.quotient_algebra
            for n in module_universe(qa):
                assert hom_dim(q, rc.i_functor(n)) == hom_dim(m, rc.i_functor(n))
                assert hom_dim(rc.i_functor(n), p) == hom_dim(rc.i_functor(n), m)


def test_simples_outside_the_idempotent():
    rc = CONTEXTS["square"]
    g = rc.b
    for v in rc.others:
        s = simple(g, v)
        assert is_isomorphic(rc.q_functor(s), s)
        assert is_isomorphic(rc.p_functor(s), s)
        assert rc.ttf_membership(s) == (False, True, False)
    assert rc.q_functor(projective(g, 0)).total_dim == 0


@pytest.mark.parametrize("name", sorted(CONTEXTS))
def test_quotient_algebra_dimension(name):
    rc = CONTEXTS[name]
    if not rc.others:
        return
    b = rc.b
    # dim B/BeB = dim B - dim BeB, and BeB is spanned by the trace of Be in B
    trace = sum(rc.q_functor(projective(b, v)).total_dim for v in range(b.n_vertices))
    assert rc.quotient_algebra.dim == trace


@pytest.mark.parametrize("name", sorted(CONTEXTS))
def test_intermediate_extension_lies_in_x_and_z(name):
    rc = CONTEXTS[name]
    for m in module_universe(rc.corner):
        in_x, in_y, in_z = rc.ttf_membership(rc.c_functor(m))
        assert in_x and in_z and (not in_y or m.total_dim == 0)


def test_intext_theorem():
    g = example_gamma_a5()
    ctx = ShiftContext(g)
    for side in ("shifted", "coshifted"):
        rep = verify_intext_theorem(g, 1, side, ctx=ctx)
        assert rep.passed
    assert verify_intext_theorem(auslander_a3(), 1).passed


def test_intext_precondition():
    with pytest.raises(PreconditionViolated):
        verify_intext_theorem(square(), 1)
    with pytest.raises(PreconditionViolated):
        verify_intext_theorem(example_gamma_a5(), 2)
    with pytest.raises(ValueError):
        verify_intext_theorem(example_gamma_a5(), 1, "sideways")


def test_intext_fails_at_the_boundary_for_the_square():
    assert domdim(square()) == 1
    assert direct_intext_check(square(), 1) is False


def test_restriction_of_regular_and_coregular():
    g = linear_a(3)
    rc = RecollementContext(g, [0])
    assert rc.restrict(regular(g)).dims == (1,)
    assert rc.restrict(coregular(g)).dims == (3,)
