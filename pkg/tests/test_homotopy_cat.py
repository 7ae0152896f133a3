import pytest

from shiftilt.endo import end_algebra
from shiftilt.fixtures import (auslander_a3, example_gamma_a5, fixture_universe,
                               generator_cogenerator, linear_a, module_universe, mt_gamma,
                               mt_triples, square)
from shiftilt.homological import ext_dim, min_resolution
from shiftilt.homotopy_cat import (BoundedComplex, ChainMap, ComplexError, HomK, build_Ek_lower,
                                   build_Ek_upper, cartan_matches, end_algebra_Kb,
                                   functor_formulas, hom_upto_homotopy, homotopy_shift_dim,
                                   identity_chain_map, ModelComplex, stalk,
                                   SummandComplex)
from shiftilt.repmod import ModuleMap, hom_dim, projective, simple
from shiftilt.tilting import ShiftContext

A2 = linear_a(2)


def projective_complex(m):
    """The minimal projective resolution of ``m`` as a complex in degrees ``<= 0``."""
    res = min_resolution(m, "proj", 8)
    assert res.complete
    terms = {-i: t for i, t in enumerate(res.terms)}
    diffs = {-(i + 1): res.differential(i) for i in range(len(res.terms) - 1)}
    return BoundedComplex(terms, diffs)


def test_stalk_hom_is_module_hom():
    g = square()
    for m in module_universe(g):
        for n in module_universe(g):
            assert HomK(stalk(m), stalk(n)).dim == hom_dim(m, n)


def test_contractible_complex_has_no_endomorphisms():
    p = projective(A2, 0)
    cone = BoundedComplex({0: p, 1: p}, {0: ModuleMap.identity(p)})
    assert HomK(cone, cone).dim == 0
    with pytest.raises(ValueError):
        end_algebra_Kb(ModelComplex(A2, p, 1, "upper", [SummandComplex(cone, p, False)]))


def test_non_complex_rejected():
    p = projective(A2, 0)
    ident = ModuleMap.identity(p)
    with pytest.raises(ComplexError):
        BoundedComplex({0: p, 1: p, 2: p}, {0: ident, 1: ident})


def test_shift_moves_degrees_and_signs():
    x = projective_complex(simple(A2, 0))
    y = x.shift(1)
    assert y.degrees == [d - 1 for d in x.degrees]
    assert y.squares_to_zero()
    d_old = x.diff(-1)
    d_new = y.diff(-2)
    assert (d_new + d_old).is_zero()


def test_identity_is_a_chain_map():
    x = projective_complex(simple(example_gamma_a5(), 0))
    ident = identity_chain_map(x)
    assert ident.is_chain_map()
    assert ident.compose(ident).is_chain_map()
    h = HomK(x, x)
    assert h.dim == 1
    assert h.class_coords(ident) != [0]


def test_resolution_complex_endomorphisms_match_module():
    # K^b(proj) is fully faithful on resolutions: Hom_K(P_M, P_N) = Hom(M, N)
    g = example_gamma_a5()
    mods = module_universe(g)
    cxs = [projective_complex(m) for m in mods]
    for m, x in zip(mods, cxs):
        for n, y in zip(mods, cxs):
            dim, reps = hom_upto_homotopy(x, y)
            assert dim == hom_dim(m, n)
            assert all(f.is_chain_map() for f in reps)


@pytest.mark.parametrize("name", ["A5/rad3", "square", "Auslander A3", "A3", "rad2 Gamma n=3"])
def test_hom_into_shifted_stalks_is_ext(name):
    g = fixture_universe()[name]
    mods = module_universe(g)
    for m in mods:
        x = projective_complex(m)
        for n in mods:
            for k in range(0, 4):
                assert homotopy_shift_dim(x, n, k) == ext_dim(m, n, k)


def test_chain_map_check_detects_failure():
    p0 = projective(A2, 0)
    x = projective_complex(simple(A2, 0))      # P(2) -> P(1)
    # the identity of P(1) in degree 0 does not kill the image of P(2)
    assert not ChainMap(x, stalk(p0), {0: ModuleMap.identity(p0)}).is_chain_map()
    # the cover P(1) -> S(1) does
    (cover,) = HomK(stalk(p0), stalk(simple(A2, 0))).basis
    assert ChainMap(x, stalk(simple(A2, 0)), {0: cover.components[0]}).is_chain_map()


# ---------------------------------------------------------------------------
# model complexes


def test_models_at_level_zero_are_module_endomorphism_algebras():
    for label, (a, e) in mt_triples().items():
        gamma = end_algebra(e)
        for model in (build_Ek_upper(a, e, 0), build_Ek_lower(a, e, 0)):
            alg = end_algebra_Kb(model)
            assert alg.dim == gamma.dim
            assert alg.check_associative() and alg.check_idempotents()


@pytest.mark.parametrize("key", [(3, 0), (3, 2)], ids=["A3", "A3/rad2"])
def test_models_match_shifted_algebras(key):
    a = linear_a(*key)
    e = generator_cogenerator(a)
    ctx = ShiftContext(mt_gamma(key))
    for k in range(0, ctx.d + 1):
        lower = end_algebra_Kb(build_Ek_lower(a, e, k))
        upper = end_algebra_Kb(build_Ek_upper(a, e, k))
        assert lower.dim == ctx.shifted_algebra(k).dim
        assert upper.dim == ctx.coshifted_algebra(k).dim
        assert cartan_matches(lower, ctx.shifted_algebra(k))
        assert cartan_matches(upper, ctx.coshifted_algebra(k))
        assert len(lower.meta["tag"]) == len(ctx.pi_vertices)


def test_model_tags_are_the_stalks():
    a = linear_a(3)
    model = build_Ek_upper(a, generator_cogenerator(a), 1)
    assert [model.summands[i].module for i in model.tag] == [None] * a.n_vertices
    assert all(s.complex.squares_to_zero() for s in model.summands)


@pytest.mark.parametrize("label", sorted(mt_triples()))
def test_three_forms_of_c_agree(label):
    a, e = mt_triples()[label]
    for k in (1, 2):
        for model in (build_Ek_lower(a, e, k), build_Ek_upper(a, e, k)):
            for m in module_universe(a):
                for i in range(len(model.summands)):
                    vals = functor_formulas(model, m, i)
                    assert vals.c_agree
                    if vals.r is not None:
                        assert vals.c_rank <= vals.r
                    if vals.ell is not None:
                        assert vals.c_rank <= vals.ell


def test_cartan_matches_on_isomorphic_algebras():
    g = auslander_a3()
    assert cartan_matches(g, g)
    assert not cartan_matches(g, square())
