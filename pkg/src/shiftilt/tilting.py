"""Shifted and coshifted modules, tilting certificates and related checks.

For an algebra ``Γ`` of dominant dimension ``d`` with maximal
projective-injective summand ``Π``, the k-shifted module is
``T_k = Π ⊕ Ω^{-k} Γ`` and the k-coshifted module is ``C^k = Π ⊕ Ω^k DΓ``
(both made basic), for ``0 <= k <= d``.  Summand lists always start with
the summands of ``Π`` so that the corresponding idempotent of the
endomorphism algebra is the first block of vertices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .endo import end_algebra_of_summands
from .exactlinalg import Subspace
from .homological import (AtLeast, DEFAULT_CAP, INF, cosyzygy, domdim, ext_dim, gldim,
                          injective_dimension_of_algebra, injective_projective_vertices,
                          is_injective, is_projective, pdim, projective_injective_vertices,
                          syzygy, tau, tau_inv)
from .quiver_algebra import FDAlgebra
from .repmod import (ModuleMap, Representation, basic_summands, cokernel, coregular, direct_sum,
                     dual, hom_space, in_add, indecomposables, injective, iso_index,
                     projective, regular, zero_module)


class DomdimTooSmall(ValueError):
    pass


def value_le(x, y) -> Optional[bool]:
    """``x <= y`` for dimension values; ``None`` when a lower bound makes it undecidable."""
    if isinstance(x, AtLeast):
        if not isinstance(y, AtLeast) and y < x.value:
            return False
        return None
    if isinstance(y, AtLeast):
        return True if x <= y.value else None
    return x <= y


def _all_true(values) -> Optional[bool]:
    values = list(values)
    if any(v is False for v in values):
        return False
    if any(v is None for v in values):
        return None
    return True


# ---------------------------------------------------------------------------
# shifted and coshifted modules


def max_proj_inj(gamma: FDAlgebra) -> Representation:
    """Basic sum of the indecomposable projective-injective modules (possibly zero)."""
    mods = [projective(gamma, v) for v in projective_injective_vertices(gamma)]
    if not mods:
        return zero_module(gamma)
    return mods[0] if len(mods) == 1 else direct_sum(mods)[0]


class ShiftContext:
    """An algebra with its dominant dimension and projective-injective part."""

    def __init__(self, gamma: FDAlgebra, cap: int = DEFAULT_CAP):
        self.gamma = gamma
        self.cap = cap
        self.pi_vertices = projective_injective_vertices(gamma)
        self.pi_summands = [projective(gamma, v) for v in self.pi_vertices]
        self.pi = max_proj_inj(gamma)
        self.d = domdim(gamma, cap)
        self._shifted: dict = {}
        self._coshifted: dict = {}
        self._algebras: dict = {}

    def require(self, k: int):
        if k < 0:
            raise ValueError("level must be non-negative")
        ok = value_le(k, self.d)
        if not ok:
            raise DomdimTooSmall(f"dominant dimension {self.d} does not allow level {k}")

    def shifted_summands(self, k: int) -> list:
        self.require(k)
        if k not in self._shifted:
            rest = [cosyzygy(projective(self.gamma, v), k)
                    for v in range(self.gamma.n_vertices) if v not in self.pi_vertices]
            self._shifted[k] = basic_summands(self.pi_summands + rest)
        return self._shifted[k]

    def coshifted_summands(self, k: int) -> list:
        self.require(k)
        if k not in self._coshifted:
            inj_pi = set(injective_projective_vertices(self.gamma))
            rest = [syzygy(injective(self.gamma, v), k)
                    for v in range(self.gamma.n_vertices) if v not in inj_pi]
            self._coshifted[k] = basic_summands(self.pi_summands + rest)
        return self._coshifted[k]

    def shifted_algebra(self, k: int) -> FDAlgebra:
        key = ("shifted", k)
        if key not in self._algebras:
            self._algebras[key] = _tagged_end(self.shifted_summands(k), len(self.pi_summands),
                                              f"B_{k}")
        return self._algebras[key]

    def coshifted_algebra(self, k: int) -> FDAlgebra:
        key = ("coshifted", k)
        if key not in self._algebras:
            self._algebras[key] = _tagged_end(self.coshifted_summands(k), len(self.pi_summands),
                                              f"B^{k}")
        return self._algebras[key]


def _tagged_end(summands, n_tagged, name) -> FDAlgebra:
    alg = end_algebra_of_summands(summands, name=name)
    alg.meta["tag"] = list(range(n_tagged))
    return alg


def _sum(summands, algebra) -> Representation:
    if not summands:
        return zero_module(algebra)
    if len(summands) == 1:
        return summands[0]
    return direct_sum(summands)[0]


def shifted_module(ctx: ShiftContext, k: int) -> Representation:
    return _sum(ctx.shifted_summands(k), ctx.gamma)


def coshifted_module(ctx: ShiftContext, k: int) -> Representation:
    return _sum(ctx.coshifted_summands(k), ctx.gamma)


def shifted_algebra(ctx: ShiftContext, k: int) -> FDAlgebra:
    return ctx.shifted_algebra(k)


def coshifted_algebra(ctx: ShiftContext, k: int) -> FDAlgebra:
    return ctx.coshifted_algebra(k)


# ---------------------------------------------------------------------------
# approximations and tilting certificates


def radical_endomorphisms(t: Representation) -> list:
    """Basis of the radical of ``End(t)`` for an indecomposable ``t`` with trivial residue field."""
    fld = t.field
    hs = hom_space(t, t)
    n = t.total_dim
    out = []
    for g in hs.basis:
        lam = _eigenvalue(g, n, fld)
        r = g - ModuleMap.identity(t).scale(lam)
        if not r.is_zero():
            out.append(r)
    sp = Subspace(fld, len(ModuleMap.identity(t).flat()), [r.flat() for r in out])
    return [ModuleMap.from_flat(t, t, v) for v in sp.basis]


def _eigenvalue(g: ModuleMap, n: int, fld):
    """The single eigenvalue of an endomorphism of a local module."""
    trace = fld.zero
    for blk in g.blocks:
        for i in range(min(blk.shape)):
            trace += blk.rows[i][i]
    if fld.p is None:
        return trace / n
    if n % fld.p:
        return (trace * pow(n, -1, fld.p)) % fld.p
    for lam in range(fld.p):
        if not (g - ModuleMap.identity(g.source).scale(lam)).is_iso():
            return lam
    raise ValueError("endomorphism has no eigenvalue in the prime field")


@dataclass
class Approximation:
    source: Representation
    target: Representation
    map: ModuleMap
    components: list        # summand index of each copy in the target


def minimal_left_approximation(m: Representation, summands: Sequence[Representation]) -> Approximation:
    """Minimal left ``add(T)``-approximation of ``m`` for ``T`` the sum of ``summands``.

    For each summand ``t_i`` take maps ``m -> t_i`` spanning a complement of
    the maps that factor through the radical of ``add T``.
    """
    fld = m.field
    comps = []
    homs = [hom_space(m, t) for t in summands]
    rads = [radical_endomorphisms(t) for t in summands]
    for i, ti in enumerate(summands):
        hs = homs[i]
        if hs.dim == 0:
            continue
        width = len(hs.vectors[0])
        sp = Subspace(fld, width)
        for j, tj in enumerate(summands):
            if homs[j].dim == 0:
                continue
            through = rads[i] if i == j else hom_space(tj, ti).basis
            for r in through:
                for g in homs[j].basis:
                    sp.add(r.compose(g).flat())
        for g in hs.basis:
            if sp.add(g.flat()):
                comps.append((i, g))
    if not comps:
        z = zero_module(m.algebra)
        return Approximation(m, z, ModuleMap.zero(m, z), [])
    target, injs, _ = direct_sum([summands[i] for i, _ in comps])
    total = ModuleMap.zero(m, target)
    for inj, (_, g) in zip(injs, comps):
        total = total + inj.compose(g)
    return Approximation(m, target, total, [i for i, _ in comps])


@dataclass
class CheckRecord:
    name: str
    passed: Optional[bool]
    witness: dict = field(default_factory=dict)


@dataclass
class TiltingCertificate:
    module: Representation
    summands: list
    k: int
    kind: str                      # "tilting" or "cotilting"
    checks: dict
    special_for: Optional[Representation] = None

    @property
    def passed(self) -> Optional[bool]:
        return _all_true(c.passed for c in self.checks.values())

    def validate(self) -> bool:
        """Re-check the stored chain: monomorphisms glued by exact cokernels."""
        chain = self.checks["chain"].witness.get("steps", [])
        for step in chain:
            f, proj = step["map"], step["cokernel"]
            if not f.is_mono() or not proj.is_epi() or not proj.compose(f).is_zero():
                return False
            if f.target.total_dim != f.source.total_dim + proj.target.total_dim:
                return False
        return bool(self.passed)


def verify_tilting(t, k: int, special: Optional[Sequence[Representation]] = None,
                   cap: int = DEFAULT_CAP) -> TiltingCertificate:
    """Check ``pdim t <= k``, ``Ext^{1..k}(t, t) = 0`` and build the add(t)-coresolution of Γ.

    ``t`` is a module or a list of indecomposable summands.  When ``special``
    (summands of a module P) is given, the certificate records whether the
    first ``k`` coresolution terms lie in add P.
    """
    summands = list(t) if isinstance(t, (list, tuple)) else indecomposables(t)
    alg = summands[0].algebra
    module = _sum(summands, alg)
    pd = pdim(module, cap)
    t1 = CheckRecord("pdim", value_le(pd, k), {"pdim": pd})
    table = {j: ext_dim(module, module, j) for j in range(1, k + 1)}
    t2 = CheckRecord("ext", all(v == 0 for v in table.values()), {"ext": table})
    steps, current, ok, reason = [], regular(alg), True, ""
    for i in range(k):
        appr = minimal_left_approximation(current, summands)
        if not appr.map.is_mono():
            ok, reason = False, f"approximation at step {i} is not injective"
            break
        coker, proj = cokernel(appr.map)
        steps.append({"map": appr.map, "cokernel": proj, "components": appr.components})
        current = coker
    if ok and not in_add(current, module):
        ok, reason = False, f"cokernel after {k} steps is not in the additive closure"
    t3 = CheckRecord("chain", ok, {"steps": steps, "last": current, "reason": reason})
    cert = TiltingCertificate(module, summands, k, "tilting",
                              {"T1": t1, "T2": t2, "chain": t3})
    if special is not None and ok:
        sp = _sum(list(special), alg)
        if all(in_add(s["map"].target, sp) for s in steps):
            cert.special_for = sp
    return cert


def verify_cotilting(c, k: int, special: Optional[Sequence[Representation]] = None,
                     cap: int = DEFAULT_CAP) -> TiltingCertificate:
    """Cotilting check via duality with tilting over the opposite algebra."""
    summands = list(c) if isinstance(c, (list, tuple)) else indecomposables(c)
    duals = [dual(x) for x in summands]
    dual_special = [dual(x) for x in special] if special is not None else None
    cert = verify_tilting(duals, k, dual_special, cap)
    alg = summands[0].algebra
    checks = {"C1": cert.checks["T1"], "C2": cert.checks["T2"], "chain": cert.checks["chain"]}
    special_mod = _sum(list(special), alg) if cert.special_for is not None else None
    return TiltingCertificate(_sum(summands, alg), summands, k, "cotilting", checks, special_mod)


# ---------------------------------------------------------------------------
# Auslander-Gorenstein checks


def check_dAG(gamma: FDAlgebra, d: int, cap: int = DEFAULT_CAP) -> Optional[bool]:
    """``idim Γ <= d+1 <= domdim Γ``; ``None`` when a cap prevents a decision."""
    if d < 1:
        raise ValueError("d must be at least 1")
    return _all_true([value_le(injective_dimension_of_algebra(gamma, cap), d + 1),
                      value_le(d + 1, domdim(gamma, cap))])


def check_dAuslander(gamma: FDAlgebra, d: int, cap: int = DEFAULT_CAP) -> Optional[bool]:
    """``gldim Γ <= d+1 <= domdim Γ``."""
    if d < 1:
        raise ValueError("d must be at least 1")
    return _all_true([value_le(gldim(gamma, cap), d + 1), value_le(d + 1, domdim(gamma, cap))])


def consistent_ag_parameter(gamma: FDAlgebra, cap: int = DEFAULT_CAP):
    """The only ``d`` for which a non-selfinjective Γ can be d-Auslander-Gorenstein."""
    idim_g = injective_dimension_of_algebra(gamma, cap)
    if idim_g == INF or isinstance(idim_g, AtLeast) or idim_g == 0:
        return None
    return idim_g - 1


@dataclass
class FamilyComparison:
    verdict: str                 # "equal", "intersecting" or "disjoint"
    matches: list                # pairs (k, k') with T_k ≅ C^{k'}
    pairing: Optional[bool]      # T_k ≅ C^{d+1-k} for all k (checked when Γ is d-AG)


def _same_basic(xs, ys) -> bool:
    return len(xs) == len(ys) and all(iso_index(x, ys) is not None for x in xs)


def shifted_family_equals_coshifted(ctx: ShiftContext, d: int) -> FamilyComparison:
    ctx.require(d + 1)
    ts = [ctx.shifted_summands(k) for k in range(d + 2)]
    cs = [ctx.coshifted_summands(k) for k in range(d + 2)]
    matches = [(i, j) for i in range(d + 2) for j in range(d + 2) if _same_basic(ts[i], cs[j])]
    t_hit = {i for i, _ in matches}
    c_hit = {j for _, j in matches}
    if not matches:
        verdict = "disjoint"
    elif len(t_hit) == d + 2 and len(c_hit) == d + 2:
        verdict = "equal"
    else:
        verdict = "intersecting"
    pairing = None
    if d >= 1 and check_dAG(ctx.gamma, d, ctx.cap):
        pairing = all((k, d + 1 - k) in matches for k in range(d + 2))
    return FamilyComparison(verdict, matches, pairing)


# ---------------------------------------------------------------------------
# precluster tilting


def precluster_check(a: FDAlgebra, e, d: int, cap: int = DEFAULT_CAP) -> dict:
    """Generating-cogenerating, Ext vanishing and closure conditions for ``e``."""
    if d < 1:
        raise ValueError("d must be at least 1")
    summands = list(e) if isinstance(e, (list, tuple)) else indecomposables(e)
    module = _sum(summands, a)
    gen_cogen = in_add(regular(a), module) and in_add(coregular(a), module)
    ext = {j: ext_dim(module, module, j) for j in range(1, d)}
    ext_ok = all(v == 0 for v in ext.values())
    report = {"generating_cogenerating": gen_cogen, "ext": ext, "ext_vanishing": ext_ok}
    if d == 1:
        closed = True
        for x in summands:
            if not is_projective(x) and not in_add(tau(x), module):
                closed = False
            if not is_injective(x) and not in_add(tau_inv(x), module):
                closed = False
        report["route"] = "translate closure"
        report["closure"] = closed
    else:
        report["route"] = "endomorphism algebra is d-Auslander-Gorenstein"
        report["closure"] = check_dAG(end_algebra_of_summands(basic_summands(summands)), d, cap) \
            if gen_cogen else False
    report["passed"] = _all_true([gen_cogen, ext_ok, report["closure"]])
    return report


# ---------------------------------------------------------------------------
# tilting subcategories and bounds


def ext_profile(t: Representation, x: Representation, k: int) -> list:
    """``[dim Ext^j(t, x) for j in 0..k]``."""
    return [ext_dim(t, x, j) for j in range(k + 1)]


def subcat_member(t: Representation, x: Representation, i: int, k: int) -> bool:
    """``x`` in ``T_i(t)``: ``Ext^j(t, x) = 0`` for every ``j != i`` in ``0..k``."""
    if not 0 <= i <= k:
        raise ValueError("index out of range")
    return all(v == 0 for j, v in enumerate(ext_profile(t, x, k)) if j != i)


def cosubcat_member(c: Representation, y: Representation, i: int, k: int) -> bool:
    """``y`` in ``C_i(c)``: ``Ext^j(y, c) = 0`` for every ``j != i`` in ``0..k``."""
    if not 0 <= i <= k:
        raise ValueError("index out of range")
    return all(ext_dim(y, c, j) == 0 for j in range(k + 1) if j != i)


def gldim_bound_report(ctx: ShiftContext, k: int, coshifted: bool = False) -> dict:
    g = gldim(ctx.gamma, ctx.cap)
    if g == INF or isinstance(g, AtLeast):
        return {"gldim_gamma": g, "applicable": False, "passed": None}
    b = ctx.coshifted_algebra(k) if coshifted else ctx.shifted_algebra(k)
    gb = gldim(b, ctx.cap)
    ok = _all_true([value_le(g - k, gb), value_le(gb, g)])
    return {"gldim_gamma": g, "gldim_b": gb, "k": k, "applicable": True, "passed": ok}


def gen_contains_tilting(ctx: ShiftContext, k: int) -> bool:
    """Whether the k-shifted candidate is k-tilting with its first k resolution terms in add Π."""
    from .homological import in_gen_k
    try:
        summands = ctx.shifted_summands(k)
    except DomdimTooSmall:
        return False
    if k >= 1 and not all(in_gen_k(x, ctx.pi_vertices, k - 1) for x in summands):
        return False
    return bool(verify_tilting(summands, k, ctx.pi_summands, ctx.cap).passed)
