"""Bounded complexes of modules and Hom in the homotopy category.

Complexes are cohomologically graded: ``diffs[n]`` maps ``terms[n]`` to
``terms[n+1]``.  The complexes ``E^k`` and ``E_k`` built here model the
coshifted and shifted algebras of ``Γ = End_A(E)^op``:

* ``E^k``: each non-projective summand ``E_i`` of ``E`` gives
  ``P_{k-1} -> ... -> P_0 -> E_i`` (minimal projective resolution, ``E_i`` in
  degree 0), plus the stalks ``P(v)[k]``;
* ``E_k``: each non-injective ``E_i`` gives ``E_i -> Q_0 -> ... -> Q_{k-1}``
  (minimal injective resolution), plus the stalks ``I(v)[-k]``.

Projective (resp. injective) summands of ``E`` give contractible complexes
for ``k >= 1`` and are left out; at ``k = 0`` the stalk complex of the
basic module ``E`` is used, tagged on its projective (resp. injective) summands.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .exactlinalg import Subspace, kernel_vectors
from .homological import ext_dim, min_resolution
from .quiver_algebra import FDAlgebra, compute_quiver
from .repmod import (ModuleMap, Representation, basic_summands, cokernel, hom_dim, hom_space,
                     image, injective, kernel, projective)


class ComplexError(ValueError):
    pass


@dataclass
class BoundedComplex:
    terms: dict                        # degree -> Representation (nonzero terms only)
    diffs: dict = field(default_factory=dict)   # degree n -> map terms[n] -> terms[n+1]
    label: str = ""

    def __post_init__(self):
        self.terms = {n: t for n, t in self.terms.items() if t.total_dim}
        self.diffs = {n: d for n, d in self.diffs.items() if n in self.terms and n + 1 in self.terms}
        for n, d in self.diffs.items():
            if n + 1 in self.diffs and not self.diffs[n + 1].compose(d).is_zero():
                raise ComplexError(f"d^{n + 1} d^{n} is not zero")

    @property
    def degrees(self) -> list:
        return sorted(self.terms)

    def term(self, n: int) -> Optional[Representation]:
        return self.terms.get(n)

    def diff(self, n: int) -> Optional[ModuleMap]:
        return self.diffs.get(n)

    def shift(self, s: int) -> "BoundedComplex":
        """``X[s]``: terms move to degree ``n - s``; differentials change sign by ``(-1)^s``."""
        sign = -1 if s % 2 else 1
        return BoundedComplex({n - s: t for n, t in self.terms.items()},
                              {n - s: d.scale(sign) for n, d in self.diffs.items()},
                              f"{self.label}[{s}]")

    def squares_to_zero(self) -> bool:
        return all(self.diffs[n + 1].compose(d).is_zero()
                   for n, d in self.diffs.items() if n + 1 in self.diffs)


def stalk(m: Representation, degree: int = 0, label: str = "") -> BoundedComplex:
    return BoundedComplex({degree: m}, {}, label)


@dataclass
class ChainMap:
    source: BoundedComplex
    target: BoundedComplex
    components: dict                   # degree -> ModuleMap

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self ∘ other``."""
        comps = {}
        for n, g in other.components.items():
            f = self.components.get(n)
            if f is not None:
                comps[n] = f.compose(g)
        return ChainMap(other.source, self.target, comps)

    def is_chain_map(self) -> bool:
        for n in self.source.degrees:
            f_n = self.components.get(n)
            lhs = None
            dy = self.target.diff(n)
            if f_n is not None and dy is not None:
                lhs = dy.compose(f_n)
            f_next = self.components.get(n + 1)
            dx = self.source.diff(n)
            rhs = f_next.compose(dx) if f_next is not None and dx is not None else None
            if lhs is None and rhs is None:
                continue
            if lhs is None:
                if not rhs.is_zero():
                    return False
            elif rhs is None:
                if not lhs.is_zero():
                    return False
            elif not (lhs - rhs).is_zero():
                return False
        return True


class HomK:
    """``Hom_{K^b}(x, y)``: chain maps modulo null-homotopic ones."""

    def __init__(self, x: BoundedComplex, y: BoundedComplex):
        self.source, self.target = x, y
        fld = None
        self.slots = []            # (degree, HomSpace X^n -> Y^n)
        for n in x.degrees:
            yn = y.term(n)
            if yn is None:
                continue
            hs = hom_space(x.term(n), yn)
            fld = x.term(n).field
            if hs.dim:
                self.slots.append((n, hs))
        self.offsets = {}
        total = 0
        for n, hs in self.slots:
            self.offsets[n] = total
            total += hs.dim
        self.n_params = total
        self.field = fld or (x.term(x.degrees[0]).field if x.degrees else None)
        if total == 0:
            self.chain_vectors, self.null_space, self.reps = [], None, []
            self.frame = None
            return
        self.chain_vectors = self._chain_maps()
        null = self._null_homotopic()
        frame = Subspace(self.field, total, null)
        self.null_dim = frame.dim
        reps = []
        for v in self.chain_vectors:
            if frame.add(v):
                reps.append(v)
        self.frame = frame
        self.reps = reps

    @property
    def dim(self) -> int:
        return len(self.reps)

    def to_chain_map(self, vec) -> ChainMap:
        comps = {}
        for n, hs in self.slots:
            off = self.offsets[n]
            comps[n] = hs.combine(vec[off:off + hs.dim])
        return ChainMap(self.source, self.target, comps)

    def params(self, f: ChainMap) -> list:
        vec = []
        for n, hs in self.slots:
            comp = f.components.get(n)
            vec.extend(hs.coords(comp) if comp is not None else [self.field.zero] * hs.dim)
        return vec

    def class_coords(self, f: ChainMap) -> list:
        """Coordinates of the homotopy class of ``f`` in the representative basis."""
        if not self.reps:
            return []
        coords = self.frame.coords(self.params(f))
        if coords is None:
            raise ValueError("not a chain map between these complexes")
        return coords[self.null_dim:]

    @property
    def basis(self) -> list:
        return [self.to_chain_map(v) for v in self.reps]

    def _chain_maps(self) -> list:
        x, y = self.source, self.target
        fld = self.field
        # one equation block per degree n: d_Y^n f^n - f^{n+1} d_X^n : X^n -> Y^{n+1}
        blocks = []
        for n in x.degrees:
            if y.term(n + 1) is None:
                continue
            blocks.append(n)
        rows_by_param = []
        for n, hs in self.slots:
            for g in hs.basis:
                col = []
                for m in blocks:
                    piece = None
                    if m == n and y.diff(n) is not None:
                        piece = y.diff(n).compose(g)
                    elif m == n - 1 and x.diff(m) is not None:
                        piece = g.compose(x.diff(m)).scale(-1)
                    if piece is None:
                        col.extend([fld.zero] * _flat_width(x.term(m), y.term(m + 1)))
                    else:
                        col.extend(piece.flat())
                rows_by_param.append(col)
        n_eq = len(rows_by_param[0]) if rows_by_param else 0
        if n_eq == 0:
            return [[fld.one if i == j else fld.zero for i in range(self.n_params)]
                    for j in range(self.n_params)]
        rows = [[rows_by_param[p][e] for p in range(self.n_params)] for e in range(n_eq)]
        return kernel_vectors(fld, rows, self.n_params)

    def _null_homotopic(self) -> list:
        x, y = self.source, self.target
        out = []
        for n in x.degrees:
            ym = y.term(n - 1)
            if ym is None:
                continue
            for h in hom_space(x.term(n), ym).basis:      # h: X^n -> Y^{n-1}
                comps = {}
                if y.diff(n - 1) is not None:
                    comps[n] = y.diff(n - 1).compose(h)
                if x.diff(n - 1) is not None:
                    piece = h.compose(x.diff(n - 1))
                    comps[n - 1] = piece if n - 1 not in comps else comps[n - 1] + piece
                vec = self.params(ChainMap(x, y, comps))
                if any(vec):
                    out.append(vec)
        return out


def _flat_width(m: Representation, n: Representation) -> int:
    return sum(a * b for a, b in zip(m.dims, n.dims))


def hom_upto_homotopy(x: BoundedComplex, y: BoundedComplex):
    """``(dimension, representative chain maps)``."""
    h = HomK(x, y)
    return h.dim, h.basis


def identity_chain_map(x: BoundedComplex) -> ChainMap:
    return ChainMap(x, x, {n: ModuleMap.identity(t) for n, t in x.terms.items()})


# ---------------------------------------------------------------------------
# E^k and E_k


@dataclass
class SummandComplex:
    complex: BoundedComplex
    module: Optional[Representation]    # the summand of E it resolves, None for a stalk
    tagged: bool


@dataclass
class ModelComplex:
    algebra: FDAlgebra
    e: Representation
    k: int
    side: str                            # "upper" for E^k, "lower" for E_k
    summands: list

    @property
    def tag(self) -> list:
        return [i for i, s in enumerate(self.summands) if s.tagged]


def _is_projective_module(m: Representation) -> bool:
    res = min_resolution(m, "proj", 1)
    return len(res.terms) == 1 and res.cover_maps[0].is_iso()


def _is_injective_module(m: Representation) -> bool:
    res = min_resolution(m, "inj", 1)
    return len(res.terms) == 1 and res.cover_maps[0].is_iso()


def build_Ek_upper(a: FDAlgebra, e: Representation, k: int) -> ModelComplex:
    """``E^k = (P_{k-1} -> ... -> P_0 -> E) ⊕ A[k]`` split into indecomposable complexes."""
    parts = basic_summands([e])
    out = []
    if k == 0:
        for x in parts:
            out.append(SummandComplex(stalk(x, 0), x, _is_projective_module(x)))
        return ModelComplex(a, e, 0, "upper", out)
    for x in parts:
        if _is_projective_module(x):
            continue
        res = min_resolution(x, "proj", k)
        res.extend(k)
        terms = {0: x}
        diffs = {}
        for i in range(min(k, len(res.terms))):
            terms[-(i + 1)] = res.terms[i]
        if res.terms:
            diffs[-1] = res.cover_maps[0]
        for i in range(min(k, len(res.terms)) - 1):
            diffs[-(i + 2)] = res.differential(i)
        out.append(SummandComplex(BoundedComplex(terms, diffs), x, False))
    for v in range(a.n_vertices):
        out.append(SummandComplex(stalk(projective(a, v), -k), None, True))
    return ModelComplex(a, e, k, "upper", out)


def build_Ek_lower(a: FDAlgebra, e: Representation, k: int) -> ModelComplex:
    """``E_k = (E -> Q_0 -> ... -> Q_{k-1}) ⊕ DA[-k]`` split into indecomposable complexes."""
    parts = basic_summands([e])
    out = []
    if k == 0:
        for x in parts:
            out.append(SummandComplex(stalk(x, 0), x, _is_injective_module(x)))
        return ModelComplex(a, e, 0, "lower", out)
    for x in parts:
        if _is_injective_module(x):
            continue
        res = min_resolution(x, "inj", k)
        res.extend(k)
        terms = {0: x}
        diffs = {}
        for i in range(min(k, len(res.terms))):
            terms[i + 1] = res.terms[i]
        if res.terms:
            diffs[0] = res.cover_maps[0]
        for i in range(min(k, len(res.terms)) - 1):
            diffs[i + 1] = res.differential(i)
        out.append(SummandComplex(BoundedComplex(terms, diffs), x, False))
    for v in range(a.n_vertices):
        out.append(SummandComplex(stalk(injective(a, v), k), None, True))
    return ModelComplex(a, e, k, "lower", out)


def end_algebra_Kb(model: ModelComplex, name: str = "") -> FDAlgebra:
    """Opposite endomorphism algebra of the model complex in the homotopy category.

    As for modules, a basis element with source ``i`` and target ``j`` is a
    class of chain maps ``X_j -> X_i``.
    """
    comps = [s.complex for s in model.summands]
    n = len(comps)
    fld = model.algebra.field
    homs = {(i, j): HomK(comps[j], comps[i]) for i in range(n) for j in range(n)}
    basis_maps, src, tgt, labels, idem = [], [], [], [], [None] * n
    frames = {}
    for i in range(n):
        for j in range(n):
            h = homs[(i, j)]
            reps = [h.to_chain_map(v) for v in h.reps]
            if i == j:
                ident = identity_chain_map(comps[i])
                coords = h.class_coords(ident)
                if not any(coords):
                    raise ComplexError(f"summand {i} is contractible")
                # change of basis putting the identity class first
                space = Subspace(fld, h.dim, [coords])
                for k in range(h.dim):
                    space.add([fld.one if t == k else fld.zero for t in range(h.dim)])
                new_basis = space.basis
                reps = [_combine_chain(h, vec) for vec in new_basis]
                frames[(i, j)] = (h, Subspace(fld, h.dim, new_basis))
            else:
                frames[(i, j)] = (h, None)
            idx = []
            for k, f in enumerate(reps):
                b = len(basis_maps)
                idx.append(b)
                basis_maps.append(f)
                src.append(i)
                tgt.append(j)
                if i == j and k == 0:
                    idem[i] = b
                    labels.append(f"e{i}")
                else:
                    labels.append(f"h{i}_{j}_{k}")
            frames[(i, j)] = frames[(i, j)] + (idx,)
    mult = {}
    for x in range(len(basis_maps)):
        i, j = src[x], tgt[x]
        for y in range(len(basis_maps)):
            if src[y] != j:
                continue
            kk = tgt[y]
            comp = basis_maps[x].compose(basis_maps[y])   # X_kk -> X_i
            h, change, idx = frames[(i, kk)]
            coords = h.class_coords(comp)
            if change is not None:
                coords = change.coords(coords)
            prod = {b: c for b, c in zip(idx, coords) if c}
            if prod:
                mult[(y, x)] = prod
    alg = FDAlgebra(fld, [str(i) for i in range(n)], labels, src, tgt, mult, idem, name=name)
    alg.meta["tag"] = model.tag
    alg.meta["complexes"] = comps
    compute_quiver(alg)
    return alg


def _combine_chain(h: HomK, coords) -> ChainMap:
    fld = h.field
    vec = [fld.zero] * h.n_params
    for c, rep in zip(coords, h.reps):
        if c:
            for t, x in enumerate(rep):
                vec[t] += c * x
    if fld.p is not None:
        vec = [x % fld.p for x in vec]
    return h.to_chain_map(vec)


# ---------------------------------------------------------------------------
# functor formulas on summand complexes


@dataclass
class FormulaValues:
    """Dimensions at one summand complex; ``None`` where no closed formula applies (k < 2)."""
    r: Optional[int]
    c_rank: int
    c_cokernel_form: int
    c_kernel_form: int
    ell: Optional[int]

    @property
    def c_agree(self) -> bool:
        return self.c_rank == self.c_cokernel_form == self.c_kernel_form


def _leading(x: SummandComplex, k: int, side: str):
    """``(X_k, X_{k-1}, f)`` for the upper model, or the dual data for the lower one."""
    cx = x.complex
    if side == "upper":
        top = cx.term(-k)
        nxt = cx.term(-k + 1)
        f = cx.diff(-k)
    else:
        top = cx.term(k)
        nxt = cx.term(k - 1)
        f = cx.diff(k - 1)
    return top, nxt, f


def functor_formulas(model: ModelComplex, m: Representation, index: int) -> FormulaValues:
    """Values at the summand ``index`` of ``ℓ^k(M)``, ``r^k(M)`` and three forms of ``c^k(M)``.

    Upper model with leading map ``f: X_k -> X_{k-1}``: ``r = Hom(Ker f, M)``,
    ``c`` is the image of restriction ``Hom(X_k, M) -> Hom(Ker f, M)``, which
    has dimension ``hom(X_k, M) - hom(Im f, M)`` and
    ``hom(Ker f, M) - dim Ext^1(Im f, M)``; ``ℓ = Coker(Hom(X_{k-1}, M) -> Hom(X_k, M))``
    for ``k >= 2``.  The lower model with trailing map ``g: Y_{k-1} -> Y_k``
    uses the duals: ``ℓ = D Hom(M, Coker g)``, ``r`` is the kernel of
    ``D Hom(M, Y_k) -> D Hom(M, Y_{k-1})`` for ``k >= 2``, and ``c`` is the
    image of ``D Hom(M, Coker g) -> D Hom(M, Y_k)``.
    """
    k = model.k
    x = model.summands[index]
    top, nxt, f = _leading(x, k, model.side)
    upper = model.side == "upper"
    if top is None:
        return FormulaValues(0, 0, 0, 0, 0)
    if f is None or nxt is None:
        whole = hom_dim(top, m) if upper else hom_dim(m, top)
        return FormulaValues(whole, whole, whole, whole, whole)
    if upper:
        ker, inc = kernel(f)
        im = image(f)[0]
        r = hom_dim(ker, m)
        restriction = [g.compose(inc).flat() for g in hom_space(top, m).basis]
        c_rank = Subspace(m.field, len(ModuleMap.zero(ker, m).flat()), restriction).dim
        c_cok = hom_dim(top, m) - hom_dim(im, m)
        c_ker = r - ext_dim(im, m, 1)
        ell = None
        if k >= 2:
            pre = [g.compose(f).flat() for g in hom_space(nxt, m).basis]
            ell = hom_dim(top, m) - Subspace(m.field, len(ModuleMap.zero(top, m).flat()), pre).dim
    else:
        cok, proj = cokernel(f)
        im = image(f)[0]
        ell = hom_dim(m, cok)
        corestr = [proj.compose(g).flat() for g in hom_space(m, top).basis]
        c_rank = Subspace(m.field, len(ModuleMap.zero(m, cok).flat()), corestr).dim
        c_cok = hom_dim(m, top) - hom_dim(m, im)
        c_ker = ell - ext_dim(m, im, 1)
        r = None
        if k >= 2:
            post = [f.compose(g).flat() for g in hom_space(m, nxt).basis]
            r = hom_dim(m, top) - Subspace(m.field, len(ModuleMap.zero(m, nxt).flat()), post).dim
    return FormulaValues(r, c_rank, c_cok, c_ker, ell)


def homotopy_shift_dim(x: BoundedComplex, m: Representation, k: int) -> int:
    """``dim Hom_{K^b}(X, M[k])``."""
    return HomK(x, stalk(m, -k)).dim


def cartan_matches(alg_p: FDAlgebra, alg_q: FDAlgebra) -> list:
    """Vertex bijections matching Cartan matrices and the tagged vertex sets."""
    from .endo import cartan_bijections
    return list(cartan_bijections(alg_p.cartan(), alg_q.cartan(), None,
                                  alg_p.meta.get("tag"), alg_q.meta.get("tag")))
