"""Minimal resolutions and the invariants computed from them.

Dimensions that cannot be settled within the resolution cap come back as
``AtLeast(n)``; ``math.inf`` is returned only when infinity is proven
(a nonzero syzygy repeating up to isomorphism, or an injective regular
module for the dominant dimension).
"""
from __future__ import annotations

import math
from typing import Sequence

from .exactlinalg import Matrix, Subspace
from .quiver_algebra import FDAlgebra
from .repmod import (ModuleMap, Representation, cokernel, direct_sum, dual, hom_dim,
                     injective, is_isomorphic, kernel, nakayama_inv_map, nakayama_map,
                     projective, radical, simple, socle)

DEFAULT_CAP = 40
INF = math.inf


class AtLeast:
    """A lower bound reported when a cap was hit."""

    __slots__ = ("value",)

    def __init__(self, value: int):
        self.value = value

    def __repr__(self):
        return f"AtLeast({self.value})"

    def __str__(self):
        return f">={self.value}"

    def __eq__(self, other):
        return isinstance(other, AtLeast) and other.value == self.value

    def __hash__(self):
        return hash(("AtLeast", self.value))


def is_exact(value) -> bool:
    return not isinstance(value, AtLeast)


def _max(values):
    out = 0
    bound = None
    for v in values:
        if isinstance(v, AtLeast):
            bound = max(bound or 0, v.value)
        else:
            out = max(out, v)
    if out == INF or bound is None:
        return out
    return AtLeast(max(bound, out))


def _min(values):
    out = INF
    bound = None
    for v in values:
        if isinstance(v, AtLeast):
            bound = v.value if bound is None else min(bound, v.value)
        else:
            out = min(out, v)
    if bound is None or out <= bound:
        return out
    return AtLeast(bound)


# ---------------------------------------------------------------------------
# covers and hulls


def top_generators(m: Representation) -> list:
    """Per vertex, vectors of ``m`` spanning a complement of the radical."""
    fld = m.field
    rad, inc = radical(m)
    out = []
    for v, d in enumerate(m.dims):
        frame = Subspace(fld, d, inc.blocks[v].columns())
        gens = []
        for j in range(d):
            e = [fld.zero] * d
            e[j] = fld.one
            if frame.add(e):
                gens.append(e)
        out.append(gens)
    return out


def map_from_projective(a: FDAlgebra, v: int, m: Representation, vec) -> ModuleMap:
    """The map ``P(v) -> m`` sending ``e_v`` to ``vec`` in ``m_v``."""
    blocks = []
    fld = a.field
    for w in range(a.n_vertices):
        cols = [m.act(x).apply(vec) for x in a.piece(v, w)]
        blocks.append(Matrix.from_columns(fld, cols, m.dims[w]) if cols else
                      Matrix.zeros(fld, m.dims[w], 0))
    return ModuleMap(projective(a, v), m, blocks)


def projective_cover(m: Representation):
    """Minimal projective cover: ``(P, cover map, vertex of each copy)``."""
    cached = m.cache.get("cover")
    if cached is not None:
        return cached
    a = m.algebra
    gens = top_generators(m)
    verts = [v for v, gs in enumerate(gens) for _ in gs]
    vecs = [g for gs in gens for g in gs]
    if not verts:
        from .repmod import zero_module
        z = zero_module(a)
        out = (z, ModuleMap.zero(z, m), [])
        m.cache["cover"] = out
        return out
    parts = [projective(a, v) for v in verts]
    if len(parts) == 1:
        total, injs, projs = parts[0], None, None
        cover = map_from_projective(a, verts[0], m, vecs[0])
    else:
        total, injs, projs = direct_sum(parts)
        cover = ModuleMap.zero(total, m)
        for v, vec, pr in zip(verts, vecs, projs):
            cover = cover + map_from_projective(a, v, m, vec).compose(pr)
    out = (total, cover, verts)
    m.cache["cover"] = out
    return out


def injective_hull(m: Representation):
    """Minimal injective envelope: ``(I, embedding, vertex of each copy)``.

    Dual to the projective cover of ``D m`` over the opposite algebra.
    """
    cached = m.cache.get("hull")
    if cached is not None:
        return cached
    a = m.algebra
    dm = dual(m)
    p, cov, verts = projective_cover(dm)
    if not verts:
        from .repmod import zero_module
        z = zero_module(a)
        out = (z, ModuleMap.zero(m, z), [])
    else:
        parts = [injective(a, v) for v in verts]
        total = parts[0] if len(parts) == 1 else direct_sum(parts)[0]
        emb = ModuleMap(m, total, [b.transpose() for b in cov.blocks])
        out = (total, emb, verts)
    m.cache["hull"] = out
    return out


# ---------------------------------------------------------------------------
# resolutions


class Resolution:
    """A lazily extended minimal projective (``side='proj'``) or injective resolution.

    ``terms[i]`` is P_i (resp. I_i) with indecomposable summands at
    ``vertices[i]``; ``modules[i]`` is the i-th syzygy (resp. cosyzygy), so
    ``modules[0]`` is the resolved module.  ``diff[i]`` is ``P_{i+1} -> P_i``
    (resp. ``I_i -> I_{i+1}``).
    """

    def __init__(self, m: Representation, side: str):
        if side not in ("proj", "inj"):
            raise ValueError("side must be 'proj' or 'inj'")
        self.module = m
        self.side = side
        self.terms: list = []
        self.vertices: list = []
        self.modules: list = [m]
        self.cover_maps: list = []   # P_i -> Omega^i  or  Omega^-i -> I_i
        self.inner_maps: list = []   # Omega^{i+1} -> P_i  or  I_i -> Omega^-(i+1)
        self.complete = m.total_dim == 0

    def extend(self, n: int):
        """Compute terms until ``n`` terms exist or the resolution stops."""
        while not self.complete and len(self.terms) < n:
            cur = self.modules[-1]
            if self.side == "proj":
                p, cov, verts = projective_cover(cur)
                nxt, inc = kernel(cov)
                self.cover_maps.append(cov)
                self.inner_maps.append(inc)
            else:
                p, emb, verts = injective_hull(cur)
                nxt, proj = cokernel(emb)
                self.cover_maps.append(emb)
                self.inner_maps.append(proj)
            self.terms.append(p)
            self.vertices.append(verts)
            self.modules.append(nxt)
            if nxt.total_dim == 0:
                self.complete = True
        return self

    def length(self, cap: int):
        """Index of the last nonzero term, or None when the cap was reached first."""
        self.extend(cap + 1)
        if self.complete:
            return len(self.terms) - 1
        return None

    def differential(self, i: int) -> ModuleMap:
        self.extend(i + 2)
        if self.side == "proj":
            return self.inner_maps[i].compose(self.cover_maps[i + 1])
        return self.cover_maps[i + 1].compose(self.inner_maps[i])

    def term_vertices(self, i: int) -> list:
        self.extend(i + 1)
        return self.vertices[i] if i < len(self.vertices) else []


def min_resolution(m: Representation, side: str = "proj", cap: int = DEFAULT_CAP) -> Resolution:
    key = ("res", side)
    res = m.cache.get(key)
    if res is None:
        res = Resolution(m, side)
        m.cache[key] = res
    res.extend(cap + 1)
    return res


def syzygy(m: Representation, n: int = 1) -> Representation:
    res = m.cache.get(("res", "proj")) or min_resolution(m, "proj", 0)
    res.extend(n)
    return res.modules[n] if n < len(res.modules) else res.modules[-1]


def cosyzygy(m: Representation, n: int = 1) -> Representation:
    res = m.cache.get(("res", "inj")) or min_resolution(m, "inj", 0)
    res.extend(n)
    return res.modules[n] if n < len(res.modules) else res.modules[-1]


# ---------------------------------------------------------------------------
# Ext


def ext_dim(m: Representation, n: Representation, i: int) -> int:
    """``dim Ext^i(m, n)`` by dimension shifting along the minimal projective resolution.

    With ``0 -> K -> P -> X -> 0`` the projective cover of ``X = Omega^{i-1} m``
    the long exact sequence gives
    ``dim Ext^1(X, n) = dim Hom(K, n) - dim Hom(P, n) + dim Hom(X, n)``.
    """
    if i < 0:
        raise ValueError("negative degree")
    if i == 0:
        return hom_dim(m, n)
    res = m.cache.get(("res", "proj")) or min_resolution(m, "proj", 0)
    res.extend(i)
    if len(res.modules) <= i - 1 or res.modules[i - 1].total_dim == 0:
        return 0
    x = res.modules[i - 1]
    if len(res.terms) < i:
        return 0
    verts = res.vertices[i - 1]
    k = res.modules[i]
    hom_p = sum(n.dims[v] for v in verts)
    return hom_dim(k, n) - hom_p + hom_dim(x, n)


def ext_vanishes(m: Representation, n: Representation, degrees: Sequence[int]) -> bool:
    return all(ext_dim(m, n, j) == 0 for j in degrees)


def ext_dim_via_injectives(m: Representation, n: Representation, i: int) -> int:
    """Same dimension computed from the minimal injective resolution of ``n``."""
    if i == 0:
        return hom_dim(m, n)
    res = n.cache.get(("res", "inj")) or min_resolution(n, "inj", 0)
    res.extend(i)
    if len(res.modules) <= i - 1 or res.modules[i - 1].total_dim == 0 or len(res.terms) < i:
        return 0
    y = res.modules[i - 1]
    verts = res.vertices[i - 1]
    c = res.modules[i]
    hom_i = sum(m.dims[v] for v in verts)
    return hom_dim(m, c) - hom_i + hom_dim(m, y)


# ---------------------------------------------------------------------------
# homological dimensions


def _periodic(res: Resolution) -> bool:
    mods = [x for x in res.modules[1:] if x.total_dim]
    last = mods[-1] if mods else None
    if last is None:
        return False
    return any(x is not last and is_isomorphic(x, last) for x in mods[:-1])


def pdim(m: Representation, cap: int = DEFAULT_CAP):
    if m.total_dim == 0:
        return -1
    res = min_resolution(m, "proj", cap)
    n = res.length(cap)
    if n is not None:
        return n
    return INF if _periodic(res) else AtLeast(cap)


def idim(m: Representation, cap: int = DEFAULT_CAP):
    if m.total_dim == 0:
        return -1
    res = min_resolution(m, "inj", cap)
    n = res.length(cap)
    if n is not None:
        return n
    return INF if _periodic(res) else AtLeast(cap)


def gldim(a: FDAlgebra, cap: int = DEFAULT_CAP):
    key = ("gldim", cap)
    if key not in a._cache:
        a._cache[key] = _max(pdim(simple_cached(a, v), cap) for v in range(a.n_vertices))
    return a._cache[key]


def simple_cached(a: FDAlgebra, v: int) -> Representation:
    key = ("S", v)
    if key not in a._cache:
        a._cache[key] = simple(a, v)
    return a._cache[key]


def injective_dimension_of_algebra(a: FDAlgebra, cap: int = DEFAULT_CAP):
    """``idim`` of the regular module."""
    return _max(idim(projective(a, v), cap) for v in range(a.n_vertices))


def projective_dimension_of_dual(a: FDAlgebra, cap: int = DEFAULT_CAP):
    return _max(pdim(injective(a, v), cap) for v in range(a.n_vertices))


def nakayama_permutation(a: FDAlgebra) -> dict:
    """``{v: w}`` whenever ``P(v) ≅ I(w)``, i.e. ``P(v)`` is injective."""
    key = "nakayama_perm"
    if key in a._cache:
        return a._cache[key]
    out = {}
    for v in range(a.n_vertices):
        p = projective(a, v)
        soc = socle(p)[0].dims
        if sum(soc) != 1:
            continue
        w = soc.index(1)
        if is_isomorphic(p, injective(a, w)):
            out[v] = w
    a._cache[key] = out
    return out


def projective_injective_vertices(a: FDAlgebra) -> list:
    """Vertices ``v`` with ``P(v)`` injective."""
    return sorted(nakayama_permutation(a))


def injective_projective_vertices(a: FDAlgebra) -> list:
    """Vertices ``w`` with ``I(w)`` projective."""
    return sorted(nakayama_permutation(a).values())


def is_selfinjective(a: FDAlgebra) -> bool:
    return len(nakayama_permutation(a)) == a.n_vertices


def domdim_module(m: Representation, cap: int = DEFAULT_CAP):
    """Number of leading projective-injective terms in the minimal injective resolution."""
    good = set(injective_projective_vertices(m.algebra))
    res = min_resolution(m, "inj", cap)
    for i in range(cap + 1):
        res.extend(i + 1)
        if i >= len(res.terms):
            return INF
        if not set(res.vertices[i]) <= good:
            return i
    return AtLeast(cap + 1)


def domdim(a: FDAlgebra, cap: int = DEFAULT_CAP):
    key = ("domdim", cap)
    if key not in a._cache:
        if is_selfinjective(a):
            a._cache[key] = INF
        else:
            a._cache[key] = _min(domdim_module(projective(a, v), cap)
                                 for v in range(a.n_vertices))
    return a._cache[key]


def codomdim(a: FDAlgebra, cap: int = DEFAULT_CAP):
    """Leading projective-injective terms in the minimal projective resolution of ``DA``."""
    good = set(projective_injective_vertices(a))
    if is_selfinjective(a):
        return INF
    vals = []
    for v in range(a.n_vertices):
        res = min_resolution(injective(a, v), "proj", cap)
        val = AtLeast(cap + 1)
        for i in range(cap + 1):
            res.extend(i + 1)
            if i >= len(res.terms):
                val = INF
                break
            if not set(res.vertices[i]) <= good:
                val = i
                break
        vals.append(val)
    return _min(vals)


# ---------------------------------------------------------------------------
# gen / cogen


def support_of_top(x: Representation) -> set:
    from .repmod import top
    return {v for v, d in enumerate(top(x)[0].dims) if d}


def support_of_socle(x: Representation) -> set:
    return {v for v, d in enumerate(socle(x)[0].dims) if d}


def is_projective(m: Representation) -> bool:
    return m.total_dim == 0 or syzygy(m, 1).total_dim == 0


def is_injective(m: Representation) -> bool:
    return m.total_dim == 0 or cosyzygy(m, 1).total_dim == 0


def in_gen_k(m: Representation, x, k: int) -> bool:
    """``m`` in ``gen_k(x)`` for a projective ``x`` (a module or a vertex set).

    The first ``k+1`` terms of the minimal projective resolution of ``m``
    must lie in ``add x``.  ``gen_{-1}`` is everything.
    """
    if k < 0 or m.total_dim == 0:
        return True
    verts = set(x) if not isinstance(x, Representation) else _projective_vertices(x)
    res = min_resolution(m, "proj", k)
    for i in range(k + 1):
        if i >= len(res.terms):
            return True
        if not set(res.vertices[i]) <= verts:
            return False
    return True


def in_cogen_k(m: Representation, x, k: int) -> bool:
    """``m`` in ``cogen^k(x)`` for an injective ``x`` (a module or a vertex set)."""
    if k < 0 or m.total_dim == 0:
        return True
    verts = set(x) if not isinstance(x, Representation) else _injective_vertices(x)
    res = min_resolution(m, "inj", k)
    for i in range(k + 1):
        if i >= len(res.terms):
            return True
        if not set(res.vertices[i]) <= verts:
            return False
    return True


def _projective_vertices(x: Representation) -> set:
    if not is_projective(x):
        raise ValueError("gen_k membership is implemented for projective generators")
    return support_of_top(x)


def _injective_vertices(x: Representation) -> set:
    if not is_injective(x):
        raise ValueError("cogen^k membership is implemented for injective cogenerators")
    return support_of_socle(x)


def gen_level(m: Representation, x, cap: int = DEFAULT_CAP):
    """Largest ``k`` with ``m`` in ``gen_k(x)`` (``INF`` if the resolution stays in add x)."""
    verts = set(x) if not isinstance(x, Representation) else _projective_vertices(x)
    if m.total_dim == 0:
        return INF
    res = min_resolution(m, "proj", cap)
    for i in range(cap + 1):
        res.extend(i + 1)
        if i >= len(res.terms):
            return INF
        if not set(res.vertices[i]) <= verts:
            return i - 1
    return AtLeast(cap)


def cogen_level(m: Representation, x, cap: int = DEFAULT_CAP):
    verts = set(x) if not isinstance(x, Representation) else _injective_vertices(x)
    if m.total_dim == 0:
        return INF
    res = min_resolution(m, "inj", cap)
    for i in range(cap + 1):
        res.extend(i + 1)
        if i >= len(res.terms):
            return INF
        if not set(res.vertices[i]) <= verts:
            return i - 1
    return AtLeast(cap)


# ---------------------------------------------------------------------------
# Auslander-Reiten translates


def tau(m: Representation) -> Representation:
    """``D Tr m``, as the kernel of ``nu(P_1 -> P_0)`` for a minimal presentation."""
    res = min_resolution(m, "proj", 1)
    if len(res.terms) < 2:
        from .repmod import zero_module
        return zero_module(m.algebra)
    d1 = res.differential(0)
    return kernel(nakayama_map(d1))[0]


def tau_inv(m: Representation) -> Representation:
    """``Tr D m``, as the cokernel of ``nu^-(I_0 -> I_1)`` for a minimal copresentation."""
    res = min_resolution(m, "inj", 1)
    if len(res.terms) < 2:
        from .repmod import zero_module
        return zero_module(m.algebra)
    d0 = res.differential(0)
    return cokernel(nakayama_inv_map(d0))[0]
