"""Endomorphism algebras of modules and their quiver presentations.

``end_algebra`` uses the opposite convention ``B = End(T)^op`` for a basic
module ``T = T_0 ⊕ ... ⊕ T_{n-1}``: a basis element with source vertex ``i``
and target vertex ``j`` is a map ``T_j -> T_i``.  With this convention
``B e_i ≅ Hom(T, T_i)``, left B-modules are representations, and
``Hom(T, X)`` is a left B-module by precomposition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .exactlinalg import Matrix, Subspace, kernel_vectors
from .quiver_algebra import (Arrow, FDAlgebra, QuiverPresentation, build_algebra,
                             compute_quiver)
from .repmod import (ModuleMap, Representation, basic_summands, hom_space)


class TooManyVertices(ValueError):
    pass


class EndomorphismData:
    """Bookkeeping linking an endomorphism algebra to the maps it is made of."""

    def __init__(self, summands, basis_maps, frames, order):
        self.summands = summands
        self.basis_maps = basis_maps     # basis index -> ModuleMap T_tgt -> T_src
        self.frames = frames             # (i, j) -> (Subspace of flattened maps, basis indices)
        self.order = order

    def element_to_map(self, vec, i: int, j: int) -> ModuleMap:
        """The map ``T_j -> T_i`` of the ``e_j (vec) e_i`` part of an element."""
        sub, idx = self.frames[(i, j)]
        src, tgt = self.summands[j], self.summands[i]
        total = ModuleMap.zero(src, tgt)
        for b in idx:
            if vec[b]:
                total = total + self.basis_maps[b].scale(vec[b])
        return total

    def map_to_element(self, f: ModuleMap, i: int, j: int, dim: int, field) -> list:
        """Coordinates of a map ``T_j -> T_i`` as an algebra element."""
        sub, idx = self.frames[(i, j)]
        coords = sub.coords(f.flat())
        if coords is None:
            raise ValueError("not a module map between these summands")
        vec = [field.zero] * dim
        for b, c in zip(idx, coords):
            vec[b] = c
        return vec


def end_algebra_of_summands(summands: Sequence[Representation], name: str = "",
                            labels: Optional[Sequence[str]] = None) -> FDAlgebra:
    """``End(T_0 ⊕ ... ⊕ T_{n-1})^op`` for pairwise non-isomorphic indecomposables."""
    summands = list(summands)
    n = len(summands)
    if n == 0:
        raise ValueError("no summands")
    fld = summands[0].field
    basis_maps, src, tgt, labs = [], [], [], []
    frames = {}
    idem = [None] * n
    for i in range(n):
        for j in range(n):
            hs = hom_space(summands[j], summands[i])   # maps T_j -> T_i
            vecs = [list(v) for v in hs.vectors]
            if i == j:
                ident = ModuleMap.identity(summands[i]).flat()
                ordered = Subspace(fld, len(ident), [ident])
                for v in vecs:
                    ordered.add(v)
                vecs = ordered.basis
            idx = []
            for k, v in enumerate(vecs):
                b = len(basis_maps)
                idx.append(b)
                basis_maps.append(ModuleMap.from_flat(summands[j], summands[i], v))
                src.append(i)
                tgt.append(j)
                if i == j and k == 0:
                    idem[i] = b
                    labs.append(f"e{i}")
                else:
                    labs.append(f"f{i}_{j}_{k}")
            width = len(ModuleMap.zero(summands[j], summands[i]).flat())
            frames[(i, j)] = (Subspace(fld, width, vecs), idx)
    dim = len(basis_maps)
    mult = {}
    for x in range(dim):
        i, j = src[x], tgt[x]          # x: T_j -> T_i
        for y in range(dim):
            if src[y] != j:
                continue
            k = tgt[y]                 # y: T_k -> T_j
            comp = basis_maps[x].compose(basis_maps[y])   # T_k -> T_i
            if comp.is_zero():
                continue
            sub, idx = frames[(i, k)]
            coords = sub.coords(comp.flat())
            prod = {b: c for b, c in zip(idx, coords) if c}
            if prod:
                mult[(y, x)] = prod
    verts = list(labels) if labels is not None else [str(i) for i in range(n)]
    alg = FDAlgebra(fld, verts, labs, src, tgt, mult, idem, name=name)
    alg.meta["endomorphism"] = EndomorphismData(summands, basis_maps, frames, list(range(n)))
    compute_quiver(alg)
    return alg


def end_algebra(m: Representation, name: str = "") -> FDAlgebra:
    """``End(m)^op`` of the basic module with the same indecomposable summands as ``m``."""
    return end_algebra_of_summands(basic_summands([m]), name=name)


def _arrow_map(b: FDAlgebra, arr: Arrow) -> ModuleMap:
    data: EndomorphismData = b.meta["endomorphism"]
    return data.element_to_map(arr.element, arr.source, arr.target)


def hom_functor(b: FDAlgebra, x: Representation) -> Representation:
    """``Hom(T, x)`` as a left module over ``b = End(T)^op``."""
    data: EndomorphismData = b.meta["endomorphism"]
    fld = b.field
    homs = [hom_space(t, x) for t in data.summands]
    action = []
    for arr in b.arrows:
        a = _arrow_map(b, arr)                       # T_j -> T_i
        i, j = arr.source, arr.target
        cols = [homs[j].coords(g.compose(a)) for g in homs[i].basis]
        action.append(Matrix.from_columns(fld, cols, homs[j].dim) if cols else
                      Matrix.zeros(fld, homs[j].dim, 0))
    return Representation(b, [h.dim for h in homs], action)


def dual_hom_functor(b: FDAlgebra, x: Representation) -> Representation:
    """``D Hom(x, T)`` as a left module over ``b = End(T)^op``."""
    data: EndomorphismData = b.meta["endomorphism"]
    fld = b.field
    homs = [hom_space(x, t) for t in data.summands]
    action = []
    for arr in b.arrows:
        a = _arrow_map(b, arr)
        i, j = arr.source, arr.target
        cols = [homs[i].coords(a.compose(h)) for h in homs[j].basis]
        mat = Matrix.from_columns(fld, cols, homs[i].dim) if cols else \
            Matrix.zeros(fld, homs[i].dim, 0)
        action.append(mat.transpose())
    return Representation(b, [h.dim for h in homs], action)


def dual_of_module_over_end(b: FDAlgebra, gamma_regular: Representation) -> Representation:
    """``D T`` as a ``b``-module, i.e. ``D Hom(Gamma, T)``."""
    return dual_hom_functor(b, gamma_regular)


# ---------------------------------------------------------------------------
# presentations


@dataclass
class PresentedAlgebra:
    presentation: QuiverPresentation
    algebra: FDAlgebra
    relation_degrees: list

    def rebuild(self) -> FDAlgebra:
        return build_algebra(self.presentation)


def _path_elements(b: FDAlgebra, max_len: int):
    """All arrow paths up to ``max_len`` with their values: ``{len: [(word, s, t, vec)]}``."""
    out = {0: [((), v, v, b.unit_vec(b.idempotents[v])) for v in range(b.n_vertices)]}
    for d in range(1, max_len + 1):
        lvl = []
        for word, s, t, vec in out[d - 1]:
            for ai, arr in enumerate(b.arrows):
                if arr.source != t:
                    continue
                lvl.append(((ai,) + word, s, arr.target, b.mul(arr.element, vec)))
        out[d] = lvl
    return out


def nilpotency_index(b: FDAlgebra) -> int:
    """Smallest ``L`` with ``rad^L = 0``."""
    layers = radical_layers(b)
    return len(layers)


def radical_layers(b: FDAlgebra) -> list:
    """``layers[d][(s, t)] = dim e_t (rad^d / rad^{d+1}) e_s``."""
    key = "radical_layers"
    if key in b._cache:
        return b._cache[key]
    fld = b.field
    n = b.dim
    current = {}
    for i in range(n):
        current.setdefault((b.src[i], b.tgt[i]), []).append(b.unit_vec(i))
    spaces = []
    while True:
        dims = {}
        subs = {}
        for key2, vecs in current.items():
            sp = Subspace(fld, n, vecs)
            if sp.dim:
                subs[key2] = sp
                dims[key2] = sp.dim
        if not dims:
            break
        spaces.append(dims)
        nxt = {}
        for (s, t), sp in subs.items():
            for arr in b.arrows:
                if arr.source != t:
                    continue
                for v in sp.basis:
                    prod = b.mul(arr.element, v)
                    if any(prod):
                        nxt.setdefault((s, arr.target), []).append(prod)
        current = nxt
    layers = []
    for d, dims in enumerate(spaces):
        nxt = spaces[d + 1] if d + 1 < len(spaces) else {}
        layers.append({k: v - nxt.get(k, 0) for k, v in dims.items() if v - nxt.get(k, 0)})
    b._cache[key] = layers
    return layers


def present_by_quiver(b: FDAlgebra, degree_cap: Optional[int] = None) -> PresentedAlgebra:
    """Quiver with relations whose path algebra quotient is ``b``."""
    fld = b.field
    L = nilpotency_index(b)
    cap = L if degree_cap is None else degree_cap
    paths = _path_elements(b, cap)
    arrow_names = [arr.name for arr in b.arrows]
    relations, degrees = [], []
    # paths of length >= 2 grouped by endpoints, indexed for coordinates
    columns = {}
    for d in range(2, cap + 1):
        for word, s, t, vec in paths[d]:
            columns.setdefault((s, t), []).append((word, vec))
    ideal_rows = {}   # (s,t) -> Subspace over path coordinates
    for d in range(2, cap + 1):
        for (s, t), cols in columns.items():
            idx = [k for k, (w, _) in enumerate(cols) if len(w) <= d]
            if not idx:
                continue
            ncols = len(cols)
            # evaluation matrix: algebra coordinates x path columns
            rows = [[cols[k][1][r] for k in idx] for r in range(b.dim)]
            kern = kernel_vectors(fld, rows, len(idx))
            sp = ideal_rows.setdefault((s, t), Subspace(fld, ncols))
            for kv in kern:
                full = [fld.zero] * ncols
                for pos, k in enumerate(idx):
                    full[k] = kv[pos]
                if sp.contains(full):
                    continue
                rel = tuple((c, tuple(arrow_names[a] for a in cols[k][0]))
                            for k, c in enumerate(full) if c)
                relations.append(rel)
                degrees.append(d)
                _close_ideal(b, columns, ideal_rows, cols, full, s, t, cap, fld)
    pres = QuiverPresentation(fld, tuple(b.vertices),
                              tuple((arr.name, b.vertices[arr.source], b.vertices[arr.target])
                                    for arr in b.arrows),
                              tuple(relations))
    return PresentedAlgebra(pres, b, degrees)


def _close_ideal(b, columns, ideal_rows, cols, rel_vec, s, t, cap, fld):
    """Add every multiple ``u r w`` of a new relation ``r`` by arrow words to the ideal spans.

    Terms longer than ``cap`` are dropped; paths that long vanish in ``b``.
    """
    index = {key: {w: k for k, (w, _) in enumerate(c)} for key, c in columns.items()}
    start = (tuple((c, cols[k][0]) for k, c in enumerate(rel_vec) if c), s, t)
    frontier, seen = [start], {start}
    while frontier:
        new = []
        for terms, s0, t0 in frontier:
            key = (s0, t0)
            if key in index:
                vec = [fld.zero] * len(columns[key])
                for c, w in terms:
                    k = index[key].get(w)
                    if k is not None:
                        vec[k] += c
                if any(vec):
                    ideal_rows.setdefault(key, Subspace(fld, len(vec))).add(vec)
            for ai, arr in enumerate(b.arrows):
                moves = []
                if arr.source == t0:
                    moves.append((tuple((c, (ai,) + w) for c, w in terms), s0, arr.target))
                if arr.target == s0:
                    moves.append((tuple((c, w + (ai,)) for c, w in terms), arr.source, t0))
                for mv in moves:
                    if min(len(w) for _, w in mv[0]) <= cap and mv not in seen:
                        seen.add(mv)
                        new.append(mv)
        frontier = new


# ---------------------------------------------------------------------------
# structural comparison


def structure_invariants(x) -> dict:
    """Arrow counts and relation-space dimensions per (source, target, degree)."""
    if isinstance(x, QuiverPresentation):
        alg = build_algebra(x)
    elif isinstance(x, PresentedAlgebra):
        alg = x.algebra
    else:
        alg = x
    n = alg.n_vertices
    arrows = [[0] * n for _ in range(n)]
    for arr in alg.arrows:
        arrows[arr.source][arr.target] += 1
    layers = radical_layers(alg)
    # paths[d][s][t]: number of quiver paths of length d
    rel = {}
    paths = [[int(s == t) for t in range(n)] for s in range(n)]
    for d in range(0, len(layers) + 1):
        if d > 0:
            paths = [[sum(paths[s][u] * arrows[u][t] for u in range(n)) for t in range(n)]
                     for s in range(n)]
        for s in range(n):
            for t in range(n):
                lay = layers[d].get((s, t), 0) if d < len(layers) else 0
                r = paths[s][t] - lay
                if r:
                    rel[(s, t, d)] = r
    return {"n": n, "arrows": arrows, "relations": rel, "cartan": alg.cartan(), "algebra": alg}


def vertex_bijections(inv_p: dict, inv_q: dict, fixed: Optional[dict] = None,
                      limit: Optional[int] = None):
    """Generate vertex bijections preserving arrow counts and relation dimensions."""
    n = inv_p["n"]
    if n != inv_q["n"]:
        return
    if n > 10:
        raise TooManyVertices(f"{n} vertices")
    ap, aq = inv_p["arrows"], inv_q["arrows"]
    rp, rq = inv_p["relations"], inv_q["relations"]
    cp, cq = inv_p["cartan"], inv_q["cartan"]
    degs = sorted({d for (_, _, d) in rp} | {d for (_, _, d) in rq})

    def sig(arr, rel, car, v):
        return (sorted(arr[v]), sorted(r[v] for r in arr), arr[v][v], car[v][v],
                sorted(car[v]), sorted(r[v] for r in car),
                tuple(sorted((d, rel.get((v, v, d), 0)) for d in degs)))

    sp = [sig(ap, rp, cp, v) for v in range(n)]
    sq = [sig(aq, rq, cq, v) for v in range(n)]
    fixed = dict(fixed or {})
    perm = [None] * n
    used = [False] * n
    count = [0]

    def compatible(v, w):
        for u in range(n):
            x = perm[u]
            if x is None and u != v:
                continue
            if u == v:
                x = w
            if ap[v][u] != aq[w][x] or ap[u][v] != aq[x][w]:
                return False
            if cp[u][v] != cq[x][w] or cp[v][u] != cq[w][x]:
                return False
            for d in degs:
                if rp.get((v, u, d), 0) != rq.get((w, x, d), 0) or \
                        rp.get((u, v, d), 0) != rq.get((x, w, d), 0):
                    return False
        return True

    def rec(v):
        if v == n:
            count[0] += 1
            yield list(perm)
            return
        choices = [fixed[v]] if v in fixed else range(n)
        for w in choices:
            if used[w] or sp[v] != sq[w]:
                continue
            if not compatible(v, w):
                continue
            perm[v] = w
            used[w] = True
            yield from rec(v + 1)
            perm[v] = None
            used[w] = False
            if limit is not None and count[0] >= limit:
                return

    yield from rec(0)


def quiver_isomorphic(p, q, fixed: Optional[dict] = None) -> bool:
    """Structural comparison by a vertex bijection (see ``vertex_bijections``)."""
    ip, iq = structure_invariants(p), structure_invariants(q)
    for _ in vertex_bijections(ip, iq, fixed, limit=1):
        return True
    return False


def cartan_bijections(cartan_p, cartan_q, fixed: Optional[dict] = None, tag_p=None, tag_q=None):
    """Vertex bijections matching two Cartan matrices, optionally preserving a tagged set."""
    n = len(cartan_p)
    if n != len(cartan_q):
        return
    tag_p = set(tag_p or [])
    tag_q = set(tag_q or [])
    for perm in itertools.permutations(range(n)):
        if fixed and any(perm[k] != v for k, v in fixed.items()):
            continue
        if any((v in tag_p) != (perm[v] in tag_q) for v in range(n)):
            continue
        if all(cartan_p[s][t] == cartan_q[perm[s]][perm[t]] for s in range(n) for t in range(n)):
            yield list(perm)
