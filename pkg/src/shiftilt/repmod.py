"""Finite-dimensional modules as quiver representations.

A module over an ``FDAlgebra`` is a vector space per vertex together with a
matrix for each arrow of the algebra's quiver (source component to target
component).  Arbitrary basis elements act through their arrow-word
expressions, so the same code serves path algebras, endomorphism algebras,
corner and quotient algebras alike.
"""
from __future__ import annotations

import random
from typing import Optional, Sequence

import sympy

from .exactlinalg import (FieldSpec, Matrix, Subspace, charpoly, inverse, kernel_vectors,
                          kernel_with_free,
                          rank, rank_of_rows, rref)
from .quiver_algebra import FDAlgebra, opposite_algebra

DEFAULT_SEED = 20240517
DECOMPOSITION_BUDGET = 64


class DecompositionInconclusive(RuntimeError):
    """The randomized splitting search ran out of attempts."""


def opposite(a: FDAlgebra) -> FDAlgebra:
    """The opposite algebra, cached so that ``opposite(opposite(a)) is a``."""
    op = a.meta.get("op")
    if op is None:
        op = opposite_algebra(a)
        a.meta["op"] = op
        op.meta["op"] = a
    return op


class Representation:
    """Per-vertex dimensions plus one matrix per arrow."""

    def __init__(self, algebra: FDAlgebra, dims: Sequence[int], action: Sequence[Matrix],
                 check: bool = False):
        self.algebra = algebra
        self.field = algebra.field
        self.dims = tuple(int(d) for d in dims)
        self.action = tuple(action)
        self._acts: dict = {}
        self.cache: dict = {}
        if len(self.dims) != algebra.n_vertices or len(self.action) != len(algebra.arrows):
            raise ValueError("dimension vector or arrow list does not match the algebra")
        for arr, m in zip(algebra.arrows, self.action):
            if m.shape != (self.dims[arr.target], self.dims[arr.source]):
                raise ValueError(f"arrow {arr.name}: matrix shape {m.shape} does not match dims")
        if check and not self.satisfies_relations():
            raise ValueError("arrow matrices violate the algebra relations")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def offsets(self) -> list:
        out, o = [], 0
        for d in self.dims:
            out.append(o)
            o += d
        return out

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def act(self, i: int) -> Matrix:
        """Matrix of basis element ``i``: component at its source to its target."""
        m = self._acts.get(i)
        if m is not None:
            return m
        a = self.algebra
        s, t = a.src[i], a.tgt[i]
        fld = self.field
        total = Matrix.zeros(fld, self.dims[t], self.dims[s])
        for coeff, word in a.words[i]:
            if not word:
                term = Matrix.identity(fld, self.dims[s])
            else:
                term = self.action[word[0]]
                for w in word[1:]:
                    term = term @ self.action[w]
            total = total + term.scale(coeff)
        self._acts[i] = total
        return total

    def act_element(self, vec: Sequence, s: int, t: int) -> Matrix:
        """Matrix of the ``e_t (vec) e_s`` part of an algebra element."""
        total = Matrix.zeros(self.field, self.dims[t], self.dims[s])
        for i in self.algebra.piece(s, t):
            if vec[i]:
                total = total + self.act(i).scale(vec[i])
        return total

    def satisfies_relations(self) -> bool:
        """Check that basis products act as the products of their actions."""
        a = self.algebra
        for (i, j), prod in a.mult.items():
            lhs = self.act(i) @ self.act(j)
            rhs = self.act_element(_dense(a, prod), a.src[j], a.tgt[i])
            if lhs != rhs:
                return False
        # products that vanish in the algebra must vanish on the module
        for i in range(a.dim):
            for j in range(a.dim):
                if a.src[i] == a.tgt[j] and (i, j) not in a.mult:
                    if not (self.act(i) @ self.act(j)).is_zero():
                        return False
        return True

    def __repr__(self):
        return f"<Representation dims={self.dims}>"


def _dense(a: FDAlgebra, sparse: dict) -> list:
    v = a.zero_vec()
    for k, c in sparse.items():
        v[k] = c
    return v


class ModuleMap:
    """A module homomorphism: one matrix per vertex."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Representation, target: Representation, blocks: Sequence[Matrix]):
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)

    @classmethod
    def zero(cls, source, target):
        f = source.field
        return cls(source, target, [Matrix.zeros(f, target.dims[v], source.dims[v])
                                    for v in range(len(source.dims))])

    @classmethod
    def identity(cls, m: Representation):
        return cls(m, m, [Matrix.identity(m.field, d) for d in m.dims])

    @classmethod
    def from_flat(cls, source, target, vec):
        blocks = []
        pos = 0
        for v in range(len(source.dims)):
            r, c = target.dims[v], source.dims[v]
            rows = [list(vec[pos + i * c: pos + (i + 1) * c]) for i in range(r)]
            blocks.append(Matrix._raw(source.field, rows, c))
            pos += r * c
        return cls(source, target, blocks)

    def flat(self) -> list:
        return [x for b in self.blocks for r in b.rows for x in r]

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self`` after ``other``."""
        return ModuleMap(other.source, self.target,
                         [a @ b for a, b in zip(self.blocks, other.blocks)])

    __matmul__ = compose

    def __add__(self, other):
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        return ModuleMap(self.source, self.target, [a - b for a, b in zip(self.blocks, other.blocks)])

    def scale(self, c):
        return ModuleMap(self.source, self.target, [b.scale(c) for b in self.blocks])

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_iso(self) -> bool:
        return all(b.nrows == b.ncols and rank(b) == b.nrows for b in self.blocks)

    def is_mono(self) -> bool:
        return all(rank(b) == b.ncols for b in self.blocks)

    def is_epi(self) -> bool:
        return all(rank(b) == b.nrows for b in self.blocks)

    def rank(self) -> int:
        return sum(rank(b) for b in self.blocks)

    def is_natural(self) -> bool:
        src, tgt = self.source, self.target
        for k, arr in enumerate(src.algebra.arrows):
            if tgt.action[k] @ self.blocks[arr.source] != self.blocks[arr.target] @ src.action[k]:
                return False
        return True

    def __eq__(self, other):
        return isinstance(other, ModuleMap) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)


# ---------------------------------------------------------------------------
# Hom spaces


class HomSpace:
    """Basis of ``Hom(source, target)`` with cheap coordinate extraction.

    The basis comes from a null space computation, so each basis vector is 1
    at its own free coordinate and 0 at the others; coordinates of any map in
    the space are read off at those free positions.
    """

    def __init__(self, source, target, vectors, free):
        self.source = source
        self.target = target
        self.vectors = vectors
        self.free = free
        self._basis = None

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def basis(self) -> list:
        if self._basis is None:
            self._basis = [ModuleMap.from_flat(self.source, self.target, v) for v in self.vectors]
        return self._basis

    def coords(self, f) -> list:
        vec = f.flat() if isinstance(f, ModuleMap) else f
        return [vec[c] for c in self.free]

    def combine(self, coeffs) -> ModuleMap:
        n = len(self.vectors[0]) if self.vectors else _flat_len(self.source, self.target)
        fld = self.source.field
        vec = [fld.zero] * n
        p = fld.p
        for c, v in zip(coeffs, self.vectors):
            if c:
                for i, x in enumerate(v):
                    if x:
                        vec[i] += c * x
        if p is not None:
            vec = [x % p for x in vec]
        return ModuleMap.from_flat(self.source, self.target, vec)

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.basis)


def _flat_len(m, n):
    return sum(a * b for a, b in zip(m.dims, n.dims))


def _hom_system(m: Representation, n: Representation):
    """Rows of the naturality system whose null space is Hom(m, n)."""
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    fld = m.field
    p = fld.p
    offs = []
    o = 0
    for v in range(len(m.dims)):
        offs.append(o)
        o += n.dims[v] * m.dims[v]
    nunk = o
    rows = []
    for k, arr in enumerate(m.algebra.arrows):
        s, t = arr.source, arr.target
        ms, mt = m.dims[s], m.dims[t]
        ns, nt = n.dims[s], n.dims[t]
        if nt == 0 or ms == 0:
            continue
        na = n.action[k].rows   # nt x ns
        ma = m.action[k].rows   # mt x ms
        for r in range(nt):
            nrow = na[r]
            for c in range(ms):
                row = {}
                # sum_k N[r,k] f_s[k,c]
                for kk in range(ns):
                    x = nrow[kk]
                    if x:
                        idx = offs[s] + kk * ms + c
                        row[idx] = row.get(idx, 0) + x
                # - sum_k f_t[r,k] M[k,c]
                for kk in range(mt):
                    x = ma[kk][c]
                    if x:
                        idx = offs[t] + r * mt + kk
                        row[idx] = row.get(idx, 0) - x
                if any(row.values()):
                    dense = [fld.zero] * nunk
                    for idx, x in row.items():
                        dense[idx] = x if p is None else x % p
                    rows.append(dense)
    return rows, nunk


def hom_space(m: Representation, n: Representation) -> HomSpace:
    """Basis of all module maps ``m -> n``."""
    key = ("hom", id(n))
    cached = m.cache.get(key)
    if cached is not None and cached[0] is n:
        return cached[1]
    rows, nunk = _hom_system(m, n)
    vecs, free = kernel_with_free(m.field, rows, nunk)
    hs = HomSpace(m, n, vecs, free)
    m.cache[key] = (n, hs)
    return hs


def hom_dim(m: Representation, n: Representation) -> int:
    key = ("hom", id(n))
    cached = m.cache.get(key)
    if cached is not None and cached[0] is n:
        return cached[1].dim
    rows, nunk = _hom_system(m, n)
    return nunk - rank_of_rows(m.field, rows, nunk)


def end_dim(m: Representation) -> int:
    return hom_dim(m, m)


# ---------------------------------------------------------------------------
# standard modules


def projective(a: FDAlgebra, v) -> Representation:
    """``P(v) = A e_v``: basis the basis elements with source ``v``."""
    v = a.vertex_index(v)
    key = ("P", v)
    if key in a._cache:
        return a._cache[key]
    fld = a.field
    pos = {}
    dims = []
    for w in range(a.n_vertices):
        idx = a.piece(v, w)
        pos.update({b: k for k, b in enumerate(idx)})
        dims.append(len(idx))
    action = []
    for arr in a.arrows:
        s, t = arr.source, arr.target
        cols = a.piece(v, s)
        m = Matrix.zeros(fld, dims[t], dims[s])
        for c, x in enumerate(cols):
            prod = a.mul(arr.element, a.unit_vec(x))
            for k, val in enumerate(prod):
                if val:
                    m.rows[pos[k]][c] = val
        action.append(m)
    rep = Representation(a, dims, action)
    rep.cache["kind"] = ("P", v)
    a._cache[key] = rep
    return rep


def injective(a: FDAlgebra, v) -> Representation:
    """``I(v) = D(e_v A)``, built as the dual of the projective over the opposite algebra."""
    v = a.vertex_index(v)
    key = ("I", v)
    if key in a._cache:
        return a._cache[key]
    rep = dual(projective(opposite(a), v))
    rep.cache["kind"] = ("I", v)
    a._cache[key] = rep
    return rep


def simple(a: FDAlgebra, v) -> Representation:
    v = a.vertex_index(v)
    dims = [0] * a.n_vertices
    dims[v] = 1
    action = [Matrix.zeros(a.field, dims[arr.target], dims[arr.source]) for arr in a.arrows]
    rep = Representation(a, dims, action)
    rep.cache["kind"] = ("S", v)
    return rep


def zero_module(a: FDAlgebra) -> Representation:
    dims = [0] * a.n_vertices
    return Representation(a, dims, [Matrix.zeros(a.field, 0, 0) for _ in a.arrows])


def regular(a: FDAlgebra) -> Representation:
    return direct_sum([projective(a, v) for v in range(a.n_vertices)])[0]


def coregular(a: FDAlgebra) -> Representation:
    return direct_sum([injective(a, v) for v in range(a.n_vertices)])[0]


def dual(m: Representation) -> Representation:
    """``D m`` over the opposite algebra: transpose every arrow matrix."""
    op = opposite(m.algebra)
    d = Representation(op, m.dims, [x.transpose() for x in m.action])
    return d


def dual_map(f: ModuleMap, source: Optional[Representation] = None,
             target: Optional[Representation] = None) -> ModuleMap:
    """``D f : D target -> D source``."""
    src = target if target is not None else dual(f.target)
    tgt = source if source is not None else dual(f.source)
    return ModuleMap(src, tgt, [b.transpose() for b in f.blocks])


# ---------------------------------------------------------------------------
# kernels, images, cokernels, sums


def _restrict_action(m: Representation, bases: list, frames: list) -> list:
    """Arrow matrices of a submodule given per-vertex bases (lists of vectors)."""
    fld = m.field
    action = []
    for k, arr in enumerate(m.algebra.arrows):
        s, t = arr.source, arr.target
        cols = []
        for vec in bases[s]:
            img = m.action[k].apply(vec)
            coords = frames[t].coords(img)
            if coords is None:
                raise ValueError("subspaces are not closed under the arrow action")
            cols.append(coords)
        action.append(Matrix.from_columns(fld, cols, len(bases[t])) if cols else
                      Matrix.zeros(fld, len(bases[t]), 0))
    return action


def submodule(m: Representation, bases: list):
    """Submodule spanned per vertex by ``bases``; returns ``(sub, inclusion)``."""
    fld = m.field
    frames = [Subspace(fld, m.dims[v], bases[v]) for v in range(len(m.dims))]
    bases = [f.basis for f in frames]
    sub = Representation(m.algebra, [len(b) for b in bases], _restrict_action(m, bases, frames))
    inc = ModuleMap(sub, m, [Matrix.from_columns(fld, bases[v], m.dims[v]) if bases[v]
                             else Matrix.zeros(fld, m.dims[v], 0) for v in range(len(m.dims))])
    return sub, inc


def quotient(m: Representation, bases: list):
    """Quotient of ``m`` by the submodule spanned by ``bases``; returns ``(q, projection)``."""
    fld = m.field
    comps, projs = [], []
    for v, d in enumerate(m.dims):
        frame = Subspace(fld, d, bases[v])
        sub_dim = frame.dim
        units = []
        for j in range(d):
            e = [fld.zero] * d
            e[j] = fld.one
            if frame.add(e):
                units.append(j)
        # change of basis [sub | units] and its inverse
        cols = frame.basis  # sub basis followed by chosen units
        full = Matrix.from_columns(fld, cols, d) if cols else Matrix.zeros(fld, d, 0)
        inv = inverse(full) if d else Matrix.zeros(fld, 0, 0)
        projs.append(Matrix._raw(fld, [list(r) for r in inv.rows[sub_dim:]], d))
        comps.append(units)
    action = []
    for k, arr in enumerate(m.algebra.arrows):
        s, t = arr.source, arr.target
        cols = []
        for j in comps[s]:
            col = m.action[k].column(j)
            cols.append(projs[t].apply(col))
        action.append(Matrix.from_columns(fld, cols, len(comps[t])) if cols else
                      Matrix.zeros(fld, len(comps[t]), 0))
    q = Representation(m.algebra, [len(c) for c in comps], action)
    return q, ModuleMap(m, q, projs)


def kernel(f: ModuleMap):
    fld = f.source.field
    bases = [kernel_vectors(fld, b.rows, b.ncols) for b in f.blocks]
    return submodule(f.source, bases)


def image(f: ModuleMap):
    """``(Im f, inclusion into the target, corestriction from the source)``."""
    fld = f.source.field
    bases = []
    for b in f.blocks:
        _, pivots, _ = rref(b)
        bases.append([b.column(j) for j in pivots])
    im, inc = submodule(f.target, bases)
    # corestriction: coordinates of f(x) in the image basis
    blocks = []
    for v, b in enumerate(f.blocks):
        frame = Subspace(fld, f.target.dims[v], bases[v])
        cols = [frame.coords(b.column(j)) for j in range(b.ncols)]
        blocks.append(Matrix.from_columns(fld, cols, im.dims[v]) if cols else
                      Matrix.zeros(fld, im.dims[v], 0))
    return im, inc, ModuleMap(f.source, im, blocks)


def cokernel(f: ModuleMap):
    bases = []
    for b in f.blocks:
        _, pivots, _ = rref(b)
        bases.append([b.column(j) for j in pivots])
    return quotient(f.target, bases)


def direct_sum(mods: Sequence[Representation]):
    """``(sum, injections, projections)``."""
    if not mods:
        raise ValueError("empty direct sum needs an algebra; use zero_module")
    a = mods[0].algebra
    fld = a.field
    nv = a.n_vertices
    dims = [sum(m.dims[v] for m in mods) for v in range(nv)]
    action = []
    from .exactlinalg import block_diag
    for k in range(len(a.arrows)):
        action.append(block_diag(fld, [m.action[k] for m in mods]))
    total = Representation(a, dims, action)
    injs, projs = [], []
    offs = [0] * nv
    for m in mods:
        ib, pb = [], []
        for v in range(nv):
            i = Matrix.zeros(fld, dims[v], m.dims[v])
            for r in range(m.dims[v]):
                i.rows[offs[v] + r][r] = fld.one
            ib.append(i)
            pb.append(i.transpose())
            offs[v] += m.dims[v]
        injs.append(ModuleMap(m, total, ib))
        projs.append(ModuleMap(total, m, pb))
    total.cache["sum_of"] = (list(mods), injs, projs)
    return total, injs, projs


def matrix_map(source: Sequence[Representation], target: Sequence[Representation],
               entries, src_sum=None, tgt_sum=None) -> ModuleMap:
    """Map between direct sums from a matrix of component maps (``entries[i][j]: source j -> target i``)."""
    S, sinj, sproj = src_sum or direct_sum(source)
    T, tinj, tproj = tgt_sum or direct_sum(target)
    f = ModuleMap.zero(S, T)
    for i in range(len(target)):
        for j in range(len(source)):
            e = entries[i][j]
            if e is None:
                continue
            f = f + tinj[i].compose(e).compose(sproj[j])
    return f


# ---------------------------------------------------------------------------
# top, radical, socle


def radical(m: Representation):
    """``(rad m, inclusion)``: the sum of the images of all arrows."""
    bases = [[] for _ in m.dims]
    for k, arr in enumerate(m.algebra.arrows):
        mat = m.action[k]
        bases[arr.target].extend(mat.columns())
    return submodule(m, [[v for v in b if any(v)] for b in bases])


def top(m: Representation):
    """``(m / rad m, projection)``."""
    rad, inc = radical(m)
    return cokernel(inc)


def socle(m: Representation):
    """``(soc m, inclusion)``: vectors killed by every arrow."""
    fld = m.field
    bases = []
    for v, d in enumerate(m.dims):
        rows = []
        for k, arr in enumerate(m.algebra.arrows):
            if arr.source == v:
                rows.extend(m.action[k].rows)
        bases.append(kernel_vectors(fld, rows, d) if rows else
                     [[fld.one if i == j else fld.zero for i in range(d)] for j in range(d)])
    return submodule(m, bases)


def top_vector(m: Representation) -> tuple:
    return top(m)[0].dims


def socle_vector(m: Representation) -> tuple:
    return socle(m)[0].dims


# ---------------------------------------------------------------------------
# Nakayama functors


def right_multiplication(a: FDAlgebra, x: Sequence, s: int, t: int) -> ModuleMap:
    """``P(t) -> P(s)``, ``y -> y x`` for ``x`` in ``e_t A e_s``."""
    pt, ps = projective(a, t), projective(a, s)
    blocks = []
    for w in range(a.n_vertices):
        rows_idx = a.piece(s, w)
        pos = {b: k for k, b in enumerate(rows_idx)}
        cols = a.piece(t, w)
        mat = Matrix.zeros(a.field, len(rows_idx), len(cols))
        for c, y in enumerate(cols):
            prod = a.mul(a.unit_vec(y), x)
            for k, val in enumerate(prod):
                if val:
                    mat.rows[pos[k]][c] = val
        blocks.append(mat)
    return ModuleMap(pt, ps, blocks)


def nakayama(m: Representation) -> Representation:
    """``nu m = D Hom(m, A)``: the component at ``v`` is ``D Hom(m, P(v))``."""
    a = m.algebra
    fld = a.field
    homs = [hom_space(m, projective(a, v)) for v in range(a.n_vertices)]
    action = []
    for arr in a.arrows:
        s, t = arr.source, arr.target
        rmul = right_multiplication(a, arr.element, s, t)   # P(t) -> P(s)
        # g in Hom(m, P(t)) -> rmul o g in Hom(m, P(s)); dualise
        cols = [homs[s].coords(rmul.compose(g)) for g in homs[t].basis]
        mat = Matrix.from_columns(fld, cols, homs[s].dim) if cols else \
            Matrix.zeros(fld, homs[s].dim, 0)
        action.append(mat.transpose())
    return Representation(a, [h.dim for h in homs], action)


def nakayama_map(f: ModuleMap, source: Optional[Representation] = None,
                 target: Optional[Representation] = None) -> ModuleMap:
    """``nu f`` between ``nakayama(f.source)`` and ``nakayama(f.target)``."""
    a = f.source.algebra
    fld = a.field
    src = source if source is not None else nakayama(f.source)
    tgt = target if target is not None else nakayama(f.target)
    blocks = []
    for v in range(a.n_vertices):
        pv = projective(a, v)
        hx = hom_space(f.source, pv)
        hy = hom_space(f.target, pv)
        # Hom(Y,P) -> Hom(X,P), h -> h o f ; its transpose goes D Hom(X,P) -> D Hom(Y,P)
        cols = [hx.coords(h.compose(f)) for h in hy.basis]
        mat = Matrix.from_columns(fld, cols, hx.dim) if cols else Matrix.zeros(fld, hx.dim, 0)
        blocks.append(mat.transpose())
    return ModuleMap(src, tgt, blocks)


def nakayama_inv(m: Representation) -> Representation:
    """``Hom(DA, m)``, computed as ``D nu_{A^op}(D m)``."""
    return dual(nakayama(dual(m)))


def nakayama_inv_map(f: ModuleMap, source=None, target=None) -> ModuleMap:
    df = dual_map(f)
    nd = nakayama_map(df)
    return dual_map(nd, source=source, target=target)


# ---------------------------------------------------------------------------
# decomposition


class Decomposition:
    """Indecomposable summands with multiplicities and the maps realizing the sum.

    ``pieces`` lists every indecomposable copy as ``(summand index, embedding,
    projection)``.
    """

    def __init__(self, module, summands, multiplicities, pieces):
        self.module = module
        self.summands = summands
        self.multiplicities = multiplicities
        self.pieces = pieces

    @property
    def embeddings(self):
        return [e for _, e, _ in self.pieces]

    @property
    def projections(self):
        return [p for _, _, p in self.pieces]

    def __iter__(self):
        return iter(zip(self.summands, self.multiplicities))

    def __len__(self):
        return len(self.summands)

    def check(self) -> bool:
        m = self.module
        total = ModuleMap.zero(m, m)
        for i, (_, e, p) in enumerate(self.pieces):
            total = total + e.compose(p)
            for j, (_, e2, _) in enumerate(self.pieces):
                pe = p.compose(e2)
                if i == j:
                    if not pe.is_iso() or pe != ModuleMap.identity(pe.source):
                        return False
                elif not pe.is_zero():
                    return False
        return total == ModuleMap.identity(m)


def _trace_form_radical_dim(hs: HomSpace) -> tuple:
    """(dim End, dim of the trace-form radical) for an endomorphism space."""
    m = hs.source
    fld = m.field
    basis = hs.basis
    e = len(basis)
    gram = []
    for x in basis:
        row = []
        for y in basis:
            s = fld.zero
            for bx, by in zip(x.blocks, y.blocks):
                n = bx.nrows
                for r in range(n):
                    xr = bx.rows[r]
                    for c in range(n):
                        if xr[c]:
                            yv = by.rows[c][r]
                            if yv:
                                s += xr[c] * yv
            row.append(s if fld.p is None else s % fld.p)
        gram.append(row)
    ker = kernel_vectors(fld, gram, e)
    return e, ker


def _radical_is_nilpotent(hs: HomSpace, ker) -> bool:
    """Check that the span of ``ker`` (coordinates in ``hs``) is a nilpotent ideal."""
    elems = [hs.combine(v) for v in ker]
    if not elems:
        return True
    power = elems
    for _ in range(hs.source.total_dim + 1):
        prods = [x.compose(y) for x in power for y in elems]
        sub = Subspace(hs.source.field, _flat_len(hs.source, hs.source),
                       [p.flat() for p in prods if not p.is_zero()])
        if sub.dim == 0:
            return True
        power = [ModuleMap.from_flat(hs.source, hs.source, v) for v in sub.basis]
    return False


def is_local(m: Representation) -> bool:
    """True when ``End(m)`` modulo its radical is the base field."""
    if m.total_dim == 0:
        return False
    cached = m.cache.get("local")
    if cached is not None:
        return cached
    hs = hom_space(m, m)
    e, ker = _trace_form_radical_dim(hs)
    fld = m.field
    small_char = fld.p is not None and fld.p <= m.total_dim
    if small_char and not _radical_is_nilpotent(hs, ker):
        raise DecompositionInconclusive("trace-form radical is not nilpotent in small characteristic")
    res = (e - len(ker)) == 1
    m.cache["local"] = res
    return res


def _poly_factors(coeffs, fld: FieldSpec):
    """Distinct monic irreducible factors (coefficients low->high) of a polynomial."""
    x = sympy.Symbol("x")
    if fld.p is None:
        sc = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(coeffs)]
        poly = sympy.Poly(sc, x, domain="QQ")
    else:
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], x, modulus=fld.p)
    out = []
    for fac, _ in poly.factor_list()[1]:
        cs = fac.all_coeffs()
        lead = cs[0]
        if fld.p is None:
            cs = [sympy.Rational(c) / lead for c in cs]
            cs = [fld(f"{int(c.p)}/{int(c.q)}") for c in cs]
        else:
            li = pow(int(lead) % fld.p, -1, fld.p)
            cs = [int(c) * li % fld.p for c in cs]
        out.append(list(reversed(cs)))
    return out


def _poly_eval(coeffs, mat: Matrix) -> Matrix:
    fld = mat.field
    n = mat.nrows
    acc = Matrix.zeros(fld, n, n)
    ident = Matrix.identity(fld, n)
    for c in reversed(coeffs):
        acc = acc @ mat + ident.scale(c)
    return acc


def _split_by(m: Representation, phi: ModuleMap):
    """Primary decomposition of ``m`` under the endomorphism ``phi``, or None."""
    fld = m.field
    factors = []
    for v, blk in enumerate(phi.blocks):
        if blk.nrows == 0:
            continue
        for f in _poly_factors(charpoly(blk), fld):
            if f not in factors:
                factors.append(f)
    if len(factors) < 2:
        return None
    parts = []
    for f in factors:
        bases = []
        for v, blk in enumerate(phi.blocks):
            d = blk.nrows
            if d == 0:
                bases.append([])
                continue
            q = _poly_eval(f, blk)
            power = q
            for _ in range(d - 1):
                power = power @ q
            bases.append(kernel_vectors(fld, power.rows, d))
        parts.append(bases)
    return parts


def _split_module(m: Representation, parts):
    """Submodules, embeddings and projections from a direct splitting into subspaces."""
    fld = m.field
    nv = len(m.dims)
    subs = [submodule(m, b) for b in parts]
    projs_blocks = [[] for _ in subs]
    for v in range(nv):
        cols = [vec for b in parts for vec in b[v]]
        if not cols:
            for k in range(len(subs)):
                projs_blocks[k].append(Matrix.zeros(fld, 0, m.dims[v]))
            continue
        # subspace bases in ``submodule`` are the echelon-free originals, in order
        basis_cols = [vec for (sub, inc) in subs for vec in inc.blocks[v].columns()]
        inv = inverse(Matrix.from_columns(fld, basis_cols, m.dims[v]))
        r0 = 0
        for k, (sub, _) in enumerate(subs):
            d = sub.dims[v]
            projs_blocks[k].append(Matrix._raw(fld, [list(r) for r in inv.rows[r0:r0 + d]],
                                               m.dims[v]))
            r0 += d
    out = []
    for k, (sub, inc) in enumerate(subs):
        out.append((sub, inc, ModuleMap(m, sub, projs_blocks[k])))
    return out


def _indecomposable_pieces(m: Representation, rng: random.Random):
    """List of ``(indecomposable, embedding, projection)`` covering ``m``."""
    if m.total_dim == 0:
        return []
    hint = m.cache.get("sum_of")
    if hint is not None and len(hint[0]) > 1:
        out = []
        for part, inj, proj in zip(*hint):
            for x, e, p in _indecomposable_pieces(part, rng):
                out.append((x, inj.compose(e), p.compose(proj)))
        return out
    if m.cache.get("indecomposable") or is_local(m):
        return [(m, ModuleMap.identity(m), ModuleMap.identity(m))]
    hs = hom_space(m, m)
    basis = hs.vectors
    e = len(basis)
    fld = m.field
    for attempt in range(DECOMPOSITION_BUDGET):
        coeffs = [fld.zero] * e
        if attempt < e:
            # basis endomorphisms are often idempotent-like; try them first
            coeffs[attempt] = fld.one
        else:
            for i in rng.sample(range(e), rng.randint(1, e)):
                coeffs[i] = fld(rng.choice([-3, -2, -1, 1, 2, 3]))
        phi = hs.combine(coeffs)
        parts = _split_by(m, phi)
        if parts is None:
            continue
        out = []
        for sub, inc, proj in _split_module(m, parts):
            for x, e2, p2 in _indecomposable_pieces(sub, rng):
                out.append((x, inc.compose(e2), p2.compose(proj)))
        return out
    raise DecompositionInconclusive(f"no splitting found for module with dims {m.dims}")


def decompose(m: Representation, seed: Optional[int] = None) -> Decomposition:
    """Krull-Schmidt decomposition, grouping isomorphic summands."""
    cached = m.cache.get("decomposition")
    if cached is not None:
        return cached
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    pieces = _indecomposable_pieces(m, rng)
    summands, mults, labelled = [], [], []
    for x, e, p in pieces:
        x.cache["indecomposable"] = True
        x.cache["local"] = True
        for k, y in enumerate(summands):
            if _iso_indecomposable(x, y):
                mults[k] += 1
                labelled.append((k, e, p))
                break
        else:
            summands.append(x)
            mults.append(1)
            labelled.append((len(summands) - 1, e, p))
    d = Decomposition(m, summands, mults, labelled)
    m.cache["decomposition"] = d
    return d


def indecomposables(m: Representation) -> list:
    return list(decompose(m).summands)


def is_indecomposable(m: Representation) -> bool:
    return m.total_dim > 0 and (m.cache.get("indecomposable") or is_local(m))


def _iso_indecomposable(x: Representation, y: Representation) -> bool:
    """Iso test for modules with local endomorphism rings.

    ``x ≅ y`` iff some composite ``g o f`` of basis maps is invertible, since
    non-invertible endomorphisms of ``x`` form an ideal.
    """
    if x.dims != y.dims:
        return False
    if x is y:
        return True
    hxy = hom_space(x, y)
    if not hxy.dim:
        return False
    hyx = hom_space(y, x)
    for f in hxy.basis:
        for g in hyx.basis:
            if g.compose(f).is_iso():
                return True
    return False


def find_isomorphism(m: Representation, n: Representation, seed: Optional[int] = None,
                     tries: int = 8) -> Optional[ModuleMap]:
    """A random invertible element of ``Hom(m, n)``, or None if none was found."""
    if m.dims != n.dims:
        return None
    hs = hom_space(m, n)
    if not hs.dim and m.total_dim:
        return None
    if m.total_dim == 0:
        return ModuleMap.zero(m, n)
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    fld = m.field
    span = 1000 if fld.p is None else fld.p - 1
    for _ in range(tries):
        coeffs = [fld(rng.randint(-span, span)) for _ in range(hs.dim)]
        f = hs.combine(coeffs)
        if f.is_iso():
            return f
    return None


def is_isomorphic(m: Representation, n: Representation) -> bool:
    """Exact isomorphism test.

    A random element of ``Hom(m, n)`` certifies an isomorphism when it is
    invertible; otherwise the answer comes from comparing decompositions,
    which is deterministic.
    """
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    if m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    if find_isomorphism(m, n, tries=3) is not None:
        return True
    dm, dn = decompose(m), decompose(n)
    if sorted(dm.multiplicities) != sorted(dn.multiplicities):
        return False
    used = [False] * len(dn.summands)
    for x, k in zip(dm.summands, dm.multiplicities):
        for j, (y, l) in enumerate(zip(dn.summands, dn.multiplicities)):
            if not used[j] and k == l and _iso_indecomposable(x, y):
                used[j] = True
                break
        else:
            return False
    return True


def iso_index(x: Representation, candidates: Sequence[Representation]) -> Optional[int]:
    """Index of the candidate isomorphic to the indecomposable ``x``."""
    for i, y in enumerate(candidates):
        if _iso_indecomposable(x, y):
            return i
    return None


def add_equal(m: Representation, n: Representation) -> bool:
    """Same additive closure: the same indecomposable summands up to isomorphism."""
    xs, ys = indecomposables(m), indecomposables(n)
    if len(xs) != len(ys):
        return False
    return all(iso_index(x, ys) is not None for x in xs) and \
        all(iso_index(y, xs) is not None for y in ys)


def in_add(m: Representation, n: Representation) -> bool:
    """Whether every indecomposable summand of ``m`` is a summand of ``n``."""
    if m.total_dim == 0:
        return True
    ys = indecomposables(n)
    return all(iso_index(x, ys) is not None for x in indecomposables(m))


def basic_summands(mods: Sequence[Representation]) -> list:
    """Pairwise non-isomorphic indecomposable summands of the given modules, in order."""
    out = []
    for m in mods:
        if m.total_dim == 0:
            continue
        for x in indecomposables(m):
            if iso_index(x, out) is None:
                out.append(x)
    return out


def make_basic(m: Representation) -> Representation:
    xs = indecomposables(m)
    if not xs:
        return zero_module(m.algebra)
    if len(xs) == 1:
        return xs[0]
    return direct_sum(xs)[0]
