"""Quiver presentations and finite-dimensional algebras given by structure constants.

Paths compose right-to-left: the word ``a*b`` is ``a`` after ``b`` and needs
``target(b) == source(a)``.  With this convention left modules are exactly
representations with linear maps along the arrows.

Every ``FDAlgebra`` here has a *vertex-homogeneous* basis: each basis element
``x`` lies in ``e_t x e_s`` for a target vertex ``t`` and a source vertex
``s``, and the vertex idempotents are themselves basis elements.  Algebras
also carry a quiver: arrows are elements of the radical, and every basis
element has an expression as a combination of arrow words, which is how
modules (given by arrow matrices) learn to act by arbitrary elements.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .exactlinalg import FieldSpec, Matrix, QQ, Subspace, kernel_vectors, rref


class CapExceeded(Exception):
    """A length or resolution cap was reached before termination."""


class PresentationError(ValueError):
    """Malformed quiver presentation; carries the offending line when known."""

    def __init__(self, msg, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + msg)


@dataclass(frozen=True)
class QuiverPresentation:
    field: FieldSpec
    vertices: tuple
    arrows: tuple                      # (name, source label, target label)
    relations: tuple = ()              # each relation: tuple of (coeff, word tuple)

    def __post_init__(self):
        validate_presentation(self)

    def arrow_index(self, name):
        for i, a in enumerate(self.arrows):
            if a[0] == name:
                return i
        raise PresentationError(f"unknown arrow {name!r}")


def _word_endpoints(p: QuiverPresentation, word):
    """(source, target) of a composable word, checking composability."""
    ends = {a[0]: (a[1], a[2]) for a in p.arrows}
    for name in word:
        if name not in ends:
            raise PresentationError(f"unknown arrow {name!r}")
    # rightmost arrow is applied first
    src, tgt = ends[word[-1]]
    for name in reversed(word[:-1]):
        s, t = ends[name]
        if s != tgt:
            raise PresentationError(f"word {'*'.join(word)} is not composable")
        tgt = t
    return src, tgt


def validate_presentation(p: QuiverPresentation):
    if len(set(p.vertices)) != len(p.vertices):
        raise PresentationError("duplicate vertex label")
    names = [a[0] for a in p.arrows]
    if len(set(names)) != len(names):
        raise PresentationError("duplicate arrow name")
    vs = set(p.vertices)
    for name, s, t in p.arrows:
        if s not in vs or t not in vs:
            raise PresentationError(f"arrow {name} uses an unknown vertex")
    for rel in p.relations:
        if not rel:
            raise PresentationError("empty relation")
        ends = set()
        for _, word in rel:
            if len(word) < 2:
                raise PresentationError(f"relation word {'*'.join(word)} has length < 2")
            ends.add(_word_endpoints(p, word))
        if len(ends) != 1:
            raise PresentationError("relation words do not share source and target")


_NUM = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_presentation(text: str) -> QuiverPresentation:
    """Parse the line-oriented quiver format (``field``/``vertex``/``arrow``/``relation``)."""
    fld = QQ
    vertices, arrows, relations = [], [], []
    lines = {"vertex": [], "arrow": [], "relation": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        key = toks[0]
        if key in lines:
            lines[key].append(lineno)
        try:
            if key == "field":
                if toks[1:] == ["Q"]:
                    fld = QQ
                elif len(toks) == 3 and toks[1] == "F":
                    fld = FieldSpec(int(toks[2]))
                else:
                    raise PresentationError("expected 'field Q' or 'field F <p>'", lineno)
            elif key == "vertex":
                if len(toks) != 2:
                    raise PresentationError("expected 'vertex <label>'", lineno)
                vertices.append(toks[1])
            elif key == "arrow":
                if len(toks) != 4:
                    raise PresentationError("expected 'arrow <name> <src> <dst>'", lineno)
                arrows.append((toks[1], toks[2], toks[3]))
            elif key == "relation":
                relations.append(_parse_relation(toks[1:], fld, lineno, raw))
            elif key in ("module", "dim", "map"):
                raise PresentationError("this is a module file, not an algebra file", lineno, 1)
            else:
                raise PresentationError(f"unknown keyword {key!r}", lineno, 1)
        except PresentationError as exc:
            if exc.line is None:
                raise PresentationError(str(exc), lineno) from None
            raise
        except (ValueError, ZeroDivisionError) as exc:
            raise PresentationError(str(exc), lineno) from None
    if not vertices:
        raise PresentationError("no vertices")
    try:
        return QuiverPresentation(fld, tuple(vertices), tuple(arrows), tuple(relations))
    except PresentationError as exc:
        raise PresentationError(str(exc), _locate(fld, vertices, arrows, relations, lines)) from None


def _locate(fld, vertices, arrows, relations, lines) -> Optional[int]:
    """Line of the first vertex/arrow/relation whose addition makes the presentation invalid."""
    seen = set()
    for v, ln in zip(vertices, lines["vertex"]):
        if v in seen:
            return ln
        seen.add(v)
    verts = tuple(dict.fromkeys(vertices))
    for i, ln in enumerate(lines["arrow"]):
        try:
            QuiverPresentation(fld, verts, tuple(arrows[:i + 1]), ())
        except PresentationError:
            return ln
    for i, ln in enumerate(lines["relation"]):
        try:
            QuiverPresentation(fld, verts, tuple(arrows), tuple(relations[:i + 1]))
        except PresentationError:
            return ln
    return None


def _parse_relation(toks, fld, lineno, raw):
    terms = []
    sign = 1
    i = 0
    if not toks:
        raise PresentationError("empty relation", lineno)
    while i < len(toks):
        t = toks[i]
        if t in ("+", "-"):
            sign = 1 if t == "+" else -1
            i += 1
            continue
        if _NUM.match(t) and i + 1 < len(toks) and not _NUM.match(toks[i + 1]) \
                and toks[i + 1] not in ("+", "-"):
            coeff = fld(t) * sign
            word = toks[i + 1]
            i += 2
        else:
            coeff = fld(sign)
            word = t
            i += 1
        if _NUM.match(word):
            col = raw.find(word) + 1
            raise PresentationError(f"expected a path word, got {word!r}", lineno, col)
        terms.append((coeff, tuple(word.split("*"))))
        sign = 1
    return tuple(terms)


def format_presentation(p: QuiverPresentation) -> str:
    lines = ["field Q" if p.field.p is None else f"field F {p.field.p}"]
    lines += [f"vertex {v}" for v in p.vertices]
    lines += [f"arrow {n} {s} {t}" for n, s, t in p.arrows]
    for rel in p.relations:
        parts = []
        for k, (c, w) in enumerate(rel):
            txt = p.field.to_str(c)
            if k and not txt.startswith("-"):
                parts.append("+")
            parts += [txt, "*".join(w)]
        lines.append("relation " + " ".join(parts))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


@dataclass
class Arrow:
    name: str
    source: int
    target: int
    element: list  # dense vector in the algebra basis


class FDAlgebra:
    """A finite-dimensional algebra with a vertex-homogeneous basis.

    ``mult[(i, j)]`` is the product ``b_i * b_j`` as a sparse dict; only
    composable pairs (``src[i] == tgt[j]``) can be nonzero.
    """

    def __init__(self, field: FieldSpec, vertices: Sequence, basis: Sequence, src: Sequence[int],
                 tgt: Sequence[int], mult: dict, idempotents: Sequence[int],
                 arrows: Optional[list] = None, words: Optional[list] = None, name: str = ""):
        self.field = field
        self.vertices = tuple(vertices)
        self.basis = tuple(basis)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.mult = mult
        self.idempotents = tuple(idempotents)
        self.name = name
        self.meta: dict = {}
        self._arrows = arrows
        self._words = words
        self._pieces = None
        self._cache: dict = {}

    # basic data ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def piece(self, s: int, t: int) -> list:
        """Basis indices spanning ``e_t A e_s``."""
        if self._pieces is None:
            pcs = {}
            for i, (a, b) in enumerate(zip(self.src, self.tgt)):
                pcs.setdefault((a, b), []).append(i)
            self._pieces = pcs
        return self._pieces.get((s, t), [])

    def cartan(self) -> list:
        """``cartan[t][s] = dim e_t A e_s``."""
        n = self.n_vertices
        return [[len(self.piece(s, t)) for s in range(n)] for t in range(n)]

    def zero_vec(self) -> list:
        return [self.field.zero] * self.dim

    def unit_vec(self, i: int) -> list:
        v = self.zero_vec()
        v[i] = self.field.one
        return v

    def one(self) -> list:
        v = self.zero_vec()
        for i in self.idempotents:
            v[i] = self.field.one
        return v

    def mul(self, x: Sequence, y: Sequence) -> list:
        out = self.zero_vec()
        p = self.field.p
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        mult = self.mult
        for i, a in xs:
            si = self.src[i]
            for j, b in ys:
                if self.tgt[j] != si:
                    continue
                prod = mult.get((i, j))
                if not prod:
                    continue
                ab = a * b
                for k, c in prod.items():
                    out[k] += ab * c
        if p is not None:
            out = [v % p for v in out]
        return out

    def basis_mul(self, i: int, j: int) -> dict:
        return self.mult.get((i, j), {})

    def check_associative(self) -> bool:
        n = self.dim
        for i in range(n):
            for j in range(n):
                if self.src[i] != self.tgt[j]:
                    continue
                for k in range(n):
                    if self.src[j] != self.tgt[k]:
                        continue
                    ei, ej, ek = self.unit_vec(i), self.unit_vec(j), self.unit_vec(k)
                    if self.mul(self.mul(ei, ej), ek) != self.mul(ei, self.mul(ej, ek)):
                        return False
        return True

    def check_idempotents(self) -> bool:
        for a, i in enumerate(self.idempotents):
            for b, j in enumerate(self.idempotents):
                want = self.unit_vec(i) if a == b else self.zero_vec()
                if self.mul(self.unit_vec(i), self.unit_vec(j)) != want:
                    return False
        for i in range(self.dim):
            x = self.unit_vec(i)
            et = self.unit_vec(self.idempotents[self.tgt[i]])
            es = self.unit_vec(self.idempotents[self.src[i]])
            if self.mul(self.mul(et, x), es) != x:
                return False
        return True

    # quiver data --------------------------------------------------------
    @property
    def arrows(self) -> list:
        if self._arrows is None:
            compute_quiver(self)
        return self._arrows

    @property
    def words(self) -> list:
        if self._words is None:
            compute_quiver(self)
        return self._words

    def vertex_index(self, label) -> int:
        if isinstance(label, int) and label not in self.vertices:
            return label
        return self.vertices.index(label)

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<FDAlgebra{nm} dim={self.dim} vertices={len(self.vertices)} over {self.field}>"


# ---------------------------------------------------------------------------
# building from a presentation


def _path_key(path):
    """Order paths by length then lexicographically by arrow declaration index."""
    return (len(path[1]), path[1], path[0])


def build_algebra(p: QuiverPresentation, cap: int = 30) -> FDAlgebra:
    """Quotient of the path algebra by the ideal generated by the relations."""
    fld = p.field
    vidx = {v: i for i, v in enumerate(p.vertices)}
    ar = [(vidx[s], vidx[t]) for _, s, t in p.arrows]
    aidx = {a[0]: i for i, a in enumerate(p.arrows)}
    rels = []
    for rel in p.relations:
        rels.append([(fld(c), tuple(aidx[w] for w in word)) for c, word in rel])

    def src_of(path):
        return path[0]

    def tgt_of(path):
        return ar[path[1][0]][1] if path[1] else path[0]

    # paths as (source vertex, arrows tuple); arrows tuple in composition order
    by_len = [[(v, ()) for v in range(len(p.vertices))]]

    def extend(paths):
        out = []
        for pth in paths:
            t = tgt_of(pth)
            for a, (s, _) in enumerate(ar):
                if s == t:
                    out.append((pth[0], (a,) + pth[1]))
        return out

    def rel_terms(rel):
        # (coeff, (source, arrows)) for each term of a relation
        return [(c, (ar[w[-1]][0], w)) for c, w in rel]

    def generators(limit):
        """u*r*v for all relations, dropping terms of length > limit."""
        out = []
        all_paths = [q for lvl in by_len for q in lvl]
        for rel in rels:
            terms = rel_terms(rel)
            rs, rt = terms[0][1][0], tgt_of(terms[0][1])
            minlen = min(len(w) for _, (_, w) in terms)
            for v in all_paths:
                if tgt_of(v) != rs:
                    continue
                for u in all_paths:
                    if src_of(u) != rt or len(u[1]) + len(v[1]) + minlen > limit:
                        continue
                    g = {}
                    for c, (_, w) in terms:
                        word = u[1] + w + v[1]
                        if len(word) > limit:
                            continue
                        key = (v[0], word)
                        g[key] = g.get(key, fld.zero) + c
                    g = {k: x for k, x in g.items() if x}
                    if g:
                        out.append(g)
        return out

    length = None
    for L in range(1, cap + 1):
        by_len.append(extend(by_len[-1]))
        top = by_len[L]
        if not top:
            length = L
            break
        gens = generators(L)
        # check every length-L path lies in span(gens) + J^{L+1}
        cols = sorted({q for lvl in by_len for q in lvl}, key=_path_key)
        col_of = {q: i for i, q in enumerate(cols)}
        span = Subspace(fld, len(cols))
        for g in gens:
            vec = [fld.zero] * len(cols)
            for k, x in g.items():
                vec[col_of[k]] = x
            span.add(vec)
        ok = True
        for q in top:
            vec = [fld.zero] * len(cols)
            vec[col_of[q]] = fld.one
            if not span.contains(vec):
                ok = False
                break
        if ok:
            length = L
            break
    if length is None:
        raise CapExceeded(f"no power of the arrow ideal vanishes up to length {cap}")

    # normal forms: paths of length < length, modulo generators truncated below length
    paths = sorted((q for lvl in by_len[:length] for q in lvl), key=_path_key)
    gens = generators(length - 1)
    groups: dict = {}
    for q in paths:
        groups.setdefault((src_of(q), tgt_of(q)), []).append(q)
    normal = {}      # path -> dict{survivor path: coeff}
    survivors = []
    for key, plist in groups.items():
        order = sorted(plist, key=_path_key, reverse=True)   # later paths become pivots
        col_of = {q: i for i, q in enumerate(order)}
        rows = []
        for g in gens:
            ks = list(g)
            if (src_of(ks[0]), tgt_of(ks[0])) != key:
                continue
            vec = [fld.zero] * len(order)
            for k, x in g.items():
                vec[col_of[k]] = x
            rows.append(vec)
        red, pivots, _ = rref(Matrix(fld, rows, len(order), coerce=False)) if rows else (None, [], 0)
        pivset = set(pivots)
        free = [q for i, q in enumerate(order) if i not in pivset]
        for q in free:
            normal[q] = {q: fld.one}
        for r, c in enumerate(pivots):
            q = order[c]
            nf = {}
            for i, x in enumerate(red.rows[r]):
                if x and i != c:
                    nf[order[i]] = -x if fld.p is None else (-x) % fld.p
            normal[q] = nf
        survivors.extend(free)
    survivors.sort(key=_path_key)
    index = {q: i for i, q in enumerate(survivors)}

    def reduce(path):
        if len(path[1]) >= length:
            return {}
        return {index[q]: c for q, c in normal[path].items()}

    n = len(survivors)
    mult = {}
    for i, x in enumerate(survivors):
        for j, y in enumerate(survivors):
            if src_of(x) != tgt_of(y):
                continue
            z = (y[0], x[1] + y[1])
            prod = reduce(z)
            if prod:
                mult[(i, j)] = prod
    idem = [index[(v, ())] for v in range(len(p.vertices))]
    labels = []
    for q in survivors:
        if q[1]:
            labels.append("*".join(p.arrows[a][0] for a in q[1]))
        else:
            labels.append(f"e{p.vertices[q[0]]}")
    arrows = []
    for a, (name, _, _) in enumerate(p.arrows):
        vec = [fld.zero] * n
        for k, c in reduce((ar[a][0], (a,))).items():
            vec[k] = c
        arrows.append(Arrow(name, ar[a][0], ar[a][1], vec))
    words = [[(fld.one, q[1])] for q in survivors]
    alg = FDAlgebra(fld, p.vertices, labels, [src_of(q) for q in survivors],
                    [tgt_of(q) for q in survivors], mult, idem, arrows, words)
    alg.meta["presentation"] = p
    alg.meta["loewy_bound"] = length
    return alg


def path_algebra(vertices, arrows, relations=(), field: FieldSpec = QQ, cap: int = 30) -> FDAlgebra:
    """Convenience constructor: relations as strings like ``"a*b - c*d"``."""
    parsed = []
    for r in relations:
        parsed.append(_parse_relation(r.replace("-", " - ").replace("+", " + ").split(),
                                      field, None, r))
    pres = QuiverPresentation(field, tuple(str(v) for v in vertices),
                              tuple((n, str(s), str(t)) for n, s, t in arrows), tuple(parsed))
    return build_algebra(pres, cap)


def opposite_algebra(a: FDAlgebra) -> FDAlgebra:
    """Same basis with reversed multiplication; arrows and words reversed."""
    mult = {(j, i): v for (i, j), v in a.mult.items()}
    arrows = [Arrow(x.name, x.target, x.source, list(x.element)) for x in a.arrows]
    words = [[(c, tuple(reversed(w))) for c, w in ws] for ws in a.words]
    op = FDAlgebra(a.field, a.vertices, a.basis, a.tgt, a.src, mult, a.idempotents,
                   arrows, words, name=(a.name + "^op") if a.name else "")
    op.meta["opposite_of"] = a
    return op


# ---------------------------------------------------------------------------
# quiver of an abstract algebra


def radical_basis(a: FDAlgebra) -> dict:
    """Basis vectors of ``e_t rad(A) e_s`` for every vertex pair.

    Off-diagonal pieces lie entirely in the radical.  For the local corner
    ``e_v A e_v`` the radical is the kernel of the trace form of its regular
    representation; it must have codimension one (basic, split algebra).
    """
    fld = a.field
    out = {}
    n = a.dim
    for s in range(a.n_vertices):
        for t in range(a.n_vertices):
            idx = a.piece(s, t)
            if not idx:
                continue
            if s != t:
                out[(s, t)] = [a.unit_vec(i) for i in idx]
                continue
            m = len(idx)
            pos = {b: k for k, b in enumerate(idx)}
            # traces of left multiplication on the corner
            tr = []
            for b in idx:
                total = fld.zero
                for c in idx:
                    total += a.basis_mul(b, c).get(c, fld.zero)
                tr.append(total if fld.p is None else total % fld.p)

            def trace_of_product(x, y):
                prod = a.basis_mul(x, y)
                return sum((coef * tr[pos[k]] for k, coef in prod.items() if k in pos), fld.zero)

            form = [[trace_of_product(x, y) for x in idx] for y in idx]
            if fld.p is not None:
                form = [[v % fld.p for v in r] for r in form]
            ker = kernel_vectors(fld, form, m)
            if len(ker) != m - 1:
                ker = _radical_small_char(a, idx, ker)
            vecs = []
            for kv in ker:
                v = [fld.zero] * n
                for k, b in enumerate(idx):
                    v[b] = kv[k]
                vecs.append(v)
            out[(s, t)] = vecs
    return out


def _radical_small_char(a, idx, ker):
    raise ValueError("vertex corner is not local with residue field equal to the base field "
                     "(algebra not basic or field too small)")


def compute_quiver(a: FDAlgebra):
    """Choose arrows (a lift of rad/rad^2) and express the basis in arrow words."""
    fld = a.field
    n = a.dim
    nv = a.n_vertices
    rad = radical_basis(a)
    rad2 = {}
    for (s, u), lower in rad.items():
        for (u2, t), upper in rad.items():
            if u2 != u:
                continue
            for y in upper:
                for x in lower:
                    rad2.setdefault((s, t), []).append(a.mul(y, x))
    arrows = []
    for (s, t) in sorted(rad, key=lambda st: (st[0], st[1])):
        sub = Subspace(fld, n, rad2.get((s, t), []))
        k = 0
        for v in rad[(s, t)]:
            if sub.add(v):
                arrows.append(Arrow(f"{a.vertices[s]}>{a.vertices[t]}" + (f"#{k}" if k else ""),
                                    s, t, v))
                k += 1
    # express the basis through arrow words
    kept = {}   # (s,t) -> (Subspace of element vectors, list of words)
    level = []
    for v in range(nv):
        sp = Subspace(fld, n)
        sp.add(a.unit_vec(a.idempotents[v]))
        kept[(v, v)] = (sp, [()])
        level.append(((), v, v, a.unit_vec(a.idempotents[v])))
    while level:
        new = []
        for word, s, t, vec in level:
            for ai, arr in enumerate(arrows):
                if arr.source != t:
                    continue
                prod = a.mul(arr.element, vec)
                if not any(prod):
                    continue
                key = (s, arr.target)
                if key not in kept:
                    kept[key] = (Subspace(fld, n), [])
                sp, ws = kept[key]
                if sp.add(prod):
                    w = (ai,) + word
                    ws.append(w)
                    new.append((w, s, arr.target, prod))
        level = new
    words = []
    for i in range(n):
        key = (a.src[i], a.tgt[i])
        if key not in kept:
            raise ValueError("arrows do not generate the algebra")
        sp, ws = kept[key]
        coords = sp.coords(a.unit_vec(i))
        if coords is None:
            raise ValueError("arrows do not generate the algebra")
        words.append([(c, ws[j]) for j, c in enumerate(coords) if c])
    a._arrows = arrows
    a._words = words
    return arrows, words
