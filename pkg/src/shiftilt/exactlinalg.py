"""Exact dense linear algebra over the rationals and prime fields.

Rationals are ``gmpy2.mpq`` values (always in lowest terms); prime-field
elements are plain ``int`` residues in ``range(p)``.  Matrices are immutable
row lists.  Every higher layer reduces its work to the routines here.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq, is_prime


class FieldSpec:
    """The base field: the rationals (``p is None``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: Optional[int] = None):
        if p is not None:
            p = int(p)
            if p < 2 or not is_prime(p):
                raise ValueError(f"{p} is not a prime")
        self.p = p

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.p == self.p

    def __hash__(self):
        return hash(("FieldSpec", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def zero(self):
        return mpq(0) if self.p is None else 0

    @property
    def one(self):
        return mpq(1) if self.p is None else 1

    def __call__(self, x):
        """Coerce an int, Fraction, mpq or ``"p/q"`` string into the field."""
        if self.p is None:
            if isinstance(x, str):
                return mpq(x.strip())
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, str):
            x = mpq(x.strip())
        if isinstance(x, Fraction):
            x = mpq(x.numerator, x.denominator)
        if isinstance(x, int):
            return x % self.p
        x = mpq(x)
        den = int(x.denominator) % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes in F{self.p}")
        return int(x.numerator) * pow(den, -1, self.p) % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def to_str(self, x) -> str:
        if self.p is None:
            x = mpq(x)
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(int(x) % self.p)


QQ = FieldSpec()


class Matrix:
    """An immutable ``nrows x ncols`` matrix stored as a tuple of row lists."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: FieldSpec, rows: Sequence[Sequence], ncols: Optional[int] = None,
                 coerce: bool = True):
        self.field = field
        rows = [list(r) for r in rows]
        if coerce:
            rows = [[field(x) for x in r] for r in rows]
        self.nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def _raw(cls, field, rows, ncols):
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls._raw(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @classmethod
    def from_columns(cls, field, cols: Sequence[Sequence], nrows: Optional[int] = None):
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return cls._raw(field, rows, len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.to_str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, [list(c) for c in zip(*self.rows)] if self.nrows else
                           [[] for _ in range(self.ncols)], self.nrows)

    T = property(transpose)

    def __add__(self, other):
        _check_same(self, other)
        p = self.field.p
        if p is None:
            rows = [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        else:
            rows = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix._raw(self.field, rows, self.ncols)

    def __sub__(self, other):
        _check_same(self, other)
        p = self.field.p
        if p is None:
            rows = [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        else:
            rows = [[(a - b) % p for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix._raw(self.field, rows, self.ncols)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        p = self.field.p
        if p is None:
            rows = [[c * a for a in r] for r in self.rows]
        else:
            rows = [[c * a % p for a in r] for r in self.rows]
        return Matrix._raw(self.field, rows, self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.p
        z = self.field.zero
        ncols = other.ncols
        orows = other.rows
        out = []
        for r in self.rows:
            acc = [z] * ncols
            for k, a in enumerate(r):
                if a:
                    ok = orows[k]
                    for j in range(ncols):
                        b = ok[j]
                        if b:
                            acc[j] += a * b
            if p is not None:
                acc = [x % p for x in acc]
            out.append(acc)
        return Matrix._raw(self.field, out, ncols)

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product."""
        p = self.field.p
        out = []
        for r in self.rows:
            s = self.field.zero
            for a, b in zip(r, vec):
                if a and b:
                    s += a * b
            out.append(s if p is None else s % p)
        return out

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        cols = list(cols)
        return Matrix._raw(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def flat(self) -> list:
        return [x for r in self.rows for x in r]


def _check_same(a: Matrix, b: Matrix):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def hstack(field, blocks: Sequence[Matrix], nrows: Optional[int] = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(field, nrows or 0, 0)
    n = blocks[0].nrows
    rows = [[x for b in blocks for x in b.rows[i]] for i in range(n)]
    return Matrix._raw(field, rows, sum(b.ncols for b in blocks))


def vstack(field, blocks: Sequence[Matrix], ncols: Optional[int] = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(field, 0, ncols or 0)
    rows = [list(r) for b in blocks for r in b.rows]
    return Matrix._raw(field, rows, blocks[0].ncols)


def block_diag(field, blocks: Sequence[Matrix]) -> Matrix:
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    out = Matrix.zeros(field, nr, nc)
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            out.rows[r0 + i][c0:c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return out


# ---------------------------------------------------------------------------
# elimination core


def _eliminate(rows: list, ncols: int, p: Optional[int], reduced: bool = True,
               track: Optional[list] = None):
    """In-place Gauss-Jordan elimination on a list of row lists.

    Returns the pivot columns.  Rows are reordered so that the first
    ``len(pivots)`` rows are the echelon rows.  If ``track`` is given it is a
    parallel list of rows receiving the same operations.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            if track is not None:
                track[r], track[piv] = track[piv], track[r]
        prow = rows[r]
        lead = prow[c]
        if p is None:
            if lead != 1:
                inv = 1 / lead
                prow = rows[r] = [x * inv if x else x for x in prow]
                if track is not None:
                    track[r] = [x * inv if x else x for x in track[r]]
        else:
            if lead != 1:
                inv = pow(lead, -1, p)
                prow = rows[r] = [x * inv % p for x in prow]
                if track is not None:
                    track[r] = [x * inv % p for x in track[r]]
        nz = [j for j in range(c, ncols) if prow[j]]
        tnz = None
        if track is not None:
            trow = track[r]
            tnz = [j for j in range(len(trow)) if trow[j]]
        start = 0 if reduced else r + 1
        for i in range(start, nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            if p is None:
                for j in nz:
                    row[j] -= f * prow[j]
            else:
                for j in nz:
                    row[j] = (row[j] - f * prow[j]) % p
            if track is not None:
                t = track[i]
                if p is None:
                    for j in tnz:
                        t[j] -= f * trow[j]
                else:
                    for j in tnz:
                        t[j] = (t[j] - f * trow[j]) % p
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix):
    """Reduced row-echelon form: returns ``(reduced, pivots, rank)``."""
    rows = [list(r) for r in m.rows]
    pivots = _eliminate(rows, m.ncols, m.field.p)
    return Matrix._raw(m.field, rows, m.ncols), pivots, len(pivots)


def rank(m: Matrix) -> int:
    rows = [list(r) for r in m.rows]
    return len(_eliminate(rows, m.ncols, m.field.p, reduced=False))


def rank_of_rows(field: FieldSpec, rows: Sequence[Sequence], ncols: int) -> int:
    rows = [list(r) for r in rows]
    return len(_eliminate(rows, ncols, field.p, reduced=False))


def kernel_basis(m: Matrix) -> Matrix:
    """Columns spanning the null space, one per free column of ``rref(m)``."""
    return Matrix.from_columns(m.field, kernel_vectors(m.field, m.rows, m.ncols), m.ncols)


def kernel_vectors(field: FieldSpec, rows: Sequence[Sequence], ncols: int) -> list:
    return kernel_with_free(field, rows, ncols)[0]


def kernel_with_free(field: FieldSpec, rows: Sequence[Sequence], ncols: int):
    """Null space basis and, for each basis vector, the free column where it is 1."""
    rows = [list(r) for r in rows]
    pivots = _eliminate(rows, ncols, field.p)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    one = field.one
    p = field.p
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = one
        for i, c in enumerate(pivots):
            x = rows[i][f]
            if x:
                v[c] = -x if p is None else (-x) % p
        basis.append(v)
    return basis, free


def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some ``x`` with ``a @ x == b``, or ``None`` when inconsistent."""
    if a.nrows != b.nrows:
        raise ValueError("row counts differ")
    field = a.field
    n = a.ncols
    rows = [list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)]
    pivots = _eliminate(rows, n + b.ncols, field.p)
    x = Matrix.zeros(field, n, b.ncols)
    for i, c in enumerate(pivots):
        if c >= n:
            return None
        x.rows[c] = rows[i][n:]
    return x


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ValueError("not square")
    x = solve(m, Matrix.identity(m.field, m.nrows))
    if x is None or rank(m) != m.nrows:
        raise ZeroDivisionError("singular matrix")
    return x


def is_invertible(m: Matrix) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows


def column_space(m: Matrix) -> list:
    """A basis (list of vectors) of the column space, chosen among the columns."""
    _, pivots, _ = rref(m)
    return [m.column(j) for j in pivots]


def charpoly(m: Matrix) -> list:
    """Characteristic polynomial coefficients, constant term first (monic).

    Hessenberg reduction followed by the usual recurrence; valid over any field.
    """
    n = m.nrows
    field = m.field
    p = field.p
    h = [list(r) for r in m.rows]

    def red(x):
        return x if p is None else x % p

    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if h[i][j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for r in h:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        inv = field.inv(h[j + 1][j])
        for i in range(j + 2, n):
            f = red(h[i][j] * inv)
            if not f:
                continue
            for k in range(n):
                h[i][k] = red(h[i][k] - f * h[j + 1][k])
            for r in h:
                r[j + 1] = red(r[j + 1] + f * r[i])
    # polys[k] = charpoly of leading k x k block, coefficient lists low->high
    polys = [[field.one]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [field.zero] + prev[:]  # x * prev
        a = h[k - 1][k - 1]
        for i in range(len(prev)):
            cur[i] = red(cur[i] - a * prev[i])
        prod = field.one
        for i in range(k - 1, 0, -1):
            prod = red(prod * h[i][i - 1])
            if not prod:
                break
            coef = red(prod * h[i - 1][k - 1])
            if coef:
                q = polys[i - 1]
                for t in range(len(q)):
                    cur[t] = red(cur[t] - coef * q[t])
        polys.append(cur)
    return polys[n]


class Subspace:
    """A subspace of ``field^n`` given by a spanning list of vectors.

    Keeps an echelon form with the change of basis back to the chosen basis
    vectors, so membership tests and coordinates are cheap.
    """

    def __init__(self, field: FieldSpec, n: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.n = n
        self.basis: list = []
        self._ech: list = []     # echelon rows (normalised at their pivot)
        self._comb: list = []    # each echelon row as a combination of basis vectors
        self._piv: list = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _reduce(self, v):
        """Reduce ``v`` against the echelon rows; return (remainder, combination)."""
        p = self.field.p
        v = list(v)
        comb = [self.field.zero] * len(self.basis)
        for row, c, piv in zip(self._ech, self._comb, self._piv):
            f = v[piv]
            if not f:
                continue
            if p is None:
                for j in range(piv, self.n):
                    if row[j]:
                        v[j] -= f * row[j]
                for j, x in enumerate(c):
                    if x:
                        comb[j] += f * x
            else:
                for j in range(piv, self.n):
                    if row[j]:
                        v[j] = (v[j] - f * row[j]) % p
                for j, x in enumerate(c):
                    if x:
                        comb[j] = (comb[j] + f * x) % p
        return v, comb

    def add(self, v) -> bool:
        """Add ``v`` if it is independent; return whether it was added."""
        rem, comb = self._reduce(v)
        piv = next((j for j, x in enumerate(rem) if x), None)
        if piv is None:
            return False
        p = self.field.p
        inv = self.field.inv(rem[piv])
        # rem = v - sum comb_j basis_j ; new echelon row = inv * rem
        newc = [(-x * inv) if p is None else (-x * inv) % p for x in comb] + [inv]
        for c in self._comb:
            c.append(self.field.zero)
        row = [x * inv if p is None else x * inv % p for x in rem]
        # keep earlier rows reduced at the new pivot
        for i, (r, c) in enumerate(zip(self._ech, self._comb)):
            f = r[piv]
            if f:
                if p is None:
                    self._ech[i] = [a - f * b for a, b in zip(r, row)]
                    self._comb[i] = [a - f * b for a, b in zip(c, newc)]
                else:
                    self._ech[i] = [(a - f * b) % p for a, b in zip(r, row)]
                    self._comb[i] = [(a - f * b) % p for a, b in zip(c, newc)]
        self._ech.append(row)
        self._comb.append(newc)
        self._piv.append(piv)
        self.basis.append(list(v))
        return True

    def contains(self, v) -> bool:
        rem, _ = self._reduce(v)
        return not any(rem)

    def coords(self, v) -> Optional[list]:
        """Coordinates of ``v`` in ``self.basis``, or ``None`` if outside."""
        rem, comb = self._reduce(v)
        if any(rem):
            return None
        return comb

    def residue(self, v) -> list:
        return self._reduce(v)[0]


def complement_indices(field: FieldSpec, sub: Sequence[Sequence], candidates: Sequence[Sequence],
                       n: int) -> list:
    """Indices of ``candidates`` extending a basis of span(``sub``) greedily."""
    s = Subspace(field, n, [])
    for v in sub:
        s.add(v)
    out = []
    for i, v in enumerate(candidates):
        if s.add(v):
            out.append(i)
    return out
