from fractions import Fraction

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, strategies as st

from shiftilt.exactlinalg import (FieldSpec, Matrix, QQ, Subspace, charpoly, inverse,
                                  kernel_basis, rank, rref, solve)

F2, F5, F7 = FieldSpec(2), FieldSpec(5), FieldSpec(7)

small = st.integers(-4, 4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
            .map(lambda rows: (rows, c))))


def to_sympy(rows, ncols):
    return sympy.Matrix(len(rows), ncols, [x for r in rows for x in r])


# ---------------------------------------------------------------------------
# fields


def test_field_coercion_and_printing():
    assert QQ("3/6") == mpq(1, 2)
    assert QQ(Fraction(2, 4)) == mpq(1, 2)
    assert QQ.to_str(mpq(-3, 4)) == "-3/4"
    assert QQ.to_str(mpq(5)) == "5"
    assert F7("1/2") == 4
    assert F7(-1) == 6
    assert F5.to_str(12) == "2"


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        FieldSpec(6)


def test_denominator_divisible_by_p():
    with pytest.raises(ZeroDivisionError):
        F5("1/5")


# ---------------------------------------------------------------------------
# rref / kernel / solve examples


def test_rref_empty():
    _, pivots, r = rref(Matrix(QQ, [], 0))
    assert (pivots, r) == ([], 0)


def test_rref_identity():
    i3 = Matrix.identity(QQ, 3)
    red, pivots, r = rref(i3)
    assert red == i3 and pivots == [0, 1, 2] and r == 3


def test_rref_rank_one():
    red, pivots, r = rref(Matrix(QQ, [[1, 2], [2, 4]]))
    assert r == 1 and pivots == [0]
    assert red == Matrix(QQ, [[1, 2], [0, 0]])


def test_kernel_identity_and_zero():
    assert kernel_basis(Matrix.identity(QQ, 3)).ncols == 0
    assert kernel_basis(Matrix.zeros(QQ, 2, 3)).ncols == 3


def test_kernel_over_f2():
    k = kernel_basis(Matrix(F2, [[1, 1]]))
    assert k.ncols == 1 and k.column(0) == [1, 1]


def test_solve_examples():
    b = Matrix(QQ, [[3], [-1]])
    assert solve(Matrix.identity(QQ, 2), b) == b
    x = solve(Matrix(QQ, [[1, 1]]), Matrix(QQ, [[2]]))
    assert x[0, 0] + x[1, 0] == 2
    assert solve(Matrix(QQ, [[0]]), Matrix(QQ, [[1]])) is None


def test_solve_row_mismatch():
    with pytest.raises(ValueError):
        solve(Matrix(QQ, [[1]]), Matrix(QQ, [[1], [2]]))


def test_inverse_singular():
    with pytest.raises(ZeroDivisionError):
        inverse(Matrix(QQ, [[1, 2], [2, 4]]))


def test_subspace_coords():
    s = Subspace(QQ, 3, [[1, 0, 1], [0, 1, 1]])
    assert s.dim == 2
    assert s.contains([2, 3, 5]) and not s.contains([0, 0, 1])
    c = s.coords([2, 3, 5])
    assert [c[0], c[1]] == [2, 3]


# ---------------------------------------------------------------------------
# properties, with sympy as the independent oracle over Q


@given(matrices())
def test_rank_matches_sympy(data):
    rows, c = data
    m = Matrix(QQ, rows, c)
    assert rank(m) == to_sympy(rows, c).rank()


@given(matrices())
def test_rref_matches_sympy(data):
    rows, c = data
    if not rows or not c:
        return
    red, pivots, _ = rref(Matrix(QQ, rows, c))
    ref, ref_piv = to_sympy(rows, c).rref()
    assert list(ref_piv) == pivots
    for i in range(len(rows)):
        for j in range(c):
            assert red[i, j] == mpq(int(ref[i, j].p), int(ref[i, j].q))


@given(matrices())
def test_rref_idempotent(data):
    rows, c = data
    red, _, _ = rref(Matrix(QQ, rows, c))
    assert rref(red)[0] == red


@given(matrices(), st.sampled_from([QQ, F2, F5, F7]))
def test_rank_nullity(data, fld):
    rows, c = data
    m = Matrix(fld, rows, c)
    k = kernel_basis(m)
    assert rank(m) + k.ncols == c
    if k.ncols and m.nrows:
        assert (m @ k).is_zero()
    assert rank(k) == k.ncols


@given(matrices(), st.lists(small, min_size=5, max_size=5), st.sampled_from([QQ, F7]))
def test_solve_exact(data, xs, fld):
    rows, c = data
    if not rows:
        return
    a = Matrix(fld, rows, c)
    x0 = Matrix(fld, [[v] for v in xs[:c]], 1)
    b = a @ x0 if c else Matrix.zeros(fld, len(rows), 1)
    x = solve(a, b)
    assert x is not None and a @ x == b


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_matches_sympy(rows):
    n = len(rows)
    ours = charpoly(Matrix(QQ, rows))
    lam = sympy.Symbol("x")
    ref = sympy.Poly(to_sympy(rows, n).charpoly(lam).as_expr(), lam).all_coeffs()[::-1]
    assert [int(c) for c in ours] == [int(c) for c in ref]


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_roundtrip(rows):
    m = Matrix(F7, rows)
    if rank(m) < m.nrows:
        return
    assert m @ inverse(m) == Matrix.identity(F7, m.nrows)
