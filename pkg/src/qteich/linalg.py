"""Exact linear algebra over the rationals on lists of ``Fraction`` rows."""

from __future__ import annotations

from fractions import Fraction


def to_frac(mat) -> list:
    return [[Fraction(x) for x in row] for row in _rows(mat)]


def _rows(mat):
    if hasattr(mat, "tolist"):
        mat = mat.tolist()
    return [list(r) for r in mat]


def rref(mat):
    """Reduced row echelon form and pivot columns."""
    a = to_frac(mat)
    if not a:
        return [], []
    n_rows, n_cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((k for k in range(r, n_rows) if a[k][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for k in range(n_rows):
            if k != r and a[k][c] != 0:
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return a, pivots


def rank(mat) -> int:
    return len(rref(mat)[1])


def nullspace(mat) -> list:
    """Basis of the right kernel ``{x : A x = 0}`` as a list of vectors."""
    rows = _rows(mat)
    if not rows:
        return []
    n_cols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def transpose(mat) -> list:
    return [list(c) for c in zip(*_rows(mat))]


def matmul(a, b) -> list:
    a, bt = _rows(a), transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in _rows(a)]


def is_zero(mat) -> bool:
    return all(x == 0 for row in _rows(mat) for x in row)


def column_space_contains(a, b) -> bool:
    """Whether every column of ``b`` lies in the column space of ``a``."""
    ra = rank(a)
    joined = [ra_row + rb_row for ra_row, rb_row in zip(_rows(a), _rows(b))]
    return rank(joined) == ra
