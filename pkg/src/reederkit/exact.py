"""Small exact linear algebra over ``Fraction``.

Matrices are lists of row lists. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence

Matrix = list  # list[list[Fraction]]


def to_fraction_matrix(rows) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise ValueError(f"shape mismatch {n}x{k} @ {k2}x{m}")
    bt = list(zip(*b)) if b else []
    out = []
    for row in a:
        nz = [(j, v) for j, v in enumerate(row) if v]
        out.append([sum((v * col[j] for j, v in nz), Fraction(0)) for col in bt])
    return out


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a: Matrix) -> Matrix:
    c = Fraction(c)
    return [[c * x for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def is_zero(a: Matrix) -> bool:
    return all(v == 0 for row in a for v in row)


def matpow(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = matmul(out, a)
    return out


def row_echelon(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [list(map(Fraction, row)) for row in a]
    n_rows, n_cols = shape(m)
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [v / p for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    # forward elimination only; cheaper than full RREF
    m = [list(map(Fraction, row)) for row in a]
    n_rows, n_cols = shape(m)
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, n_rows):
            if m[i][c] != 0:
                f = m[i][c] / p
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def det(a: Matrix) -> Fraction:
    m = [list(map(Fraction, row)) for row in a]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        p = m[c][c]
        out *= p
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / p
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(map(Fraction, row)) + e for row, e in zip(a, identity(n))]
    red, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def kernel(a: Matrix) -> list[list[Fraction]]:
    """Basis of the right null space."""
    red, pivots = row_echelon(a)
    n_cols = shape(a)[1]
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def column_space(a: Matrix) -> list[list[Fraction]]:
    """Independent columns of ``a`` spanning its image."""
    _, pivots = row_echelon(a)
    cols = transpose(a)
    return [list(cols[p]) for p in pivots]


def solve_row(v: Sequence, a: Matrix) -> list[Fraction]:
    """Solve x @ a = v for a square invertible ``a``."""
    inv = inverse(a)
    return [sum((Fraction(v[i]) * inv[i][j] for i in range(len(v))), Fraction(0))
            for j in range(len(a[0]))]


def frac_sqrt(x: Fraction) -> Fraction | None:
    """Exact rational square root, or None when x is not a rational square."""
    x = Fraction(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def normalize_line(v: Sequence) -> tuple[Fraction, ...]:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(x for x in v if x != 0)
    return tuple(Fraction(x) / lead for x in v)
