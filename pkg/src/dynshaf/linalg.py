"""Exact dense linear algebra over Q and F_p.

Matrices are plain lists of rows.  Rational input is cleared to integers row by
row and eliminated fraction-free (Bareiss), so every intermediate entry is a
minor of the input and bit growth stays polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .arith import as_rational, primitive_vector


def _integer_rows(rows) -> tuple[list[list[int]], Fraction]:
    """Integer matrix plus the factor by which its determinant was scaled."""
    if all(type(a) is int for row in rows for a in row):
        return [list(row) for row in rows], Fraction(1)
    out, scale = [], Fraction(1)
    for row in rows:
        qs = [as_rational(a) for a in row]
        den = lcm(*(q.denominator for q in qs)) if qs else 1
        out.append([q.numerator * (den // q.denominator) for q in qs])
        scale *= den
    return out, scale


def echelon(rows) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free row echelon form.

    Returns (U, pivot_columns, sign) where sign tracks row swaps.
    """
    M, _ = _integer_rows(rows)
    m = len(M)
    n = len(M[0]) if m else 0
    prev, r, sign, pivots = 1, 0, 1, []
    for c in range(n):
        if r == m:
            break
        k = next((i for i in range(r, m) if M[i][c]), None)
        if k is None:
            continue
        if k != r:
            M[k], M[r] = M[r], M[k]
            sign = -sign
        piv, prow = M[r][c], M[r]
        for i in range(r + 1, m):
            row = M[i]
            a = row[c]
            for j in range(c + 1, n):
                row[j] = (piv * row[j] - a * prow[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return M, pivots, sign


def det(rows):
    """Exact determinant (int for integer input, Fraction otherwise)."""
    n = len(rows)
    if n == 0:
        return 1
    if any(len(row) != n for row in rows):
        raise ValueError("determinant of a non-square matrix")
    M, scale = _integer_rows(rows)
    U, pivots, sign = echelon(M)
    if len(pivots) < n:
        return 0
    d = sign * U[n - 1][n - 1]
    if scale == 1:
        return d
    out = Fraction(d) / scale
    return out.numerator if out.denominator == 1 else out


def rank(rows) -> int:
    if not rows:
        return 0
    return len(echelon(rows)[1])


def nullspace(rows, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of {x : Mx = 0} as primitive integer vectors (one per free column)."""
    if not rows:
        if ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    n = len(rows[0])
    U, pivots, _ = echelon(rows)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            s = sum((U[k][j] * x[j] for j in range(c + 1, n) if U[k][j] and x[j]), Fraction(0))
            x[c] = -s / U[k][c]
        basis.append(primitive_vector(x))
    return basis


def inverse(rows) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over Q."""
    n = len(rows)
    A = [[as_rational(a) for a in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for c in range(n):
        k = next((i for i in range(c, n) if A[i][c]), None)
        if k is None:
            raise ZeroDivisionError("matrix is singular")
        A[c], A[k] = A[k], A[c]
        piv = A[c][c]
        A[c] = [a / piv for a in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [row[n:] for row in A]


def solve(rows, rhs) -> list[Fraction]:
    """Unique solution of the square system M x = rhs."""
    Minv = inverse(rows)
    b = [as_rational(v) for v in rhs]
    return [sum((a * v for a, v in zip(row, b)), Fraction(0)) for row in Minv]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def matvec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def adjugate(rows) -> list[list[int]]:
    """det(M) * M^{-1} for an integer matrix, kept integral (transposed cofactors)."""
    n = len(rows)
    if n == 1:
        return [[1]]
    rows = [list(r) for r in rows]
    cof = [[(-1) ** (i + j) * det([r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i])
            for j in range(n)] for i in range(n)]
    return [list(c) for c in zip(*cof)]


def det_mod_p(rows, p: int) -> int:
    """Determinant over F_p by ordinary elimination on residues."""
    n = len(rows)
    M = []
    for row in rows:
        r = []
        for a in row:
            q = as_rational(a)
            if q.denominator % p == 0:
                raise ValueError(f"entry {q} is not {p}-integral")
            r.append(q.numerator * pow(q.denominator, -1, p) % p)
        M.append(r)
    d = 1
    for c in range(n):
        k = next((i for i in range(c, n) if M[i][c]), None)
        if k is None:
            return 0
        if k != c:
            M[c], M[k] = M[k], M[c]
            d = -d
        piv = M[c][c]
        d = d * piv % p
        inv = pow(piv, -1, p)
        for i in range(c + 1, n):
            f = M[i][c] * inv % p
            if f:
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[c])]
    return d % p


def content(values) -> int:
    g = 0
    for a in values:
        g = gcd(g, a)
    return g
