"""Exact linear algebra over the integers and rationals.

Everything here operates on plain Python lists of ints/Fractions; matrices
stay desk-scale, so clarity wins over asymptotics.
"""

from __future__ import annotations

from fractions import Fraction


def _as_fraction_rows(A) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in A]


def rat_rref(A) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rref, pivot cols)."""
    M = _as_fraction_rows(A)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rat_rank(A) -> int:
    return len(rat_rref(A)[1])


def rat_solve(A, b) -> list[Fraction] | None:
    """One exact solution of A x = b, or None if inconsistent."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    aug = [[Fraction(A[i][j]) for j in range(cols)] + [Fraction(b[i])]
           for i in range(rows)]
    R, pivots = rat_rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = R[r][cols]
    return x


def rat_nullspace(A) -> list[list[Fraction]]:
    """Basis of the rational kernel of A (list of column vectors)."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[Fraction(i == j) for i in range(cols)] for j in range(cols)]
    R, pivots = rat_rref(A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(v)
    return basis


def bareiss_det(A) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(A)
    if n == 0:
        return 1
    M = [[int(x) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def charpoly_int(A) -> list[int]:
    """Coefficients [1, c_{n-1}, ..., c_0] of det(xI - A), A integer, exact.

    Faddeev-LeVerrier recursion; every division is exact.
    """
    n = len(A)
    F = [[Fraction(A[i][j]) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        for i in range(n):
            M[i][i] += coeffs[-1]
        # M <- F @ M
        M = [[sum(F[i][t] * M[t][j] for t in range(n)) for j in range(n)]
             for i in range(n)]
        c = -sum(M[i][i] for i in range(n)) / k
        coeffs.append(c)
    out = []
    for c in coeffs:
        assert c.denominator == 1
        out.append(int(c))
    return out
