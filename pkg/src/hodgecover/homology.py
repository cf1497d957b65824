"""Exact integral homology via Smith normal form.

Betti numbers come from exact ranks of the boundary matrices; torsion
invariant factors come from the Smith diagonal of the boundary one degree up.
All arithmetic uses Python big integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import SimplicialComplex, SparseIntMatrix
from .ratlinalg import rat_rank


@dataclass
class SmithDecomposition:
    """A = U @ D @ V with U, V unimodular and D diagonal, d1 | d2 | ..."""

    U: list[list[int]]
    D: list[list[int]]
    V: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        n = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(n)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A) -> SmithDecomposition:
    """Smith normal form with transforms, smallest-magnitude pivoting.

    Accepts a SparseIntMatrix or a dense list-of-lists.  Maintains
    A = U @ D @ V throughout: every row operation applied to D is undone on U,
    every column operation undone on V.
    """
    if isinstance(A, SparseIntMatrix):
        D = A.to_pylists()
    else:
        D = [[int(x) for x in row] for row in A]
    m = len(D)
    n = len(D[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def row_add(i, j, k):
        # D[i] += k*D[j]; compensate on U with the inverse column op
        for c in range(n):
            D[i][c] += k * D[j][c]
        for r in range(m):
            U[r][j] -= k * U[r][i]

    def col_add(i, j, k):
        # D[:,i] += k*D[:,j]
        for r in range(m):
            D[r][i] += k * D[r][j]
        for c in range(n):
            V[j][c] -= k * V[i][c]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        for r in range(m):
            U[r][i], U[r][j] = U[r][j], U[r][i]

    def col_swap(i, j):
        for r in range(m):
            D[r][i], D[r][j] = D[r][j], D[r][i]
        V[i], V[j] = V[j], V[i]

    def row_negate(i):
        D[i] = [-x for x in D[i]]
        for r in range(m):
            U[r][i] = -U[r][i]

    t = 0
    while True:
        # move the smallest-magnitude entry of the block to the pivot slot;
        # re-searched after every reduction pass so entries stay moderate
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < best):
                    best = abs(D[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        row_swap(t, pi)
        col_swap(t, pj)
        if D[t][t] < 0:
            row_negate(t)

        # one reduction pass; any nonzero remainder triggers a re-search
        for i in range(t + 1, m):
            if D[i][t] != 0:
                row_add(i, t, -(D[i][t] // D[t][t]))
        if any(D[i][t] != 0 for i in range(t + 1, m)):
            continue
        for j in range(t + 1, n):
            if D[t][j] != 0:
                col_add(j, t, -(D[t][j] // D[t][t]))
        if any(D[t][j] != 0 for j in range(t + 1, n)):
            continue

        # pivot must divide the rest of the block; if not, fold the offending
        # row into row t and start over
        offender = None
        for i in range(t + 1, m):
            if any(D[i][j] % D[t][t] != 0 for j in range(t + 1, n)):
                offender = i
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        t += 1

    return SmithDecomposition(U, D, V)


def betti_numbers(K: SimplicialComplex) -> list[int]:
    """b_q for q = 0..dim, via exact rational ranks of the boundary maps."""
    ranks = [0] * (K.dim + 2)
    for q in range(1, K.dim + 1):
        ranks[q] = rat_rank(K.boundary_matrix(q).to_pylists())
    return [K.n_cells(q) - ranks[q] - ranks[q + 1] for q in range(K.dim + 1)]


def torsion_invariants(K: SimplicialComplex, q: int) -> list[int]:
    """Invariant factors > 1 of the torsion subgroup of H_q(K; Z).

    These are the Smith invariant factors of the boundary map entering
    degree q.  ker(boundary_q) is a saturated sublattice of C_q (the quotient
    embeds in C_{q-1}), so restricting to a kernel basis first would produce
    the same factors.
    """
    if not 0 <= q < K.dim:
        raise ValueError(f"degree {q} out of range [0, {K.dim})")
    snf = smith_normal_form(K.boundary_matrix(q + 1))
    return [d for d in snf.diagonal if d > 1]


def torsion_order(K: SimplicialComplex, q: int) -> int:
    out = 1
    for d in torsion_invariants(K, q):
        out *= d
    return out


def homology_table(K: SimplicialComplex) -> list[dict]:
    """Per-degree summary: betti number, invariant factors, torsion order."""
    betti = betti_numbers(K)
    table = []
    for q in range(K.dim + 1):
        inv = torsion_invariants(K, q) if q < K.dim else []
        row = {"q": q, "betti": betti[q], "torsion": inv,
               "torsion_order": 1}
        for d in inv:
            row["torsion_order"] *= d
        table.append(row)
    return table
