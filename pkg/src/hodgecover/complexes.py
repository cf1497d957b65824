"""Oriented simplicial complexes with integer boundary operators.

Cells are stored as strictly increasing vertex tuples; the boundary sign of
the face obtained by deleting the i-th vertex is (-1)**i.  This convention
makes the boundary-of-boundary identity hold in exact integer arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np


class ComplexError(ValueError):
    """Raised for malformed cell data (repeated vertices, duplicates)."""


@dataclass(frozen=True)
class SparseIntMatrix:
    """Integer matrix in coordinate form; no duplicate positions, no zeros."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for r, c, v in self.entries:
            if (r, c) in seen:
                raise ComplexError(f"duplicate entry at ({r},{c})")
            if v == 0:
                raise ComplexError(f"stored zero at ({r},{c})")
            seen.add((r, c))

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=object)
        for r, c, v in self.entries:
            a[r, c] = v
        return a

    def to_float(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=float)
        for r, c, v in self.entries:
            a[r, c] = float(v)
        return a

    def to_pylists(self) -> list[list[int]]:
        a = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            a[r][c] = v
        return a

    @staticmethod
    def from_dense(a) -> "SparseIntMatrix":
        rows = len(a)
        cols = len(a[0]) if rows else 0
        entries = tuple(
            (r, c, int(a[r][c]))
            for r in range(rows)
            for c in range(cols)
            if a[r][c] != 0
        )
        return SparseIntMatrix(rows, cols, entries)

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ComplexError("dimension mismatch")
        acc: dict[tuple[int, int], int] = {}
        by_row: dict[int, list[tuple[int, int]]] = {}
        for r, c, v in other.entries:
            by_row.setdefault(r, []).append((c, v))
        for r, k, v in self.entries:
            for c, w in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        entries = tuple((r, c, v) for (r, c), v in sorted(acc.items()) if v != 0)
        return SparseIntMatrix(self.rows, other.cols, entries)

    def is_zero(self) -> bool:
        return not self.entries


class SimplicialComplex:
    """Finite oriented simplicial complex, immutable after construction.

    cells[q] is the sorted list of q-cells; cell_index[q] maps a cell tuple
    to its position, which fixes the basis of C_q once and for all.
    """

    def __init__(self, cells_by_dim: list[list[tuple[int, ...]]],
                 labels: dict | None = None):
        self.cells: list[list[tuple[int, ...]]] = [
            sorted(set(cs)) for cs in cells_by_dim
        ]
        while self.cells and not self.cells[-1]:
            self.cells.pop()
        if not self.cells:
            raise ComplexError("empty complex")
        self.dim = len(self.cells) - 1
        self.labels = dict(labels) if labels else {}
        self.cell_index: list[dict[tuple[int, ...], int]] = [
            {c: i for i, c in enumerate(cs)} for cs in self.cells
        ]
        self._boundary_cache: dict[int, SparseIntMatrix] = {}
        self._validate()

    def _validate(self):
        for q, cs in enumerate(self.cells):
            for c in cs:
                if len(c) != q + 1:
                    raise ComplexError(f"cell {c} has wrong dimension for q={q}")
                if any(c[i] >= c[i + 1] for i in range(len(c) - 1)):
                    raise ComplexError(f"cell {c} not strictly increasing")
                if q > 0:
                    for face in combinations(c, q):
                        if face not in self.cell_index[q - 1]:
                            raise ComplexError(f"missing face {face} of {c}")

    def n_cells(self, q: int) -> int:
        if 0 <= q <= self.dim:
            return len(self.cells[q])
        return 0

    def boundary_matrix(self, q: int) -> SparseIntMatrix:
        """Matrix of the boundary map from q-chains to (q-1)-chains."""
        if not 1 <= q <= self.dim:
            raise ComplexError(f"degree {q} out of range [1, {self.dim}]")
        if q not in self._boundary_cache:
            entries = []
            for j, cell in enumerate(self.cells[q]):
                for i in range(q + 1):
                    face = cell[:i] + cell[i + 1:]
                    row = self.cell_index[q - 1][face]
                    entries.append((row, j, (-1) ** i))
            self._boundary_cache[q] = SparseIntMatrix(
                self.n_cells(q - 1), self.n_cells(q), tuple(sorted(entries)))
        return self._boundary_cache[q]

    def coboundary_matrix(self, q: int) -> SparseIntMatrix:
        """Coboundary from q-cochains to (q+1)-cochains: transpose of the boundary."""
        b = self.boundary_matrix(q + 1)
        return SparseIntMatrix(
            b.cols, b.rows, tuple(sorted((c, r, v) for r, c, v in b.entries)))

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * len(cs) for q, cs in enumerate(self.cells))

    def facet_adjacencies(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """Ordered pairs of top-cell indices sharing a facet, keyed to that facet.

        Requires the complex to look like a pseudo-manifold: every
        codimension-1 cell lies in at most two top cells.
        """
        n = self.dim
        by_facet: dict[tuple[int, ...], list[int]] = {}
        for j, cell in enumerate(self.cells[n]):
            for facet in combinations(cell, n):
                by_facet.setdefault(facet, []).append(j)
        adj: dict[tuple[int, int], tuple[int, ...]] = {}
        for facet, tops in by_facet.items():
            if len(tops) > 2:
                raise ComplexError(
                    f"facet {facet} shared by {len(tops)} top cells; "
                    "cover machinery needs at most two")
            if len(tops) == 2:
                a, b = tops
                adj[(a, b)] = facet
                adj[(b, a)] = facet
        return adj

    def to_dict(self) -> dict:
        d = {"dim": self.dim,
             "cells": [[list(c) for c in cs] for cs in self.cells]}
        if self.labels:
            d["labels"] = {str(k): v for k, v in self.labels.items()}
        return d

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.cells == other.cells

    def __repr__(self):
        counts = ",".join(str(len(cs)) for cs in self.cells)
        return f"SimplicialComplex(dim={self.dim}, cells=[{counts}])"


@dataclass
class LoadReport:
    complex: SimplicialComplex
    added_faces: list[tuple[int, ...]] = field(default_factory=list)


def load_complex(description) -> SimplicialComplex:
    return load_complex_report(description).complex


def load_complex_report(description) -> LoadReport:
    """Build a validated complex from cell lists, completing downward closure.

    `description` is either {"dim": d, "cells": [[...], ...]} or a bare list
    of maximal cells (dimension inferred per cell).  Added faces are reported
    rather than rejected.
    """
    if isinstance(description, dict):
        raw = description.get("cells", [])
        labels = description.get("labels")
        listed = [tuple(c) for group in raw for c in group]
    else:
        listed = [tuple(c) for c in description]
        labels = None

    max_dim = 0
    canonical: set[tuple[int, ...]] = set()
    for c in listed:
        if len(set(c)) != len(c):
            raise ComplexError(f"repeated vertex in cell {c}")
        cell = tuple(sorted(int(v) for v in c))
        if cell in canonical:
            raise ComplexError(f"duplicate cell {cell}")
        canonical.add(cell)
        max_dim = max(max_dim, len(cell) - 1)

    closure: set[tuple[int, ...]] = set()
    for cell in canonical:
        for k in range(1, len(cell) + 1):
            closure.update(combinations(cell, k))
    added = sorted(closure - canonical, key=lambda c: (len(c), c))

    cells_by_dim: list[list[tuple[int, ...]]] = [[] for _ in range(max_dim + 1)]
    for cell in closure:
        cells_by_dim[len(cell) - 1].append(cell)
    return LoadReport(SimplicialComplex(cells_by_dim, labels), added)


def dump_complex(K: SimplicialComplex, path) -> None:
    with open(path, "w") as fh:
        json.dump(K.to_dict(), fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_complex(path) -> SimplicialComplex:
    with open(path) as fh:
        return load_complex(json.load(fh))
