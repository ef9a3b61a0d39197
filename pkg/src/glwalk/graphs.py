"""Signed weighted undirected graphs and their matrix family.

A graph stores one record per unordered vertex pair.  Edge weights are
arbitrary nonzero reals (zero weight means non-adjacent and is rejected to
surface caller bugs).  The matrices of interest are the adjacency matrix A,
the degree matrix D, and the one-parameter Laplacian family
A + (alpha - 1) D, which gives the standard Laplacian at alpha = 0, the
adjacency matrix at alpha = 1, and the signless Laplacian at alpha = 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .linalg import HermitianOperator


class SignedWeightedGraph:
    """Undirected graph on vertices 0..n-1 with real signed edge weights."""

    def __init__(self, n: int, edges):
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        stored = []
        for i, j, w in edges:
            i, j = int(i), int(j)
            w = float(w)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) out of range for n={n}")
            if i > j:
                i, j = j, i
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i},{j})")
            if w == 0.0:
                raise ValueError(f"zero-weight edge ({i},{j}); omit it instead")
            seen.add((i, j))
            stored.append((i, j, w))
        self.n = n
        self.edges = tuple(sorted(stored))

    def adjacency_matrix(self) -> HermitianOperator:
        a = np.zeros((self.n, self.n))
        for i, j, w in self.edges:
            a[i, j] = w
            a[j, i] = w
        return HermitianOperator(a)

    def degree(self, k: int) -> float:
        """Weighted degree: sum of incident edge weights."""
        return sum(w for i, j, w in self.edges if k in (i, j))

    def degree_matrix(self) -> HermitianOperator:
        d = np.zeros((self.n, self.n))
        for i, j, w in self.edges:
            d[i, i] += w
            d[j, j] += w
        return HermitianOperator(d)

    def generalized_laplacian(self, alpha: float) -> HermitianOperator:
        """A + (alpha - 1) D; alpha = 0, 1, 2 give L, A, Q."""
        a = self.adjacency_matrix().matrix
        d = self.degree_matrix().matrix
        return HermitianOperator(a + (alpha - 1.0) * d)

    def total_weight(self) -> float:
        """Sum of all edge weights."""
        return sum(w for _, _, w in self.edges)


@dataclass(frozen=True)
class BarbellSpec:
    """Two equal unweighted cliques joined by one bridge of real weight.

    Vertex ordering is fixed: the marked vertex a is 0, the b-class vertices
    are 1..n/2-2, the marked-clique bridge endpoint c is n/2-1, the other
    bridge endpoint d is n/2, and the e-class vertices are n/2+1..n-1.
    """

    n: int
    bridge_weight: float

    def __post_init__(self):
        if self.n % 2 != 0:
            raise ValueError(f"barbell vertex count must be even, got {self.n}")
        if self.n < 6:
            raise ValueError(f"barbell needs n >= 6, got {self.n}")

    @property
    def marked(self) -> int:
        return 0

    @property
    def c_index(self) -> int:
        return self.n // 2 - 1

    @property
    def d_index(self) -> int:
        return self.n // 2


def build_barbell(spec: BarbellSpec) -> SignedWeightedGraph:
    half = spec.n // 2
    edges = []
    for i in range(half):
        for j in range(i + 1, half):
            edges.append((i, j, 1.0))
    for i in range(half, spec.n):
        for j in range(i + 1, spec.n):
            edges.append((i, j, 1.0))
    edges.append((spec.c_index, spec.d_index, spec.bridge_weight))
    return SignedWeightedGraph(spec.n, edges)


def write_graph(graph: SignedWeightedGraph, path) -> None:
    """Write the text format: header "n m", then one "i j weight" per edge."""
    lines = [f"{graph.n} {len(graph.edges)}"]
    for i, j, w in graph.edges:
        lines.append(f"{i} {j} {w:.17g}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_graph(path) -> SignedWeightedGraph:
    tokens = Path(path).read_text().split("\n")
    rows = [line.split() for line in tokens if line.strip()]
    n, m = int(rows[0][0]), int(rows[0][1])
    if len(rows) - 1 != m:
        raise ValueError(f"graph file declares {m} edges but has {len(rows) - 1}")
    edges = [(int(r[0]), int(r[1]), float(r[2])) for r in rows[1:]]
    return SignedWeightedGraph(n, edges)
