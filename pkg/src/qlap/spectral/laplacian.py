from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from qlap.graph.core import Graph, GraphError, degrees, regular_degree

# Dense symmetric n x n float matrix, marked read-only once built.
LaplacianMatrix = np.ndarray


class IsolatedVertexError(GraphError):
    def __init__(self, vertex: int) -> None:
        self.vertex = vertex
        super().__init__(f"Vertex {vertex} is isolated; the normalized Laplacian needs d_i > 0")


class NotRegularError(GraphError):
    pass


class ConstantVectorError(GraphError):
    pass


def build_laplacian(g: Graph) -> LaplacianMatrix:
    """
    Normalized Laplacian: 1 on the diagonal, -1/sqrt(d_i d_j) on edges.

    Each off-diagonal value is computed once and written to both (i, j) and
    (j, i), so the result is exactly symmetric.
    """

    ds = degrees(g)
    for i, d in enumerate(ds):
        if d == 0:
            raise IsolatedVertexError(i)
    lap = np.eye(g.n, dtype=float)
    for i, j in g.edges:
        w = -1.0 / math.sqrt(ds[i] * ds[j])
        lap[i, j] = w
        lap[j, i] = w
    lap.setflags(write=False)
    return lap


def harmonic_quotient(g: Graph, f: Sequence[float]) -> float:
    """
    n * sum_{edges} (f(i)-f(j))^2 / (s * sum_{i<j} (f(i)-f(j))^2) on an s-regular graph.

    Both sums run over unordered pairs; with that convention the minimum over
    non-constant f is exactly lambda_1.
    """

    s = regular_degree(g)
    if s is None:
        raise NotRegularError("harmonic_quotient needs a regular graph")
    vec = np.asarray(f, dtype=float)
    if vec.shape != (g.n,):
        raise ValueError(f"expected a vector of length {g.n}, got shape {vec.shape}")
    num = sum((vec[i] - vec[j]) ** 2 for i, j in g.edges)
    diffs = vec[:, None] - vec[None, :]
    den = float(np.sum(np.triu(diffs**2, k=1)))
    if den == 0.0:
        raise ConstantVectorError("f is constant; the quotient is undefined")
    return g.n * float(num) / (s * den)
