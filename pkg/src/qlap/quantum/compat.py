from __future__ import annotations

from qlap.graph.core import Graph
from qlap.graph.paths import Path


class LengthMismatch(ValueError):
    def __init__(self, p: Path, q: Path) -> None:
        self.paths = (p, q)
        super().__init__(f"Paths have different lengths: {len(p) - 1} vs {len(q) - 1}")


class WindowError(ValueError):
    pass


def pattern(g: Graph, p: Path) -> tuple[tuple[bool, bool], ...]:
    """
    Equality and adjacency pattern of a path over all position pairs s < t.

    Two paths are base-compatible exactly when their patterns coincide, which
    turns compatibility into bucketing by this key.
    """

    return tuple(
        (p[s] == p[t], g.adjacent(p[s], p[t]))
        for s in range(len(p))
        for t in range(s + 1, len(p))
    )


def base_compatible(g: Graph, p: Path, q: Path) -> bool:
    """
    Necessary condition for q_{p1 q1} ... q_{pm qm} != 0.

    Every position pair (s, t) must agree on adjacency (an edge opposite a
    non-edge kills the product) and on equality (distinct entries in one row
    or column of a magic unitary are orthogonal).
    """

    if len(p) != len(q):
        raise LengthMismatch(p, q)
    return pattern(g, p) == pattern(g, q)
