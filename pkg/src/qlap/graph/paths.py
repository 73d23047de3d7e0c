from __future__ import annotations

from collections import deque
from typing import Literal, NamedTuple, Optional

from qlap.constants import DEFAULT_PATH_CAP
from qlap.graph.core import DisconnectedError, Graph, GraphError, RangeError

# A path (i1, ..., i_{α+1}) is a vertex tuple with consecutive adjacency.
# Vertices may repeat; the length α is len(path) - 1.
Path = tuple[int, ...]

TieBreak = Literal["ascending", "descending"]


class DirectedEdge(NamedTuple):
    src: int
    dst: int


class CapacityExceeded(GraphError):
    def __init__(self, *, found: int, cap: int, what: str = "paths") -> None:
        self.found = found
        self.cap = cap
        super().__init__(f"More than {cap} {what} (found {found} so far); raise the cap")


def reverse(p: Path) -> Path:
    return tuple(reversed(p))


def is_path(g: Graph, p: Path) -> bool:
    if not p or any(not 0 <= v < g.n for v in p):
        return False
    return all(g.adjacent(a, b) for a, b in zip(p, p[1:]))


def directed_edges(g: Graph) -> list[DirectedEdge]:
    return [DirectedEdge(i, j) for i in range(g.n) for j in g.neighbors[i]]


def undirected(edge: tuple[int, int]) -> tuple[int, int]:
    a, b = edge
    return (a, b) if a < b else (b, a)


def enumerate_paths(g: Graph, alpha: int, cap: int = DEFAULT_PATH_CAP) -> list[Path]:
    """All walks with `alpha` edges, in lexicographic order."""

    if alpha < 0:
        raise ValueError("path length must be >= 0")
    if cap <= 0:
        raise ValueError("cap must be > 0")
    out: list[Path] = []
    prefix: list[int] = []

    def extend(v: int) -> None:
        prefix.append(v)
        if len(prefix) == alpha + 1:
            if len(out) >= cap:
                raise CapacityExceeded(found=len(out) + 1, cap=cap)
            out.append(tuple(prefix))
        else:
            for w in g.neighbors[v]:
                extend(w)
        prefix.pop()

    for start in range(g.n):
        extend(start)
    return out


def bfs_shortest_path_family(
    g: Graph, root: int, *, tie_break: TieBreak = "ascending"
) -> list[Path]:
    """
    One fixed shortest path from `root` to every other vertex.

    Neighbors are explored in ascending (or descending) vertex order and the
    first discovery wins, so the result is deterministic. Paths are returned
    ordered by target vertex.
    """

    if not 0 <= root < g.n:
        raise RangeError(root, g.n)
    parent: list[Optional[int]] = [None] * g.n
    seen = [False] * g.n
    seen[root] = True
    queue = deque([root])
    while queue:
        u = queue.popleft()
        nbrs = g.neighbors[u] if tie_break == "ascending" else tuple(reversed(g.neighbors[u]))
        for w in nbrs:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                queue.append(w)
    family: list[Path] = []
    for target in range(g.n):
        if target == root:
            continue
        if not seen[target]:
            raise DisconnectedError(root, target)
        walk = [target]
        while walk[-1] != root:
            walk.append(parent[walk[-1]])  # type: ignore[arg-type]
        family.append(tuple(reversed(walk)))
    return family
