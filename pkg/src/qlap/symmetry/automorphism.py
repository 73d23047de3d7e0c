from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from networkx.utils import UnionFind

from qlap.constants import DEFAULT_GROUP_LIMIT, DEFAULT_PATH_CAP, DEFAULT_SEARCH_BUDGET
from qlap.graph.core import Graph, degrees, require_connected, volume
from qlap.graph.paths import Path, directed_edges, enumerate_paths
from qlap.symmetry.partition import Partition, merge_orientations

LOG = logging.getLogger(__name__)

Permutation = tuple[int, ...]


class SearchError(RuntimeError):
    pass


class BudgetExceeded(SearchError):
    def __init__(self, budget: int) -> None:
        self.budget = budget
        super().__init__(f"Automorphism search exceeded its node budget ({budget})")


class LimitExceeded(SearchError):
    def __init__(self, limit: int) -> None:
        self.limit = limit
        super().__init__(f"Automorphism group has more than {limit} elements")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """(a . b)(i) = a(b(i))."""
    return tuple(a[x] for x in b)


def inverse(a: Permutation) -> Permutation:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def identity(n: int) -> Permutation:
    return tuple(range(n))


def _generated(n: int, gens: Sequence[Permutation]) -> set[Permutation]:
    seen = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = compose(s, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@dataclass(frozen=True)
class PermutationGroup:
    n: int
    elements: tuple[Permutation, ...]
    generators: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @staticmethod
    def from_elements(n: int, elements: Iterable[Permutation]) -> "PermutationGroup":
        elems = tuple(sorted(set(elements)))
        gens: list[Permutation] = []
        span = {identity(n)}
        for el in elems:
            if el not in span:
                gens.append(el)
                span = _generated(n, gens)
        return PermutationGroup(n=n, elements=elems, generators=tuple(gens))

    def preserves(self, g: Graph) -> bool:
        return all(
            g.adjacent(s[i], s[j]) for s in self.elements for i, j in g.edges
        )


def _vertex_colors(g: Graph) -> list[tuple[int, tuple[int, ...]]]:
    ds = degrees(g)
    return [(ds[v], tuple(sorted(ds[w] for w in g.neighbors[v]))) for v in range(g.n)]


def _search_order(g: Graph) -> list[int]:
    # Each vertex after the first in its component has a placed neighbor.
    placed = [False] * g.n
    hits = [0] * g.n
    order: list[int] = []
    for _ in range(g.n):
        v = max((u for u in range(g.n) if not placed[u]), key=lambda u: (hits[u], -u))
        placed[v] = True
        order.append(v)
        for w in g.neighbors[v]:
            hits[w] += 1
    return order


def automorphism_group(
    g: Graph,
    *,
    limit: int = DEFAULT_GROUP_LIMIT,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> PermutationGroup:
    """
    Every automorphism of g, by backtracking over vertex images.

    Candidate images must share the vertex color (degree, sorted neighbor
    degrees) and agree on adjacency with every vertex placed so far.
    Elements come back sorted lexicographically by image tuple.
    """

    colors = _vertex_colors(g)
    order = _search_order(g)
    candidates = [[w for w in range(g.n) if colors[w] == colors[v]] for v in range(g.n)]
    adj = g.adjacency
    image = [-1] * g.n
    used = [False] * g.n
    found: list[Permutation] = []
    nodes = 0

    def dfs(pos: int) -> None:
        nonlocal nodes
        if pos == g.n:
            if len(found) >= limit:
                raise LimitExceeded(limit)
            found.append(tuple(image))
            return
        v = order[pos]
        for w in candidates[v]:
            if used[w]:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(budget)
            if any(adj[v][u] != adj[w][image[u]] for u in order[:pos]):
                continue
            image[v] = w
            used[w] = True
            dfs(pos + 1)
            used[w] = False
            image[v] = -1

    dfs(0)
    LOG.debug("automorphism search: %d nodes, order %d", nodes, len(found))
    return PermutationGroup.from_elements(g.n, found)


def _orbit_partition(
    ground: str, items: Sequence, act, generators: Sequence[Permutation]
) -> Partition:
    uf = UnionFind(items)
    for s in generators:
        for x in items:
            uf.union(x, act(s, x))
    return Partition.from_labels(ground, {x: uf[x] for x in items})


def vertex_orbits(group: PermutationGroup) -> Partition:
    return _orbit_partition(
        "vertices", list(range(group.n)), lambda s, v: s[v], group.generators
    )


def path_orbits(
    g: Graph, group: PermutationGroup, alpha: int, *, cap: int = DEFAULT_PATH_CAP
) -> Partition:
    """Orbits of the length-alpha path space under the coordinatewise action."""

    paths = enumerate_paths(g, alpha, cap)
    return _orbit_partition(
        f"paths:{alpha}", paths, lambda s, p: tuple(s[v] for v in p), group.generators
    )


def edge_orbits(g: Graph, group: PermutationGroup) -> Partition:
    """
    Orbits on directed edges, i.e. on the length-1 path space.

    Elements are plain (i, j) tuples so this equals path_orbits(g, group, 1).
    """

    edges: list[Path] = [tuple(e) for e in directed_edges(g)]
    return _orbit_partition(
        "paths:1", sorted(edges), lambda s, e: (s[e[0]], s[e[1]]), group.generators
    )


def is_vertex_transitive(
    g: Graph,
    group: Optional[PermutationGroup] = None,
    *,
    limit: int = DEFAULT_GROUP_LIMIT,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> bool:
    group = group or automorphism_group(g, limit=limit, budget=budget)
    return len(vertex_orbits(group)) == 1


def classical_index(
    g: Graph,
    group: Optional[PermutationGroup] = None,
    *,
    limit: int = DEFAULT_GROUP_LIMIT,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> Fraction:
    """ind = volume / (2 * smallest unordered edge orbit)."""

    require_connected(g)
    if not g.edges:
        raise ValueError("classical_index needs at least one edge")
    group = group or automorphism_group(g, limit=limit, budget=budget)
    classes = merge_orientations(edge_orbits(g, group))
    return Fraction(volume(g), 2 * classes.min_block_size())


@dataclass(frozen=True)
class OrbitSummary:
    aut_order: int
    generators: tuple[Permutation, ...]
    vertex_orbits: Partition
    arc_orbits: Partition
    edge_classes: Partition

    @property
    def vertex_transitive(self) -> bool:
        return len(self.vertex_orbits) == 1

    @property
    def edge_transitive(self) -> bool:
        return len(self.edge_classes) <= 1

    @property
    def arc_transitive(self) -> bool:
        return len(self.arc_orbits) <= 1


def orbit_summary(g: Graph, group: Optional[PermutationGroup] = None, **search) -> OrbitSummary:
    group = group or automorphism_group(g, **search)
    arcs = edge_orbits(g, group)
    return OrbitSummary(
        aut_order=group.order,
        generators=group.generators,
        vertex_orbits=vertex_orbits(group),
        arc_orbits=arcs,
        edge_classes=merge_orientations(arcs),
    )
