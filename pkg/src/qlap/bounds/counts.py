from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from qlap.graph.core import Graph, GraphError, diameter, regular_degree, volume
from qlap.graph.paths import (
    DirectedEdge,
    Path,
    TieBreak,
    bfs_shortest_path_family,
    undirected,
)
from qlap.symmetry.partition import Partition, merge_orientations

LOG = logging.getLogger(__name__)


class NotVertexTransitive(GraphError):
    pass


class MissingRelationLength(GraphError):
    def __init__(self, length: int) -> None:
        self.length = length
        super().__init__(f"No relation supplied for paths of length {length}")


@dataclass(frozen=True)
class EdgePathCount:
    # Unordered edge, reported as (min, max).
    edge: DirectedEdge
    count: int
    averaged: Fraction


@dataclass(frozen=True)
class PathCounts:
    root: int
    tie_break: str
    family: tuple[Path, ...]
    collected: int
    # Total edge occurrences over all collected paths.
    incidences: int
    counts: tuple[EdgePathCount, ...]

    def entry(self, edge: tuple[int, int]) -> EdgePathCount:
        key = undirected(edge)
        for c in self.counts:
            if (c.edge.src, c.edge.dst) == key:
                return c
        raise KeyError(edge)

    def count(self, edge: tuple[int, int]) -> int:
        return self.entry(edge).count

    def averaged(self, edge: tuple[int, int]) -> Fraction:
        return self.entry(edge).averaged


def count_Ne(
    g: Graph,
    relation: Mapping[int, Partition],
    root: int = 0,
    *,
    tie_break: TieBreak = "ascending",
) -> PathCounts:
    """
    Edge occurrence counts over all paths equivalent to the BFS family.

    The family holds one fixed shortest path from `root` to every other
    vertex. A path is collected when `relation` puts it in the block of a
    family member. `count` is the number of traversals of each unordered
    edge over the collected paths. `averaged` takes, for every start vertex
    and every family member, the mean occurrence over the equivalent paths
    leaving that start vertex, and halves the total.
    """

    if regular_degree(g) is None:
        raise NotVertexTransitive("path counting needs a vertex-transitive graph")
    family = bfs_shortest_path_family(g, root, tie_break=tie_break)
    for p in family:
        length = len(p) - 1
        if length not in relation:
            raise MissingRelationLength(length)

    raw: dict[tuple[int, int], int] = {e: 0 for e in g.edges}
    avg: dict[tuple[int, int], Fraction] = {e: Fraction(0) for e in g.edges}
    collected: set[Path] = set()
    for p in family:
        members = relation[len(p) - 1].block(p)
        collected.update(members)
        by_start: dict[int, list[Path]] = defaultdict(list)
        for q in members:
            by_start[q[0]].append(q)
        for starts in by_start.values():
            weight = Fraction(1, 2 * len(starts))
            for q in starts:
                for a, b in zip(q, q[1:]):
                    avg[undirected((a, b))] += weight

    # On a vertex-transitive graph every vertex starts some equivalent path.
    unreached = set(range(g.n)) - {q[0] for q in collected}
    if family and unreached:
        raise NotVertexTransitive(
            f"no path equivalent to the family from root {root} starts at vertex {min(unreached)}"
        )

    incidences = 0
    for q in collected:
        for a, b in zip(q, q[1:]):
            raw[undirected((a, b))] += 1
            incidences += 1

    LOG.debug(
        "count_Ne root=%d: %d family paths, %d collected, %d incidences",
        root, len(family), len(collected), incidences,
    )
    return PathCounts(
        root=root,
        tie_break=tie_break,
        family=tuple(family),
        collected=len(collected),
        incidences=incidences,
        counts=tuple(EdgePathCount(DirectedEdge(*e), raw[e], avg[e]) for e in g.edges),
    )


@dataclass(frozen=True)
class ConstancyReport:
    classes: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _unordered_classes(edge_classes: Partition) -> Partition:
    if edge_classes.ground == "undirected-edges":
        return edge_classes
    return merge_orientations(edge_classes)


def verify_class_constancy(counts: PathCounts, edge_classes: Partition) -> ConstancyReport:
    """Both statistics must be constant on every edge class."""

    classes = _unordered_classes(edge_classes)
    violations: list[str] = []
    for bid, block in enumerate(classes.blocks):
        raw = {counts.count(e) for e in block}
        avg = {counts.averaged(e) for e in block}
        if len(raw) > 1:
            violations.append(f"class {bid}: raw counts differ {sorted(raw)}")
        if len(avg) > 1:
            violations.append(f"class {bid}: averaged counts differ {sorted(str(x) for x in avg)}")
    return ConstancyReport(classes=len(classes), violations=tuple(violations))


@dataclass(frozen=True)
class ChainCheck:
    edge: DirectedEdge
    # N_e, n^2 D / (2|E(e)|), n^2 D / (2 min|E|), n^2 D ind_k / V
    terms: tuple[Fraction, Fraction, Fraction, Fraction]

    @property
    def margins(self) -> tuple[Fraction, Fraction, Fraction]:
        t = self.terms
        return (t[1] - t[0], t[2] - t[1], t[3] - t[2])

    @property
    def ok(self) -> bool:
        return all(m >= 0 for m in self.margins)


@dataclass(frozen=True)
class ChainReport:
    k: int
    ind_k: Fraction
    checks: tuple[ChainCheck, ...]
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def min_margin(self) -> Optional[Fraction]:
        margins = [m for c in self.checks for m in c.margins]
        return min(margins) if margins else None


def verify_inequality_chain(
    g: Graph,
    counts: PathCounts,
    k: int,
    edge_classes: Partition,
    ind_k: Fraction,
) -> ChainReport:
    """
    Check N_e <= n^2 D/(2|E(e)|) <= n^2 D/(2 min|E|) <= n^2 D ind_k/V per edge.

    N_e is the averaged statistic and E(e) the unordered class of e in the
    partition the counts were built from.
    """

    n = g.n
    d = diameter(g)
    vol = volume(g)
    classes = _unordered_classes(edge_classes)
    smallest = classes.min_block_size()
    top = Fraction(n * n * d, 1)
    checks: list[ChainCheck] = []
    violations: list[str] = []
    names = ("N_e <= n^2D/2|E(e)|", "class size <= min class size", "min class <= ind_k term")
    for c in counts.counts:
        key = (c.edge.src, c.edge.dst)
        size = len(classes.block(key))
        check = ChainCheck(
            edge=c.edge,
            terms=(
                c.averaged,
                top / (2 * size),
                top / (2 * smallest),
                top * ind_k / vol,
            ),
        )
        checks.append(check)
        for name, margin in zip(names, check.margins):
            if margin < 0:
                violations.append(f"edge {key}: {name} fails by {-margin}")
    if checks:
        LOG.debug("inequality chain k=%d: min margin %s", k, min(m for c in checks for m in c.margins))
    return ChainReport(k=k, ind_k=ind_k, checks=tuple(checks), violations=tuple(violations))
