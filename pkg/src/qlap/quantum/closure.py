from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Literal, Optional

from qlap.constants import DEFAULT_MAX_WINDOW, DEFAULT_PATH_CAP
from qlap.graph.core import Graph
from qlap.graph.paths import Path, enumerate_paths, reverse
from qlap.quantum.compat import WindowError, pattern
from qlap.symmetry.partition import Partition

LOG = logging.getLogger(__name__)

Order = Literal["forward", "reverse"]
Rule = Literal["base", "reversal", "restriction", "extension"]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def window_for(k: int, max_window: int = DEFAULT_MAX_WINDOW) -> int:
    """Longest path length the k-th relation is evaluated on."""

    if k < 1:
        raise ValueError("k must be >= 1")
    return min(2 * k + 1, max_window)


class _Level:
    """
    Path space of one length plus the surviving pair relation.

    `rel[i]` is a bitset over path indices of the same length; bit j set
    means the pair (paths[i], paths[j]) is still alive.
    """

    def __init__(self, g: Graph, length: int, cap: int) -> None:
        self.length = length
        self.paths = enumerate_paths(g, length, cap)
        self.index = {p: i for i, p in enumerate(self.paths)}
        self.rev = [self.index[reverse(p)] for p in self.paths]
        buckets: dict[tuple, int] = {}
        keys = [pattern(g, p) for p in self.paths]
        for i, key in enumerate(keys):
            buckets[key] = buckets.get(key, 0) | (1 << i)
        self.rel = [buckets[key] for key in keys]
        self.prefix: list[int] = []
        self.suffix: list[int] = []
        self.right: list[list[int]] = []
        self.left: list[list[int]] = []
        self.right_mask: list[int] = []
        self.left_mask: list[int] = []

    def link_shorter(self, shorter: "_Level") -> None:
        self.prefix = [shorter.index[p[:-1]] for p in self.paths]
        self.suffix = [shorter.index[p[1:]] for p in self.paths]

    def link_longer(self, g: Graph, longer: "_Level") -> None:
        for p in self.paths:
            right = [longer.index[p + (w,)] for w in g.neighbors[p[-1]]]
            left = [longer.index[(w,) + p] for w in g.neighbors[p[0]]]
            self.right.append(right)
            self.left.append(left)
            self.right_mask.append(sum(1 << x for x in right))
            self.left_mask.append(sum(1 << x for x in left))

    def alive(self, i: int, j: int) -> bool:
        return bool((self.rel[i] >> j) & 1)

    def kill(self, i: int, j: int) -> None:
        self.rel[i] &= ~(1 << j)
        self.rel[j] &= ~(1 << i)

    def components(self) -> list[tuple[Path, ...]]:
        unvisited = (1 << len(self.paths)) - 1
        blocks: list[tuple[Path, ...]] = []
        for i in range(len(self.paths)):
            if not (unvisited >> i) & 1:
                continue
            comp = 0
            frontier = 1 << i
            while frontier:
                comp |= frontier
                reach = 0
                for b in _bits(frontier):
                    reach |= self.rel[b]
                frontier = reach & ~comp
            unvisited &= ~comp
            blocks.append(tuple(self.paths[b] for b in _bits(comp)))
        return blocks


@dataclass(frozen=True)
class ClosureResult:
    k: int
    window: int
    partitions: tuple[Partition, ...]
    # First rule that removed each pair; keys have the smaller path first.
    killed: dict[tuple[Path, Path], str]
    passes: int

    def partition(self, alpha: int) -> Partition:
        if not 0 <= alpha <= self.window:
            raise WindowError(
                f"alpha={alpha} is outside the closure window 0..{self.window} for k={self.k}"
            )
        return self.partitions[alpha]

    def killing_rule(self, p: Path, q: Path) -> Optional[str]:
        key = (p, q) if p <= q else (q, p)
        return self.killed.get(key)


def _violation(levels: list[_Level], length: int, i: int, j: int) -> Optional[Rule]:
    lv = levels[length]
    # (a) reversal: the adjoint of a non-zero product is non-zero.
    if not lv.alive(lv.rev[i], lv.rev[j]):
        return "reversal"
    # (b) restriction: a zero contiguous factor zeroes the whole product.
    if length >= 1:
        shorter = levels[length - 1]
        if not shorter.alive(lv.prefix[i], lv.prefix[j]):
            return "restriction"
        if not shorter.alive(lv.suffix[i], lv.suffix[j]):
            return "restriction"
    # (c) extension: a magic unitary row sums to 1, so some one-vertex
    # extension on each side must stay non-zero.
    if length + 1 < len(levels):
        longer = levels[length + 1]
        for ext, mask in ((lv.right, lv.right_mask), (lv.left, lv.left_mask)):
            for a in ext[i]:
                if not longer.rel[a] & mask[j]:
                    return "extension"
            for b in ext[j]:
                if not longer.rel[b] & mask[i]:
                    return "extension"
    return None


def closure_fixed_point(
    g: Graph,
    k: int,
    *,
    cap: int = DEFAULT_PATH_CAP,
    max_window: int = DEFAULT_MAX_WINDOW,
    order: Order = "forward",
) -> ClosureResult:
    """
    Coarsest pair relation on paths of length 0..window that is contained in
    base compatibility and stable under reversal, restriction and extension,
    followed by transitive closure per length.

    Pairs are eliminated sweep by sweep until a full sweep removes nothing.
    The greatest fixed point does not depend on `order`; the knob exists so
    callers can check that.
    """

    window = window_for(k, max_window)
    levels = [_Level(g, length, cap) for length in range(window + 1)]
    for length in range(window + 1):
        if length >= 1:
            levels[length].link_shorter(levels[length - 1])
        if length < window:
            levels[length].link_longer(g, levels[length + 1])

    killed: dict[tuple[Path, Path], str] = {}
    lengths = list(range(window + 1))
    if order == "reverse":
        lengths.reverse()
    passes = 0
    changed = True
    while changed:
        changed = False
        passes += 1
        for length in lengths:
            lv = levels[length]
            rows = range(len(lv.paths))
            if order == "reverse":
                rows = range(len(lv.paths) - 1, -1, -1)
            for i in rows:
                partners = [j for j in _bits(lv.rel[i]) if j > i]
                if order == "reverse":
                    partners.reverse()
                for j in partners:
                    if not lv.alive(i, j):
                        continue
                    rule = _violation(levels, length, i, j)
                    if rule is not None:
                        lv.kill(i, j)
                        killed[(lv.paths[i], lv.paths[j])] = rule
                        changed = True
    LOG.debug("closure k=%d window=%d: %d passes, %d pairs removed", k, window, passes, len(killed))

    partitions = tuple(
        Partition(ground=f"paths:{lv.length}", blocks=tuple(lv.components())) for lv in levels
    )
    return ClosureResult(k=k, window=window, partitions=partitions, killed=killed, passes=passes)


def closure_partition(
    g: Graph,
    k: int,
    alpha: int,
    *,
    cap: int = DEFAULT_PATH_CAP,
    max_window: int = DEFAULT_MAX_WINDOW,
    order: Order = "forward",
) -> Partition:
    if alpha > 2 * k + 1:
        raise WindowError(f"alpha={alpha} exceeds 2k+1={2 * k + 1}")
    result = closure_fixed_point(g, k, cap=cap, max_window=max_window, order=order)
    return result.partition(alpha)
