from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional

from qlap.constants import (
    DEFAULT_GROUP_LIMIT,
    DEFAULT_MAX_WINDOW,
    DEFAULT_PATH_CAP,
    DEFAULT_SEARCH_BUDGET,
)
from qlap.graph.core import Graph, volume
from qlap.graph.paths import Path
from qlap.quantum.closure import ClosureResult, closure_fixed_point
from qlap.quantum.compat import WindowError, base_compatible, pattern
from qlap.symmetry.automorphism import PermutationGroup, automorphism_group, path_orbits
from qlap.symmetry.partition import Partition, merge_orientations

LOG = logging.getLogger(__name__)

Convention = Literal["directed", "unordered"]
WitnessStatus = Literal["classically-equivalent", "closure-alive", "closure-killed"]


class BracketError(ValueError):
    pass


@dataclass(frozen=True)
class PartitionBracket:
    """
    Certified enclosure of the k-equivalence classes on one path space.

    `lower` (classical orbits) refines the true classes, which refine
    `upper` (closure classes). When both sides coincide the classes are
    known exactly.
    """

    k: int
    ground: str
    lower: Partition
    upper: Partition

    def __post_init__(self) -> None:
        if self.lower.ground != self.ground or self.upper.ground != self.ground:
            raise BracketError("bracket sides must live on the bracket's ground set")
        if not self.lower.refines(self.upper):
            raise BracketError(f"lower partition does not refine upper on {self.ground}")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


@dataclass(frozen=True)
class CompatibilityWitness:
    p: Path
    q: Path
    status: WitnessStatus
    rule: Optional[str] = None


def _resolve(
    g: Graph,
    k: int,
    group: Optional[PermutationGroup],
    closure: Optional[ClosureResult],
    *,
    cap: int,
    max_window: int,
    limit: int,
    budget: int,
) -> tuple[PermutationGroup, ClosureResult]:
    if group is None:
        group = automorphism_group(g, limit=limit, budget=budget)
    if closure is None:
        closure = closure_fixed_point(g, k, cap=cap, max_window=max_window)
    elif closure.k != k:
        raise BracketError(f"closure was computed for k={closure.k}, not k={k}")
    return group, closure


def bracket(
    g: Graph,
    k: int,
    alpha: int,
    *,
    group: Optional[PermutationGroup] = None,
    closure: Optional[ClosureResult] = None,
    cap: int = DEFAULT_PATH_CAP,
    max_window: int = DEFAULT_MAX_WINDOW,
    limit: int = DEFAULT_GROUP_LIMIT,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> PartitionBracket:
    if alpha > 2 * k + 1:
        raise WindowError(f"alpha={alpha} exceeds 2k+1={2 * k + 1}")
    group, closure = _resolve(
        g, k, group, closure, cap=cap, max_window=max_window, limit=limit, budget=budget
    )
    lower = path_orbits(g, group, alpha, cap=cap)
    upper = closure.partition(alpha)
    return PartitionBracket(k=k, ground=f"paths:{alpha}", lower=lower, upper=upper)


def classify_pair(
    g: Graph, br: PartitionBracket, closure: ClosureResult, p: Path, q: Path
) -> CompatibilityWitness:
    if br.lower.same_block(p, q):
        return CompatibilityWitness(p, q, "classically-equivalent")
    if br.upper.same_block(p, q):
        return CompatibilityWitness(p, q, "closure-alive")
    if not base_compatible(g, p, q):
        return CompatibilityWitness(p, q, "closure-killed", "base")
    return CompatibilityWitness(p, q, "closure-killed", closure.killing_rule(p, q))


def witnesses(
    g: Graph,
    k: int,
    alpha: int,
    *,
    group: Optional[PermutationGroup] = None,
    closure: Optional[ClosureResult] = None,
    cap: int = DEFAULT_PATH_CAP,
    max_window: int = DEFAULT_MAX_WINDOW,
    limit: int = DEFAULT_GROUP_LIMIT,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> list[CompatibilityWitness]:
    """
    Pairs that pass base compatibility but end up in different upper blocks,
    each with the closure rule that removed it first.
    """

    group, closure = _resolve(
        g, k, group, closure, cap=cap, max_window=max_window, limit=limit, budget=budget
    )
    br = bracket(g, k, alpha, group=group, closure=closure, cap=cap, max_window=max_window)
    buckets: dict[tuple, list[Path]] = {}
    for p in br.upper.elements:
        buckets.setdefault(pattern(g, p), []).append(p)
    out: list[CompatibilityWitness] = []
    for members in buckets.values():
        for a, p in enumerate(members):
            for q in members[a + 1 :]:
                if not br.upper.same_block(p, q):
                    out.append(classify_pair(g, br, closure, p, q))
    out.sort(key=lambda w: (w.p, w.q))
    return out


def r_k_bracket(
    g: Graph,
    k: int,
    *,
    convention: Convention = "directed",
    group: Optional[PermutationGroup] = None,
    closure: Optional[ClosureResult] = None,
    cap: int = DEFAULT_PATH_CAP,
    max_window: int = DEFAULT_MAX_WINDOW,
    limit: int = DEFAULT_GROUP_LIMIT,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> tuple[int, int]:
    """
    (r_lo, r_hi): smallest edge class on the classical and the closure side.

    Classes are first closed under reversal, so an orbit holding one
    orientation of its edges is counted together with its reverse. Under
    "directed" r is the number of ordered adjacent pairs in that class (twice
    its edges); under "unordered" it is the number of edges.
    """

    if not g.edges:
        raise BracketError("r_k needs at least one edge")
    if convention not in ("directed", "unordered"):
        raise BracketError(f"unknown convention {convention!r}")
    br = bracket(
        g, k, 1, group=group, closure=closure, cap=cap, max_window=max_window,
        limit=limit, budget=budget,
    )
    per_edge = 2 if convention == "directed" else 1
    lower, upper = merge_orientations(br.lower), merge_orientations(br.upper)
    return per_edge * lower.min_block_size(), per_edge * upper.min_block_size()


@dataclass(frozen=True)
class MonotonicityReport:
    k_max: int
    convention: str
    # (k, r_lo, r_hi) per k.
    r_intervals: tuple[tuple[int, int, int], ...]
    ind_intervals: tuple[tuple[int, Fraction, Fraction], ...]
    violations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations


def monotonicity_check(
    g: Graph,
    k_max: int,
    *,
    convention: Convention = "directed",
    group: Optional[PermutationGroup] = None,
    cap: int = DEFAULT_PATH_CAP,
    max_window: int = DEFAULT_MAX_WINDOW,
    limit: int = DEFAULT_GROUP_LIMIT,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> MonotonicityReport:
    """
    Upper partitions for k+1 must refine those for k on every common length,
    and the ind_k estimates must be non-decreasing in k and bounded by the
    classical index on the same convention.
    """

    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if group is None:
        group = automorphism_group(g, limit=limit, budget=budget)
    vol = volume(g)
    closures: list[ClosureResult] = []
    r_rows: list[tuple[int, int, int]] = []
    ind_rows: list[tuple[int, Fraction, Fraction]] = []
    violations: list[str] = []
    for k in range(1, k_max + 1):
        closure = closure_fixed_point(g, k, cap=cap, max_window=max_window)
        closures.append(closure)
        r_lo, r_hi = r_k_bracket(
            g, k, convention=convention, group=group, closure=closure, cap=cap,
            max_window=max_window,
        )
        r_rows.append((k, r_lo, r_hi))
        ind_rows.append((k, Fraction(vol, r_hi), Fraction(vol, r_lo)))

    for prev, cur in zip(closures, closures[1:]):
        for alpha in range(min(prev.window, cur.window) + 1):
            if not cur.partition(alpha).refines(prev.partition(alpha)):
                violations.append(
                    f"upper partition for k={cur.k} does not refine k={prev.k} at alpha={alpha}"
                )
    for (k0, lo0, hi0), (k1, lo1, hi1) in zip(ind_rows, ind_rows[1:]):
        if lo1 < lo0:
            violations.append(f"ind_k candidate decreased from k={k0} ({lo0}) to k={k1} ({lo1})")
        if hi1 != hi0:
            violations.append(f"classical side of ind_k changed between k={k0} and k={k1}")
    for k, lo, hi in ind_rows:
        if lo > hi:
            violations.append(f"ind_k interval for k={k} is empty: [{lo}, {hi}]")
    for v in violations:
        LOG.warning("monotonicity: %s", v)
    return MonotonicityReport(
        k_max=k_max,
        convention=convention,
        r_intervals=tuple(r_rows),
        ind_intervals=tuple(ind_rows),
        violations=tuple(violations),
    )
