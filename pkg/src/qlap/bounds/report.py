from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from qlap.bounds.counts import (
    ChainReport,
    ConstancyReport,
    NotVertexTransitive,
    PathCounts,
    count_Ne,
    verify_class_constancy,
    verify_inequality_chain,
)
from qlap.constants import (
    DEFAULT_GROUP_LIMIT,
    DEFAULT_MAX_WINDOW,
    DEFAULT_PATH_CAP,
    DEFAULT_SEARCH_BUDGET,
)
from qlap.graph.core import Graph, GraphError, diameter, regular_degree, require_connected, volume
from qlap.graph.paths import TieBreak
from qlap.quantum.bracket import Convention, r_k_bracket
from qlap.quantum.closure import ClosureResult, closure_fixed_point
from qlap.spectral.jacobi import SpectralResult, lambda1
from qlap.spectral.laplacian import harmonic_quotient
from qlap.symmetry.automorphism import (
    PermutationGroup,
    automorphism_group,
    classical_index,
    is_vertex_transitive,
    path_orbits,
)
from qlap.symmetry.partition import Partition

LOG = logging.getLogger(__name__)

# Slack for comparisons that mix eigenvalues with exact bounds.
BOUND_SLACK = 1e-8
CHAIN_SLACK = 1e-12


def ind_k_interval(
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
) -> tuple[Fraction, Fraction]:
    """[V / r_hi, V / r_lo]; the upper end comes from classical orbits."""

    r_lo, r_hi = r_k_bracket(
        g, k, convention=convention, group=group, closure=closure, cap=cap,
        max_window=max_window, limit=limit, budget=budget,
    )
    vol = volume(g)
    return Fraction(vol, r_hi), Fraction(vol, r_lo)


@dataclass(frozen=True)
class CountReport:
    side: str
    ind_k: Fraction
    counts: PathCounts
    constancy: ConstancyReport
    chain: ChainReport


@dataclass(frozen=True)
class BoundReport:
    n: int
    diameter: int
    volume: int
    degree: Optional[int]
    k: int
    convention: str
    root: int
    tie_break: str
    lambda1: float
    ind_classical: Fraction
    r_k: tuple[int, int]
    ind_k_lo: Fraction
    ind_k_hi: Fraction
    chung_bound: float
    applicable: bool
    improved_bound_certified: Optional[float]
    improved_bound_candidate: Optional[float]
    exact: bool
    quotient_at_eigenvector: float
    counts: tuple[CountReport, ...] = ()
    violations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations


def _relation(g: Graph, side: str, lengths: range, group: PermutationGroup,
              closure: ClosureResult, cap: int) -> dict[int, Partition]:
    if side == "lower":
        return {a: path_orbits(g, group, a, cap=cap) for a in lengths}
    return {a: closure.partition(a) for a in lengths}


def evaluate_bounds(
    g: Graph,
    k: int,
    spectral: SpectralResult,
    *,
    convention: Convention = "directed",
    root: int = 0,
    tie_break: TieBreak = "ascending",
    group: Optional[PermutationGroup] = None,
    cap: int = DEFAULT_PATH_CAP,
    max_window: int = DEFAULT_MAX_WINDOW,
    limit: int = DEFAULT_GROUP_LIMIT,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> BoundReport:
    """
    Classical diameter/index bound and its k-equivalence refinement.

    The certified improved bound uses the classical end of the ind_k
    interval and holds as a theorem whenever D <= 2k+1. The candidate bound
    uses the closure end and is only as good as the closure classes.
    """

    require_connected(g)
    if g.n < 2:
        raise GraphError("bounds need at least two vertices")
    if group is None:
        group = automorphism_group(g, limit=limit, budget=budget)
    if not is_vertex_transitive(g, group):
        raise NotVertexTransitive("graph is not vertex-transitive")

    n = g.n
    d = diameter(g)
    vol = volume(g)
    lam = lambda1(spectral)
    ind = classical_index(g, group)
    chung = float(1 / (d * d * ind))
    applicable = d <= 2 * k + 1

    closure = closure_fixed_point(g, k, cap=cap, max_window=max_window)
    r_lo, r_hi = r_k_bracket(
        g, k, convention=convention, group=group, closure=closure, cap=cap,
        max_window=max_window,
    )
    ind_k_lo, ind_k_hi = Fraction(vol, r_hi), Fraction(vol, r_lo)
    lower1 = path_orbits(g, group, 1, cap=cap)
    upper1 = closure.partition(1)
    exact = lower1 == upper1

    violations: list[str] = []
    if lam < chung - BOUND_SLACK:
        violations.append(f"lambda1={lam!r} is below the classical bound {chung!r}")

    quotient = harmonic_quotient(g, spectral.eigenvector(1))
    if abs(quotient - lam) > BOUND_SLACK * max(1.0, lam):
        violations.append(f"quotient at the lambda1 eigenvector is {quotient!r}, not {lam!r}")

    certified: Optional[float] = None
    candidate: Optional[float] = None
    reports: list[CountReport] = []
    if applicable:
        certified = float(1 / (d * d * ind_k_hi))
        candidate = float(1 / (d * d * ind_k_lo))
        if lam < certified - BOUND_SLACK:
            violations.append(f"lambda1={lam!r} is below the certified bound {certified!r}")
        if certified < chung - CHAIN_SLACK:
            violations.append(
                f"certified bound {certified!r} is below the classical bound {chung!r} "
                f"(ind_k={ind_k_hi} > ind={ind})"
            )
        if candidate < certified - CHAIN_SLACK:
            violations.append(f"candidate bound {candidate!r} is below certified {certified!r}")

        lengths = range(1, d + 1)
        sides = [("lower", lower1, ind_k_hi)]
        if d <= closure.window:
            sides.append(("upper", upper1, ind_k_lo))
        else:
            LOG.info("diameter %d exceeds the closure window %d; skipping upper counts", d, closure.window)
        for side, classes, side_ind in sides:
            relation = _relation(g, side, lengths, group, closure, cap)
            counts = count_Ne(g, relation, root, tie_break=tie_break)
            constancy = verify_class_constancy(counts, classes)
            chain = verify_inequality_chain(g, counts, k, classes, side_ind)
            reports.append(CountReport(side, side_ind, counts, constancy, chain))
            violations.extend(f"{side}: {v}" for v in constancy.violations)
            violations.extend(f"{side}: {v}" for v in chain.violations)
        if len(reports) == 2:
            lo, hi = reports[0].counts, reports[1].counts
            for a, b in zip(lo.counts, hi.counts):
                if a.count > b.count:
                    violations.append(
                        f"edge {(a.edge.src, a.edge.dst)}: lower count {a.count} exceeds upper {b.count}"
                    )

    for v in violations:
        LOG.warning("bounds: %s", v)
    return BoundReport(
        n=n,
        diameter=d,
        volume=vol,
        degree=regular_degree(g),
        k=k,
        convention=convention,
        root=root,
        tie_break=tie_break,
        lambda1=lam,
        ind_classical=ind,
        r_k=(r_lo, r_hi),
        ind_k_lo=ind_k_lo,
        ind_k_hi=ind_k_hi,
        chung_bound=chung,
        applicable=applicable,
        improved_bound_certified=certified,
        improved_bound_candidate=candidate,
        exact=exact,
        quotient_at_eigenvector=quotient,
        counts=tuple(reports),
        violations=tuple(violations),
    )
