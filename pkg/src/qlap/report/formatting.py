from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from qlap.bounds.report import BoundReport
from qlap.quantum.bracket import CompatibilityWitness, PartitionBracket
from qlap.spectral.jacobi import SpectralResult
from qlap.symmetry.automorphism import OrbitSummary
from qlap.symmetry.partition import Partition


def fmt_flag(b: bool) -> str:
    return "true" if b else "false"


def fmt_num(x: Optional[float]) -> str:
    return "n/a" if x is None else f"{x:.10g}"


def fmt_rational(q: Fraction) -> str:
    return f"{q} ({float(q):.10g})" if q.denominator != 1 else str(q)


def fmt_path(p: Sequence[int]) -> str:
    return "-".join(str(v) for v in p)


def _fmt_element(x: Any) -> str:
    return fmt_path(x) if isinstance(x, tuple) else str(x)


def fmt_blocks(p: Partition, *, limit: int = 12) -> list[str]:
    lines: list[str] = []
    for bid, block in enumerate(p.blocks):
        shown = " ".join(_fmt_element(x) for x in block[:limit])
        more = f" ... (+{len(block) - limit})" if len(block) > limit else ""
        lines.append(f"  {bid:>3} [{len(block):>4}] {shown}{more}")
    return lines


def fmt_spectrum(result: SpectralResult) -> str:
    parts: list[str] = []
    parts.append(f"n: {result.n}")
    if result.n >= 2:
        parts.append("lambda1 = %.10g" % result.eigenvalues[1])
    parts.append("eigenvalues:")
    for i, x in enumerate(result.eigenvalues):
        parts.append(f"  {i:>3} {x:>16.10g}")
    parts.append(f"residual: {result.residual:.3e}")
    parts.append(f"sweeps: {result.sweeps}")
    return "\n".join(parts)


def fmt_orbits(s: OrbitSummary) -> str:
    parts: list[str] = []
    parts.append(f"aut_order: {s.aut_order}")
    parts.append(f"vertex_transitive: {fmt_flag(s.vertex_transitive)}")
    parts.append(f"edge_transitive: {fmt_flag(s.edge_transitive)}")
    parts.append(f"arc_transitive: {fmt_flag(s.arc_transitive)}")
    parts.append(f"vertex_orbits: {len(s.vertex_orbits)}")
    parts.append(f"edge_classes: {len(s.edge_classes)}")
    parts.append(f"arc_classes: {len(s.arc_orbits)}")
    parts.append("vertex orbits:")
    parts.extend(fmt_blocks(s.vertex_orbits))
    if len(s.edge_classes):
        parts.append("edge classes:")
        parts.extend(fmt_blocks(s.edge_classes))
    return "\n".join(parts)


def fmt_bracket(br: PartitionBracket, found: Iterable[CompatibilityWitness] = ()) -> str:
    parts: list[str] = []
    parts.append(f"k: {br.k}")
    parts.append(f"ground: {br.ground}")
    parts.append(f"exact: {fmt_flag(br.exact)}")
    parts.append(f"classes: {len(br.upper)}")
    parts.append(f"lower blocks: {len(br.lower)}")
    parts.append(f"upper blocks: {len(br.upper)}")
    parts.append("upper:")
    parts.extend(fmt_blocks(br.upper))
    if not br.exact:
        parts.append("lower:")
        parts.extend(fmt_blocks(br.lower))
    rows = list(found)
    if rows:
        parts.append(f"separated pairs: {len(rows)}")
        for w in rows:
            parts.append(f"  {fmt_path(w.p):<16} {fmt_path(w.q):<16} {w.rule or '-'}")
    return "\n".join(parts)


def fmt_bounds(r: BoundReport) -> str:
    parts: list[str] = []
    parts.append(f"n: {r.n}")
    parts.append(f"diameter: {r.diameter}")
    parts.append(f"volume: {r.volume}")
    parts.append(f"degree: {r.degree if r.degree is not None else 'n/a'}")
    parts.append(f"k: {r.k}")
    parts.append(f"convention: {r.convention}")
    parts.append(f"lambda1: {fmt_num(r.lambda1)}")
    parts.append(f"ind: {fmt_rational(r.ind_classical)}")
    parts.append(f"r_k: [{r.r_k[0]}, {r.r_k[1]}]")
    parts.append(f"ind_k: [{fmt_rational(r.ind_k_lo)}, {fmt_rational(r.ind_k_hi)}]")
    parts.append(f"chung_bound: {fmt_num(r.chung_bound)}")
    parts.append(f"applicable: {fmt_flag(r.applicable)}")
    parts.append(f"improved_bound_certified: {fmt_num(r.improved_bound_certified)}")
    parts.append(f"improved_bound_candidate: {fmt_num(r.improved_bound_candidate)}")
    parts.append(f"exact: {fmt_flag(r.exact)}")
    parts.append(f"quotient_at_eigenvector: {fmt_num(r.quotient_at_eigenvector)}")
    for c in r.counts:
        margin = c.chain.min_margin
        parts.append(
            f"counts[{c.side}]: root={c.counts.root} collected={c.counts.collected} "
            f"min_margin={margin if margin is not None else 'n/a'}"
        )
        for e in c.counts.counts:
            parts.append(f"  {e.edge.src:>3}-{e.edge.dst:<3} {e.count:>6} {str(e.averaged):>10}")
    parts.append(f"violations: {len(r.violations)}")
    for v in r.violations:
        parts.append(f"  - {v}")
    return "\n".join(parts)


def fmt_sections(sections: Sequence[tuple[str, str]]) -> str:
    return "\n\n".join(f"[{name}]\n{body}" for name, body in sections)
