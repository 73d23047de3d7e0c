from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping, Optional

from qlap import __version__
from qlap.bounds.counts import (
    ChainCheck,
    ChainReport,
    ConstancyReport,
    EdgePathCount,
    PathCounts,
)
from qlap.bounds.report import BoundReport, CountReport
from qlap.graph.paths import DirectedEdge
from qlap.quantum.bracket import CompatibilityWitness, PartitionBracket
from qlap.spectral.jacobi import SpectralResult
from qlap.symmetry.automorphism import OrbitSummary
from qlap.symmetry.partition import Partition


class SerializeError(ValueError):
    pass


def _get(obj: Any, key: str, kind: type | tuple[type, ...], *, where: str) -> Any:
    if not isinstance(obj, dict):
        raise SerializeError(f"{where} must be an object")
    if key not in obj:
        raise SerializeError(f"{where}.{key} is missing")
    value = obj[key]
    # bool is an int subclass; never accept it where a number is expected.
    if isinstance(value, bool) and bool not in (kind if isinstance(kind, tuple) else (kind,)):
        raise SerializeError(f"{where}.{key} has the wrong type")
    if not isinstance(value, kind):
        raise SerializeError(f"{where}.{key} has the wrong type")
    return value


def _tupled(x: Any) -> Any:
    if isinstance(x, list):
        return tuple(_tupled(v) for v in x)
    return x


def _listed(x: Any) -> Any:
    if isinstance(x, tuple):
        return [_listed(v) for v in x]
    return x


# --- scalars -----------------------------------------------------------------


def rational_to_dict(q: Fraction) -> dict[str, Any]:
    return {"num": q.numerator, "den": q.denominator, "float": float(q)}


def rational_from_dict(obj: Any, *, where: str = "rational") -> Fraction:
    num = _get(obj, "num", int, where=where)
    den = _get(obj, "den", int, where=where)
    if den <= 0:
        raise SerializeError(f"{where}.den must be positive")
    return Fraction(num, den)


def _opt_float(obj: Mapping[str, Any], key: str, *, where: str) -> Optional[float]:
    if obj.get(key) is None:
        return None
    return float(_get(obj, key, (int, float), where=where))


# --- spectrum ----------------------------------------------------------------


def spectral_to_dict(result: SpectralResult) -> dict[str, Any]:
    return {
        "n": result.n,
        "eigenvalues": list(result.eigenvalues),
        "lambda1": result.eigenvalues[1] if result.n >= 2 else None,
        "eigenvectors": [list(v) for v in result.eigenvectors],
        "residual": result.residual,
        "off_norm": result.off_norm,
        "sweeps": result.sweeps,
        "tol": result.tol,
    }


def spectral_from_dict(obj: Any) -> SpectralResult:
    where = "spectrum"
    values = _get(obj, "eigenvalues", list, where=where)
    vectors = _get(obj, "eigenvectors", list, where=where)
    if len(vectors) != len(values) or any(
        not isinstance(v, list) or len(v) != len(values) for v in vectors
    ):
        raise SerializeError(f"{where}.eigenvectors must be {len(values)} vectors of that length")
    return SpectralResult(
        eigenvalues=tuple(float(x) for x in values),
        eigenvectors=tuple(tuple(float(x) for x in v) for v in vectors),
        residual=float(_get(obj, "residual", (int, float), where=where)),
        off_norm=float(_get(obj, "off_norm", (int, float), where=where)),
        sweeps=_get(obj, "sweeps", int, where=where),
        tol=float(_get(obj, "tol", (int, float), where=where)),
    )


# --- partitions and brackets -------------------------------------------------


def partition_to_dict(p: Partition) -> dict[str, Any]:
    return {
        "ground": p.ground,
        "classes": len(p),
        "blocks": [[_listed(x) for x in b] for b in p.blocks],
    }


def partition_from_dict(obj: Any, *, where: str = "partition") -> Partition:
    ground = _get(obj, "ground", str, where=where)
    blocks = _get(obj, "blocks", list, where=where)
    try:
        return Partition(ground=ground, blocks=tuple(tuple(_tupled(x) for x in b) for b in blocks))
    except (TypeError, ValueError) as e:
        raise SerializeError(f"{where}: {e}") from None


def bracket_to_dict(br: PartitionBracket) -> dict[str, Any]:
    return {
        "k": br.k,
        "ground": br.ground,
        "exact": br.exact,
        "lower": partition_to_dict(br.lower),
        "upper": partition_to_dict(br.upper),
    }


def bracket_from_dict(obj: Any) -> PartitionBracket:
    where = "bracket"
    return PartitionBracket(
        k=_get(obj, "k", int, where=where),
        ground=_get(obj, "ground", str, where=where),
        lower=partition_from_dict(_get(obj, "lower", dict, where=where), where=f"{where}.lower"),
        upper=partition_from_dict(_get(obj, "upper", dict, where=where), where=f"{where}.upper"),
    )


def witness_to_dict(w: CompatibilityWitness) -> dict[str, Any]:
    return {"p": list(w.p), "q": list(w.q), "status": w.status, "rule": w.rule}


def witness_from_dict(obj: Any) -> CompatibilityWitness:
    where = "witness"
    rule = obj.get("rule") if isinstance(obj, dict) else None
    return CompatibilityWitness(
        p=tuple(_get(obj, "p", list, where=where)),
        q=tuple(_get(obj, "q", list, where=where)),
        status=_get(obj, "status", str, where=where),
        rule=rule if isinstance(rule, str) else None,
    )


def orbits_to_dict(s: OrbitSummary) -> dict[str, Any]:
    return {
        "aut_order": s.aut_order,
        "generators": [list(x) for x in s.generators],
        "vertex_transitive": s.vertex_transitive,
        "edge_transitive": s.edge_transitive,
        "arc_transitive": s.arc_transitive,
        "vertex_orbits": partition_to_dict(s.vertex_orbits),
        "arc_orbits": partition_to_dict(s.arc_orbits),
        "edge_classes": partition_to_dict(s.edge_classes),
    }


def orbits_from_dict(obj: Any) -> OrbitSummary:
    where = "orbits"
    return OrbitSummary(
        aut_order=_get(obj, "aut_order", int, where=where),
        generators=tuple(tuple(x) for x in _get(obj, "generators", list, where=where)),
        vertex_orbits=partition_from_dict(obj.get("vertex_orbits"), where=f"{where}.vertex_orbits"),
        arc_orbits=partition_from_dict(obj.get("arc_orbits"), where=f"{where}.arc_orbits"),
        edge_classes=partition_from_dict(obj.get("edge_classes"), where=f"{where}.edge_classes"),
    )


# --- bounds ------------------------------------------------------------------


def _edge_from(raw: Any, *, where: str) -> DirectedEdge:
    if not isinstance(raw, list) or len(raw) != 2:
        raise SerializeError(f"{where} must be a [src, dst] pair")
    return DirectedEdge(int(raw[0]), int(raw[1]))


def _counts_to_dict(c: CountReport) -> dict[str, Any]:
    pc = c.counts
    return {
        "side": c.side,
        "ind_k": rational_to_dict(c.ind_k),
        "root": pc.root,
        "tie_break": pc.tie_break,
        "family": [list(p) for p in pc.family],
        "collected": pc.collected,
        "incidences": pc.incidences,
        "edges": [
            {"edge": list(e.edge), "count": e.count, "averaged": rational_to_dict(e.averaged)}
            for e in pc.counts
        ],
        "constancy": {"classes": c.constancy.classes, "violations": list(c.constancy.violations)},
        "chain": {
            "k": c.chain.k,
            "ind_k": rational_to_dict(c.chain.ind_k),
            "checks": [
                {"edge": list(ch.edge), "terms": [rational_to_dict(t) for t in ch.terms]}
                for ch in c.chain.checks
            ],
            "violations": list(c.chain.violations),
        },
    }


def _counts_from_dict(obj: Any) -> CountReport:
    where = "counts"
    edges = []
    for e in _get(obj, "edges", list, where=where):
        edges.append(
            EdgePathCount(
                edge=_edge_from(_get(e, "edge", list, where=f"{where}.edges"), where=f"{where}.edge"),
                count=_get(e, "count", int, where=f"{where}.edges"),
                averaged=rational_from_dict(e.get("averaged"), where=f"{where}.averaged"),
            )
        )
    const = _get(obj, "constancy", dict, where=where)
    chain = _get(obj, "chain", dict, where=where)
    checks = []
    for ch in _get(chain, "checks", list, where=f"{where}.chain"):
        terms = _get(ch, "terms", list, where=f"{where}.chain.checks")
        if len(terms) != 4:
            raise SerializeError(f"{where}.chain.checks.terms must hold 4 values")
        checks.append(
            ChainCheck(
                edge=_edge_from(ch.get("edge"), where=f"{where}.chain.edge"),
                terms=tuple(rational_from_dict(t) for t in terms),  # type: ignore[arg-type]
            )
        )
    return CountReport(
        side=_get(obj, "side", str, where=where),
        ind_k=rational_from_dict(obj.get("ind_k"), where=f"{where}.ind_k"),
        counts=PathCounts(
            root=_get(obj, "root", int, where=where),
            tie_break=_get(obj, "tie_break", str, where=where),
            family=tuple(tuple(p) for p in _get(obj, "family", list, where=where)),
            collected=_get(obj, "collected", int, where=where),
            incidences=_get(obj, "incidences", int, where=where),
            counts=tuple(edges),
        ),
        constancy=ConstancyReport(
            classes=_get(const, "classes", int, where=f"{where}.constancy"),
            violations=tuple(_get(const, "violations", list, where=f"{where}.constancy")),
        ),
        chain=ChainReport(
            k=_get(chain, "k", int, where=f"{where}.chain"),
            ind_k=rational_from_dict(chain.get("ind_k"), where=f"{where}.chain.ind_k"),
            checks=tuple(checks),
            violations=tuple(_get(chain, "violations", list, where=f"{where}.chain")),
        ),
    )


def bounds_to_dict(r: BoundReport) -> dict[str, Any]:
    return {
        "n": r.n,
        "diameter": r.diameter,
        "volume": r.volume,
        "degree": r.degree,
        "k": r.k,
        "convention": r.convention,
        "root": r.root,
        "tie_break": r.tie_break,
        "lambda1": r.lambda1,
        "ind_classical": rational_to_dict(r.ind_classical),
        "r_k": list(r.r_k),
        "ind_k_lo": rational_to_dict(r.ind_k_lo),
        "ind_k_hi": rational_to_dict(r.ind_k_hi),
        "chung_bound": r.chung_bound,
        "applicable": r.applicable,
        "improved_bound_certified": r.improved_bound_certified,
        "improved_bound_candidate": r.improved_bound_candidate,
        "exact": r.exact,
        "quotient_at_eigenvector": r.quotient_at_eigenvector,
        "counts": [_counts_to_dict(c) for c in r.counts],
        "violations": list(r.violations),
    }


def bounds_from_dict(obj: Any) -> BoundReport:
    where = "bounds"
    r_k = _get(obj, "r_k", list, where=where)
    if len(r_k) != 2:
        raise SerializeError(f"{where}.r_k must be [lo, hi]")
    degree = obj.get("degree")
    return BoundReport(
        n=_get(obj, "n", int, where=where),
        diameter=_get(obj, "diameter", int, where=where),
        volume=_get(obj, "volume", int, where=where),
        degree=degree if isinstance(degree, int) else None,
        k=_get(obj, "k", int, where=where),
        convention=_get(obj, "convention", str, where=where),
        root=_get(obj, "root", int, where=where),
        tie_break=_get(obj, "tie_break", str, where=where),
        lambda1=float(_get(obj, "lambda1", (int, float), where=where)),
        ind_classical=rational_from_dict(obj.get("ind_classical"), where=f"{where}.ind_classical"),
        r_k=(int(r_k[0]), int(r_k[1])),
        ind_k_lo=rational_from_dict(obj.get("ind_k_lo"), where=f"{where}.ind_k_lo"),
        ind_k_hi=rational_from_dict(obj.get("ind_k_hi"), where=f"{where}.ind_k_hi"),
        chung_bound=float(_get(obj, "chung_bound", (int, float), where=where)),
        applicable=_get(obj, "applicable", bool, where=where),
        improved_bound_certified=_opt_float(obj, "improved_bound_certified", where=where),
        improved_bound_candidate=_opt_float(obj, "improved_bound_candidate", where=where),
        exact=_get(obj, "exact", bool, where=where),
        quotient_at_eigenvector=float(_get(obj, "quotient_at_eigenvector", (int, float), where=where)),
        counts=tuple(_counts_from_dict(c) for c in _get(obj, "counts", list, where=where)),
        violations=tuple(_get(obj, "violations", list, where=where)),
    )


# --- documents ---------------------------------------------------------------


def meta(config: Optional[Mapping[str, Any]] = None) -> dict[str, Any]:
    return {"tool": "qlap", "version": __version__, "config": dict(config or {})}


def dumps_document(payload: Mapping[str, Any], config: Optional[Mapping[str, Any]] = None) -> str:
    doc = {"meta": meta(config)}
    doc.update(payload)
    return json.dumps(doc, indent=2)
