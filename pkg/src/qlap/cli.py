from __future__ import annotations

import os
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, NoReturn, Optional


def _require(mod: str) -> None:
    try:
        __import__(mod)
    except Exception as exc:  # pragma: no cover
        raise SystemExit(
            f"Missing dependency '{mod}'. Install project deps first (see README.md)."
        ) from exc


_require("typer")

import typer  # noqa: E402

from qlap.bounds.counts import NotVertexTransitive  # noqa: E402
from qlap.bounds.report import BoundReport, evaluate_bounds  # noqa: E402
from qlap.config import (  # noqa: E402
    AnalysisConfig,
    Config,
    ConfigError,
    apply_env_overrides,
    load_config,
    validate_config,
)
from qlap.graph.core import DisconnectedError, Graph, read_graph, require_connected  # noqa: E402
from qlap.quantum.bracket import bracket, witnesses  # noqa: E402
from qlap.quantum.closure import closure_fixed_point  # noqa: E402
from qlap.report import formatting, serialize  # noqa: E402
from qlap.spectral.jacobi import ConvergenceError, SpectralResult, eigen_decompose  # noqa: E402
from qlap.spectral.laplacian import build_laplacian  # noqa: E402
from qlap.symmetry.automorphism import PermutationGroup, automorphism_group, orbit_summary  # noqa: E402
from qlap.util.log import setup_logging  # noqa: E402

app = typer.Typer(add_completion=False, no_args_is_help=True)

EXIT_INPUT = 1
EXIT_DISCONNECTED = 2
EXIT_CONVERGENCE = 3
EXIT_NOT_TRANSITIVE = 4


def _fail(code: int, message: str) -> NoReturn:
    typer.echo(f"ERROR: {message}", err=True)
    raise typer.Exit(code)


@contextmanager
def _exit_codes() -> Iterator[None]:
    try:
        yield
    except NotVertexTransitive as e:
        _fail(EXIT_NOT_TRANSITIVE, str(e))
    except DisconnectedError as e:
        _fail(EXIT_DISCONNECTED, str(e))
    except ConvergenceError as e:
        _fail(EXIT_CONVERGENCE, str(e))
    except (ValueError, RuntimeError, OSError) as e:
        # Parse, range, config, window and search-limit errors all land here.
        _fail(EXIT_INPUT, str(e))


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log search statistics to stderr."),
) -> None:
    setup_logging(verbose)


def _analysis(
    input: Path,
    *,
    k: Optional[int],
    alpha: Optional[int],
    fmt: Optional[str],
    tol: Optional[float],
    convention: Optional[str],
    root: Optional[int],
    tie_break: Optional[str],
    input_format: str,
    config: Optional[Path],
) -> AnalysisConfig:
    cfg = load_config(config) if config is not None else Config()
    cfg = apply_env_overrides(cfg, os.environ)
    d = cfg.defaults
    acfg = AnalysisConfig(
        input=str(input),
        k=d.k if k is None else k,
        alpha=alpha,
        format=d.format if fmt is None else fmt,
        tol=d.tol if tol is None else tol,
        convention=d.convention if convention is None else convention,
        root=(d.root or 0) if root is None else root,
        tie_break=d.tie_break if tie_break is None else tie_break,
        input_format=input_format,
        limits=cfg.limits,
    )
    problems = acfg.problems()
    if acfg.input_format not in ("auto", "edges", "matrix"):
        problems.append("input-format must be one of: auto|edges|matrix")
    if acfg.tie_break not in ("ascending", "descending"):
        problems.append("tie-break must be one of: ascending|descending")
    if problems:
        raise ConfigError("; ".join(problems))
    return acfg


def _load(acfg: AnalysisConfig) -> Graph:
    return read_graph(
        Path(acfg.input),
        acfg.input_format,  # type: ignore[arg-type]
        max_vertices=acfg.limits.max_vertices,
    )


def _spectrum(g: Graph, acfg: AnalysisConfig) -> SpectralResult:
    require_connected(g)
    return eigen_decompose(build_laplacian(g), acfg.tol, sweep_limit=acfg.limits.sweep_limit)


def _emit(acfg: AnalysisConfig, text: str, payload: dict) -> None:
    if acfg.format == "json":
        typer.echo(serialize.dumps_document(payload, acfg.to_dict()))
    else:
        typer.echo(text)


_INPUT = typer.Argument(..., dir_okay=False, help="Edge list or adjacency matrix file.")
_K = typer.Option(None, "--k", "-k", help="Subgroup index k >= 1.")
_FORMAT = typer.Option(None, "--format", "-f", help="text|json")
_TOL = typer.Option(None, "--tol", help="Eigensolver off-diagonal tolerance.")
_CONVENTION = typer.Option(None, "--convention", help="directed|unordered edge-class counting.")
_ROOT = typer.Option(None, "--root", help="Root vertex of the shortest-path family.")
_TIE_BREAK = typer.Option(None, "--tie-break", help="ascending|descending BFS neighbor order.")
_INPUT_FORMAT = typer.Option("auto", "--input-format", help="auto|edges|matrix")
_CONFIG = typer.Option(None, "--config", "-c", dir_okay=False)


@app.command("spectrum")
def spectrum_cmd(
    input: Path = _INPUT,
    fmt: Optional[str] = _FORMAT,
    tol: Optional[float] = _TOL,
    input_format: str = _INPUT_FORMAT,
    config: Optional[Path] = _CONFIG,
) -> None:
    """Eigenvalues of the normalized Laplacian and lambda_1."""

    with _exit_codes():
        acfg = _analysis(
            input, k=None, alpha=None, fmt=fmt, tol=tol, convention=None, root=None,
            tie_break=None, input_format=input_format, config=config,
        )
        result = _spectrum(_load(acfg), acfg)
        _emit(acfg, formatting.fmt_spectrum(result), {"spectrum": serialize.spectral_to_dict(result)})


@app.command("orbits")
def orbits_cmd(
    input: Path = _INPUT,
    fmt: Optional[str] = _FORMAT,
    input_format: str = _INPUT_FORMAT,
    config: Optional[Path] = _CONFIG,
) -> None:
    """Automorphism group order, vertex orbits and edge classes."""

    with _exit_codes():
        acfg = _analysis(
            input, k=None, alpha=None, fmt=fmt, tol=None, convention=None, root=None,
            tie_break=None, input_format=input_format, config=config,
        )
        g = _load(acfg)
        summary = orbit_summary(
            g, limit=acfg.limits.group_limit, budget=acfg.limits.search_budget
        )
        _emit(acfg, formatting.fmt_orbits(summary), {"orbits": serialize.orbits_to_dict(summary)})


@app.command("equiv")
def equiv_cmd(
    input: Path = _INPUT,
    k: Optional[int] = _K,
    alpha: int = typer.Option(1, "--alpha", "-a", help="Path length, at most 2k+1."),
    fmt: Optional[str] = _FORMAT,
    input_format: str = _INPUT_FORMAT,
    config: Optional[Path] = _CONFIG,
) -> None:
    """Classical and closure bracket of the k-equivalence on paths of one length."""

    with _exit_codes():
        acfg = _analysis(
            input, k=k, alpha=alpha, fmt=fmt, tol=None, convention=None, root=None,
            tie_break=None, input_format=input_format, config=config,
        )
        g = _load(acfg)
        lim = acfg.limits
        group = automorphism_group(g, limit=lim.group_limit, budget=lim.search_budget)
        closure = closure_fixed_point(g, acfg.k, cap=lim.path_cap, max_window=lim.max_window)
        br = bracket(g, acfg.k, alpha, group=group, closure=closure, cap=lim.path_cap)
        found = witnesses(g, acfg.k, alpha, group=group, closure=closure, cap=lim.path_cap)
        _emit(
            acfg,
            formatting.fmt_bracket(br, found),
            {
                "bracket": serialize.bracket_to_dict(br),
                "witnesses": [serialize.witness_to_dict(w) for w in found],
            },
        )


@app.command("bounds")
def bounds_cmd(
    input: Path = _INPUT,
    k: Optional[int] = _K,
    fmt: Optional[str] = _FORMAT,
    tol: Optional[float] = _TOL,
    convention: Optional[str] = _CONVENTION,
    root: Optional[int] = _ROOT,
    tie_break: Optional[str] = _TIE_BREAK,
    input_format: str = _INPUT_FORMAT,
    config: Optional[Path] = _CONFIG,
) -> None:
    """Classical and improved lower bounds on lambda_1 for a vertex-transitive graph."""

    with _exit_codes():
        acfg = _analysis(
            input, k=k, alpha=None, fmt=fmt, tol=tol, convention=convention, root=root,
            tie_break=tie_break, input_format=input_format, config=config,
        )
        g = _load(acfg)
        report = _bounds(g, acfg, _spectrum(g, acfg))
        _emit(acfg, formatting.fmt_bounds(report), {"bounds": serialize.bounds_to_dict(report)})


def _bounds(
    g: Graph,
    acfg: AnalysisConfig,
    spectral: SpectralResult,
    group: Optional[PermutationGroup] = None,
) -> BoundReport:
    lim = acfg.limits
    return evaluate_bounds(
        g,
        acfg.k,
        spectral,
        convention=acfg.convention,  # type: ignore[arg-type]
        root=acfg.root,
        tie_break=acfg.tie_break,  # type: ignore[arg-type]
        group=group,
        cap=lim.path_cap,
        max_window=lim.max_window,
        limit=lim.group_limit,
        budget=lim.search_budget,
    )


@app.command("report")
def report_cmd(
    input: Path = _INPUT,
    k: Optional[int] = _K,
    fmt: Optional[str] = _FORMAT,
    tol: Optional[float] = _TOL,
    convention: Optional[str] = _CONVENTION,
    root: Optional[int] = _ROOT,
    tie_break: Optional[str] = _TIE_BREAK,
    input_format: str = _INPUT_FORMAT,
    config: Optional[Path] = _CONFIG,
) -> None:
    """Spectrum, orbits, the edge bracket and (when they apply) the bounds."""

    with _exit_codes():
        acfg = _analysis(
            input, k=k, alpha=1, fmt=fmt, tol=tol, convention=convention, root=root,
            tie_break=tie_break, input_format=input_format, config=config,
        )
        g = _load(acfg)
        lim = acfg.limits
        spectral = _spectrum(g, acfg)
        group = automorphism_group(g, limit=lim.group_limit, budget=lim.search_budget)
        summary = orbit_summary(g, group)
        br = bracket(g, acfg.k, 1, group=group, cap=lim.path_cap, max_window=lim.max_window)
        sections = [
            ("spectrum", formatting.fmt_spectrum(spectral)),
            ("orbits", formatting.fmt_orbits(summary)),
            ("equiv", formatting.fmt_bracket(br)),
        ]
        payload: dict = {
            "spectrum": serialize.spectral_to_dict(spectral),
            "orbits": serialize.orbits_to_dict(summary),
            "bracket": serialize.bracket_to_dict(br),
            "bounds": None,
        }
        if summary.vertex_transitive:
            report = _bounds(g, acfg, spectral, group)
            sections.append(("bounds", formatting.fmt_bounds(report)))
            payload["bounds"] = serialize.bounds_to_dict(report)
        else:
            sections.append(("bounds", "skipped: graph is not vertex-transitive"))
        _emit(acfg, formatting.fmt_sections(sections), payload)


@app.command("validate-config")
def validate_config_cmd(
    config: Path = typer.Option(..., "--config", "-c", dir_okay=False),
) -> None:
    try:
        cfg = apply_env_overrides(load_config(config), os.environ)
    except (ConfigError, OSError) as e:
        _fail(EXIT_INPUT, str(e))
    errors = validate_config(cfg)
    if errors:
        for e in errors:
            typer.echo(f"ERROR: {e}", err=True)
        raise typer.Exit(EXIT_INPUT)
    typer.echo("OK")


if __name__ == "__main__":  # pragma: no cover
    app()
