from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Literal, Mapping, Optional

from qlap.constants import (
    BUDGET_ENV,
    CONVENTIONS,
    DEFAULT_GROUP_LIMIT,
    DEFAULT_K,
    DEFAULT_MAX_VERTICES,
    DEFAULT_MAX_WINDOW,
    DEFAULT_PATH_CAP,
    DEFAULT_SEARCH_BUDGET,
    DEFAULT_SWEEP_LIMIT,
    DEFAULT_TOL,
    OUTPUT_FORMATS,
)

OutputFormat = Literal["text", "json"]


class ConfigError(ValueError):
    pass


def _require_yaml() -> Any:
    try:
        import yaml  # type: ignore
    except Exception as exc:  # pragma: no cover
        raise ConfigError(
            "PyYAML is required to load config. Install project deps (see README.md)."
        ) from exc
    return yaml


def _as_dict(value: Any, *, where: str) -> dict[str, Any]:
    if value is None:
        return {}
    if isinstance(value, dict):
        return value
    raise ConfigError(f"Expected mapping at {where}, got {type(value).__name__}")


def _as_str(value: Any, *, where: str) -> str:
    if isinstance(value, str):
        return value
    raise ConfigError(f"Expected string at {where}, got {type(value).__name__}")


def _as_int(value: Any, *, where: str) -> int:
    if isinstance(value, bool):
        raise ConfigError(f"Expected int at {where}, got bool")
    if isinstance(value, int):
        return value
    raise ConfigError(f"Expected int at {where}, got {type(value).__name__}")


def _as_float(value: Any, *, where: str) -> float:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    raise ConfigError(f"Expected number at {where}, got {type(value).__name__}")


def _as_opt_int(value: Any, *, where: str) -> Optional[int]:
    if value is None:
        return None
    return _as_int(value, where=where)


def _as_choice(value: Any, choices: tuple[str, ...], *, where: str) -> str:
    s = _as_str(value, where=where)
    if s not in choices:
        raise ConfigError(f"{where} must be one of: {'|'.join(choices)}")
    return s


@dataclass(frozen=True)
class LimitsConfig:
    path_cap: int = DEFAULT_PATH_CAP
    search_budget: int = DEFAULT_SEARCH_BUDGET
    group_limit: int = DEFAULT_GROUP_LIMIT
    sweep_limit: int = DEFAULT_SWEEP_LIMIT
    max_window: int = DEFAULT_MAX_WINDOW
    max_vertices: int = DEFAULT_MAX_VERTICES

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "LimitsConfig":
        return LimitsConfig(
            path_cap=_as_int(d.get("path_cap", DEFAULT_PATH_CAP), where="limits.path_cap"),
            search_budget=_as_int(
                d.get("search_budget", DEFAULT_SEARCH_BUDGET), where="limits.search_budget"
            ),
            group_limit=_as_int(
                d.get("group_limit", DEFAULT_GROUP_LIMIT), where="limits.group_limit"
            ),
            sweep_limit=_as_int(
                d.get("sweep_limit", DEFAULT_SWEEP_LIMIT), where="limits.sweep_limit"
            ),
            max_window=_as_int(d.get("max_window", DEFAULT_MAX_WINDOW), where="limits.max_window"),
            max_vertices=_as_int(
                d.get("max_vertices", DEFAULT_MAX_VERTICES), where="limits.max_vertices"
            ),
        )

    def to_dict(self) -> dict[str, int]:
        return {
            "path_cap": self.path_cap,
            "search_budget": self.search_budget,
            "group_limit": self.group_limit,
            "sweep_limit": self.sweep_limit,
            "max_window": self.max_window,
            "max_vertices": self.max_vertices,
        }


@dataclass(frozen=True)
class DefaultsConfig:
    k: int = DEFAULT_K
    tol: float = DEFAULT_TOL
    format: str = "text"
    convention: str = "directed"
    tie_break: str = "ascending"
    root: Optional[int] = None

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "DefaultsConfig":
        return DefaultsConfig(
            k=_as_int(d.get("k", DEFAULT_K), where="defaults.k"),
            tol=_as_float(d.get("tol", DEFAULT_TOL), where="defaults.tol"),
            format=_as_choice(d.get("format", "text"), OUTPUT_FORMATS, where="defaults.format"),
            convention=_as_choice(
                d.get("convention", "directed"), CONVENTIONS, where="defaults.convention"
            ),
            tie_break=_as_choice(
                d.get("tie_break", "ascending"), ("ascending", "descending"),
                where="defaults.tie_break",
            ),
            root=_as_opt_int(d.get("root"), where="defaults.root"),
        )


@dataclass(frozen=True)
class Config:
    limits: LimitsConfig = LimitsConfig()
    defaults: DefaultsConfig = DefaultsConfig()


def load_config(path: Path) -> Config:
    yaml = _require_yaml()
    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    if raw is None:
        raise ConfigError("Config file is empty")
    if not isinstance(raw, dict):
        raise ConfigError("Top-level config must be a mapping")
    unknown = sorted(set(raw) - {"limits", "defaults"})
    if unknown:
        raise ConfigError(f"Unknown top-level config keys: {', '.join(map(str, unknown))}")

    limits = LimitsConfig.from_dict(_as_dict(raw.get("limits"), where="limits"))
    defaults = DefaultsConfig.from_dict(_as_dict(raw.get("defaults"), where="defaults"))
    return Config(limits=limits, defaults=defaults)


def apply_env_overrides(cfg: Config, environ: Mapping[str, str]) -> Config:
    raw = environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return cfg
    try:
        budget = int(raw.strip())
    except ValueError:
        raise ConfigError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if budget <= 0:
        raise ConfigError(f"{BUDGET_ENV} must be positive, got {budget}")
    return replace(cfg, limits=replace(cfg.limits, search_budget=budget))


def validate_config(cfg: Config) -> list[str]:
    errors: list[str] = []

    for name, value in cfg.limits.to_dict().items():
        if value <= 0:
            errors.append(f"limits.{name} must be > 0")

    d = cfg.defaults
    if d.k < 1:
        errors.append("defaults.k must be >= 1")
    if not d.tol > 0:
        errors.append("defaults.tol must be > 0")
    if d.root is not None and d.root < 0:
        errors.append("defaults.root must be >= 0")
    if d.format not in OUTPUT_FORMATS:
        errors.append(f"defaults.format must be one of: {'|'.join(OUTPUT_FORMATS)}")
    if d.convention not in CONVENTIONS:
        errors.append(f"defaults.convention must be one of: {'|'.join(CONVENTIONS)}")
    return errors


@dataclass(frozen=True)
class AnalysisConfig:
    """One CLI invocation: the input plus every knob that shaped the result."""

    input: str
    k: int
    alpha: Optional[int]
    format: str
    tol: float
    convention: str
    root: int
    tie_break: str
    input_format: str
    limits: LimitsConfig

    def to_dict(self) -> dict[str, Any]:
        return {
            "input": self.input,
            "k": self.k,
            "alpha": self.alpha,
            "format": self.format,
            "tol": self.tol,
            "convention": self.convention,
            "root": self.root,
            "tie_break": self.tie_break,
            "input_format": self.input_format,
            "limits": self.limits.to_dict(),
        }

    def problems(self) -> list[str]:
        errors = validate_config(
            Config(
                limits=self.limits,
                defaults=DefaultsConfig(
                    k=self.k, tol=self.tol, format=self.format, convention=self.convention,
                    tie_break=self.tie_break, root=self.root,
                ),
            )
        )
        if self.alpha is not None and self.alpha < 0:
            errors.append("alpha must be >= 0")
        return [e.replace("defaults.", "") for e in errors]
