import os
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from ..errors import MalformedParams

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "default.yaml"
PARALLELISM_ENV = "SUMPRODUCT_PARALLELISM"


def _default_parallelism() -> int:
    raw = os.environ.get(PARALLELISM_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise MalformedParams(PARALLELISM_ENV, f"expected a positive integer, got {raw!r}") from None
    if value < 1:
        raise MalformedParams(PARALLELISM_ENV, "must be >= 1")
    return value


@dataclass(frozen=True)
class HarnessConfig:
    """Every tunable of the engine and harness, with its default."""
    c_star: Fraction = Fraction(1)
    oracle_budget: int = 10 ** 8
    plunnecke_max_set: int = 14
    identity_tolerance: float = 1e-9
    moment_tolerance: float = 1e-6
    minorant_bits: int = 96
    log_padding_bits: int = 40
    ceilings: Dict[str, float] = field(default_factory=lambda: {"TWO_THIRDS": 4.0, "MISHA_INC": 8.0})
    exp_sums_c: float = 2.5
    parallelism: int = field(default_factory=_default_parallelism)
    timings: bool = False
    log_to_file: bool = False
    log_level: str = "WARNING"

    def __post_init__(self):
        if self.c_star <= 0:
            raise MalformedParams("c_star", "must be positive")
        if self.parallelism < 1:
            raise MalformedParams("parallelism", "must be >= 1")
        if self.exp_sums_c <= 2:
            raise MalformedParams("exp_sums_c", "the exponential sum criterion needs C > 2")
        if self.identity_tolerance <= 0 or self.moment_tolerance <= 0:
            raise MalformedParams("tolerance", "must be positive")

    def ceiling(self, check_id: str) -> Optional[float]:
        return self.ceilings.get(check_id)

    def with_overrides(self, **overrides: Any) -> 'HarnessConfig':
        """Apply non-None overrides (CLI flags) on top of this config."""
        values = {k: v for k, v in overrides.items() if v is not None}
        if "c_star" in values:
            values["c_star"] = parse_fraction("c_star", values["c_star"])
        return replace(self, **values)


def parse_fraction(name: str, value: Any) -> Fraction:
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise MalformedParams(name, f"expected a rational like 3/2, got {value!r}") from None


def config_from_dict(raw: Dict[str, Any]) -> HarnessConfig:
    known = {f.name for f in fields(HarnessConfig)}
    values: Dict[str, Any] = {}
    for key, value in (raw or {}).items():
        if key == "logging":
            values["log_to_file"] = bool(value.get("file", False))
            values["log_level"] = str(value.get("level", "WARNING")).upper()
            continue
        if key not in known:
            raise MalformedParams(key, "unknown configuration key")
        values[key] = value

    if "c_star" in values:
        values["c_star"] = parse_fraction("c_star", values["c_star"])
    if "ceilings" in values:
        values["ceilings"] = {str(k): float(v) for k, v in values["ceilings"].items()}
    if values.get("parallelism") is None:
        values.pop("parallelism", None)
    return HarnessConfig(**values)


def load_config(path: Optional[str] = None) -> HarnessConfig:
    """Read a YAML config; without a path, the shipped default (or built-in defaults if it is absent)."""
    config_path = Path(path) if path else DEFAULT_CONFIG_PATH
    if not config_path.exists():
        if path:
            raise MalformedParams("config", f"no such file: {path}")
        return HarnessConfig()
    with open(config_path, "r", encoding="utf-8") as handle:
        try:
            raw = yaml.safe_load(handle) or {}
        except yaml.YAMLError as exc:
            raise MalformedParams("config", str(exc)) from None
    if not isinstance(raw, dict):
        raise MalformedParams("config", "top level must be a mapping")
    return config_from_dict(raw)
