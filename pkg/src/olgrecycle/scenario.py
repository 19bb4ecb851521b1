"""Flat ``name = value`` scenario files."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dynamics import DEFAULT_MAX_PERIODS, DEFAULT_TOL
from .errors import ParameterError, ScenarioError
from .params import PARAM_NAMES, ModelParams, validate
from .steady_state import pollution_star

OPTIONAL_KEYS = ("k0", "p0", "max_periods", "tol")
DEFAULT_K0 = 0.01


def fmt(x: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    return format(x, ".17g")


@dataclass(frozen=True)
class Scenario:
    params: ModelParams
    k0: float = DEFAULT_K0
    p0: float | None = None  # None -> analytic steady-state pollution
    max_periods: int = DEFAULT_MAX_PERIODS
    tol: float = DEFAULT_TOL

    @property
    def initial_pollution(self) -> float:
        return pollution_star(self.params) if self.p0 is None else self.p0

    def to_text(self) -> str:
        lines = [f"{name} = {fmt(getattr(self.params, name))}" for name in PARAM_NAMES]
        lines += [
            f"k0 = {fmt(self.k0)}",
            f"p0 = {fmt(self.initial_pollution)}",
            f"max_periods = {self.max_periods}",
            f"tol = {fmt(self.tol)}",
        ]
        return "\n".join(lines) + "\n"


def parse_scenario(text: str) -> Scenario:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"line {lineno}: expected 'name = value', got {raw.strip()!r}")
        key, _, val = (s.strip() for s in line.partition("="))
        if key not in PARAM_NAMES and key not in OPTIONAL_KEYS:
            raise ScenarioError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ScenarioError(f"line {lineno}: duplicate key {key!r}")
        values[key] = val

    missing = [n for n in PARAM_NAMES if n not in values]
    if missing:
        raise ScenarioError(f"missing parameter(s): {', '.join(missing)}")

    def num(key: str) -> float:
        try:
            return float(values[key])
        except ValueError:
            raise ScenarioError(f"{key} must be a number, got {values[key]!r}") from None

    params = validate({n: num(n) for n in PARAM_NAMES})
    opts: dict = {}
    for key in ("k0", "p0"):
        if key in values:
            v = num(key)
            if not (math.isfinite(v) and v > 0):
                raise ParameterError(f"{key} must be finite and > 0, got {values[key]!r}")
            opts[key] = v
    if "max_periods" in values:
        try:
            mp = int(values["max_periods"])
        except ValueError:
            raise ScenarioError(f"max_periods must be an integer, got {values['max_periods']!r}") from None
        if mp < 0:
            raise ParameterError(f"max_periods must be >= 0, got {mp}")
        opts["max_periods"] = mp
    if "tol" in values:
        tol = num("tol")
        if not (math.isfinite(tol) and tol > 0):
            raise ParameterError(f"tol must be finite and > 0, got {values['tol']!r}")
        opts["tol"] = tol
    return Scenario(params, **opts)


def load_scenario(path) -> Scenario:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc.strerror}") from None
    return parse_scenario(text)
