"""
Structural parameters of the two-period OLG economy with a pollution-health feedback.

All quantities are per worker; the cohort size is normalised to one.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Mapping

from .errors import NumericError, ParameterError

# name -> (lower, upper, lower_closed, upper_closed)
BOUNDS: dict[str, tuple[float, float, bool, bool]] = {
    "alpha": (0.0, 1.0, False, False),
    "tau": (0.0, 1.0, False, True),
    "beta": (0.0, 1.0, True, False),
    "gamma": (0.0, math.inf, False, False),
    "mu": (0.0, 1.0, False, False),
    "z": (0.0, 1.0, False, False),
    "theta": (0.0, math.inf, False, False),
    "eta": (0.0, math.inf, False, False),
    "xi": (0.0, math.inf, False, False),
    "phi": (0.0, math.inf, True, False),
    "epsilon": (0.0, math.inf, True, False),
    "rho": (0.0, math.inf, False, False),
    "a_tfp": (0.0, math.inf, False, False),
}

PARAM_NAMES: tuple[str, ...] = tuple(BOUNDS)


def interval_str(name: str) -> str:
    lo, hi, lo_closed, hi_closed = BOUNDS[name]

    def fmt(v):
        return "inf" if math.isinf(v) else format(v, "g")

    return f"{'[' if lo_closed else '('}{fmt(lo)},{fmt(hi)}{']' if hi_closed else ')'}"


def in_bounds(name: str, value: float) -> bool:
    lo, hi, lo_closed, hi_closed = BOUNDS[name]
    above = value >= lo if lo_closed else value > lo
    below = value <= hi if hi_closed else value < hi
    return above and below


@dataclass(frozen=True)
class ModelParams:
    """Structural parameters.

    Attributes
    ----------
    alpha : capital share of output
    tau : environmental tax rate on output
    beta : share of tax revenue returned to labour income (rest funds abatement)
    gamma : elasticity of pollution w.r.t. the emissions/abatement ratio
    mu : natural pollution absorption rate
    z : polluting capacity of technology (emissions per unit output)
    theta : exogenous public health expenditure share
    eta : productivity of the health sector
    xi : health-damage scale
    phi : sensitivity of health to pollution
    epsilon : effect of health on labour productivity
    rho : subjective discount rate
    a_tfp : total factor productivity
    """

    alpha: float
    tau: float
    beta: float
    gamma: float
    mu: float
    z: float
    theta: float
    eta: float
    xi: float
    phi: float
    epsilon: float
    rho: float
    a_tfp: float

    def replace(self, **changes) -> "ModelParams":
        return dataclasses.replace(self, **changes)

    def with_beta(self, beta: float) -> "ModelParams":
        return dataclasses.replace(self, beta=beta)

    def as_dict(self) -> dict[str, float]:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class DerivedParams:
    """Quantities implied by a validated :class:`ModelParams`.

    ``phi_big`` is the composite output scale multiplying the beta-dependent
    factors of steady-state output.
    """

    delta: float
    phi_gamma_eps: float
    phi_big: float


def validate(raw: ModelParams | Mapping[str, float]) -> ModelParams:
    """Check every range constraint and return the parameter set.

    Accepts either a :class:`ModelParams` or a mapping with exactly the
    thirteen field names. Raises :class:`ParameterError` naming the first
    offending field.
    """
    if isinstance(raw, ModelParams):
        values = raw.as_dict()
    else:
        values = dict(raw)
        unknown = sorted(set(values) - set(PARAM_NAMES))
        if unknown:
            raise ParameterError(f"unknown parameter(s): {', '.join(unknown)}")
        missing = [n for n in PARAM_NAMES if n not in values]
        if missing:
            raise ParameterError(f"missing parameter(s): {', '.join(missing)}")

    for name in PARAM_NAMES:
        v = values[name]
        try:
            v = float(v)
        except (TypeError, ValueError):
            raise ParameterError(f"{name} must be a real number, got {v!r}") from None
        if not math.isfinite(v):
            raise ParameterError(f"{name} must be finite, got {v!r}")
        if not in_bounds(name, v):
            raise ParameterError(f"{name} must be in {interval_str(name)}, got {v!r}")
        values[name] = v

    if isinstance(raw, ModelParams) and all(values[n] == getattr(raw, n) for n in PARAM_NAMES):
        return raw
    return ModelParams(**values)


def savings_propensity(rho: float) -> float:
    return 1.0 / (2.0 + rho)


def log_phi_big(p: ModelParams, delta: float | None = None) -> float:
    """Natural log of the composite output scale, computed term by term."""
    if delta is None:
        delta = savings_propensity(p.rho)
    a = p.alpha
    health_scale = math.log(p.eta) + math.log(p.theta) + p.phi * math.log(p.mu) - math.log(p.xi)
    return (
        math.log(p.a_tfp) / (1.0 - a)
        + a / (1.0 - a) * math.log(delta)
        + p.epsilon * health_scale
        + p.phi * p.gamma * p.epsilon * (math.log(p.tau) - math.log(p.z))
    )


def derive(p: ModelParams) -> DerivedParams:
    p = validate(p)
    delta = savings_propensity(p.rho)
    try:
        phi_big = math.exp(log_phi_big(p, delta))
    except OverflowError:
        raise NumericError("output scale overflows a double") from None
    return DerivedParams(delta=delta, phi_gamma_eps=p.phi * p.gamma * p.epsilon, phi_big=phi_big)
