"""Closed-form steady state of the economy."""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

from .errors import LowPollutionWarning, NumericError
from .params import ModelParams, derive, log_phi_big, validate


@dataclass(frozen=True)
class SteadyState:
    p_star: float
    h_star: float
    k_star: float
    y_star: float
    w_star: float
    u_star: float | None  # None when tau == 1 (old-age consumption vanishes)
    c1_star: float
    c2_star: float

    def as_dict(self) -> dict:
        return asdict(self)


def net_income_share(p: ModelParams, beta: float | None = None) -> float:
    """Labour income plus transfer as a share of output, (1-a)(1-tau) + beta*tau."""
    b = p.beta if beta is None else beta
    return (1.0 - p.alpha) * (1.0 - p.tau) + b * p.tau


def pollution_star(p: ModelParams) -> float:
    return (p.z / ((1.0 - p.beta) * p.tau)) ** p.gamma / p.mu


def health_star(p: ModelParams) -> float:
    scale = p.eta * p.theta * p.mu**p.phi / p.xi
    return scale * ((1.0 - p.beta) * p.tau / p.z) ** (p.phi * p.gamma)


def output_star(p: ModelParams, beta: float | None = None) -> float:
    """Steady-state output per worker as a function of the recycling share."""
    b = p.beta if beta is None else beta
    d = derive(p)
    a = p.alpha
    return d.phi_big * net_income_share(p, b) ** (a / (1.0 - a)) * (1.0 - b) ** d.phi_gamma_eps


def solve(p: ModelParams) -> SteadyState:
    p = validate(p)
    d = derive(p)
    share = net_income_share(p)

    p_star = pollution_star(p)
    if p_star <= 1.0:
        warnings.warn(f"steady-state pollution {p_star!r} <= 1", LowPollutionWarning, stacklevel=2)
    y_star = output_star(p)
    k_star = d.delta * share * y_star
    c1 = (1.0 - d.delta) * share * y_star
    # R* k* collapses to the capital share of after-tax output
    c2 = p.alpha * (1.0 - p.tau) * y_star
    return SteadyState(
        p_star=p_star,
        h_star=health_star(p),
        k_star=k_star,
        y_star=y_star,
        w_star=(1.0 - p.alpha) * (1.0 - p.tau) * y_star,
        u_star=welfare(p) if p.tau < 1.0 else None,
        c1_star=c1,
        c2_star=c2,
    )


def welfare(p: ModelParams, beta: float | None = None) -> float:
    """Steady-state lifetime welfare of a cohort.

    Evaluated as the beta-independent level term plus ``ln Omega(beta)``.
    ``beta`` overrides ``p.beta`` when given.

    Raises
    ------
    NumericError
        If ``tau == 1``: old-age consumption is zero and welfare is -inf.
    """
    p = validate(p if beta is None else p.with_beta(beta))
    if p.tau >= 1.0:
        raise NumericError("old-age consumption is zero; welfare -inf (tau must be < 1)")
    d = derive(p)
    a, dl = p.alpha, d.delta
    level = (
        math.log(1.0 - dl)
        + log_phi_big(p, dl) / (1.0 - dl)
        + dl / (1.0 - dl) * math.log(a * (1.0 - p.tau))
    )
    log_omega = (a / ((1.0 - a) * (1.0 - dl)) + 1.0) * math.log(net_income_share(p)) + (
        d.phi_gamma_eps / (1.0 - dl)
    ) * math.log(1.0 - p.beta)
    return level + log_omega
