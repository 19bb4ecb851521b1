"""
Recycling-share thresholds, their tax-rate cutoffs and the three-regime classification.

``beta_hat`` maximises steady-state output per worker over the recycling
share, ``beta_hat_u`` maximises steady-state lifetime welfare. Both are zero
when the tax rate is at or below the corresponding cutoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericError, ParameterError, RegimeError
from .params import ModelParams, derive, validate
from .steady_state import net_income_share, output_star

REGIMES = ("I", "II", "III")
# largest double below one; a positive feedback keeps the thresholds strictly interior
BELOW_ONE = math.nextafter(1.0, 0.0)
STATICS_PARAMS = ("alpha", "tau", "phi", "epsilon", "gamma")


@dataclass(frozen=True)
class PolicyReport:
    tau_cutoff_y: float
    tau_cutoff_u: float
    beta_hat: float
    beta_hat_u: float
    regime: str
    gap: float
    # False when the health feedback is switched off: both objectives then
    # rise all the way to beta -> 1 and the thresholds are suprema, not maximisers
    interior: bool = True

    def to_dict(self) -> dict:
        return {
            "tau_cutoff_y": self.tau_cutoff_y,
            "tau_cutoff_u": self.tau_cutoff_u,
            "beta_hat": self.beta_hat,
            "beta_hat_u": self.beta_hat_u,
            "regime": self.regime,
            "gap": self.gap,
        }


def _feedback(p: ModelParams) -> float:
    return p.phi * p.gamma * p.epsilon


def tau_cutoff_y(p: ModelParams) -> float:
    p = validate(p)
    g = _feedback(p) * (1.0 - p.alpha) ** 2
    return g / (p.alpha + g)


def tau_cutoff_u(p: ModelParams) -> float:
    p = validate(p)
    dl = derive(p).delta
    g = _feedback(p) * (1.0 - p.alpha) ** 2
    return g / (dl * p.alpha + 1.0 - dl + g)


def _check_beta(beta: float) -> float:
    if not (0.0 <= beta < 1.0):
        raise ParameterError(f"beta must be in [0,1), got {beta!r}")
    return float(beta)


def _share(p: ModelParams, beta: float) -> float:
    share = net_income_share(p, beta)
    if share <= 0.0:
        raise NumericError("net income share is zero (tau == 1 and beta == 0)")
    return share


def dy_dbeta(p: ModelParams, beta: float) -> float:
    """Slope of steady-state output per worker in the recycling share."""
    p = validate(p)
    beta = _check_beta(beta)
    a = p.alpha
    bracket = a * p.tau / ((1.0 - a) * _share(p, beta)) - _feedback(p) / (1.0 - beta)
    return output_star(p, beta) * bracket


def du_dbeta(p: ModelParams, beta: float) -> float:
    """Slope of steady-state lifetime welfare in the recycling share."""
    p = validate(p)
    beta = _check_beta(beta)
    a, dl = p.alpha, derive(p).delta
    income = p.tau * (1.0 + a * dl - dl) / (_share(p, beta) * (1.0 - a) * (1.0 - dl))
    return income - _feedback(p) / ((1.0 - dl) * (1.0 - beta))


def slope_signs(p: ModelParams, beta: float) -> tuple[int, int]:
    """Signs of (dy*/dbeta, dU*/dbeta), cross-multiplied so tau = 1, beta = 0 is safe."""
    p = validate(p)
    beta = _check_beta(beta)
    a, g, dl = p.alpha, _feedback(p), derive(p).delta
    share = net_income_share(p, beta)
    out_term = a * p.tau * (1.0 - beta) - g * (1.0 - a) * share
    welf_term = p.tau * (1.0 + a * dl - dl) * (1.0 - beta) - g * (1.0 - a) * share

    def sign(x):
        return (x > 0) - (x < 0)

    return sign(out_term), sign(welf_term)


def _interior(value: float, feedback: float) -> float:
    return min(value, BELOW_ONE) if feedback > 0.0 else value


def beta_hat(p: ModelParams) -> float:
    """Output-maximising recycling share (0 at or below the output cutoff).

    Returns 1.0, the supremum, when the health feedback is absent.
    """
    p = validate(p)
    if p.tau <= tau_cutoff_y(p):
        return 0.0
    a, g = p.alpha, _feedback(p)
    ratio = a / (1.0 - a)
    return _interior((ratio - g * (1.0 - a) * (1.0 / p.tau - 1.0)) / (ratio + g), g)


def beta_hat_u(p: ModelParams) -> float:
    """Welfare-maximising recycling share (0 at or below the welfare cutoff)."""
    p = validate(p)
    if p.tau <= tau_cutoff_u(p):
        return 0.0
    a, g, dl = p.alpha, _feedback(p), derive(p).delta
    ratio = a / (1.0 - a)
    return _interior((ratio + 1.0 - dl - g * (1.0 - a) * (1.0 / p.tau - 1.0)) / (ratio + g + 1.0 - dl), g)


def regime(p: ModelParams) -> str:
    if p.tau <= tau_cutoff_u(p):
        return "I"
    if p.tau <= tau_cutoff_y(p):
        return "II"
    return "III"


def gap(p: ModelParams) -> float:
    """Closed-form distance between the welfare and output thresholds.

    Only defined when both thresholds are interior (regime III).
    """
    p = validate(p)
    if p.tau <= tau_cutoff_y(p):
        raise RegimeError(f"gap formula needs regime III (tau > {tau_cutoff_y(p)!r}), got tau={p.tau!r}")
    a, g, dl, t = p.alpha, _feedback(p), derive(p).delta, p.tau
    ratio = a / (1.0 - a)
    num = g * (1.0 - dl) * (t + (1.0 - a) * (1.0 - t))
    return num / (t * (ratio + g + 1.0 - dl) * (ratio + g))


def classify(p: ModelParams) -> PolicyReport:
    p = validate(p)
    bh, bu = beta_hat(p), beta_hat_u(p)
    return PolicyReport(
        tau_cutoff_y=tau_cutoff_y(p),
        tau_cutoff_u=tau_cutoff_u(p),
        beta_hat=bh,
        beta_hat_u=bu,
        regime=regime(p),
        gap=bu - bh,
        interior=_feedback(p) > 0.0,
    )


def comparative_statics(p: ModelParams, bump: float = 1e-5) -> dict[str, int]:
    """Signs of the central finite differences of ``beta_hat``.

    Keys are alpha, tau, phi, epsilon, gamma in that order; values are -1, 0
    or +1. Every perturbed parameter set must stay valid and in regime III.
    """
    p = validate(p)
    if not bump > 0:
        raise ValueError(f"bump must be > 0, got {bump!r}")
    if regime(p) != "III":
        raise RegimeError(f"comparative statics need regime III, got regime {regime(p)}")
    signs = {}
    for name in STATICS_PARAMS:
        x = getattr(p, name)
        vals = []
        for shifted in (x + bump, x - bump):
            try:
                q = validate(p.replace(**{name: shifted}))
            except ParameterError as exc:
                raise RegimeError(f"perturbing {name} leaves the valid range: {exc}") from None
            if regime(q) != "III":
                raise RegimeError(f"perturbing {name} by {bump!r} leaves regime III")
            vals.append(beta_hat(q))
        diff = (vals[0] - vals[1]) / (2.0 * bump)
        signs[name] = int(math.copysign(1, diff)) if diff != 0 else 0
    return signs
