"""
Forward simulation of the transition system.

Each period the pollution stock updates from the (parameter-only)
emissions/abatement ratio, health follows from pollution, capital is last
period's savings (full depreciation), and prices and household choices
follow from output.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from typing import TextIO

from .errors import LowPollutionWarning, NumericError, ParameterError
from .params import ModelParams, savings_propensity, validate

CSV_HEADER = ("t", "k", "P", "h", "y", "w", "R", "c1", "s")

DEFAULT_TOL = 1e-12
DEFAULT_MAX_PERIODS = 10_000


@dataclass(frozen=True)
class EconState:
    t: int
    k: float
    pollution: float
    health: float
    y: float
    wage: float
    interest: float
    c_young: float
    savings: float

    def csv_row(self) -> list[str]:
        vals = (self.k, self.pollution, self.health, self.y, self.wage,
                self.interest, self.c_young, self.savings)
        return [str(self.t)] + [format(v, ".17g") for v in vals]


@dataclass(frozen=True)
class Trajectory:
    states: tuple[EconState, ...]
    converged: bool
    residual: float
    tol: float = field(default=DEFAULT_TOL)

    @property
    def final(self) -> EconState:
        return self.states[-1]

    @property
    def periods(self) -> int:
        return len(self.states) - 1

    def to_csv(self, out: TextIO | None = None) -> str:
        buf = out if out is not None else io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for s in self.states:
            w.writerow(s.csv_row())
        return buf.getvalue() if out is None else ""


class _Economy:
    """Per-parameter constants for the period map."""

    def __init__(self, p: ModelParams):
        self.p = p
        self.delta = savings_propensity(p.rho)
        self.transfer = p.beta * p.tau
        self.saving_rate = self.delta * ((1.0 - p.alpha) * (1.0 - p.tau) + self.transfer)
        self.emission_ratio = p.z / ((1.0 - p.beta) * p.tau)
        self.inflow = self.emission_ratio ** p.gamma
        self.retention = 1.0 - p.mu
        self.health_num = p.eta * p.theta / p.xi
        self.labour_exp = p.epsilon * (1.0 - p.alpha)

    def state(self, t: int, k: float, pollution: float) -> EconState:
        p = self.p
        try:
            health = self.health_num / pollution ** p.phi
            y = p.a_tfp * k ** p.alpha * health ** self.labour_exp
            interest = (1.0 - p.tau) * p.alpha * y / k
        except (OverflowError, ZeroDivisionError) as exc:
            raise NumericError(f"arithmetic failure at t={t}: {exc}") from None
        wage = (1.0 - p.tau) * (1.0 - p.alpha) * y
        income = wage + self.transfer * y
        savings = self.delta * income
        s = EconState(t, k, pollution, health, y, wage, interest, income - savings, savings)
        for name in ("k", "pollution", "health", "y", "wage", "interest", "savings"):
            if not math.isfinite(getattr(s, name)):
                raise NumericError(f"non-finite {name} at t={t}")
        return s

    def next(self, s: EconState) -> EconState:
        pollution = self.inflow + self.retention * s.pollution
        k = self.saving_rate * s.y
        return self.state(s.t + 1, k, pollution)


def initial_state(p: ModelParams, k0: float, p0: float) -> EconState:
    """Period-0 state, with health computed from the initial pollution stock."""
    for name, v in (("k0", k0), ("p0", p0)):
        if not (math.isfinite(v) and v > 0):
            raise ParameterError(f"{name} must be finite and > 0, got {v!r}")
    return _Economy(validate(p)).state(0, float(k0), float(p0))


def step(p: ModelParams, s: EconState) -> EconState:
    return _Economy(validate(p)).next(s)


def simulate(
    p: ModelParams,
    k0: float,
    p0: float,
    max_periods: int = DEFAULT_MAX_PERIODS,
    tol: float = DEFAULT_TOL,
) -> Trajectory:
    """Iterate the period map until capital and pollution settle.

    Convergence is declared when both absolute one-period changes are
    ``<= tol``. A trajectory that never gets there within ``max_periods``
    steps is returned with ``converged=False``.
    """
    if max_periods < 0:
        raise ParameterError(f"max_periods must be >= 0, got {max_periods}")
    if not (tol > 0 and math.isfinite(tol)):
        raise ParameterError(f"tol must be finite and > 0, got {tol!r}")
    econ = _Economy(validate(p))
    s = initial_state(p, k0, p0)
    states = [s]
    residual = math.inf
    converged = False
    low_p = s.pollution <= 1.0
    for _ in range(max_periods):
        try:
            nxt = econ.next(s)
        except NumericError as exc:
            raise NumericError(f"simulation diverged: {exc}", state=s) from None
        residual = max(abs(nxt.k - s.k), abs(nxt.pollution - s.pollution))
        states.append(nxt)
        s = nxt
        low_p = low_p or s.pollution <= 1.0
        if residual <= tol:
            converged = True
            break
    if low_p:
        warnings.warn("trajectory reaches pollution <= 1", LowPollutionWarning, stacklevel=2)
    return Trajectory(tuple(states), converged, residual, tol)


def cohort_welfare(p: ModelParams, s_t: EconState, s_t1: EconState) -> float:
    """Lifetime utility of the cohort young at ``s_t``.

    Savings made at t earn the interest factor of t+1.
    """
    p = validate(p)
    c1 = s_t.c_young
    c2 = s_t1.interest * s_t.savings
    if not (c1 > 0 and c2 > 0):
        raise NumericError(f"welfare undefined: c1={c1!r}, c2={c2!r}")
    return math.log(c1) + math.log(c2) / (1.0 + p.rho)


def write_csv(traj: Trajectory, path) -> None:
    with open(path, "w", newline="") as fh:
        traj.to_csv(fh)

