"""
Derivative-free scalar maximisation on [0, 1) and finite differences.

These routines only evaluate objectives; they never look at closed-form
thresholds, so they can serve as an independent check on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import NumericError
from .policy import beta_hat, beta_hat_u
from .steady_state import output_star, welfare

UNIT_MARGIN = 1e-9
UPPER = 1.0 - UNIT_MARGIN
GRID_POINTS = 1024
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/golden ratio


@dataclass(frozen=True)
class ScalarMaxResult:
    arg_max: float
    max_value: float
    evaluations: int
    bracket_width: float


class _Counted:
    def __init__(self, f: Callable[[float], float]):
        self.f = f
        self.calls = 0

    def __call__(self, x: float) -> float:
        self.calls += 1
        try:
            v = self.f(x)
        except (ArithmeticError, ValueError) as exc:
            raise NumericError(f"objective failed at beta={x!r}: {exc}") from exc
        if not math.isfinite(v):
            raise NumericError(f"objective is non-finite ({v!r}) at beta={x!r}")
        return v


def maximize_on_unit_interval(
    objective: Callable[[float], float],
    tol: float = 1e-9,
    grid_points: int = GRID_POINTS,
) -> ScalarMaxResult:
    """Maximise ``objective`` over [0, 1 - 1e-9].

    A uniform grid scan picks the best cell, then golden-section search
    narrows the cell around the best grid point until it is ``tol`` wide.
    The domain endpoints are kept as candidates so a boundary maximum is
    returned exactly.
    """
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol!r}")
    if grid_points < 3:
        raise ValueError("grid_points must be >= 3")
    f = _Counted(objective)
    xs = [UPPER * i / (grid_points - 1) for i in range(grid_points)]
    fs = [f(x) for x in xs]
    best = max(range(grid_points), key=fs.__getitem__)

    lo = xs[max(best - 1, 0)]
    hi = xs[min(best + 1, grid_points - 1)]
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)

    mid = 0.5 * (lo + hi)
    candidates = [(f(mid), mid), (f1, x1), (f2, x2), (fs[best], xs[best])]
    if best == 0:
        candidates.append((fs[0], 0.0))
    if best == grid_points - 1:
        candidates.append((fs[-1], UPPER))
    # ties go to the boundary so flat-at-0 objectives report exactly 0
    value, arg = max(candidates, key=lambda c: (c[0], c[1] in (0.0, UPPER)))
    return ScalarMaxResult(arg, value, f.calls, hi - lo)


def central_diff(
    objective: Callable[[float], float],
    x: float,
    h: float = 1e-6,
    domain: tuple[float, float] | None = None,
) -> float:
    """Symmetric difference quotient ``(f(x+h) - f(x-h)) / 2h``.

    With ``domain=(lo, hi)`` the evaluation point is first clamped into
    ``[lo + h, hi - h]`` so both stencil points stay admissible.
    """
    if not h > 0:
        raise ValueError(f"h must be > 0, got {h!r}")
    if domain is not None:
        lo, hi = domain
        if hi - lo <= 2 * h:
            raise ValueError("domain narrower than the difference stencil")
        x = min(max(x, lo + h), hi - h)
    return (objective(x + h) - objective(x - h)) / (2.0 * h)


def argmax_output(p, tol: float = 1e-9) -> ScalarMaxResult:
    return maximize_on_unit_interval(lambda b: output_star(p, b), tol)


def argmax_welfare(p, tol: float = 1e-9) -> ScalarMaxResult:
    return maximize_on_unit_interval(lambda b: welfare(p, b), tol)


def audit(p, tol: float = 1e-9) -> dict[str, float]:
    """Numerical maximisers next to the closed-form thresholds."""
    ay = argmax_output(p, tol).arg_max
    au = argmax_welfare(p, tol).arg_max
    bh, bu = beta_hat(p), beta_hat_u(p)
    return {
        "argmax_y": ay,
        "beta_hat": bh,
        "argmax_u": au,
        "beta_hat_u": bu,
        "max_abs_gap": max(abs(ay - bh), abs(au - bu)),
    }
