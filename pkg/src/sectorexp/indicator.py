"""Growth indicators, the trigonometric-convexity constants and their verification.

Membership of a slope vector nu in the growth set at directions theta means
``ln|f(r e^{i theta})| <= nu . r + C`` for all r in the positive quadrant.
On a finite grid this is judged by the trend of the residual
``ln|f| - nu . r`` along each direction of r: bounded residuals have slope
near zero, violations grow linearly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import AngleDomainError, EvaluationOverflow, SectorError
from .functions import AnalyticFunctionModel, GrowthEnvelope


def _default_directions() -> tuple:
    angles = [k * math.pi / 18 for k in range(1, 9)]
    return tuple((math.cos(a), math.sin(a)) for a in angles)


@dataclass(frozen=True)
class GrowthGrid:
    r0: float = 0.5
    ratio: float = 1.3
    count: int = 20
    directions: tuple = field(default_factory=_default_directions)

    def __post_init__(self):
        if not (self.r0 > 0 and self.ratio > 1 and self.count >= 3):
            raise ValueError("need r0 > 0, ratio > 1 and count >= 3")
        for u in self.directions:
            if not (u[0] > 0 and u[1] > 0):
                raise ValueError(f"direction {u} is not inside the open positive quadrant")
            if abs(math.hypot(*u) - 1) > 1e-12:
                raise ValueError(f"direction {u} is not a unit vector")

    @property
    def radii(self) -> np.ndarray:
        return self.r0 * self.ratio ** np.arange(self.count)


def default_slope_tol(nu: Sequence[float]) -> float:
    return 2e-3 * (1 + math.hypot(*nu))


@dataclass(frozen=True)
class MembershipVerdict:
    accepted: bool
    residual_slope: float
    residual_offset: float
    slope_tol: float
    # rows of (r1, r2, ln|f|, residual)
    samples: np.ndarray


def _trend(x: np.ndarray, y: np.ndarray) -> float:
    keep = np.isfinite(y)
    if keep.sum() < 3:
        raise EvaluationOverflow("too few finite log-magnitude samples to fit a trend")
    return float(np.polyfit(x[keep], y[keep], 1)[0])


def membership_test(f: AnalyticFunctionModel, theta: Sequence[float], nu: Sequence[float],
                    grid: GrowthGrid = GrowthGrid(),
                    slope_tol: Optional[float] = None) -> MembershipVerdict:
    """Judge whether nu belongs to the growth set of f at directions theta."""
    for j, th in enumerate(theta):
        if abs(th) > f.sectors[j] + 1e-12:
            raise SectorError(f"|theta{j + 1}| = {abs(th):.6g} exceeds alpha{j + 1}")
    if slope_tol is None:
        slope_tol = default_slope_tol(nu)
    s = grid.radii
    slopes, rows = [], []
    for u1, u2 in grid.directions:
        r1, r2 = s * u1, s * u2
        log_f = np.asarray(f.log_abs(r1, theta[0], r2, theta[1]), dtype=float)
        resid = log_f - nu[0] * r1 - nu[1] * r2
        slopes.append(_trend(s, resid))
        rows.append(np.column_stack([r1, r2, log_f, resid]))
    samples = np.vstack(rows)
    finite = samples[np.isfinite(samples[:, 3]), 3]
    slope = max(slopes)
    return MembershipVerdict(bool(slope <= slope_tol), slope, float(finite.max()),
                             slope_tol, samples)


def estimate_indicator_1d(f_1d: Callable, theta: float, grid: GrowthGrid = GrowthGrid(),
                          log_abs: Optional[Callable] = None) -> float:
    """Least-squares slope of ln|f(r e^{i theta})| against r on the grid radii.

    ``log_abs(r, theta)`` may be supplied to avoid overflow for large r.
    """
    r = grid.radii
    if log_abs is not None:
        values = np.asarray(log_abs(r, theta), dtype=float)
    else:
        with np.errstate(divide="ignore", over="ignore"):
            values = np.log(np.abs(np.asarray(f_1d(r * np.exp(1j * theta)))))
    return _trend(r, values)


def convexity_bound(alphas: Sequence[float], thetas: Sequence[float],
                    a_plus: Sequence[float], a_minus: Sequence[float]) -> list[float]:
    """C_j = [A+_j sin(theta_j + alpha_j) + A-_j sin(alpha_j - theta_j)] / sin(2 alpha_j)."""
    if not len(alphas) == len(thetas) == len(a_plus) == len(a_minus):
        raise ValueError("parameter lists must have equal length")
    out = []
    for a, th, ap, am in zip(alphas, thetas, a_plus, a_minus):
        if not 0 < a < math.pi / 2:
            raise AngleDomainError(f"alpha = {a} must lie in (0, pi/2)")
        if abs(th) > a:
            raise AngleDomainError(f"|theta| = {abs(th)} exceeds alpha = {a}")
        out.append((ap * math.sin(th + a) + am * math.sin(a - th)) / math.sin(2 * a))
    return out


def trig_convex_bound_1d(alpha1: float, alpha2: float, alpha: float, h1: float, h2: float) -> float:
    """Upper bound on h(alpha) from h(alpha1) = h1 and h(alpha2) = h2."""
    width = alpha2 - alpha1
    if not 0 < width < math.pi:
        raise AngleDomainError(f"need 0 < alpha2 - alpha1 < pi, got {width}")
    if not alpha1 < alpha < alpha2:
        raise AngleDomainError(f"alpha = {alpha} must lie strictly between {alpha1} and {alpha2}")
    return (h1 * math.sin(alpha2 - alpha) + h2 * math.sin(alpha - alpha1)) / math.sin(width)


@dataclass(frozen=True)
class TheoremReport:
    constants: tuple
    rows: tuple  # (epsilon, MembershipVerdict)

    @property
    def verified(self) -> bool:
        return all(v.accepted for eps, v in self.rows if eps > 0)


def verify_theorem(f: AnalyticFunctionModel, envelope: GrowthEnvelope, theta: Sequence[float],
                   grid: GrowthGrid = GrowthGrid(), deflate: float = 0.0,
                   epsilons: Sequence[float] = (0.0, 0.05, 0.1),
                   constants: Optional[Sequence[float]] = None) -> TheoremReport:
    """Test the growth estimate nu = C + eps at each eps.

    ``constants`` overrides the computed C; ``deflate`` subtracts a margin
    from them, which a sharp estimate must not survive.
    """
    if constants is None:
        constants = convexity_bound((f.sectors.alpha1, f.sectors.alpha2), theta,
                                    (envelope.a1_plus, envelope.a2_plus),
                                    (envelope.a1_minus, envelope.a2_minus))
    c = tuple(float(x) - deflate for x in constants)
    rows = tuple((eps, membership_test(f, theta, (c[0] + eps, c[1] + eps), grid))
                 for eps in epsilons)
    return TheoremReport(c, rows)


def membership_threshold(f: AnalyticFunctionModel, theta: Sequence[float],
                         grid: GrowthGrid = GrowthGrid(), lo: float = 0.0, hi: float = 4.0,
                         tol: float = 1e-4) -> float:
    """Smallest nu with (nu, nu) accepted, by bisection on [lo, hi]."""
    if not membership_test(f, theta, (hi, hi), grid).accepted:
        raise ValueError(f"nu = {hi} is not accepted; raise the upper limit")
    if membership_test(f, theta, (lo, lo), grid).accepted:
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if membership_test(f, theta, (mid, mid), grid).accepted:
            hi = mid
        else:
            lo = mid
    return hi
