"""Inverse sectorial transform over two-ray (Gamma) and cut (Lambda) contours.

One variable: ``f(z) = int_Gamma g(omega) exp(-omega z) d omega``.

Two variables: ``f(z1, z2) = int int m(omega1, omega2) exp(-omega1 z1 - omega2 z2)``
over a product of contours. Evaluating ``m`` pointwise at every contour node
would nest four adaptive quadratures, so the 2-D engine discretizes each
contour once with fixed panels, splits the nodes into groups that share one
branch formula, and discretizes the rays once per group. With the rays fixed
the double contour sum factorizes:

    f(z) ~ (-1/4 pi^2) sum_{groups} v1(z)^T F v2(z),
    v_j(z)_i = sum_a W_a exp(omega_a (zeta_i - z_j)) w_i,   F_ik = f(zeta1_i, zeta2_k),

which is exactly tensor quadrature of ``m`` followed by contour quadrature,
reordered so the cost is dominated by one pass over ``F``.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import AngleMismatchError, ContourError, DomainError, SectorError
from .geometry import GammaContour, LambdaContour, default_gamma
from .quadrature import (DEFAULT_CONFIG, QuadratureConfig, adaptive_integrate, contour_range,
                         gauss_panels, integrate_contour)
from .transform import (FOUR_PI_SQ, PANEL_RESOLUTION, SIGNS, ConcatenatedLaplace, ray_projection,
                        ray_rule, scaled_values)

Contour = Union[GammaContour, LambdaContour]
THREADS_ENV = "SECTOR_INDICATOR_THREADS"


def worker_count() -> int:
    """Thread cap from the environment, defaulting to the CPU count."""
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


@dataclass(frozen=True)
class InversionPlan:
    contour1: Contour
    contour2: Contour
    z_min: float = 1e-2
    cfg: QuadratureConfig = field(default=DEFAULT_CONFIG)

    def __post_init__(self):
        if not self.z_min > 0:
            raise ValueError("z_min must be positive")

    def contour(self, j: int) -> Contour:
        return (self.contour1, self.contour2)[j]


def default_plan(t: ConcatenatedLaplace, z_min: float = 1e-2,
                 cfg: QuadratureConfig | None = None, margin: float = 1.0) -> InversionPlan:
    """Gamma contours with vertices -(h_j + margin)/cos(alpha_j)."""
    f = t.source
    return InversionPlan(default_gamma(f.sectors.alpha1, f.h1, margin),
                         default_gamma(f.sectors.alpha2, f.h2, margin),
                         z_min, cfg or t.cfg)


def _base(contour: Contour) -> GammaContour:
    return contour.base if isinstance(contour, LambdaContour) else contour


def _check_point(z: complex, alpha: float, z_min: float, name: str = "z"):
    if abs(z) < z_min:
        raise DomainError(f"|{name}| = {abs(z):.3g} is below z_min = {z_min:.3g}")
    if not abs(cmath.phase(z)) < alpha:
        raise SectorError(f"{name} = {z} lies outside the open sector of angle {alpha:.6g}")


def _decay_speed(z: complex, alpha: float) -> float:
    """|z| min(sin(alpha - theta), sin(alpha + theta)): tail decay per unit parameter."""
    theta = cmath.phase(z)
    return abs(z) * min(math.sin(alpha - theta), math.sin(alpha + theta))


def invert_1d(g: Callable, contour: Contour, z: complex, g_bound: float = 1.0,
              g_growth: float = 0.0, cfg: QuadratureConfig = DEFAULT_CONFIG,
              z_min: float = 1e-2) -> complex:
    """``int g(omega) exp(-omega z) d omega`` along ``contour``.

    ``g_bound`` and ``g_growth`` describe |g(gamma(t))| <= g_bound exp(g_growth |t|)
    on the tails; the default suits transforms that stay bounded there.
    """
    z = complex(z)
    base = _base(contour)
    _check_point(z, base.alpha, z_min)
    decay = -_decay_speed(z, base.alpha) + g_growth
    if not decay < 0:
        raise DomainError(f"tail decay {decay:.3g} is not negative at z = {z}")
    bound = g_bound * math.exp(-(base.vertex * z).real)

    def integrand(omega):
        return g(omega) * np.exp(-omega * z)

    value, _ = integrate_contour(integrand, contour, decay, cfg, bound=bound)
    return value


# ---------------------------------------------------------------------------
# branch geometry along a contour

def _margins(t: ConcatenatedLaplace, j: int, omega) -> np.ndarray:
    """Distances inside the '+' and '-' half-planes, stacked on axis 0."""
    return np.stack([t.margin(j, s, omega) for s in SIGNS])


def worst_margin(t: ConcatenatedLaplace, j: int, contour: Contour) -> float:
    """Smallest best-branch margin anywhere on the contour.

    Tails sit on lines of constant margin; along a chord each margin is
    linear, so the minimum of their maximum is at an end or at the crossing.
    """
    base = _base(contour)
    p, alpha = base.vertex, base.alpha
    env = t.envelope
    tails = min(-env.slope(j, +1) - p * math.cos(alpha), -env.slope(j, -1) - p * math.cos(alpha))
    if isinstance(contour, GammaContour):
        return tails
    a, b = contour.s_minus, contour.s_plus
    ma, mb = _margins(t, j, np.array([a, b]))
    candidates = [max(ma[0], ma[1]), max(mb[0], mb[1])]
    slope_diff = (mb[0] - mb[1]) - (ma[0] - ma[1])
    if slope_diff != 0:
        u = -(ma[0] - ma[1]) / slope_diff
        if 0 < u < 1:
            candidates.append(ma[0] + u * (mb[0] - ma[0]))
    return min(tails, min(candidates))


def path_mass(contour: Contour, z: complex) -> float:
    """Upper bound on ``int |exp(-omega z)| |d omega|`` along the contour."""
    base = _base(contour)
    theta, r = cmath.phase(z), abs(z)
    speed_up = r * math.sin(base.alpha - theta)
    speed_down = r * math.sin(base.alpha + theta)
    if isinstance(contour, GammaContour):
        lead = math.exp(-(base.vertex * z).real)
        return lead / speed_up + lead / speed_down
    up = math.exp(-(contour.s_plus * z).real)
    down = math.exp(-(contour.s_minus * z).real)
    # exp(-Re(omega z)) is convex along the chord, so its max is at an end
    return up / speed_up + down / speed_down + contour.chord_length * max(up, down)


@dataclass(frozen=True)
class NodeGroup:
    """Contour nodes sharing one branch formula, with d-omega weights."""
    sign: int
    omegas: np.ndarray
    weights: np.ndarray


def _panel_breaks(a: float, b: float, width: float) -> np.ndarray:
    return np.linspace(a, b, max(1, math.ceil((b - a) / width)) + 1)


def contour_groups(t: ConcatenatedLaplace, j: int, contour: Contour, horizon: float,
                   width: float, n: int) -> list[NodeGroup]:
    """Fixed-panel discretization of a contour, split by branch."""
    groups = []
    base = _base(contour)
    if isinstance(contour, GammaContour):
        lower_end, upper_start = 0.0, 0.0
    else:
        lower_end, upper_start = contour.t_minus, contour.t_plus
    for sign, (a, b) in ((-1, (-horizon, lower_end)), (+1, (upper_start, horizon))):
        s, w = gauss_panels(_panel_breaks(a, b, width), n)
        groups.append(NodeGroup(sign, base.point(s), w * base.derivative(s)))
    if isinstance(contour, LambdaContour):
        length = contour.chord_length
        u, w = gauss_panels(_panel_breaks(0.0, length, width), n)
        omegas = contour.chord_point(u)
        unit = (contour.s_plus - contour.s_minus) / length
        best = np.where(np.argmax(_margins(t, j, omegas), axis=0) == 0, +1, -1)
        for sign in SIGNS:
            pick = best == sign
            if pick.any():
                groups.append(NodeGroup(sign, omegas[pick], w[pick] * unit))
    return groups


# ---------------------------------------------------------------------------
# 2-D engine

def _horizon(contour: Contour, speeds: np.ndarray, leads: np.ndarray, tol: float,
             margin: float) -> float:
    """Parameter cut-off so that both tails beyond it contribute <= tol at every z."""
    core = np.log(np.maximum(2 * leads / (speeds * tol), 1.0))
    horizon = float(np.max((core + margin) / speeds))
    if isinstance(contour, LambdaContour):
        horizon = max(horizon, max(-contour.t_minus, contour.t_plus) + 1.0)
    return horizon


def _check_plan(t: ConcatenatedLaplace, plan: InversionPlan):
    f = t.source
    for j, h in ((0, f.h1), (1, f.h2)):
        base = _base(plan.contour(j))
        if abs(base.alpha - f.sectors[j]) > 1e-12:
            raise ContourError(f"contour {j + 1} angle {base.alpha} differs from the sector angle")
        if not base.vertex * math.cos(base.alpha) < -h:
            raise ContourError(f"contour {j + 1} vertex violates p cos(alpha) < -h")


def invert_2d_batch(t: ConcatenatedLaplace, plan: InversionPlan, z1s, z2s) -> np.ndarray:
    """Inversion integral at the points ``(z1s[b], z2s[b])``."""
    z1s = np.atleast_1d(np.asarray(z1s, dtype=complex))
    z2s = np.atleast_1d(np.asarray(z2s, dtype=complex))
    if z1s.shape != z2s.shape:
        raise ValueError("z1s and z2s must have the same length")
    _check_plan(t, plan)
    zs = (z1s, z2s)
    for j in (0, 1):
        alpha = _base(plan.contour(j)).alpha
        for z in zs[j]:
            _check_point(complex(z), alpha, plan.z_min, f"z{j + 1}")
    cfg = plan.cfg
    n = cfg.panel_nodes
    eps = t.envelope.epsilon

    worst = []
    for j in (0, 1):
        w = worst_margin(t, j, plan.contour(j))
        if not w > eps:
            raise DomainError(f"contour {j + 1} leaves the transform domain")
        worst.append(eps - w)
    m_sup = t.envelope.scale / (FOUR_PI_SQ * worst[0] * worst[1])

    masses = [np.array([path_mass(plan.contour(j), complex(z)) for z in zs[j]]) for j in (0, 1)]
    groups = []
    for j in (0, 1):
        contour = plan.contour(j)
        base = _base(contour)
        speeds = np.array([_decay_speed(complex(z), base.alpha) for z in zs[j]])
        leads = np.exp(-np.real(base.vertex * zs[j])) * m_sup * masses[1 - j]
        horizon = _horizon(contour, speeds, leads, cfg.abs_tol, cfg.tail_margin)
        # resolve exp(-omega z) and stay within the analytic distance of m
        width = min(PANEL_RESOLUTION * n / float(np.max(np.abs(zs[j]))), -worst[j])
        groups.append(contour_groups(t, j, contour, horizon, width, n))

    # rays must resolve m to an accuracy that survives the contour mass
    ray_tol = cfg.abs_tol / (float(np.max(masses[0] * masses[1])) * FOUR_PI_SQ)
    vectors = []
    for j in (0, 1):
        per_coord = []
        partner = min(abs(eps - worst_margin(t, 1 - j, plan.contour(1 - j))), 1.0)
        for g in groups[j]:
            rule = ray_rule(t, j, g.sign, g.omegas, ray_tol, partner)
            kernel = g.weights[:, None] * np.exp(-g.omegas[:, None] * zs[j][None, :])
            per_coord.append((rule, ray_projection(rule, g.omegas, kernel)))
        vectors.append(per_coord)

    total = np.zeros(len(z1s), dtype=complex)
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        for rule1, v1 in vectors[0]:
            for rule2, v2 in vectors[1]:
                total += _contract(t, rule1, rule2, v1, v2, pool)
    return -total / FOUR_PI_SQ


def _contract(t, rule1, rule2, v1, v2, pool, block_entries: int = 2_000_000) -> np.ndarray:
    """sum_ik v1[i] F[i, k] v2[k] per z, streaming F in row blocks."""
    rows = len(rule1.nodes)
    step = max(1, block_entries // max(1, len(rule2.nodes)))
    blocks = [slice(s, min(s + step, rows)) for s in range(0, rows, step)]

    def part(block):
        values = scaled_values(t, rule1, rule2, block)
        return np.sum(v1[block] * (values @ v2), axis=0)

    # map preserves order, so the summation is deterministic
    return sum(pool.map(part, blocks))


def invert_2d(t: ConcatenatedLaplace, plan: InversionPlan, z1: complex, z2: complex) -> complex:
    """``int int m exp(-omega1 z1 - omega2 z2)`` over the plan's contours."""
    return complex(invert_2d_batch(t, plan, [z1], [z2])[0])


# ---------------------------------------------------------------------------
# Lambda contours and the growth estimate

def _check_direction(lam: LambdaContour, z: complex, name: str):
    if abs(z) == 0:
        raise DomainError(f"{name} must be nonzero")
    if abs(cmath.phase(z) - lam.theta) > 1e-9:
        raise AngleMismatchError(
            f"arg {name} = {cmath.phase(z):.6g} differs from the contour direction {lam.theta:.6g}")


def lambda_constant(lam: LambdaContour, modulus: float) -> float:
    """|z| |chord| + 1/sin(alpha - theta) + 1/sin(alpha + theta)."""
    return (modulus * lam.chord_length + 1 / math.sin(lam.alpha - lam.theta)
            + 1 / math.sin(lam.alpha + lam.theta))


def lambda_tail_bound(lam: LambdaContour, z: complex) -> float:
    """Bound on ``int_Lambda exp(-Re(omega z)) |d omega|`` for arg z = theta.

    On the chord Re(omega z) = -(C + delta)|z| exactly; each tail then
    contributes exp((C + delta)|z|) / (|z| sin(alpha -+ theta)).
    """
    z = complex(z)
    _check_direction(lam, z, "z")
    r = abs(z)
    return lambda_constant(lam, r) * math.exp((lam.c_value + lam.delta) * r) / r


def lambda_path_integral(lam: LambdaContour, z: complex,
                         cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Direct quadrature of ``int_Lambda exp(-Re(omega z)) |d omega|``."""
    z = complex(z)
    if abs(z) == 0:
        raise DomainError("z must be nonzero")
    decay = -_decay_speed(z, lam.alpha)
    if not decay < 0:
        raise DomainError("z must lie in the open sector")
    bound = math.exp(-(lam.vertex * z).real)
    horizon = contour_range(lam, decay, bound, cfg)
    total = 0.0
    for piece in lam.pieces(horizon):
        # every piece is unit-speed
        def along(t, piece=piece):
            return np.exp(-np.real(piece.point(t) * z))

        total += adaptive_integrate(along, piece.start, piece.end, cfg)[0]
    return total + 2 * bound * math.exp(decay * horizon) / abs(decay)


def m_sup_on(t: ConcatenatedLaplace, contour1: Contour, contour2: Contour) -> float:
    """sup |m| over contour1 x contour2 from the best-branch decay rates."""
    eps = t.envelope.epsilon
    rates = []
    for j, c in enumerate((contour1, contour2)):
        r = eps - worst_margin(t, j, c)
        if not r < 0:
            raise DomainError(f"contour {j + 1} leaves the transform domain")
        rates.append(r)
    return t.envelope.scale / (FOUR_PI_SQ * rates[0] * rates[1])


def invert_2d_deformed(t: ConcatenatedLaplace, lambda1: LambdaContour, lambda2: LambdaContour,
                       z1: complex, z2: complex, z_min: float = 1e-2,
                       cfg: QuadratureConfig | None = None) -> tuple[complex, float]:
    """Inversion over Lambda1 x Lambda2 plus the a-priori growth bound.

    The bound is sup|m| times the two Lambda path bounds, i.e. a constant
    times exp((C1 + delta1)|z1| + (C2 + delta2)|z2|) / (|z1||z2|).
    """
    z1, z2 = complex(z1), complex(z2)
    _check_direction(lambda1, z1, "z1")
    _check_direction(lambda2, z2, "z2")
    plan = InversionPlan(lambda1, lambda2, z_min, cfg or t.cfg)
    value = invert_2d(t, plan, z1, z2)
    bound = (m_sup_on(t, lambda1, lambda2) * lambda_tail_bound(lambda1, z1)
             * lambda_tail_bound(lambda2, z2))
    return value, bound
