"""Sectorial Laplace transforms in one and two variables.

``m(omega1, omega2)`` is the double ray integral

    (-1/4 pi^2) * int int f(zeta1, zeta2) exp(omega1 zeta1 + omega2 zeta2)

over the rays ``exp(i l1 alpha1)[0, inf)`` x ``exp(i l2 alpha2)[0, inf)``;
the sign pattern (l1, l2) picks one of four formulas, each convergent on a
product of half-planes. Where several apply they agree.

Besides the pointwise iterated evaluation this module provides a tensor-grid
evaluator used by the inversion engine: for a whole group of contour nodes
sharing one formula, the rays are discretized once and ``m`` on the group is
a matrix product.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional

import numpy as np

from .errors import DomainError
from .functions import AnalyticFunctionModel, GrowthEnvelope
from .geometry import HalfPlaneDomain
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, gauss_panels, integrate_ray, truncation_radius

SIGNS = (+1, -1)
FOUR_PI_SQ = 4 * math.pi ** 2


@dataclass(frozen=True)
class ConcatenatedLaplace:
    source: AnalyticFunctionModel
    envelope: GrowthEnvelope
    cfg: QuadratureConfig = field(default=DEFAULT_CONFIG)

    def alpha(self, j: int) -> float:
        return self.source.sectors[j]

    def domain(self, j: int, sign: int) -> HalfPlaneDomain:
        return HalfPlaneDomain(sign * self.alpha(j), self.envelope.slope(j, sign))

    @property
    def domains(self) -> dict:
        """``{(j, sign): HalfPlaneDomain}`` for coordinates j = 0, 1."""
        return {(j, s): self.domain(j, s) for j in (0, 1) for s in SIGNS}

    def margin(self, j: int, sign: int, omega) -> np.ndarray:
        """Distance of ``omega`` inside the half-plane; negative outside."""
        return self.domain(j, sign).margin(omega)

    def admissible(self, j: int, omega: complex) -> list[int]:
        return [s for s in SIGNS if self.margin(j, s, omega) > 0]


def branch_select(t: ConcatenatedLaplace, omega1: complex, omega2: complex) -> tuple[int, int]:
    """Sign pattern (l1, l2) with omega_j in the l_j half-plane; '+' wins ties."""
    signs = []
    for j, w in enumerate((omega1, omega2)):
        ok = t.admissible(j, w)
        if not ok:
            raise DomainError(f"omega{j + 1} = {w} lies in neither half-plane")
        signs.append(ok[0])
    return signs[0], signs[1]


def _epsilon(envelope_eps: float, distance: float) -> float:
    return max(envelope_eps, min(0.5 * distance, 1.0))


def _decay(t: ConcatenatedLaplace, j: int, sign: int, omega: complex) -> float:
    """Ray decay rate A + eps + Re(omega e^{i l alpha}) for one coordinate."""
    distance = float(t.margin(j, sign, omega))
    eps = _epsilon(t.envelope.epsilon, distance)
    rate = eps - distance
    if not rate < 0:
        raise DomainError(
            f"omega{j + 1} = {omega} is within the envelope epsilon of the boundary")
    return rate


def laplace_1d(f: AnalyticFunctionModel, omega1: complex, z2: complex, branch: int,
               cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """(1/2 pi i) int f(zeta, z2) exp(omega1 zeta) d zeta over exp(i branch alpha1)[0, inf).

    Valid when Re(omega1 e^{i branch alpha1}) < -h1, where the exponential
    type alone guarantees convergence.
    """
    alpha = f.sectors.alpha1
    rot = cmath.exp(1j * branch * alpha)
    distance = -f.h1 - (omega1 * rot).real
    if not distance > 0:
        raise DomainError(
            f"Re(omega1 e^(i l alpha1)) = {(omega1 * rot).real:.6g} is not below -h1 = {-f.h1:.6g}")
    rate = _epsilon(0.0, distance) - distance
    bound = f.type_scale * math.exp(f.h2 * abs(z2))

    def integrand(zeta):
        return f.weighted(zeta, z2, omega1 * zeta)

    value, _ = integrate_ray(integrand, branch * alpha, rate, cfg, bound=bound)
    return value / (2j * math.pi)


def evaluate_m(t: ConcatenatedLaplace, omega1: complex, omega2: complex,
               signs: Optional[tuple[int, int]] = None) -> tuple[complex, float]:
    """m by iterated ray quadrature on one branch; returns ``(value, err_est)``."""
    if signs is None:
        signs = branch_select(t, omega1, omega2)
    l1, l2 = signs
    for j, (s, w) in enumerate(zip(signs, (omega1, omega2))):
        if not t.margin(j, s, w) > 0:
            raise DomainError(f"omega{j + 1} = {w} is outside the branch {'+' if s > 0 else '-'} domain")
    rate1 = _decay(t, 0, l1, omega1)
    rate2 = _decay(t, 1, l2, omega2)
    cfg = t.cfg
    f = t.source
    scale = t.envelope.scale
    inner_err = [0.0]

    def inner(zeta1):
        def along2(zeta2):
            return f.weighted(zeta1[None, :], zeta2[:, None],
                              omega1 * zeta1[None, :] + omega2 * zeta2[:, None])

        vals, errs = integrate_ray(along2, l2 * t.alpha(1), rate2, cfg, bound=scale)
        inner_err[0] = max(inner_err[0], float(np.max(errs)))
        return vals

    outer_bound = scale / abs(rate2)
    value, err = integrate_ray(inner, l1 * t.alpha(0), rate1, cfg, bound=outer_bound)
    # inner errors accumulate over the truncated outer ray
    err = err + inner_err[0] * truncation_radius(rate1, outer_bound, cfg)
    return -value / FOUR_PI_SQ, err / FOUR_PI_SQ


def concatenated_laplace(t: ConcatenatedLaplace, omega1: complex, omega2: complex) -> complex:
    return evaluate_m(t, omega1, omega2)[0]


def branch_values(t: ConcatenatedLaplace, omega1: complex, omega2: complex) -> dict:
    """``{(l1, l2): (value, err)}`` for every admissible sign pattern."""
    s1 = t.admissible(0, omega1)
    s2 = t.admissible(1, omega2)
    if not s1 or not s2:
        raise DomainError(f"({omega1}, {omega2}) is outside the transform domain")
    return {(a, b): evaluate_m(t, omega1, omega2, (a, b)) for a, b in product(s1, s2)}


def branch_consistency(t: ConcatenatedLaplace, omega1: complex, omega2: complex) -> float:
    """Largest pairwise deviation between the admissible branch formulas."""
    values = branch_values(t, omega1, omega2)
    if len(values) < 2:
        raise DomainError(f"only one branch is admissible at ({omega1}, {omega2})")
    return max(abs(a[0] - b[0]) for a, b in combinations(values.values(), 2))


def m_bound(t: ConcatenatedLaplace, omega1: complex, omega2: complex, signs: tuple[int, int]) -> float:
    """A-priori bound scale / (4 pi^2 |rate1| |rate2|) with the envelope epsilon."""
    eps = t.envelope.epsilon
    r1 = eps - float(t.margin(0, signs[0], omega1))
    r2 = eps - float(t.margin(1, signs[1], omega2))
    if not (r1 < 0 and r2 < 0):
        raise DomainError("point outside the branch domain")
    return t.envelope.scale / (FOUR_PI_SQ * r1 * r2)


# ---------------------------------------------------------------------------
# tensor-grid evaluation

# An n-point Gauss-Legendre panel integrates exp(i k x) to ~1e-14 when k * width <= n.
PANEL_RESOLUTION = 1.0


@dataclass(frozen=True)
class RayRule:
    """Discretized ray for one coordinate and sign, shared by a node group.

    ``weights`` include the ray direction; ``growth`` is the envelope slope
    used to pre-scale function values so they stay O(scale).
    """
    coord: int
    sign: int
    nodes: np.ndarray
    weights: np.ndarray
    radii: np.ndarray
    growth: float
    rate: float


def ray_rule(t: ConcatenatedLaplace, coord: int, sign: int, omegas: np.ndarray,
             tol: float, partner_rate: float = 1.0) -> RayRule:
    """Ray discretization accurate for every omega in ``omegas`` on branch ``sign``.

    Truncation uses the slowest decay in the group, so that the dropped part
    of the double integral stays below ``tol`` when the other ray decays at
    ``partner_rate``; the panel width resolves the fastest oscillation of
    ``exp(omega zeta)`` along the ray.
    """
    omegas = np.asarray(omegas, dtype=complex)
    alpha = t.alpha(coord)
    rot = np.exp(1j * sign * alpha)
    eps = t.envelope.epsilon
    growth = t.envelope.slope(coord, sign) + eps
    rates = growth + np.real(omegas * rot)
    rate = float(np.max(rates))
    if not rate < 0:
        raise DomainError(f"contour nodes leave the branch domain (rate {rate:.3g})")
    h_type = (t.source.h1, t.source.h2)[coord]
    freq = float(np.max(np.abs(np.imag(omegas * rot)))) + h_type + abs(rate)
    cfg = t.cfg
    core = math.log(max(t.envelope.scale / (tol * abs(partner_rate) * abs(rate)), 1.0))
    radius = (core + cfg.tail_margin) / abs(rate)
    n = cfg.panel_nodes
    panels = max(1, math.ceil(radius * freq / (PANEL_RESOLUTION * n)))
    s, w = gauss_panels(np.linspace(0.0, radius, panels + 1), n)
    direction = complex(rot)
    return RayRule(coord, sign, s * direction, w * direction, s, growth, rate)


def ray_matrix(rule: RayRule, omegas: np.ndarray) -> np.ndarray:
    """``E[a, i] = w_i exp(omega_a zeta_i + growth * |zeta_i|)`` (bounded by |w_i|)."""
    omegas = np.asarray(omegas, dtype=complex)
    expo = omegas[:, None] * rule.nodes[None, :] + rule.growth * rule.radii[None, :]
    return rule.weights[None, :] * np.exp(expo)


def ray_projection(rule: RayRule, omegas: np.ndarray, kernel: np.ndarray,
                   block_entries: int = 2_000_000) -> np.ndarray:
    """``ray_matrix(rule, omegas).T @ kernel`` without forming the full matrix."""
    omegas = np.asarray(omegas, dtype=complex)
    out = np.zeros((len(rule.nodes), kernel.shape[1]), dtype=complex)
    step = max(1, block_entries // max(1, len(rule.nodes)))
    for start in range(0, len(omegas), step):
        block = slice(start, start + step)
        out += ray_matrix(rule, omegas[block]).T @ kernel[block]
    return out


def scaled_values(t: ConcatenatedLaplace, rule1: RayRule, rule2: RayRule,
                  rows: slice = slice(None)) -> np.ndarray:
    """``f(zeta1_i, zeta2_k) exp(-growth1 |zeta1_i| - growth2 |zeta2_k|)`` on a row block."""
    z1 = rule1.nodes[rows]
    r1 = rule1.radii[rows]
    log_w = -rule1.growth * r1[:, None] - rule2.growth * rule2.radii[None, :]
    return t.source.weighted(z1[:, None], rule2.nodes[None, :], log_w)


def m_grid(t: ConcatenatedLaplace, omegas1: np.ndarray, omegas2: np.ndarray,
           signs: tuple[int, int], tol: float = 1e-14) -> np.ndarray:
    """m on the tensor grid ``omegas1 x omegas2`` using one branch throughout."""
    rule1 = ray_rule(t, 0, signs[0], omegas1, tol)
    rule2 = ray_rule(t, 1, signs[1], omegas2, tol, rule1.rate)
    e1 = ray_matrix(rule1, omegas1)
    e2 = ray_matrix(rule2, omegas2)
    values = scaled_values(t, rule1, rule2)
    return -(e1 @ values @ e2.T) / FOUR_PI_SQ
