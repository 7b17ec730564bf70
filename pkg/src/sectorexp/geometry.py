"""Sectors, half-plane domains and the integration contours.

Contours carry exact parametrizations together with their derivative, so a
quadrature rule can consume ``(point, derivative)`` pairs directly instead
of a discretized polyline.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AngleDomainError, ContourError


@dataclass(frozen=True)
class SectorPair:
    alpha1: float
    alpha2: float

    def __post_init__(self):
        for a in (self.alpha1, self.alpha2):
            if not 0 < a < math.pi / 2:
                raise AngleDomainError(f"sector angle must lie in (0, pi/2), got {a}")

    def __getitem__(self, j: int) -> float:
        return (self.alpha1, self.alpha2)[j]


@dataclass(frozen=True)
class HalfPlaneDomain:
    """The open half-plane ``Re(omega * exp(i*direction)) < -offset``."""
    direction: float
    offset: float

    def margin(self, omega):
        """Signed distance to the boundary line; positive inside."""
        return -self.offset - np.real(np.asarray(omega) * np.exp(1j * self.direction))

    def contains(self, omega) -> bool:
        return bool(self.margin(omega) > 0)


def omega_contains(domain: HalfPlaneDomain, omega: complex) -> bool:
    return domain.contains(omega)


@dataclass(frozen=True)
class Piece:
    """One smooth stretch of a contour, parametrized over [start, end]."""
    start: float
    end: float
    point: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class GammaContour:
    """Two rays leaving the real apex ``vertex`` into the right half-plane.

    ``gamma(t) = p - i e^{i alpha}|t|`` for t <= 0 and ``p + i e^{-i alpha} t``
    for t > 0, so the lower branch comes in from infinity and the upper one
    leaves to infinity as t increases.
    """
    vertex: float
    alpha: float
    type_bound: float

    def __post_init__(self):
        if not 0 < self.alpha < math.pi / 2:
            raise AngleDomainError(f"contour angle must lie in (0, pi/2), got {self.alpha}")
        if self.type_bound < 0:
            raise ContourError("type bound must be non-negative")
        if not self.vertex * math.cos(self.alpha) < -self.type_bound:
            raise ContourError(
                f"vertex {self.vertex} violates p*cos(alpha) < -h for h = {self.type_bound}")

    @property
    def upper(self) -> complex:
        return 1j * cmath.exp(-1j * self.alpha)

    @property
    def lower(self) -> complex:
        return -1j * cmath.exp(1j * self.alpha)

    def point(self, t):
        t = np.asarray(t, dtype=float)
        return self.vertex + np.where(t > 0, self.upper, self.lower) * np.abs(t)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t > 0, self.upper, -self.lower) + 0j

    def pieces(self, horizon: float) -> list[Piece]:
        return [
            Piece(-horizon, 0.0, self.point, self.derivative),
            Piece(0.0, horizon, self.point, self.derivative),
        ]


def default_gamma(alpha: float, type_bound: float, margin: float = 1.0) -> GammaContour:
    """Gamma contour with vertex ``-(h + margin)/cos(alpha)``."""
    return GammaContour(-(type_bound + margin) / math.cos(alpha), alpha, type_bound)


def gamma_point(contour: GammaContour, t: float) -> complex:
    return complex(contour.point(t))


def corner_point(alpha: float, a_plus: float, a_minus: float) -> complex:
    """Intersection q of the lines Re(q e^{i alpha}) = -A+ and Re(q e^{-i alpha}) = -A-."""
    c, s = math.cos(alpha), math.sin(alpha)
    if abs(s * c) < 1e-15:
        raise AngleDomainError(f"degenerate angle {alpha}")
    return complex(-(a_plus + a_minus) / (2 * c), (a_plus - a_minus) / (2 * s))


def support_value(q: complex, theta: float) -> float:
    return -(q * cmath.exp(1j * theta)).real


@dataclass(frozen=True)
class LambdaContour:
    """Gamma with the apex cut off by a chord on Re(omega e^{i theta}) = -(C + delta).

    The tails are the base contour for t <= t_minus and t >= t_plus; the
    chord runs from s_minus = gamma(t_minus) to s_plus = gamma(t_plus).
    """
    base: GammaContour
    theta: float
    c_value: float
    delta: float
    t_minus: float
    t_plus: float

    def __post_init__(self):
        if not self.t_minus < 0 < self.t_plus:
            raise ContourError("chord parameters must satisfy t_minus < 0 < t_plus")
        if not self.delta > 0:
            raise ContourError("delta must be positive")
        level = -(self.c_value + self.delta)
        rot = cmath.exp(1j * self.theta)
        for s in (self.s_minus, self.s_plus):
            if abs((s * rot).real - level) > 1e-9 * max(1.0, abs(level)):
                raise ContourError("chord endpoint off the support line")

    @property
    def alpha(self) -> float:
        return self.base.alpha

    @property
    def vertex(self) -> float:
        return self.base.vertex

    @property
    def s_minus(self) -> complex:
        return complex(self.base.point(self.t_minus))

    @property
    def s_plus(self) -> complex:
        return complex(self.base.point(self.t_plus))

    @property
    def chord_length(self) -> float:
        return abs(self.s_plus - self.s_minus)

    def chord_point(self, u):
        """Chord parametrized by arclength u in [0, chord_length]."""
        unit = (self.s_plus - self.s_minus) / self.chord_length
        return self.s_minus + unit * np.asarray(u, dtype=float)

    def pieces(self, horizon: float) -> list[Piece]:
        unit = (self.s_plus - self.s_minus) / self.chord_length
        base = self.base
        return [
            Piece(-horizon, self.t_minus, base.point, base.derivative),
            Piece(0.0, self.chord_length, self.chord_point,
                  lambda u: np.full(np.shape(u), unit, dtype=complex)),
            Piece(self.t_plus, horizon, base.point, base.derivative),
        ]


def build_lambda(base: GammaContour, theta: float, c_value: float, delta: float) -> LambdaContour:
    """Cut the apex of ``base`` along the support line for direction ``theta``."""
    if not abs(theta) < base.alpha:
        raise AngleDomainError(f"|theta| = {abs(theta)} must be below alpha = {base.alpha}")
    if not delta > 0:
        raise ContourError("delta must be positive")
    # Re(gamma(t) e^{i theta}) = p cos(theta) + |t| sin(alpha -+ theta) on the two branches
    gap = -(c_value + delta) - base.vertex * math.cos(theta)
    if not gap > 1e-12:
        raise ContourError("support line does not cross both branches away from the apex")
    t_plus = gap / math.sin(base.alpha - theta)
    t_minus = -gap / math.sin(base.alpha + theta)
    return LambdaContour(base, theta, c_value, delta, t_minus, t_plus)
