"""One-variable Borel transform and contour reconstruction.

For ``f(z) = sum a_k z^k / k!`` of exponential type the Borel transform
``g(omega) = sum a_k omega^(-k-1)`` converges outside a disc, and
``f(z) = (1/2 pi i) oint g(omega) exp(z omega) d omega`` around it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, adaptive_integrate


@dataclass(frozen=True)
class PowerSeriesET:
    coefficients: tuple
    type_radius: float

    def __post_init__(self):
        a = np.asarray(self.coefficients, dtype=complex)
        if a.ndim != 1 or len(a) == 0:
            raise ValueError("need at least one coefficient")
        if not np.all(np.isfinite(a)):
            raise ValueError("coefficients must be finite")
        k = np.arange(1, len(a))
        roots = np.abs(a[1:]) ** (1.0 / k) if len(k) else np.zeros(0)
        if roots.size and roots.max() > self.type_radius * (1 + 1e-12):
            raise ValueError(
                f"type_radius {self.type_radius} is below max |a_k|^(1/k) = {roots.max():.6g}")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1


def exponential_series(a: complex, order: int = 60) -> PowerSeriesET:
    """Coefficients a^k of exp(a z)."""
    return PowerSeriesET(tuple(complex(a) ** k for k in range(order + 1)), abs(a))


def borel_eval(s: PowerSeriesET, omega):
    """sum_{k <= N} a_k omega^(-k-1), vectorized over omega."""
    omega = np.asarray(omega, dtype=complex)
    if np.any(np.abs(omega) <= s.type_radius):
        raise DomainError(f"|omega| must exceed the type radius {s.type_radius}")
    inv = 1.0 / omega
    acc = np.zeros_like(omega)
    for a in reversed(s.coefficients):
        acc = (acc + a) * inv
    return acc if acc.ndim else complex(acc)


def borel_tail_bound(s: PowerSeriesET, omega: complex) -> float:
    """Bound on the dropped terms, assuming |a_k| <= type_radius^k beyond the order."""
    r, sigma = abs(omega), s.type_radius
    if not r > sigma:
        raise DomainError(f"|omega| must exceed the type radius {sigma}")
    return (sigma / r) ** (s.order + 1) / (r - sigma)


def polya_reconstruct(g: Callable, center: complex, radius: float, z: complex,
                      cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """(1/2 pi i) times the integral of g(omega) exp(z omega) over a positive circle."""
    if not radius > 0:
        raise ValueError("radius must be positive")

    def integrand(phi):
        turn = np.exp(1j * phi)
        omega = center + radius * turn
        return np.asarray(g(omega)) * np.exp(z * omega) * turn

    value, _ = adaptive_integrate(integrand, 0.0, 2 * math.pi, cfg)
    return value * radius / (2 * math.pi)


def support_function_from_indicator(h_samples: Sequence[tuple[float, float]]) -> Callable:
    """Support function k with k(-theta) = h(theta), interpolated linearly and periodically."""
    if len(h_samples) == 0:
        raise ValueError("no indicator samples")
    pts = np.asarray(h_samples, dtype=float)
    theta = np.mod(-pts[:, 0], 2 * math.pi)
    order = np.argsort(theta)
    theta, values = theta[order], pts[order, 1]

    def k(phi):
        return np.interp(np.mod(phi, 2 * math.pi), theta, values, period=2 * math.pi)

    return k


def load_series(path: str | Path, type_radius: float | None = None) -> PowerSeriesET:
    """Read one coefficient per line as ``re im``; blank lines and '#' comments skipped."""
    coeffs = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"expected 're im', got {line!r}")
        coeffs.append(complex(float(parts[0]), float(parts[1])))
    if type_radius is None:
        k = np.arange(1, len(coeffs))
        mags = np.abs(np.asarray(coeffs[1:]))
        type_radius = float(np.max(mags ** (1.0 / k))) if len(k) else 0.0
    return PowerSeriesET(tuple(coeffs), type_radius)


def save_series(s: PowerSeriesET, path: str | Path):
    lines = [f"{c.real!r} {c.imag!r}" for c in map(complex, s.coefficients)]
    Path(path).write_text("\n".join(lines) + "\n")
