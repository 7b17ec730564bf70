"""Catalog of test functions of exponential type on a product of sectors.

Each model carries an evaluator, an overflow-safe log-magnitude channel and
a ``times_exp`` kernel computing ``f(z1, z2) * exp(w)`` without forming the
possibly huge intermediate ``f``. Transforms go through ``times_exp``;
growth measurements go through ``log_magnitude``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import EvaluationOverflow, SectorError
from .geometry import SectorPair

LN2 = math.log(2.0)


@dataclass(frozen=True)
class GrowthEnvelope:
    """Boundary-ray slopes: |f| <= scale * exp((A1 + eps) r1 + (A2 + eps) r2)
    on each pair of boundary rays, with the signs picking A^+ or A^-."""
    a1_plus: float
    a1_minus: float
    a2_plus: float
    a2_minus: float
    scale: float = 1.0
    epsilon: float = 0.0

    def __post_init__(self):
        vals = (self.a1_plus, self.a1_minus, self.a2_plus, self.a2_minus, self.scale, self.epsilon)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("envelope entries must be finite")
        if self.scale <= 0 or self.epsilon < 0:
            raise ValueError("scale must be positive and epsilon non-negative")

    def slope(self, j: int, sign: int) -> float:
        """A_j^sign for coordinate j in {0, 1} and sign in {+1, -1}."""
        table = ((self.a1_plus, self.a1_minus), (self.a2_plus, self.a2_minus))
        return table[j][0 if sign > 0 else 1]


@dataclass(frozen=True)
class AnalyticFunctionModel:
    evaluator: Callable
    h1: float
    h2: float
    sectors: SectorPair
    label: str
    log_magnitude: Optional[Callable] = None
    times_exp: Optional[Callable] = None
    # k in |f| <= k exp(h1|z1| + h2|z2|)
    type_scale: float = 1.0

    def __post_init__(self):
        if self.h1 < 0 or self.h2 < 0:
            raise ValueError("type constants must be non-negative")

    def weighted(self, z1, z2, log_weight):
        """``f(z1, z2) * exp(log_weight)``, broadcasting over arrays."""
        if self.times_exp is not None:
            return self.times_exp(z1, z2, log_weight)
        return self.evaluator(z1, z2) * np.exp(log_weight)

    def log_abs(self, r1, theta1, r2, theta2):
        """ln|f| on the ray pair, via the exact channel when available."""
        if self.log_magnitude is not None:
            return self.log_magnitude(r1, theta1, r2, theta2)
        z1 = np.asarray(r1) * np.exp(1j * np.asarray(theta1))
        z2 = np.asarray(r2) * np.exp(1j * np.asarray(theta2))
        with np.errstate(divide="ignore", over="ignore"):
            return np.log(np.abs(self.evaluator(z1, z2)))


def make_exponential(a: complex, b: complex, sectors: SectorPair):
    """``exp(a z1 + b z2)`` together with its exact growth envelope."""
    a, b = complex(a), complex(b)

    def evaluator(z1, z2):
        return np.exp(a * np.asarray(z1) + b * np.asarray(z2))

    def log_magnitude(r1, theta1, r2, theta2):
        return (np.asarray(r1) * np.real(a * np.exp(1j * np.asarray(theta1)))
                + np.asarray(r2) * np.real(b * np.exp(1j * np.asarray(theta2))))

    def times_exp(z1, z2, log_weight):
        return np.exp(a * np.asarray(z1) + b * np.asarray(z2) + log_weight)

    label = f"exp:{a.real:.17g},{a.imag:.17g},{b.real:.17g},{b.imag:.17g}"
    model = AnalyticFunctionModel(evaluator, abs(a), abs(b), sectors, label,
                                  log_magnitude, times_exp)
    al1, al2 = sectors.alpha1, sectors.alpha2
    envelope = GrowthEnvelope(
        (a * cmath.exp(1j * al1)).real, (a * cmath.exp(-1j * al1)).real,
        (b * cmath.exp(1j * al2)).real, (b * cmath.exp(-1j * al2)).real,
        scale=1.0, epsilon=0.0)
    return model, envelope


def log_abs_cos(w):
    """ln|cos w| without overflow for large |Im w|."""
    w = np.asarray(w, dtype=complex)
    x, y = w.real, np.abs(w.imag)
    e = np.exp(-2 * y)
    inner = np.cos(x) ** 2 * (1 + e) ** 2 + np.sin(x) ** 2 * (1 - e) ** 2
    with np.errstate(divide="ignore"):
        return y - LN2 + 0.5 * np.log(inner)


def make_cos_sqrt(sectors: SectorPair) -> AnalyticFunctionModel:
    """``cos(sqrt(z1 z2))``; entire, and even in the square root."""

    def evaluator(z1, z2):
        return np.cos(np.sqrt(np.asarray(z1) * np.asarray(z2) + 0j))

    def log_magnitude(r1, theta1, r2, theta2):
        rho = np.sqrt(np.asarray(r1) * np.asarray(r2))
        phase = 0.5 * (np.asarray(theta1) + np.asarray(theta2))
        return log_abs_cos(rho * np.exp(1j * phase))

    def times_exp(z1, z2, log_weight):
        u = np.sqrt(np.asarray(z1) * np.asarray(z2) + 0j)
        return 0.5 * (np.exp(1j * u + log_weight) + np.exp(-1j * u + log_weight))

    # declared types are a safe over-estimate of the sharp value 1/2
    return AnalyticFunctionModel(evaluator, 1.0, 1.0, sectors, "cossqrt",
                                 log_magnitude, times_exp)


def cos_sqrt_envelope(sectors: SectorPair) -> GrowthEnvelope:
    """Boundary slopes for cos(sqrt(z1 z2)).

    |cos w| <= exp(|Im w|) and |Im sqrt(z1 z2)| <= (r1 + r2)/2 * |sin((t1 + t2)/2)|;
    the mixed-sign rays have the smaller angle sum, so one slope serves all four.
    """
    slope = 0.5 * abs(math.sin(0.5 * (sectors.alpha1 + sectors.alpha2)))
    return GrowthEnvelope(slope, slope, slope, slope, scale=1.0, epsilon=0.0)


def from_id(fid: str, sectors: SectorPair):
    """Resolve a catalog id to ``(model, envelope)``.

    Ids: ``exp:a_re,a_im,b_re,b_im`` and ``cossqrt``.
    """
    fid = fid.strip()
    if fid == "cossqrt":
        return make_cos_sqrt(sectors), cos_sqrt_envelope(sectors)
    if fid.startswith("exp:"):
        parts = fid[4:].split(",")
        if len(parts) != 4:
            raise ValueError(f"exp id needs four numbers: {fid!r}")
        ar, ai, br, bi = (float(p) for p in parts)
        return make_exponential(complex(ar, ai), complex(br, bi), sectors)
    raise ValueError(f"unknown function id {fid!r}")


def in_closed_sector(z: complex, alpha: float, slack: float = 1e-12) -> bool:
    return z == 0 or abs(cmath.phase(z)) <= alpha + slack


def evaluate(f: AnalyticFunctionModel, z1: complex, z2: complex) -> complex:
    """Point value of ``f`` on the closed sector product.

    Raises EvaluationOverflow when the value is not representable.
    """
    for z, a in ((z1, f.sectors.alpha1), (z2, f.sectors.alpha2)):
        if not in_closed_sector(complex(z), a):
            raise SectorError(f"{z} lies outside the closed sector of angle {a}")
    with np.errstate(over="ignore", invalid="ignore"):
        value = complex(f.evaluator(complex(z1), complex(z2)))
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise EvaluationOverflow(f"{f.label} overflows at ({z1}, {z2}); use log_magnitude")
    return value
