"""Panel quadrature on rays and on the Gamma/Lambda contours.

Everything here works with integrands that are analytic and exponentially
damped along the path. The truncation radius comes from decay data supplied
by the caller; inside the truncated range a Gauss-Kronrod panel rule is
bisected adaptively until the embedded error estimate meets tolerance.

Integrands are vectorized: they receive a 1-D array of points and return an
array of shape ``(k,)`` or ``(k, B)``. The batched form integrates ``B``
related integrands over a shared panel set, which is what the iterated
transforms use for their inner integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import QuadratureError
from .geometry import GammaContour, LambdaContour

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    panel_nodes: int = 15
    max_panels: int = 4096
    tail_margin: float = 5.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        # Kronrod extension of an n-point Gauss rule has 2n+1 nodes.
        if self.panel_nodes < 3 or self.panel_nodes % 2 == 0:
            raise ValueError("panel_nodes must be odd and >= 3")
        if self.max_panels < 1:
            raise ValueError("max_panels must be >= 1")
        if self.tail_margin < 0:
            raise ValueError("tail_margin must be >= 0")


DEFAULT_CONFIG = QuadratureConfig()


def _kronrod_recurrence(n: int, a0: np.ndarray, b0: np.ndarray):
    """Jacobi-Kronrod recurrence coefficients by Laurie's algorithm."""
    a = np.zeros(2 * n + 1)
    b = np.zeros(2 * n + 1)
    k = 3 * n // 2 + 1
    a[:k] = a0[:k]
    k = math.ceil(3 * n / 2) + 1
    b[:k] = b0[:k]
    s = np.zeros(n // 2 + 2)
    t = np.zeros(n // 2 + 2)
    t[1] = b[n + 1]
    for m in range(n - 1):
        k = np.arange((m + 1) // 2, -1, -1)
        l = m - k
        s[k + 1] = np.cumsum((a[k + n + 1] - a[l]) * t[k + 1]
                             + b[k + n + 1] * s[k] - b[l] * s[k + 1])
        s, t = t, s
    j = n // 2 + 1
    s[1:j + 1] = s[:j].copy()
    for m in range(n - 1, 2 * n - 2):
        k = np.arange(m + 1 - n, (m - 1) // 2 + 1)
        l = m - k
        j = n - 1 - l
        s[j + 1] = np.cumsum(-(a[k + n + 1] - a[l]) * t[j + 1]
                             - b[k + n + 1] * s[j + 1] + b[l] * s[j + 2])
        j = j[-1]
        k = (m + 1) // 2
        if m % 2 == 0:
            a[k + n + 1] = a[k] + (s[j + 1] - b[k + n + 1] * s[j + 2]) / t[j + 2]
        else:
            b[k + n + 1] = s[j + 1] / s[j + 2]
        s, t = t, s
    a[2 * n] = a[n - 1] - b[2 * n] * s[1] / t[1]
    return a, b


@lru_cache(maxsize=None)
def kronrod_rule(panel_nodes: int = 15):
    """Gauss-Kronrod rule on [-1, 1] with ``panel_nodes`` = 2n+1 nodes.

    Returns ``(nodes, kronrod_weights, gauss_index, gauss_weights)`` where
    ``nodes[gauss_index]`` are the embedded n-point Gauss-Legendre nodes.
    """
    n = (panel_nodes - 1) // 2
    size = math.ceil(3 * n / 2) + 1
    k = np.arange(size, dtype=float)
    a0 = np.zeros(size)
    b0 = np.empty(size)
    b0[0] = 2.0
    b0[1:] = k[1:] ** 2 / (4 * k[1:] ** 2 - 1)
    a, b = _kronrod_recurrence(n, a0, b0)
    off = np.sqrt(b[1:2 * n + 1])
    jac = np.diag(a[:2 * n + 1]) + np.diag(off, 1) + np.diag(off, -1)
    nodes, vecs = np.linalg.eigh(jac)
    weights = b0[0] * vecs[0] ** 2
    nodes = 0.5 * (nodes - nodes[::-1])  # enforce exact symmetry
    weights = 0.5 * (weights + weights[::-1])
    gauss_index = np.arange(1, 2 * n + 1, 2)
    _, gauss_weights = np.polynomial.legendre.leggauss(n)
    return nodes, weights, gauss_index, gauss_weights


@lru_cache(maxsize=None)
def _legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


def gauss_panels(breaks: np.ndarray, n: int):
    """Fixed composite Gauss-Legendre nodes/weights over consecutive breaks."""
    x, w = _legendre(n)
    breaks = np.asarray(breaks, dtype=float)
    lo, hi = breaks[:-1, None], breaks[1:, None]
    half = 0.5 * (hi - lo)
    return ((lo + hi) * 0.5 + half * x).ravel(), (half * w).ravel()


def adaptive_integrate(fun: Integrand, a: float, b: float,
                       cfg: QuadratureConfig = DEFAULT_CONFIG, n_init: int = 8):
    """Globally adaptive Gauss-Kronrod integration of ``fun`` over [a, b].

    Returns ``(value, err_est)``; both are arrays of shape ``(B,)`` for
    batched integrands and scalars otherwise.
    """
    x, wk, gidx, wg = kronrod_rule(cfg.panel_nodes)
    edges = np.linspace(a, b, max(1, n_init) + 1)
    lo, hi = edges[:-1], edges[1:]
    length = abs(b - a)
    done_val = done_err = 0.0
    used = len(lo)
    scalar = None
    while True:
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        pts = mid[:, None] + half[:, None] * x
        vals = np.asarray(fun(pts.ravel()))
        if scalar is None:
            scalar = vals.ndim == 1
        vals = vals.reshape(len(lo), len(x), -1)
        if not np.all(np.isfinite(vals)):
            raise QuadratureError("integrand returned non-finite values")
        kron = half[:, None] * np.einsum("n,pnb->pb", wk, vals)
        gauss = half[:, None] * np.einsum("n,pnb->pb", wg, vals[:, gidx])
        err = np.abs(kron - gauss)
        total = done_val + kron.sum(axis=0)
        total_err = done_err + err.sum(axis=0)
        tol = np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(total))
        if np.all(total_err <= tol):
            value, est = total, total_err
            break
        share = tol[None, :] * (np.abs(hi - lo) / length)[:, None]
        reject = np.any(err > share, axis=1)
        if not reject.any():
            reject[np.argmax(np.max(err / tol, axis=1))] = True
        keep = ~reject
        done_val = done_val + kron[keep].sum(axis=0)
        done_err = done_err + err[keep].sum(axis=0)
        used += int(reject.sum())
        if used > cfg.max_panels:
            raise QuadratureError(
                f"panel budget of {cfg.max_panels} exhausted "
                f"(error {float(np.max(total_err)):.3g} > tol {float(np.max(tol)):.3g})")
        rl, rh, rm = lo[reject], hi[reject], mid[reject]
        lo = np.concatenate([rl, rm])
        hi = np.concatenate([rm, rh])
    if scalar:
        return complex(value[0]) if np.iscomplexobj(value) else float(value[0]), float(est[0])
    return value, est


def truncation_radius(decay_rate: float, bound: float, cfg: QuadratureConfig) -> float:
    """Radius R with ``bound * exp(decay_rate * R) / |decay_rate| <= abs_tol``,
    padded by ``tail_margin`` extra e-foldings."""
    rate = abs(decay_rate)
    core = math.log(max(bound, 1e-300) / (cfg.abs_tol * rate))
    return max(core, 0.0) / rate + cfg.tail_margin / rate


def integrate_ray(integrand: Integrand, angle: float, decay_rate: float,
                  cfg: QuadratureConfig = DEFAULT_CONFIG, bound: float = 1.0):
    """Integrate ``integrand(zeta) d zeta`` over the ray ``exp(i*angle)[0, inf)``.

    ``bound`` and ``decay_rate`` certify ``|integrand(zeta)| <= bound *
    exp(decay_rate * |zeta|)``; they fix the truncation radius. Returns
    ``(value, err_est)`` where the estimate includes the analytic tail bound.
    """
    if not decay_rate < 0:
        raise QuadratureError(f"decay rate must be negative, got {decay_rate}")
    radius = truncation_radius(decay_rate, bound, cfg)
    direction = complex(math.cos(angle), math.sin(angle))

    def along(t):
        return _times(integrand(t * direction), direction)

    n_init = max(8, math.ceil(radius * abs(decay_rate) / 4))
    value, err = adaptive_integrate(along, 0.0, radius, cfg, n_init=n_init)
    tail = bound * math.exp(decay_rate * radius) / abs(decay_rate)
    return value, err + tail


def _times(vals, factor):
    vals = np.asarray(vals)
    return vals * (factor if vals.ndim == 1 else np.reshape(factor, (-1, 1)))


def contour_range(contour: GammaContour | LambdaContour, tail_decay: float,
                  bound: float, cfg: QuadratureConfig) -> float:
    """Parameter cut-off |t| = T for a contour with the given tail data."""
    horizon = (math.log(max(bound, 1e-300) / cfg.abs_tol) + cfg.tail_margin) / abs(tail_decay)
    if isinstance(contour, LambdaContour):
        horizon = max(horizon, max(-contour.t_minus, contour.t_plus) + 1.0)
    return max(horizon, 1.0)


def integrate_contour(integrand: Integrand, contour: GammaContour | LambdaContour,
                      tail_decay: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                      bound: float = 1.0):
    """Integrate ``integrand(omega) d omega`` along a Gamma or Lambda contour.

    The path is traversed with increasing parameter. ``bound`` and
    ``tail_decay`` certify ``|integrand(gamma(t)) gamma'(t)| <= bound *
    exp(tail_decay * |t|)`` on both infinite branches.
    """
    if not tail_decay < 0:
        raise QuadratureError(f"tail decay must be negative, got {tail_decay}")
    horizon = contour_range(contour, tail_decay, bound, cfg)
    value = 0.0
    err = 0.0
    # each piece starts a fresh panel set: the path has corners between pieces
    for piece in contour.pieces(horizon):
        def along(t, piece=piece):
            return _times(integrand(piece.point(t)), piece.derivative(t))

        n_init = max(4, math.ceil(abs(piece.end - piece.start) * abs(tail_decay) / 4))
        v, e = adaptive_integrate(along, piece.start, piece.end, cfg, n_init=n_init)
        value = value + v
        err = err + e
    tail = 2 * bound * math.exp(tail_decay * horizon) / abs(tail_decay)
    return value, err + tail
