"""Randomized invariants over the whole package."""

import contextlib
import io
import math

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from sectorexp.cli import main
from sectorexp.functions import cos_sqrt_envelope, make_cos_sqrt, make_exponential
from sectorexp.geometry import GammaContour, SectorPair
from sectorexp.indicator import GrowthGrid, convexity_bound, membership_test
from sectorexp.quadrature import adaptive_integrate

angle = st.floats(0.05, math.pi / 2 - 0.05)
unit = st.floats(-1.0, 1.0)
coef = st.floats(-2.0, 2.0)
radius = st.floats(0.0, 50.0)
SMALL_GRID = GrowthGrid(count=12)


@given(angle, angle, coef, coef, coef, coef, unit, unit, radius, radius)
def test_exponential_envelope_bounds_growth(al1, al2, ar, ai, br, bi, s1, s2, r1, r2):
    """ln|f| <= C . r inside the sectors, with C from the boundary slopes."""
    sectors = SectorPair(al1, al2)
    f, env = make_exponential(complex(ar, ai), complex(br, bi), sectors)
    th1, th2 = s1 * al1, s2 * al2
    c1, c2 = convexity_bound((al1, al2), (th1, th2), (env.a1_plus, env.a2_plus),
                             (env.a1_minus, env.a2_minus))
    log_f = float(f.log_abs(r1, th1, r2, th2))
    assert log_f <= c1 * r1 + c2 * r2 + 1e-9 * (1 + r1 + r2)


@given(angle, angle, st.sampled_from([1, -1]), st.sampled_from([1, -1]), radius, radius)
def test_cos_sqrt_envelope_on_boundary_rays(al1, al2, l1, l2, r1, r2):
    sectors = SectorPair(al1, al2)
    f, env = make_cos_sqrt(sectors), cos_sqrt_envelope(sectors)
    log_f = float(f.log_abs(r1, l1 * al1, r2, l2 * al2))
    bound = env.slope(0, l1) * r1 + env.slope(1, l2) * r2 + math.log(env.scale)
    assert log_f <= bound + 1e-9


@given(coef, coef, unit, unit, st.floats(-1, 1), st.floats(-1, 1),
       st.floats(0, 1), st.floats(0, 1))
def test_membership_is_monotone(a, b, s1, s2, n1, n2, d1, d2):
    q = math.pi / 4
    f, _ = make_exponential(a, b, SectorPair(q, q))
    theta = (s1 * q, s2 * q)
    lower = membership_test(f, theta, (n1, n2), SMALL_GRID)
    upper = membership_test(f, theta, (n1 + d1, n2 + d2), SMALL_GRID)
    if lower.accepted:
        assert upper.accepted
    assert upper.residual_slope <= lower.residual_slope + 1e-9


@given(st.floats(-10, 10), angle, st.floats(0, 5), st.floats(1e-9, 100))
def test_gamma_conjugate_symmetry(vertex, alpha, type_bound, t):
    # t = 0 is the corner, where the derivative is one-sided
    vertex = min(vertex, -type_bound / math.cos(alpha) - 1e-3)
    g = GammaContour(vertex, alpha, type_bound)
    assert abs(g.point(-t) - np.conj(g.point(t))) <= 1e-12 * (1 + t)
    assert abs(g.derivative(-t) + np.conj(g.derivative(t))) <= 1e-12


@given(st.lists(coef, min_size=3, max_size=3), st.lists(coef, min_size=3, max_size=3),
       coef, coef, st.floats(-3, 3), st.floats(0.1, 4))
def test_quadrature_is_linear(p, q, ca, cb, lo, width):
    def f(x):
        return p[0] + p[1] * np.sin(p[2] * x)

    def g(x):
        return np.exp(q[0] * x / 4) * np.cos(q[1] * x + q[2])

    hi = lo + width
    combined, _ = adaptive_integrate(lambda x: ca * f(x) + cb * g(x), lo, hi)
    fi, _ = adaptive_integrate(f, lo, hi)
    gi, _ = adaptive_integrate(g, lo, hi)
    scale = abs(ca) * abs(fi) + abs(cb) * abs(gi) + width
    assert abs(combined - (ca * fi + cb * gi)) <= 1e-11 * scale


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


@given(st.floats(0.1, 1.5), unit, unit, coef, coef, st.sampled_from(["json", "csv"]))
def test_cli_is_deterministic(alpha, s1, s2, n1, n2, fmt):
    th1, th2 = f"{s1 * alpha:.6f}", f"{s2 * alpha:.6f}"
    al = f"{alpha:.6f}"
    commands = [
        ["member", "--alpha1", al, "--alpha2", al, "--theta1", th1, "--theta2", th2,
         "--nu1", f"{n1:.6f}", "--nu2", f"{n2:.6f}", "--format", fmt],
        ["bound", "--alpha1", al, "--alpha2", al, "--theta1", th1, "--theta2", th2,
         "--a1p", "0.5", "--a1m", "0.7", "--a2p", "0.2", "--a2m", "0.9", "--format", fmt],
        ["indicator", "--alpha1", al, "--alpha2", al, "--theta", th1, "--format", fmt],
    ]
    for argv in commands:
        first = _run(argv)
        assert first[0] == 0
        assert _run(argv) == first
