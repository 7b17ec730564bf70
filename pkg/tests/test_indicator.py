import math

import numpy as np
import pytest

from sectorexp.errors import AngleDomainError, SectorError
from sectorexp.functions import make_cos_sqrt, make_exponential
from sectorexp.geometry import SectorPair, corner_point, support_value
from sectorexp.indicator import (GrowthGrid, convexity_bound, estimate_indicator_1d,
                                 membership_test, membership_threshold, trig_convex_bound_1d,
                                 verify_theorem)

Q = math.pi / 4
S = SectorPair(Q, Q)
R2 = math.sqrt(2) / 2


def test_grid_defaults():
    grid = GrowthGrid()
    assert grid.radii[-1] == pytest.approx(0.5 * 1.3 ** 19)
    assert np.all(np.diff(grid.radii) > 0)
    assert len(grid.directions) == 8
    with pytest.raises(ValueError):
        GrowthGrid(directions=((1.0, 0.0),))


def test_membership_examples(exp11):
    f, _ = exp11
    yes = membership_test(f, (0, 0), (1, 1))
    assert yes.accepted and abs(yes.residual_slope) < 1e-9
    no = membership_test(f, (0, 0), (0.95, 1))
    assert not no.accepted
    # steepest excess is along the direction closest to (1, 0)
    assert no.residual_slope == pytest.approx(0.05 * math.cos(math.pi / 18), rel=1e-9)
    assert membership_test(f, (0, 0), (1e3, 1e3)).accepted


def test_membership_samples_and_errors(exp11):
    f, _ = exp11
    v = membership_test(f, (0, 0), (1, 1))
    assert v.samples.shape == (8 * 20, 4)
    with pytest.raises(SectorError):
        membership_test(f, (1.0, 0), (1, 1))


@pytest.mark.parametrize("fn, theta, expected", [
    (np.exp, math.pi / 3, 0.5),
    (lambda z: np.exp((1 + 1j) * z), 0.0, 1.0),
    (np.exp, math.pi / 2, 0.0),
])
def test_indicator_1d(fn, theta, expected):
    assert estimate_indicator_1d(fn, theta) == pytest.approx(expected, abs=0.01)


def test_convexity_bound_examples():
    assert convexity_bound([Q, Q], [0, 0], [R2, R2], [R2, R2]) == pytest.approx([1, 1], abs=1e-12)
    assert convexity_bound([0.6], [0.6], [1.7], [-3.0])[0] == pytest.approx(1.7, rel=1e-14)
    assert convexity_bound([0.6], [-0.6], [1.7], [-3.0])[0] == pytest.approx(-3.0, rel=1e-14)
    c = convexity_bound([math.pi / 3], [math.pi / 6], [1], [2])[0]
    assert c == pytest.approx(4 / math.sqrt(3), rel=1e-12)
    assert c == pytest.approx(support_value(corner_point(math.pi / 3, 1, 2), math.pi / 6), rel=1e-12)


def test_convexity_bound_n_dimensional():
    out = convexity_bound([0.3, 0.7, 1.1], [0.1, -0.2, 0.5], [1, 2, 3], [3, 2, 1])
    assert len(out) == 3
    with pytest.raises(AngleDomainError):
        convexity_bound([Q], [Q + 0.1], [1], [1])
    with pytest.raises(AngleDomainError):
        convexity_bound([math.pi / 2], [0], [1], [1])


def test_trig_convex_1d():
    assert trig_convex_bound_1d(-Q, Q, 0, R2, R2) == pytest.approx(1.0, abs=1e-12)
    # approaching the left endpoint recovers h1
    assert trig_convex_bound_1d(-Q, Q, -Q + 1e-9, 0.3, 2.0) == pytest.approx(0.3, abs=1e-8)
    with pytest.raises(AngleDomainError):
        trig_convex_bound_1d(-math.pi / 2, math.pi / 2, 0, 1, 1)
    with pytest.raises(AngleDomainError):
        trig_convex_bound_1d(-Q, Q, Q, 1, 1)


def test_verify_theorem_sharp(exp11):
    f, env = exp11
    rep = verify_theorem(f, env, (0, 0))
    assert rep.constants == pytest.approx((1, 1))
    assert all(v.accepted for _, v in rep.rows)
    assert rep.verified


def test_verify_theorem_smaller_constants_fail(exp11):
    f, env = exp11
    assert not verify_theorem(f, env, (0, 0), constants=(0.9, 0.9)).verified
    assert not verify_theorem(f, env, (0, 0), deflate=0.1).verified


def test_verify_theorem_complex_rate():
    f, env = make_exponential(1 + 1j, 1, S)
    rep = verify_theorem(f, env, (math.pi / 8, 0))
    # the exponential is sharp: C1 equals its exact growth rate along the ray
    assert rep.constants[0] == pytest.approx(((1 + 1j) * complex(math.cos(math.pi / 8), math.sin(math.pi / 8))).real)
    assert dict(rep.rows)[0.05].accepted
    assert rep.verified


def test_cos_sqrt_threshold():
    nu = membership_threshold(make_cos_sqrt(S), (Q, Q))
    assert abs(nu - math.sqrt(0.25 * math.sin(Q) ** 2)) <= 0.01
