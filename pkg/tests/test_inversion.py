import cmath
import math

import numpy as np
import pytest

from oracles import lambda_integral_closed
from sectorexp.errors import AngleMismatchError, ContourError, DomainError, SectorError
from sectorexp.functions import from_id, make_exponential
from sectorexp.geometry import GammaContour, SectorPair, build_lambda
from sectorexp.inversion import (InversionPlan, default_plan, invert_1d, invert_2d, invert_2d_batch,
                                 invert_2d_deformed, lambda_constant, lambda_path_integral,
                                 lambda_tail_bound, worker_count)
from sectorexp.transform import ConcatenatedLaplace

Q = math.pi / 4
P = -2 * math.sqrt(2)
S = SectorPair(Q, Q)
GAMMA = GammaContour(P, Q, 1.0)


def g_exp(omega):
    return -1 / (2j * math.pi * (1 + omega))


@pytest.fixture(scope="module")
def t_exp():
    return ConcatenatedLaplace(*make_exponential(1, 1, S))


def test_invert_1d():
    assert invert_1d(g_exp, GAMMA, 1) == pytest.approx(math.e, abs=1e-9)
    z = 2 * cmath.exp(1j * math.pi / 8)
    value = invert_1d(g_exp, GAMMA, z)
    assert value == pytest.approx(cmath.exp(z), rel=1e-9)
    assert abs(value) == pytest.approx(math.exp(2 * math.cos(math.pi / 8)), rel=1e-9)


def test_invert_1d_errors():
    with pytest.raises(DomainError):
        invert_1d(g_exp, GAMMA, 0)
    with pytest.raises(SectorError):
        invert_1d(g_exp, GAMMA, 1j)


def test_invert_2d_examples(t_exp):
    plan = default_plan(t_exp)
    assert invert_2d(t_exp, plan, 1, 1) == pytest.approx(math.e ** 2, rel=1e-9)
    z1 = 2 * cmath.exp(1j * math.pi / 8)
    value = invert_2d(t_exp, plan, z1, 1)
    assert abs(value) == pytest.approx(math.exp(1 + 2 * math.cos(math.pi / 8)), rel=1e-9)


def test_invert_2d_errors(t_exp):
    plan = default_plan(t_exp)
    with pytest.raises(DomainError):
        invert_2d(t_exp, plan, 1, 0)
    with pytest.raises(SectorError):
        invert_2d(t_exp, plan, 1, 1j)
    # admissible for its own type bound 0.5, but not for the source's h1 = 1
    with pytest.raises(ContourError):
        invert_2d(t_exp, InversionPlan(GammaContour(-1.0, Q, 0.5), GAMMA), 1, 1)


def test_contour_independence(t_exp):
    z1 = np.array([1.0, 0.8 * cmath.exp(0.3j)])
    z2 = np.array([1.5 * cmath.exp(-0.2j), 2.0])
    a = invert_2d_batch(t_exp, default_plan(t_exp), z1, z2)
    plan = InversionPlan(GammaContour(-3.5, Q, 1.0), GammaContour(-4.0, Q, 1.0))
    b = invert_2d_batch(t_exp, plan, z1, z2)
    assert np.allclose(a, b, rtol=1e-8, atol=0)


def test_batch_matches_single(t_exp):
    plan = default_plan(t_exp)
    z1 = np.array([1.0, 2 * cmath.exp(0.2j)])
    z2 = np.array([0.7, 1.2 * cmath.exp(-0.3j)])
    batch = invert_2d_batch(t_exp, plan, z1, z2)
    exact = np.exp(z1 + z2)
    assert np.allclose(batch, exact, rtol=1e-9)


def test_deformed_inversion(t_exp):
    lam = build_lambda(GAMMA, 0.0, 1.0, 0.1)
    value, bound = invert_2d_deformed(t_exp, lam, lam, 2, 2)
    assert value == pytest.approx(math.e ** 4, rel=1e-9)
    assert bound >= math.e ** 4
    gamma_value = invert_2d(t_exp, default_plan(t_exp), 2, 2)
    assert abs(value - gamma_value) <= 1e-6 * abs(gamma_value)
    with pytest.raises(AngleMismatchError):
        invert_2d_deformed(t_exp, lam, lam, 2 * cmath.exp(1j * math.pi / 8), 2)


def test_lambda_tail_bound():
    lam = build_lambda(GAMMA, 0.0, 1.0, 0.1)
    assert lambda_constant(lam, 1.0) == pytest.approx(2 * 1.7284271247461903 + 2 * math.sqrt(2), rel=1e-12)
    bound = lambda_tail_bound(lam, 1)
    assert bound == pytest.approx(6.2852813742385695 * math.exp(1.1), rel=1e-12)
    assert bound == pytest.approx(lambda_integral_closed(P, Q, 0.0, 1.0, 0.1, 1.0), rel=1e-12)
    assert lambda_path_integral(lam, 1) <= bound * (1 + 1e-9)
    with pytest.raises(DomainError):
        lambda_tail_bound(lam, 0)
    with pytest.raises(AngleMismatchError):
        lambda_tail_bound(lam, 1j)


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("SECTOR_INDICATOR_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("SECTOR_INDICATOR_THREADS", "x")
    with pytest.raises(ValueError):
        worker_count()


def test_thread_count_does_not_change_result(t_exp, monkeypatch):
    plan = default_plan(t_exp)
    monkeypatch.setenv("SECTOR_INDICATOR_THREADS", "1")
    a = invert_2d(t_exp, plan, 1.3, 0.9)
    monkeypatch.setenv("SECTOR_INDICATOR_THREADS", "4")
    b = invert_2d(t_exp, plan, 1.3, 0.9)
    assert a == b


@pytest.mark.slow
def test_roundtrip_near_sector_edge():
    # theta1 = alpha - 0.1 at the smallest radius: tail decay is only 0.05 per unit
    t = ConcatenatedLaplace(*from_id("exp:1,0,1,0", S))
    z1 = 0.5 * cmath.exp(1j * (Q - 0.1))
    value = invert_2d(t, default_plan(t), z1, 1.5)
    assert abs(value - cmath.exp(z1 + 1.5)) <= 1e-6 * max(1, abs(value))
