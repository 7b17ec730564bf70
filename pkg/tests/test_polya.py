import math

import numpy as np
import pytest

from sectorexp.errors import DomainError
from sectorexp.polya import (PowerSeriesET, borel_eval, borel_tail_bound, exponential_series,
                             load_series, polya_reconstruct, save_series,
                             support_function_from_indicator)


def pole(w):
    return 1 / (w - 2)


def test_borel_examples():
    assert borel_eval(exponential_series(2), 5) == pytest.approx(1 / 3, abs=1e-14)
    assert borel_eval(PowerSeriesET((1,), 0.0), 2) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        borel_eval(exponential_series(2), 1)


def test_borel_tail_bound_dominates_error():
    s = exponential_series(2, 30)
    for w in (3, 3j, -4, 2.5 + 2.5j):
        err = abs(borel_eval(s, w) - 1 / (w - 2))
        assert err <= borel_tail_bound(s, w) * (1 + 1e-6)


def test_series_validation():
    with pytest.raises(ValueError):
        PowerSeriesET((1, 4, 16), 1.0)
    with pytest.raises(ValueError):
        PowerSeriesET((1, float("nan")), 1.0)


@pytest.mark.parametrize("radius, z, expected", [
    (3.0, 1.0, math.e ** 2),
    (3.0, 0.0, 1.0),
    (1.0, 1.0, 0.0),
])
def test_reconstruct(radius, z, expected):
    assert polya_reconstruct(pole, 0, radius, z) == pytest.approx(expected, abs=1e-10)


def test_reconstruct_from_series_at_many_points():
    a = 1.5 - 1j
    s = exponential_series(a, 60)
    zs = np.exp(1j * np.linspace(0, 2 * math.pi, 10, endpoint=False)) * np.linspace(0.2, 2, 10)
    for z in zs:
        value = polya_reconstruct(lambda w: borel_eval(s, w), 0, abs(a) + 1, z)
        assert abs(value - np.exp(a * z)) <= 1e-6 * abs(np.exp(a * z))


def test_support_function():
    theta = np.linspace(0, 2 * math.pi, 721)[:-1]
    k = support_function_from_indicator(list(zip(theta, np.cos(theta))))
    assert k(0.3) == pytest.approx(math.cos(0.3), abs=1e-4)
    zero = support_function_from_indicator(list(zip(theta, 0 * theta)))
    assert zero(1.0) == 0
    k2 = support_function_from_indicator(list(zip(theta, np.real(2j * np.exp(1j * theta)))))
    assert k2(0) == pytest.approx(0, abs=1e-12)
    assert k2(math.pi / 2) == pytest.approx(2, abs=1e-12)
    with pytest.raises(ValueError):
        support_function_from_indicator([])


def test_series_file_roundtrip(tmp_path):
    s = exponential_series(0.5 + 0.25j, 20)
    path = tmp_path / "coef.txt"
    save_series(s, path)
    back = load_series(path)
    assert np.allclose(back.coefficients, s.coefficients, rtol=0, atol=0)
    assert back.type_radius == pytest.approx(s.type_radius)
