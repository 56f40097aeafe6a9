from __future__ import annotations

import math

import numpy as np
import pytest

from shapetaylor.specfun import (
    SpecialFunctionDomainError,
    cyl_bessel,
    cyl_bessel_prime,
    cyl_eval,
    hankel1,
    hankel1_prime,
)
from tests.oracles import besselj_series, bessely_reference


def test_j0_at_one_matches_series_oracle() -> None:
    assert cyl_bessel("J", 0, 1.0) == pytest.approx(0.7651976865579666, abs=1e-15)
    assert cyl_bessel("J", 0, 1.0) == pytest.approx(besselj_series(0, 1.0), rel=1e-14)


def test_j0_small_argument_limit() -> None:
    assert cyl_bessel("J", 0, 1e-300) == pytest.approx(1.0, abs=1e-15)


def test_y0_at_one_matches_reference() -> None:
    assert cyl_bessel("Y", 0, 1.0) == pytest.approx(bessely_reference(0, 1.0), rel=1e-13)


@pytest.mark.parametrize(
    "n, x", [(0, 0.5), (1, 2.0), (5, 7.5), (12, 30.0), (30, 45.0), (50, 100.0), (40, 3.0)]
)
def test_values_against_extended_precision(n: int, x: float) -> None:
    j_ref = besselj_series(n, x)
    y_ref = bessely_reference(n, x)
    assert cyl_bessel("J", n, x) == pytest.approx(j_ref, rel=1e-12, abs=1e-14)
    assert cyl_bessel("Y", n, x) == pytest.approx(y_ref, rel=1e-12, abs=1e-14)


def test_wronskian_on_random_grid(rng: np.random.Generator) -> None:
    n = rng.integers(0, 31, size=1000)
    x = rng.uniform(0.1, 50.0, size=1000)
    w = cyl_bessel("J", n, x) * cyl_bessel_prime("Y", n, x) - cyl_bessel_prime(
        "J", n, x
    ) * cyl_bessel("Y", n, x)
    expected = 2.0 / (np.pi * x)
    np.testing.assert_allclose(w, expected, rtol=1e-12)


@pytest.mark.parametrize("kind", ["J", "Y"])
def test_three_term_recurrence(kind: str, rng: np.random.Generator) -> None:
    n = rng.integers(1, 30, size=500)
    x = rng.uniform(0.1, 50.0, size=500)
    lower = cyl_bessel(kind, n - 1, x)  # pyright: ignore[reportArgumentType]
    upper = cyl_bessel(kind, n + 1, x)  # pyright: ignore[reportArgumentType]
    middle = (2 * n / x) * cyl_bessel(kind, n, x)  # pyright: ignore[reportArgumentType]
    scale = np.maximum.reduce([np.abs(lower), np.abs(upper), np.abs(middle)])
    assert np.all(np.abs(lower + upper - middle) <= 1e-11 * scale)


@pytest.mark.parametrize("kind", ["J", "Y"])
@pytest.mark.parametrize("n", [1, 2, 3, 8])
def test_negative_order_parity(kind: str, n: int) -> None:
    x = 2.3
    assert cyl_bessel(kind, -n, x) == (-1) ** n * cyl_bessel(kind, n, x)  # pyright: ignore[reportArgumentType]


def test_hankel_imaginary_part_is_y() -> None:
    x = np.linspace(0.2, 20.0, 50)
    np.testing.assert_array_equal(np.imag(hankel1(0, x)), cyl_bessel("Y", 0, x))


def test_hankel_wronskian() -> None:
    for n in range(0, 20):
        for x in (0.3, 1.0, 4.5, 17.0):
            h = hankel1(n, x)
            hp = hankel1_prime(n, x)
            value = cyl_bessel("J", n, x) * hp.imag - cyl_bessel_prime("J", n, x) * h.imag
            assert value == pytest.approx(2.0 / (math.pi * x), rel=1e-12)


@pytest.mark.parametrize("n", range(11))
def test_hankel_modulus_decreasing(n: int) -> None:
    x = np.linspace(n + 5, 100.0, 400)
    modulus = np.abs(hankel1(n, x))
    assert np.all(np.diff(modulus) < 0)


def test_cyl_eval_wronskian() -> None:
    sample = cyl_eval(7, 3.25)
    assert sample.wronskian == pytest.approx(2.0 / (math.pi * 3.25), rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, math.inf, math.nan])
def test_y_domain_errors(x: float) -> None:
    with pytest.raises(SpecialFunctionDomainError):
        cyl_bessel("Y", 0, x)


def test_j_rejects_non_finite_argument() -> None:
    with pytest.raises(SpecialFunctionDomainError):
        cyl_bessel("J", 2, math.nan)
