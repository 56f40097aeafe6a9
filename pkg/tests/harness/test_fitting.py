from __future__ import annotations

import numpy as np
import pytest

from shapetaylor.harness import InsufficientDataError, fit_order

TS = 0.1 / 2.0 ** np.arange(7)


def test_exact_power_law_slope() -> None:
    fit = fit_order(TS, 3.7 * TS**2)
    assert abs(fit.slope - 2.0) <= 1e-9
    assert fit.residual < 1e-9
    assert fit.reliable


def test_noisy_cubic_slope(rng: np.random.Generator) -> None:
    errors = 0.5 * TS**3 + 1e-13 * rng.standard_normal(TS.size)
    fit = fit_order(TS, errors)
    assert 2.9 <= fit.slope <= 3.1


def test_rounding_floor_samples_are_dropped() -> None:
    errors = np.where(TS > 0.01, TS**2, 1e-14)
    fit = fit_order(TS, errors)
    assert fit.samples == int(np.count_nonzero(TS > 0.01))
    assert abs(fit.slope - 2.0) <= 1e-9


def test_too_few_usable_samples() -> None:
    with pytest.raises(InsufficientDataError):
        fit_order(TS, np.full(TS.size, 1e-15))
