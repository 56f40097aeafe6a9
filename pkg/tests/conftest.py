from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np
import pytest

from shapetaylor.geometry import BoundaryGrid, ClosedCurve, StarCurve, build_grid, circle

if TYPE_CHECKING:
    from collections.abc import Iterator


@pytest.fixture(autouse=True)
def _release_warning_capture() -> Iterator[None]:
    # CLI invocations leave captureWarnings installed
    yield
    logging.captureWarnings(False)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def star_grid_curve() -> ClosedCurve:
    return StarCurve(a0=1.0, cos=(0.0, 0.0, 0.0, 0.1)).to_curve()


@pytest.fixture
def unit_circle_grid() -> BoundaryGrid:
    return build_grid(circle(1.0), 256)


@pytest.fixture
def star_grid(star_grid_curve: ClosedCurve) -> BoundaryGrid:
    return build_grid(star_grid_curve, 256)
