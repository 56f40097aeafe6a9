from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np
from scipy import stats

from shapetaylor.harness.exceptions import InsufficientDataError
from shapetaylor.lib.schemas import Struct

if TYPE_CHECKING:
    import numpy.typing as npt

__all__ = ("ROUNDING_FLOOR", "SLOPE_RESIDUAL_LIMIT", "OrderFit", "fit_order")

LOGGER = logging.getLogger(__name__)

ROUNDING_FLOOR = 1e-12
SLOPE_RESIDUAL_LIMIT = 0.15
MIN_SAMPLES = 3


class OrderFit(Struct):
    """Least-squares line through ``(log t, log err)``.

    ``residual`` is the RMS deviation of the log errors from the line and
    ``slope_interval`` the half-width of the 95% confidence interval of the slope.
    """

    slope: float
    intercept: float
    residual: float
    slope_interval: float
    samples: int

    @property
    def reliable(self) -> bool:
        return self.residual < SLOPE_RESIDUAL_LIMIT


def fit_order(ts: npt.ArrayLike, errors: npt.ArrayLike) -> OrderFit:
    """Fit ``err ~ C t^p`` and return the observed order ``p``.

    Samples with errors below ``1e-12`` sit on the rounding floor and are dropped.

    Raises
    ------
    InsufficientDataError
        If fewer than three samples remain.
    """
    t = np.abs(np.asarray(ts, dtype=np.float64))
    err = np.asarray(errors, dtype=np.float64)
    usable = (err > ROUNDING_FLOOR) & np.isfinite(err) & (t > 0.0)
    count = int(np.count_nonzero(usable))
    if count < MIN_SAMPLES:
        raise InsufficientDataError(count, MIN_SAMPLES)

    x = np.log(t[usable])
    y = np.log(err[usable])
    fit = stats.linregress(x, y)
    deviation = y - (fit.intercept + fit.slope * x)
    residual = float(np.sqrt(np.mean(deviation**2)))
    interval = float(stats.t.ppf(0.975, count - 2) * fit.stderr)
    LOGGER.debug("Order fit over %d samples: slope %.4f, residual %.3e", count, fit.slope, residual)
    return OrderFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        residual=residual,
        slope_interval=interval,
        samples=count,
    )
