from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    import numpy.typing as npt

__all__ = ("nodes", "symmetric_spectrum", "trig_derivative", "trig_evaluate")


def nodes(n: int) -> npt.NDArray[np.float64]:
    """Equispaced parameter nodes ``2 pi j / n`` on ``[0, 2 pi)``."""
    return 2.0 * np.pi * np.arange(n) / n


def symmetric_spectrum(
    values: npt.ArrayLike,
) -> tuple[npt.NDArray[np.int64], npt.NDArray[np.complex128]]:
    """Coefficients of the symmetric trigonometric interpolant of periodic samples.

    For an even sample count the Nyquist coefficient is split evenly between
    ``+n/2`` and ``-n/2`` so that real samples give a real interpolant.

    Parameters
    ----------
    values : array_like
        Samples at :func:`nodes`, last axis periodic.

    Returns
    -------
    tuple of numpy.ndarray
        Integer modes and matching coefficients ``c_m`` with
        ``f(theta) = sum_m c_m exp(i m theta)``.
    """
    samples = np.asarray(values, dtype=np.complex128)
    n = samples.shape[-1]
    coeffs = np.fft.fft(samples, axis=-1) / n
    modes = np.fft.fftfreq(n, 1.0 / n).astype(np.int64)
    if n % 2 == 0:
        nyquist = coeffs[..., n // 2 : n // 2 + 1] / 2.0
        coeffs = np.concatenate([coeffs[..., : n // 2], nyquist, coeffs[..., n // 2 + 1 :], nyquist], axis=-1)
        modes = np.concatenate([modes[: n // 2], [-(n // 2)], modes[n // 2 + 1 :], [n // 2]])
    return modes, coeffs


def trig_evaluate(
    values: npt.ArrayLike, theta: npt.ArrayLike, derivative: int = 0
) -> npt.NDArray[np.complex128]:
    """Evaluate the interpolant of ``values`` (or a theta-derivative) at arbitrary ``theta``."""
    modes, coeffs = symmetric_spectrum(values)
    angles = np.asarray(theta, dtype=np.float64)
    factor = (1j * modes) ** derivative
    phases = np.exp(1j * np.multiply.outer(angles, modes))
    return phases @ (factor * coeffs)


def trig_derivative(values: npt.ArrayLike, order: int = 1) -> npt.NDArray[np.complex128]:
    """Exact theta-derivative of the interpolant, sampled back on the nodes."""
    samples = np.asarray(values, dtype=np.complex128)
    if order == 0:
        return samples.copy()
    n = samples.shape[-1]
    modes = np.fft.fftfreq(n, 1.0 / n)
    multiplier = (1j * modes) ** order
    if n % 2 == 0 and order % 2 == 1:
        multiplier[n // 2] = 0.0
    return np.fft.ifft(np.fft.fft(samples, axis=-1) * multiplier, axis=-1)
