from __future__ import annotations

from typing import TYPE_CHECKING

import msgspec
import numpy as np

from shapetaylor.lib.exceptions import DomainError
from shapetaylor.utils.fourier import nodes, trig_evaluate
from shapetaylor.utils.validation import ensure_finite

if TYPE_CHECKING:
    from typing import Self

    import numpy.typing as npt

__all__ = ("ClosedCurve", "NormalSpeedField", "StarCurve", "circle")


class ClosedCurve:
    """Smooth closed curve ``z(theta) = x(theta) + i y(theta)``, counterclockwise.

    The curve is stored as samples on equispaced parameter nodes and is understood
    as their trigonometric interpolant, so every derivative is exact at the
    truncation level.
    """

    __slots__ = ("_samples",)

    def __init__(self, samples: npt.ArrayLike) -> None:
        values = np.array(samples, dtype=np.complex128, copy=True)
        ensure_finite("curve samples", values)
        self._samples = values
        self._samples.setflags(write=False)

    @classmethod
    def from_samples(cls, samples: npt.ArrayLike) -> Self:
        """Curve interpolating equispaced samples of ``z(theta)``."""
        return cls(samples)

    @classmethod
    def from_fourier(
        cls,
        x_cos: tuple[float, ...],
        x_sin: tuple[float, ...],
        y_cos: tuple[float, ...],
        y_sin: tuple[float, ...],
        n_samples: int | None = None,
    ) -> Self:
        """Build a curve from real cosine/sine coefficients of ``x`` and ``y``.

        Index ``m`` of each sequence multiplies ``cos(m theta)`` or ``sin(m theta)``.
        """
        highest = max(len(x_cos), len(x_sin), len(y_cos), len(y_sin))
        count = n_samples or max(64, 4 * highest + 8)
        theta = nodes(count)
        x = _trig_series(x_cos, x_sin, theta)
        y = _trig_series(y_cos, y_sin, theta)
        return cls(x + 1j * y)

    @property
    def n_samples(self) -> int:
        return self._samples.shape[0]

    @property
    def samples(self) -> npt.NDArray[np.complex128]:
        return self._samples

    def evaluate(self, theta: npt.ArrayLike, derivative: int = 0) -> npt.NDArray[np.complex128]:
        """Position (or a theta-derivative) of the curve at arbitrary parameters."""
        return trig_evaluate(self._samples, theta, derivative)

    def __repr__(self) -> str:
        return f"ClosedCurve(n_samples={self.n_samples})"


def _trig_series(
    cos: tuple[float, ...], sin: tuple[float, ...], theta: npt.NDArray[np.float64]
) -> npt.NDArray[np.float64]:
    values = np.zeros_like(theta)
    for m, a in enumerate(cos):
        values += a * np.cos(m * theta)
    for m, b in enumerate(sin):
        values += b * np.sin(m * theta)
    return values


class StarCurve(msgspec.Struct, frozen=True, kw_only=True):
    """Star-shaped curve ``r(theta) = a0 + sum a_m cos(m theta) + b_m sin(m theta)``.

    ``cos[m]`` and ``sin[m]`` hold ``a_m`` and ``b_m``; index 0 is ignored for the
    sine sequence and added to ``a0`` for the cosine sequence.
    """

    a0: float
    cos: tuple[float, ...] = ()
    sin: tuple[float, ...] = ()

    def radius(self, theta: npt.ArrayLike) -> npt.NDArray[np.float64]:
        angles = np.asarray(theta, dtype=np.float64)
        return self.a0 + _trig_series(self.cos, self.sin, angles)

    @property
    def is_circle(self) -> bool:
        return not any(self.cos[1:]) and not any(self.sin[1:])

    def to_curve(self, n_samples: int | None = None) -> ClosedCurve:
        """Fourier form of the star curve."""
        highest = max(len(self.cos), len(self.sin))
        count = n_samples or max(64, 4 * highest + 8)
        theta = nodes(count)
        r = self.radius(theta)
        if np.any(r <= 0.0):
            msg = "Star curve radius must stay positive"
            raise DomainError(msg)
        return ClosedCurve(r * np.exp(1j * theta))


def circle(radius: float, n_samples: int = 64) -> ClosedCurve:
    """Circle of the given radius centred at the origin."""
    return StarCurve(a0=radius).to_curve(n_samples)


class NormalSpeedField(msgspec.Struct, frozen=True, kw_only=True):
    """Band-limited normal speed ``v(theta)``; the deformation velocity is ``v n``."""

    cos: tuple[float, ...] = ()
    sin: tuple[float, ...] = ()

    @classmethod
    def constant(cls, value: float) -> NormalSpeedField:
        """Field of constant normal speed ``value``."""
        return cls(cos=(value,))

    @classmethod
    def from_samples(cls, samples: npt.ArrayLike) -> NormalSpeedField:
        """Trigonometric interpolant of real samples on equispaced nodes."""
        values = np.asarray(samples, dtype=np.float64)
        ensure_finite("normal speed samples", values)
        n = values.shape[0]
        spectrum = np.fft.rfft(values) / n
        cos = 2.0 * spectrum.real
        sin = -2.0 * spectrum.imag
        cos[0] = spectrum[0].real
        if n % 2 == 0:
            cos[-1] = spectrum[-1].real
            sin[-1] = 0.0
        return cls(cos=tuple(float(c) for c in cos), sin=tuple(float(s) for s in sin))

    def evaluate(self, theta: npt.ArrayLike, derivative: int = 0) -> npt.NDArray[np.float64]:
        """``v`` or its ``derivative``-th theta-derivative."""
        angles = np.asarray(theta, dtype=np.float64)
        values = np.zeros_like(angles)
        shift = derivative * np.pi / 2.0
        for m, a in enumerate(self.cos):
            values += a * m**derivative * np.cos(m * angles + shift)
        for m, b in enumerate(self.sin):
            values += b * m**derivative * np.sin(m * angles + shift)
        return values

    @property
    def is_zero(self) -> bool:
        return not any(self.cos) and not any(self.sin)

    def scaled(self, factor: float) -> NormalSpeedField:
        """Field multiplied by ``factor``."""
        return NormalSpeedField(
            cos=tuple(factor * c for c in self.cos), sin=tuple(factor * s for s in self.sin)
        )

    def __add__(self, other: NormalSpeedField) -> NormalSpeedField:
        size_c = max(len(self.cos), len(other.cos))
        size_s = max(len(self.sin), len(other.sin))
        cos = np.zeros(size_c)
        sin = np.zeros(size_s)
        cos[: len(self.cos)] += self.cos
        cos[: len(other.cos)] += other.cos
        sin[: len(self.sin)] += self.sin
        sin[: len(other.sin)] += other.sin
        return NormalSpeedField(cos=tuple(cos.tolist()), sin=tuple(sin.tolist()))
