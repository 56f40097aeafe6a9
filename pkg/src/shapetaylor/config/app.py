from __future__ import annotations

import math
import os
import pathlib
from typing import TYPE_CHECKING, Literal

import msgspec
from msgspec import field, toml

from shapetaylor.geometry import ClosedCurve, NormalSpeedField, StarCurve, build_grid
from shapetaylor.lib.config import Struct
from shapetaylor.lib.exceptions import ConfigError, DomainError
from shapetaylor.solvers import BoundaryKind, IncidentField, Medium

if TYPE_CHECKING:
    from typing import Final, Self

__all__ = (
    "APP_CONFIG",
    "VERIFY_SUITES",
    "AppSettings",
    "CurveConfig",
    "FourierCurveConfig",
    "IncidentConfig",
    "OutputConfig",
    "RunConfig",
    "SceneConfig",
    "SolverConfig",
    "StarCurveConfig",
    "SymbolicConfig",
    "VelocityConfig",
)

type Command = Literal["solve", "derive", "taylor", "verify", "symbolic"]
type OutputFormat = Literal["json", "csv"]
type SymbolicBoundary = Literal["dirichlet", "neumann", "impedance", "transmission"]

VERIFY_SUITES = (
    "specfun",
    "solvers",
    "jets",
    "geometry",
    "derivatives",
    "oracle",
    "remainder",
    "symbolic",
    "determinism",
)


def _default_threads() -> int:
    return min(4, os.cpu_count() or 1)


class AppSettings(Struct):
    """Process-wide settings read from the environment."""

    threads: int = field(default_factory=_default_threads)
    log_level: str = field(default="INFO")

    @classmethod
    def from_env(cls) -> Self:
        """Settings read from ``SHAPETAYL_*`` environment variables."""
        threads = os.getenv("SHAPETAYL_THREADS")
        level = os.getenv("SHAPETAYL_LOG_LEVEL")
        try:
            count = _default_threads() if threads is None else int(threads)
        except ValueError as exc:
            msg = f"SHAPETAYL_THREADS must be an integer, got {threads!r}"
            raise ConfigError(msg, detail="SHAPETAYL_THREADS: not an integer") from exc
        return cls(threads=max(1, count), log_level=(level or "INFO").upper())


class StarCurveConfig(Struct):
    """Star-shaped curve ``r(theta) = a0 + sum cos[m] cos(m theta) + sin[m] sin(m theta)``."""

    a0: float = field(default=1.0)
    cos: tuple[float, ...] = field(default=())
    sin: tuple[float, ...] = field(default=())

    def to_curve(self) -> StarCurve:
        return StarCurve(a0=self.a0, cos=self.cos, sin=self.sin)


class FourierCurveConfig(Struct):
    """Parametrised curve ``(x(theta), y(theta))``.

    Each sequence lists ``[c0, c1, s1, c2, s2, ...]`` for
    ``c0 + sum_m c_m cos(m theta) + s_m sin(m theta)``.
    """

    x: tuple[float, ...] = field(default=(0.0, 1.0, 0.0))
    y: tuple[float, ...] = field(default=(0.0, 0.0, 1.0))

    def to_curve(self) -> ClosedCurve:
        x_cos, x_sin = _split_series(self.x)
        y_cos, y_sin = _split_series(self.y)
        return ClosedCurve.from_fourier(x_cos, x_sin, y_cos, y_sin)


def _split_series(values: tuple[float, ...]) -> tuple[tuple[float, ...], tuple[float, ...]]:
    if not values:
        return (), ()
    return (values[0], *values[1::2]), (0.0, *values[2::2])


class CurveConfig(Struct):
    """Obstacle boundary: exactly one of ``star`` and ``fourier``."""

    star: StarCurveConfig | None = field(default=None)
    fourier: FourierCurveConfig | None = field(default=None)

    def to_curve(self) -> StarCurve | ClosedCurve:
        """Curve handed to the scene; star curves keep their closed form."""
        if self.star is not None:
            return self.star.to_curve()
        if self.fourier is not None:
            return self.fourier.to_curve()
        msg = "scene.curve needs a star or a fourier table"
        raise ConfigError(msg, detail="scene.curve: no curve given")

    @property
    def is_circle(self) -> bool:
        return self.star is not None and self.fourier is None and self.star.to_curve().is_circle


def _default_curve() -> CurveConfig:
    return CurveConfig(star=StarCurveConfig())


class IncidentConfig(Struct):
    kind: Literal["plane_wave", "point_source"] = field(default="plane_wave")
    direction: tuple[float, float] = field(default=(1.0, 0.0))
    location: tuple[float, float] = field(default=(0.0, 0.0))

    def to_field(self, wavenumber: float) -> IncidentField:
        if self.kind == "plane_wave":
            return IncidentField.plane_wave(self.direction, wavenumber)
        return IncidentField.point_source(self.location, wavenumber)


class SceneConfig(Struct):
    """Scatterer, boundary condition, wavenumber and incident field."""

    curve: CurveConfig = field(default_factory=_default_curve)
    bc: BoundaryKind = field(default=BoundaryKind.SOFT)
    k: float = field(default=1.0)
    medium: Medium = field(default_factory=Medium)
    incident: IncidentConfig = field(default_factory=IncidentConfig)


class VelocityConfig(Struct):
    """Fourier coefficients of a normal speed field."""

    cos: tuple[float, ...] = field(default=(1.0,))
    sin: tuple[float, ...] = field(default=())

    def to_field(self) -> NormalSpeedField:
        return NormalSpeedField(cos=self.cos, sin=self.sin)


class SolverConfig(Struct):
    """Discretisation and backend choice."""

    n_nodes: int = field(default=256)
    n_modes: int | None = field(default=None)
    backend: Literal["auto", "series", "nystrom"] = field(default="auto")
    mixed_normal: Literal["closed_form", "finite_difference"] = field(default="closed_form")


class OutputConfig(Struct):
    """Artefact directory and file formats."""

    directory: str = field(default="results")
    formats: tuple[OutputFormat, ...] = field(default=("json",))


class SymbolicConfig(Struct):
    bc: SymbolicBoundary = field(default="dirichlet")
    order: int = field(default=2)
    dim: Literal[2, 3] = field(default=2)
    degree: Literal[0, 1] = field(default=0)
    general_velocity: bool = field(default=False)


def _default_ts() -> tuple[float, ...]:
    return tuple(0.1 / 2**i for i in range(6))


class RunConfig(Struct):
    """One study: a scene, velocity fields and what to compute for them."""

    command: Command = field(default="taylor")
    scene: SceneConfig = field(default_factory=SceneConfig)
    velocities: tuple[VelocityConfig, ...] = field(default_factory=lambda: (VelocityConfig(),))
    order: int = field(default=1)
    t_values: tuple[float, ...] = field(default_factory=_default_ts)
    points: tuple[tuple[float, float], ...] = field(
        default_factory=lambda: ((3.0, 0.0), (0.0, 3.0), (-3.0, 0.0), (0.0, -3.0))
    )
    solver: SolverConfig = field(default_factory=SolverConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    symbolic: SymbolicConfig = field(default_factory=SymbolicConfig)
    suite: str = field(default="all")
    seed: int = field(default=20240611)

    @classmethod
    def from_toml(cls, filename: str | pathlib.Path) -> Self:
        """Load a run configuration from a TOML file."""
        config_file = pathlib.Path(filename).resolve()
        if not config_file.exists():
            msg = f"Config file not found at {str(config_file)!r}"
            raise ConfigError(msg)

        with config_file.open("rb") as f:
            try:
                config = toml.decode(f.read(), type=cls)
            except msgspec.ValidationError as exc:
                msg = f"Invalid config file {str(config_file)!r}: {exc}"
                raise ConfigError(msg, detail=str(exc)) from exc
        return config.validate()

    def validate(self) -> Self:
        """Check ranges and compatibility; every violation raises ``ConfigError``."""
        scene = self.scene
        _finite("scene.k", scene.k, positive=True)
        self._validate_curve()
        _finite("scene.medium.alpha", scene.medium.alpha, positive=True)
        _finite("scene.medium.alpha_inner", scene.medium.alpha_inner, positive=True)
        _finite("scene.medium.impedance", scene.medium.impedance)
        _finite_all("scene.incident.direction", scene.incident.direction)
        _finite_all("scene.incident.location", scene.incident.location)

        is_circle = scene.curve.is_circle
        if scene.bc is BoundaryKind.TRANSMISSION and not is_circle:
            raise _invalid("scene.bc", "transmission requires a circle")
        if scene.bc is BoundaryKind.TRANSMISSION and scene.incident.kind != "plane_wave":
            raise _invalid("scene.incident", "transmission requires plane-wave incidence")
        if self.solver.backend == "series" and not is_circle:
            raise _invalid("solver.backend", "the series backend requires a circle")

        if not self.velocities:
            raise _invalid("velocities", "at least one velocity field is required")
        for i, velocity in enumerate(self.velocities):
            _finite_all(f"velocities[{i}].cos", velocity.cos)
            _finite_all(f"velocities[{i}].sin", velocity.sin)
        if self.command != "symbolic" and not 1 <= self.order <= 2:
            raise _invalid("order", f"must be 1 or 2, got {self.order}")
        if not 1 <= self.symbolic.order <= 6:
            raise _invalid("symbolic.order", f"must lie in [1, 6], got {self.symbolic.order}")

        if self.suite != "all" and self.suite not in VERIFY_SUITES:
            raise _invalid("suite", f"must be 'all' or one of {', '.join(VERIFY_SUITES)}")

        if not self.t_values:
            raise _invalid("t_values", "at least one value is required")
        _finite_all("t_values", self.t_values)
        if any(t <= 0.0 or t >= 1.0 for t in self.t_values):
            raise _invalid("t_values", "values must lie in (0, 1)")
        for i, point in enumerate(self.points):
            _finite_all(f"points[{i}]", point)

        if self.solver.n_nodes < 16 or self.solver.n_nodes % 2:
            raise _invalid("solver.n_nodes", f"must be even and at least 16, got {self.solver.n_nodes}")
        if self.solver.n_modes is not None and self.solver.n_modes < 1:
            raise _invalid("solver.n_modes", f"must be positive, got {self.solver.n_modes}")
        return self

    def _validate_curve(self) -> None:
        star, fourier = self.scene.curve.star, self.scene.curve.fourier
        if star is not None and fourier is None:
            _finite("scene.curve.star.a0", star.a0, positive=True)
            _finite_all("scene.curve.star.cos", star.cos)
            _finite_all("scene.curve.star.sin", star.sin)
            try:
                star.to_curve().to_curve()
            except DomainError as exc:
                raise _invalid("scene.curve", "radius must stay positive") from exc
        elif fourier is not None and star is None:
            _finite_all("scene.curve.fourier.x", fourier.x)
            _finite_all("scene.curve.fourier.y", fourier.y)
            try:
                grid = build_grid(fourier.to_curve(), 64)
            except DomainError as exc:
                raise _invalid("scene.curve", f"not a usable curve: {exc}") from exc
            if grid.signed_area <= 0.0:
                raise _invalid("scene.curve", "the fourier curve must run counterclockwise")
        else:
            raise _invalid("scene.curve", "give exactly one of star and fourier")

    def velocity_fields(self) -> tuple[NormalSpeedField, ...]:
        """Velocity fields in the order they are numbered."""
        return tuple(velocity.to_field() for velocity in self.velocities)

    def incident_field(self) -> IncidentField:
        """Incident field of the scene."""
        return self.scene.incident.to_field(self.scene.medium.exterior_wavenumber(self.scene.k))


def _invalid(name: str, reason: str) -> ConfigError:
    return ConfigError(f"Invalid config value for {name}: {reason}", detail=f"{name}: {reason}")


def _finite(name: str, value: float, *, positive: bool = False) -> None:
    if not math.isfinite(value):
        raise _invalid(name, "must be finite")
    if positive and value <= 0.0:
        raise _invalid(name, "must be positive")


def _finite_all(name: str, values: tuple[float, ...]) -> None:
    if not all(math.isfinite(value) for value in values):
        raise _invalid(name, "must be finite")


APP_CONFIG: Final = AppSettings.from_env()
"""Process-wide settings."""
