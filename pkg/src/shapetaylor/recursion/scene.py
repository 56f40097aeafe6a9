from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Literal

from shapetaylor.geometry import ClosedCurve, StarCurve, build_grid, offset_curve
from shapetaylor.lib.exceptions import DomainError, UnsupportedError
from shapetaylor.solvers import BoundaryKind, Medium, nystrom_scatter, series_solve

if TYPE_CHECKING:
    from shapetaylor.geometry import BoundaryGrid, NormalSpeedField
    from shapetaylor.solvers import IncidentField, ScatterSolution

__all__ = ("Backend", "Scene", "moved_scene", "solve_scene")

LOGGER = logging.getLogger(__name__)

type Backend = Literal["auto", "series", "nystrom"]


class Scene:
    """Obstacle, boundary condition, medium and incident field of one scattering problem."""

    __slots__ = ("backend", "bc", "curve", "incident", "k", "medium", "n_modes", "n_nodes")

    def __init__(
        self,
        *,
        curve: StarCurve | ClosedCurve,
        bc: BoundaryKind,
        k: float,
        incident: IncidentField,
        medium: Medium | None = None,
        n_nodes: int = 256,
        n_modes: int | None = None,
        backend: Backend = "auto",
    ) -> None:
        self.curve = curve
        self.bc = BoundaryKind(bc)
        self.k = k
        self.incident = incident
        self.medium = medium or Medium()
        self.n_nodes = n_nodes
        self.n_modes = n_modes
        self.backend = backend

    @property
    def radius(self) -> float | None:
        """Radius when the curve is a centred circle, ``None`` otherwise."""
        if isinstance(self.curve, StarCurve) and self.curve.is_circle:
            return self.curve.a0 + (self.curve.cos[0] if self.curve.cos else 0.0)
        return None

    def resolved_backend(self) -> Literal["series", "nystrom"]:
        """Backend used for this scene once ``"auto"`` is resolved."""
        series_ok = self.radius is not None and self.incident.kind == "plane_wave"
        if self.backend == "series":
            if not series_ok:
                msg = "The series backend needs a circle and plane-wave incidence"
                raise UnsupportedError(msg)
            return "series"
        if self.backend == "nystrom":
            return "nystrom"
        if self.backend != "auto":
            msg = f"Unknown backend {self.backend!r}"
            raise DomainError(msg, field="backend")
        return "series" if series_ok else "nystrom"

    def with_curve(self, curve: StarCurve | ClosedCurve, backend: Backend | None = None) -> Scene:
        """Same problem on another obstacle."""
        return Scene(
            curve=curve,
            bc=self.bc,
            k=self.k,
            incident=self.incident,
            medium=self.medium,
            n_nodes=self.n_nodes,
            n_modes=self.n_modes,
            backend=backend or self.backend,
        )

    def __repr__(self) -> str:
        return f"Scene(bc={self.bc}, k={self.k}, backend={self.backend}, n_nodes={self.n_nodes})"


def solve_scene(scene: Scene) -> ScatterSolution:
    """Scattered field of ``scene`` with the backend it resolves to."""
    backend = scene.resolved_backend()
    LOGGER.debug("Solving %r with the %s backend", scene, backend)
    radius = scene.radius
    if backend == "series" and radius is not None:
        return series_solve(
            radius,
            scene.bc,
            scene.k,
            scene.incident,
            medium=scene.medium,
            n_modes=scene.n_modes,
            n_nodes=scene.n_nodes,
        )
    curve = scene.curve.to_curve() if isinstance(scene.curve, StarCurve) else scene.curve
    grid = build_grid(curve, scene.n_nodes)
    return nystrom_scatter(grid, scene.bc, scene.k, scene.incident, scene.medium)


def _is_constant(v: NormalSpeedField) -> bool:
    return not any(v.cos[1:]) and not any(v.sin[1:])


def moved_scene(
    scene: Scene, v: NormalSpeedField, t: float, *, grid: BoundaryGrid | None = None
) -> Scene:
    """``scene`` with its curve moved to ``x + t v n``.

    A circle moved by a constant speed stays a circle and keeps the series backend;
    every other motion is sampled on ``grid`` (built from the scene when omitted)
    and solved with the Nystrom backend.

    Raises
    ------
    UnsupportedError
        For transmission problems with a non-constant speed.
    """
    radius = scene.radius
    if radius is not None and scene.resolved_backend() == "series" and _is_constant(v):
        speed = v.cos[0] if v.cos else 0.0
        return scene.with_curve(StarCurve(a0=radius + t * speed))
    if scene.bc is BoundaryKind.TRANSMISSION:
        msg = "Direct transmission solves are available on circles only"
        raise UnsupportedError(msg)
    if grid is None:
        curve = scene.curve.to_curve() if isinstance(scene.curve, StarCurve) else scene.curve
        grid = build_grid(curve, scene.n_nodes)
    return scene.with_curve(offset_curve(grid, v, t), backend="nystrom")
