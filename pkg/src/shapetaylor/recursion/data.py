"""Boundary data of the first- and second-order shape-derivative problems.

Every shape derivative solves the base exterior problem with new boundary data,
obtained by differentiating the boundary condition on the perturbed curve
``x + H(x) n(x)``. Fields and normals are extended off the curve as constants
along straight normal lines, so all terms reduce to boundary jets of the base
field, the first-order derivative fields and the velocities.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Literal

import msgspec
import numpy as np

from shapetaylor.geometry import as_complex, normal_shape_derivative
from shapetaylor.recursion.exceptions import AssemblyError, IncompleteJetError
from shapetaylor.solvers import BoundaryKind, Medium

if TYPE_CHECKING:
    import numpy.typing as npt

    from shapetaylor.boundary_calculus import BoundaryJet, BoundaryScalar
    from shapetaylor.geometry import BoundaryGrid, NormalSpeedField
    from shapetaylor.solvers import BoundaryData

__all__ = (
    "CONVENTION",
    "DerivativeProblemData",
    "MixedNormalSource",
    "Provenance",
    "first_order_data",
    "mixed_normal_closed_form",
    "second_order_data",
)

LOGGER = logging.getLogger(__name__)

CONVENTION = "differentiated boundary condition, nearest-point normal extension"
SYMMETRY_TOLERANCE = 1e-9

type MixedNormalSource = Literal["none", "closed_form", "finite_difference"]

_FIRST_ORDER_FORMULAS = {
    BoundaryKind.SOFT: "-ut_n*v1",
    BoundaryKind.HARD: "-alpha*kappa*ut_n*v1 - alpha*ut_nn*v1 + alpha*ut_s*v1_s",
    BoundaryKind.IMPEDANCE: "-alpha*ut_nn*v1 + alpha*ut_s*v1_s - i*lambda*ut_n*v1",
    BoundaryKind.TRANSMISSION: "[-ut_n*v1], [-alpha*kappa*ut_n*v1 - alpha*ut_nn*v1 + alpha*ut_s*v1_s]",
}


class Provenance(msgspec.Struct, frozen=True, kw_only=True):
    """Which jet terms built a datum, and under which convention.

    ``formula`` is written for the conormal datum ``alpha d_n``; hard data divide
    it by ``alpha``.
    """

    formula: str
    terms: tuple[str, ...]
    convention: str = CONVENTION
    mixed_normal: MixedNormalSource = "none"


class DerivativeProblemData:
    """Boundary data of one shape-derivative problem."""

    __slots__ = ("bc", "order", "provenance", "rhs")

    def __init__(
        self, *, order: int, bc: BoundaryKind, rhs: BoundaryData, provenance: Provenance
    ) -> None:
        self.order = order
        self.bc = bc
        self.rhs = rhs
        self.provenance = provenance

    def parts(self) -> tuple[BoundaryScalar, ...]:
        return self.rhs if isinstance(self.rhs, tuple) else (self.rhs,)

    def max_abs(self) -> float:
        return max(part.max_abs() for part in self.parts())

    def __repr__(self) -> str:
        return f"DerivativeProblemData(order={self.order}, bc={self.bc}, max_abs={self.max_abs():.3e})"


def _require(jet: BoundaryJet, *entries: str) -> None:
    for entry in entries:
        value = getattr(jet, entry, None)
        if value is None or not np.all(np.isfinite(value.values)):
            raise IncompleteJetError(entry)


def _speed(v: NormalSpeedField, grid: BoundaryGrid) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    return v.evaluate(grid.theta), v.evaluate(grid.theta, 1) / grid.speed


def _gradient_along(jet: BoundaryJet, vector: npt.NDArray[np.complex128]) -> BoundaryScalar:
    # grad u . w for a real boundary vector field w stored as complex numbers
    grid = jet.grid
    tangential = np.real(np.conj(grid.tangent) * vector)
    normal = np.real(np.conj(grid.normal) * vector)
    return tangential * jet.u_s + normal * jet.u_n


def _conormal_first(jet: BoundaryJet, w: npt.NDArray[np.float64], delta_n: npt.NDArray[np.complex128]) -> BoundaryScalar:
    # -v u_nn - kappa v u_n - grad u . delta_v n
    kappa = jet.grid.curvature
    return -w * jet.u_nn - kappa * w * jet.u_n - _gradient_along(jet, delta_n)


def first_order_data(
    bc: BoundaryKind,
    total_jet: BoundaryJet,
    v: NormalSpeedField,
    grid: BoundaryGrid,
    *,
    medium: Medium | None = None,
    interior_jet: BoundaryJet | None = None,
) -> DerivativeProblemData:
    """Data of the problem solved by the first-order shape derivative along ``v``.

    Parameters
    ----------
    bc : BoundaryKind
        Boundary condition of the base problem.
    total_jet : BoundaryJet
        Exterior jet of the total field (scattered plus incident).
    v : NormalSpeedField
        Normal speed of the perturbation.
    grid : BoundaryGrid
        Grid the jets live on.
    medium : Medium, optional
        Medium coefficients.
    interior_jet : BoundaryJet, optional
        Interior jet, required for transmission.
    """
    medium = medium or Medium()
    _require(total_jet, "u", "u_s", "u_n", "u_nn")
    w, _ = _speed(v, grid)
    delta_n = as_complex(normal_shape_derivative(grid, v))

    match bc:
        case BoundaryKind.SOFT:
            rhs: BoundaryData = -w * total_jet.u_n
            terms = ("v*u_n",)
        case BoundaryKind.HARD:
            rhs = _conormal_first(total_jet, w, delta_n)
            terms = ("v*u_nn", "kappa*v*u_n", "grad(u).delta_v(n)")
        case BoundaryKind.IMPEDANCE:
            rhs = medium.alpha * (-w * total_jet.u_nn - _gradient_along(total_jet, delta_n)) - (
                1j * medium.impedance * w * total_jet.u_n
            )
            terms = ("v*u_nn", "grad(u).delta_v(n)", "lambda*v*u_n")
        case BoundaryKind.TRANSMISSION:
            if interior_jet is None:
                raise IncompleteJetError("interior")
            _require(interior_jet, "u", "u_s", "u_n", "u_nn")
            rhs = (
                -w * (total_jet.u_n - interior_jet.u_n),
                medium.alpha * _conormal_first(total_jet, w, delta_n)
                - medium.alpha_inner * _conormal_first(interior_jet, w, delta_n),
            )
            terms = ("[v*u_n]", "[alpha*v*u_nn]", "[alpha*kappa*v*u_n]", "[alpha*grad(u).delta_v(n)]")

    provenance = Provenance(formula=_FIRST_ORDER_FORMULAS[bc], terms=terms)
    data = DerivativeProblemData(order=1, bc=bc, rhs=rhs, provenance=provenance)
    LOGGER.debug("First-order %s data: max |rhs| = %.3e", bc, data.max_abs())
    return data


def mixed_normal_closed_form(
    grid: BoundaryGrid, v1: NormalSpeedField, v2: NormalSpeedField
) -> npt.NDArray[np.complex128]:
    """Mixed normal derivative ``-v1_s v2_s n + kappa (v1 v2_s + v2 v1_s) tau``."""
    w1, w1_s = _speed(v1, grid)
    w2, w2_s = _speed(v2, grid)
    return -w1_s * w2_s * grid.normal + grid.curvature * (w1 * w2_s + w2 * w1_s) * grid.tangent


def _conormal_second(
    jet: BoundaryJet,
    first: tuple[BoundaryJet, BoundaryJet],
    speeds: tuple[npt.NDArray[np.float64], ...],
    mixed_normal: npt.NDArray[np.complex128],
) -> BoundaryScalar:
    w1, w1_s, w2, w2_s = speeds
    d1, d2 = first
    kappa = jet.grid.curvature
    cross = w1 * w2_s + w2 * w1_s
    return (
        _gradient_along(jet, mixed_normal)
        + w1 * w2 * jet.u_nnn
        + (w1 * d2.u_nn + w2 * d1.u_nn)
        - cross * (jet.u_ns - kappa * jet.u_s)
        - (w1_s * d2.u_s + w2_s * d1.u_s)
    )


def _trace_second(
    jet: BoundaryJet,
    first: tuple[BoundaryJet, BoundaryJet],
    speeds: tuple[npt.NDArray[np.float64], ...],
) -> BoundaryScalar:
    w1, _, w2, _ = speeds
    d1, d2 = first
    return w1 * d2.u_n + w2 * d1.u_n + w1 * w2 * jet.u_nn


def _assemble_second(
    bc: BoundaryKind,
    medium: Medium,
    total_jet: BoundaryJet,
    first_jets: tuple[BoundaryJet, BoundaryJet],
    speeds: tuple[npt.NDArray[np.float64], ...],
    mixed_normal: npt.NDArray[np.complex128],
    interior: tuple[BoundaryJet, tuple[BoundaryJet, BoundaryJet]] | None,
) -> BoundaryData:
    match bc:
        case BoundaryKind.SOFT:
            return -_trace_second(total_jet, first_jets, speeds)
        case BoundaryKind.HARD:
            return -_conormal_second(total_jet, first_jets, speeds, mixed_normal)
        case BoundaryKind.IMPEDANCE:
            return -medium.alpha * _conormal_second(
                total_jet, first_jets, speeds, mixed_normal
            ) - 1j * medium.impedance * _trace_second(total_jet, first_jets, speeds)
        case BoundaryKind.TRANSMISSION:
            if interior is None:
                raise IncompleteJetError("interior")
            inner, inner_first = interior
            return (
                -(
                    _trace_second(total_jet, first_jets, speeds)
                    - _trace_second(inner, inner_first, speeds)
                ),
                -(
                    medium.alpha * _conormal_second(total_jet, first_jets, speeds, mixed_normal)
                    - medium.alpha_inner * _conormal_second(inner, inner_first, speeds, mixed_normal)
                ),
            )


def second_order_data(
    bc: BoundaryKind,
    total_jet: BoundaryJet,
    first_jets: tuple[BoundaryJet, BoundaryJet],
    v1: NormalSpeedField,
    v2: NormalSpeedField,
    grid: BoundaryGrid,
    *,
    medium: Medium | None = None,
    interior_jet: BoundaryJet | None = None,
    interior_first_jets: tuple[BoundaryJet, BoundaryJet] | None = None,
    mixed_normal: npt.ArrayLike | None = None,
) -> DerivativeProblemData:
    """Data of the problem solved by the mixed second-order shape derivative.

    ``first_jets`` are the exterior jets of the first-order derivative fields along
    ``v1`` and ``v2``. ``mixed_normal`` is the ``(n, 2)`` mixed derivative of the
    normal, e.g. from :func:`normal_shape_derivative` with ``order=2``; the closed
    form is used when it is omitted.

    Raises
    ------
    AssemblyError
        If swapping ``v1`` and ``v2`` changes the data by more than ``1e-9``.
    """
    medium = medium or Medium()
    _require(total_jet, "u_s", "u_n", "u_ns", "u_nn", "u_nnn")
    for jet in first_jets:
        _require(jet, "u_s", "u_n", "u_nn")

    interior = None
    if bc is BoundaryKind.TRANSMISSION:
        if interior_jet is None or interior_first_jets is None:
            raise IncompleteJetError("interior")
        interior = (interior_jet, interior_first_jets)

    if mixed_normal is None:
        normal_source: MixedNormalSource = "closed_form"
        mixed = mixed_normal_closed_form(grid, v1, v2)
    else:
        normal_source = "finite_difference"
        mixed = as_complex(mixed_normal)

    w1, w1_s = _speed(v1, grid)
    w2, w2_s = _speed(v2, grid)
    rhs = _assemble_second(
        bc, medium, total_jet, first_jets, (w1, w1_s, w2, w2_s), mixed, interior
    )
    swapped_interior = None if interior is None else (interior[0], interior[1][::-1])
    swapped = _assemble_second(
        bc, medium, total_jet, first_jets[::-1], (w2, w2_s, w1, w1_s), mixed, swapped_interior
    )

    data = DerivativeProblemData(
        order=2,
        bc=bc,
        rhs=rhs,
        provenance=Provenance(
            formula=_SECOND_ORDER_FORMULAS[bc],
            terms=_SECOND_ORDER_TERMS,
            mixed_normal=normal_source,
        ),
    )
    parts = data.parts()
    swapped_parts = swapped if isinstance(swapped, tuple) else (swapped,)
    scale = max(1.0, data.max_abs())
    asymmetry = max((a - b).max_abs() for a, b in zip(parts, swapped_parts, strict=True))
    if asymmetry > SYMMETRY_TOLERANCE * scale:
        raise AssemblyError(asymmetry)
    LOGGER.debug("Second-order %s data: max |rhs| = %.3e", bc, data.max_abs())
    return data


_SECOND_ORDER_TERMS = (
    "v1*v2*u_nnn",
    "v1*delta_2(u)_nn + v2*delta_1(u)_nn",
    "(v1*v2_s + v2*v1_s)*(u_ns - kappa*u_s)",
    "v1_s*delta_2(u)_s + v2_s*delta_1(u)_s",
    "grad(u).delta_{1,2}(n)",
    "v1*delta_2(u)_n + v2*delta_1(u)_n + v1*v2*u_nn",
)

_G = (
    "grad(ut).delta_{1,2}(n) + v1*v2*ut_nnn + v1*delta_2(u)_nn + v2*delta_1(u)_nn"
    " - (v1*v2_s + v2*v1_s)*(ut_ns - kappa*ut_s) - v1_s*delta_2(u)_s - v2_s*delta_1(u)_s"
)
_D = "v1*delta_2(u)_n + v2*delta_1(u)_n + v1*v2*ut_nn"
_SECOND_ORDER_FORMULAS = {
    BoundaryKind.SOFT: f"-({_D})",
    BoundaryKind.HARD: f"-alpha*({_G})",
    BoundaryKind.IMPEDANCE: f"-alpha*({_G}) - i*lambda*({_D})",
    BoundaryKind.TRANSMISSION: f"[-({_D})], [-alpha*({_G})]",
}
