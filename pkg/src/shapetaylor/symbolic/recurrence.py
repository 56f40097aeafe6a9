"""Boundary data of the shape-derivative problems, generated order by order.

The scattered field is ``omega`` and the incident field ``phi``; the boundary
condition of the ``N``-th derivative problem follows from the ``(N-1)``-th by
differentiating along one more velocity::

    S_{N+1} = delta^omega_j S_N + i_{v_j} d S_N - i_{v_j} d B(omega_prev)
              [ + delta^n_j S_N - B(omega_prev, delta_j n) ]

where ``B`` is the trace of the boundary condition and the bracketed terms are
present only for velocities without constant normal speed.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Literal

from shapetaylor.lib.exceptions import DomainError

from .exceptions import DegreeError
from .forms import (
    Jump,
    NormalVector,
    Sum,
    System,
    add,
    atom,
    contract,
    ext_d,
    hodge,
    hodge_boundary,
    jump,
    neg,
    normal,
    scale,
    system,
    velocity,
)
from .rules import delta_normal, delta_omega, simplify

if TYPE_CHECKING:
    from collections.abc import Callable

    from .forms import FormExpr

__all__ = (
    "SymbolicBC",
    "dirichlet_trace",
    "generate",
    "impedance_trace",
    "initial_datum",
    "neumann_trace",
    "recurrence_step",
    "robin_part",
)

LOGGER = logging.getLogger(__name__)

type SymbolicBC = Literal["dirichlet", "neumann", "impedance", "transmission"]
type _Trace = Callable[[FormExpr, NormalVector | None], FormExpr]


def dirichlet_trace(expr: FormExpr, vector: NormalVector | None = None) -> FormExpr:
    """``*G i_m * X``: the tangential (Dirichlet) trace taken with normal ``m``."""
    return hodge_boundary(contract(vector or normal(), hodge(expr)))


def neumann_trace(expr: FormExpr, vector: NormalVector | None = None) -> FormExpr:
    """``*G_alpha i_m d X``: the weighted Neumann trace."""
    return hodge_boundary(contract(vector or normal(), ext_d(expr)), "alpha")


def robin_part(expr: FormExpr, vector: NormalVector | None = None) -> FormExpr:
    """``i_m * X``, the lower-order part of the impedance trace."""
    return contract(vector or normal(), hodge(expr))


def impedance_trace(expr: FormExpr, vector: NormalVector | None = None) -> FormExpr:
    """Neumann trace plus ``(-1)^l i lambda`` times the Robin part."""
    sign = (-1) ** (expr.degree or 0)
    return add(neumann_trace(expr, vector), scale(robin_part(expr, vector), sign, 1))


_TRACES: dict[str, _Trace] = {
    "dirichlet": dirichlet_trace,
    "neumann": neumann_trace,
    "impedance": impedance_trace,
}


def _trace_for(bc: str) -> _Trace:
    try:
        return _TRACES[bc]
    except KeyError:
        msg = f"Unknown boundary condition {bc!r}"
        raise DomainError(msg, bc=bc) from None


def _jumped(part: FormExpr) -> FormExpr:
    """Content of a normal-form jump term ``[X]``."""
    if isinstance(part, Sum) and len(part.terms) == 1:
        part = part.terms[0].expr
    if not isinstance(part, Jump):
        raise DegreeError("transmission datum", part.degree, part.dim)
    return part.child


def _check_setting(dim: int, degree: int) -> None:
    if dim not in {2, 3} or not 0 <= degree < dim:
        raise DegreeError("boundary trace", degree, dim)


def initial_datum(bc: SymbolicBC, dim: int, degree: int) -> FormExpr:
    """Boundary datum of the scattering problem itself, written for the incident field."""
    _check_setting(dim, degree)
    incident = atom("phi", degree, dim)
    if bc == "transmission":
        return simplify(
            system(jump(dirichlet_trace(incident)), jump(neumann_trace(incident)))
        )
    return simplify(_trace_for(bc)(incident, None))


def _step(
    trace: _Trace,
    state: FormExpr,
    index: int,
    previous: FormExpr,
    *,
    general_velocity: bool,
) -> FormExpr:
    v = velocity(index)
    parts = [
        delta_omega(state, index),
        contract(v, ext_d(state)),
        neg(contract(v, ext_d(trace(previous, normal())))),
    ]
    if general_velocity:
        parts += [delta_normal(state, index), neg(trace(previous, normal(index)))]
    return simplify(add(*parts))


def recurrence_step(  # noqa: PLR0913
    bc: SymbolicBC,
    state: FormExpr,
    index: int,
    *,
    dim: int,
    degree: int,
    prior: tuple[int, ...] = (),
    general_velocity: bool = False,
) -> FormExpr:
    """Advance the boundary datum by one differentiation.

    Parameters
    ----------
    bc : {"dirichlet", "neumann", "impedance", "transmission"}
        Boundary condition of the scattering problem.
    state : FormExpr
        Datum of the current problem, in normal form.
    index : int
        Label of the new velocity field.
    dim, degree : int
        Ambient dimension and degree of the field forms.
    prior : tuple of int
        Velocity labels already applied; they index the solution whose trace
        enters the new datum.
    general_velocity : bool
        Keep the normal-variation terms needed when the velocity does not have
        constant normal speed.

    Returns
    -------
    FormExpr
        Datum of the next derivative problem, in normal form.
    """
    _check_setting(dim, degree)
    previous = atom("omega", degree, dim, prior)
    if bc != "transmission":
        trace = _trace_for(bc)
        return _step(trace, state, index, previous, general_velocity=general_velocity)
    if not isinstance(state, System) or len(state.parts) != 2:  # noqa: PLR2004
        raise DegreeError("transmission datum", None, dim)
    traces = (dirichlet_trace, neumann_trace)
    parts = [
        jump(
            _step(
                trace,
                _jumped(part),
                index,
                previous,
                general_velocity=general_velocity,
            )
        )
        for trace, part in zip(traces, state.parts, strict=True)
    ]
    return simplify(system(*parts))


def generate(
    bc: SymbolicBC,
    order: int,
    dim: int = 2,
    degree: int = 0,
    *,
    general_velocity: bool = False,
) -> FormExpr:
    """Boundary datum of the ``order``-th shape-derivative problem.

    Velocities are labelled ``1..order``; the result is in normal form.
    """
    if order < 1:
        raise DegreeError(f"order {order}", degree, dim)
    state = initial_datum(bc, dim, degree)
    for index in range(1, order + 1):
        state = recurrence_step(
            bc,
            state,
            index,
            dim=dim,
            degree=degree,
            prior=tuple(range(1, index)),
            general_velocity=general_velocity,
        )
    LOGGER.debug("generated %s datum of order %d (d=%d, l=%d)", bc, order, dim, degree)
    return state
