"""Rewriting rules: normal form, Cartan's formula and shape variations."""

from __future__ import annotations

from collections import defaultdict
from typing import TYPE_CHECKING

from .exceptions import DegreeError
from .forms import (
    ZERO,
    Coefficient,
    Contract,
    ExtD,
    FormAtom,
    Hodge,
    HodgeBoundary,
    Jump,
    NormalVector,
    Sum,
    System,
    Term,
    TraceD,
    TraceN,
    Wedge,
    add,
    atom,
    contract,
    ext_d,
    hodge,
    hodge_boundary,
    is_zero,
    jump,
    normal,
    render_form,
    scale,
    wedge,
)

if TYPE_CHECKING:
    from collections.abc import Callable

    from .forms import FormExpr, Vector

__all__ = (
    "cartan",
    "delta_normal",
    "delta_omega",
    "drop_normal_variations",
    "simplify",
)

_ONE = Coefficient()
type _Monomials = list[tuple[Coefficient, FormExpr]]


def _scaled(coefficient: Coefficient, monomials: _Monomials) -> _Monomials:
    return [(coefficient * c, m) for c, m in monomials]


def _d_monomial(mono: FormExpr) -> _Monomials:
    if isinstance(mono, ExtD) or mono.degree == mono.dim:
        return []
    if isinstance(mono, Wedge):
        sign = (-1) ** (mono.left.degree or 0)
        return _expand(
            add(
                wedge(ext_d(mono.left), mono.right),
                scale(wedge(mono.left, ext_d(mono.right)), sign),
            )
        )
    return [(_ONE, ExtD(mono))]


def _i_monomial(vector: Vector, mono: FormExpr) -> _Monomials:
    if mono.degree == 0:
        return []
    if isinstance(mono, Contract) and mono.vector == vector:
        return []
    if isinstance(mono, Wedge):
        sign = (-1) ** (mono.left.degree or 0)
        return _expand(
            add(
                wedge(contract(vector, mono.left), mono.right),
                scale(wedge(mono.left, contract(vector, mono.right)), sign),
            )
        )
    return [(_ONE, Contract(vector, mono))]


def _expand(expr: FormExpr) -> _Monomials:  # noqa: PLR0911
    """Distribute every operator over sums, down to single monomials."""
    match expr:
        case FormAtom():
            return [(_ONE, expr)]
        case Sum(terms=terms):
            return [
                pair for t in terms for pair in _scaled(t.coefficient, _expand(t.expr))
            ]
        case ExtD(child=child):
            return [
                pair for c, m in _expand(child) for pair in _scaled(c, _d_monomial(m))
            ]
        case Contract(vector=vector, child=child):
            return [
                pair
                for c, m in _expand(child)
                for pair in _scaled(c, _i_monomial(vector, m))
            ]
        case Hodge(metric=metric, child=child):
            return [(c, Hodge(metric, m)) for c, m in _expand(child)]
        case HodgeBoundary(metric=metric, child=child):
            return [(c, HodgeBoundary(metric, m)) for c, m in _expand(child)]
        case Wedge(left=left, right=right):
            return [
                (cl * cr, Wedge(ml, mr))
                for cl, ml in _expand(left)
                for cr, mr in _expand(right)
                if (ml.degree or 0) + (mr.degree or 0) <= ml.dim
            ]
        case TraceD(child=child):
            return _expand(contract(normal(), hodge(child)))
        case TraceN(child=child):
            return _expand(hodge_boundary(contract(normal(), ext_d(child)), "alpha"))
        case Jump(child=child):
            inner = simplify(child)
            return [] if is_zero(inner) else [(_ONE, Jump(inner))]
        case System():
            raise DegreeError("+", None, expr.dim)


def simplify(expr: FormExpr) -> FormExpr:
    """Bring ``expr`` to its normal form.

    Operators are distributed over sums and wedges, ``d d`` and ``i_v i_v``
    vanish, like terms are collected and the surviving terms are ordered by their
    rendered text. The result is a :class:`~shapetaylor.symbolic.forms.Sum`, or a
    :class:`~shapetaylor.symbolic.forms.System` of sums when ``expr`` is one.
    """
    if isinstance(expr, System):
        return System(tuple(simplify(part) for part in expr.parts))
    collected: defaultdict[tuple[FormExpr, int], int] = defaultdict(int)
    for coefficient, mono in _expand(expr):
        collected[mono, coefficient.ilam] += coefficient.value
    terms = sorted(
        (
            (render_form(mono), ilam, value, mono)
            for (mono, ilam), value in collected.items()
            if value
        ),
        key=lambda item: item[:3],
    )
    return Sum(
        tuple(Term(Coefficient(value, ilam), mono) for _, ilam, value, mono in terms)
    )


def cartan(vector: Vector, expr: FormExpr) -> FormExpr:
    """Lie derivative ``i_v d + d i_v`` of ``expr`` in normal form."""
    return simplify(add(contract(vector, ext_d(expr)), ext_d(contract(vector, expr))))


def _unfold_traces(expr: FormExpr) -> FormExpr:
    if isinstance(expr, TraceD):
        return contract(normal(), hodge(expr.child))
    if isinstance(expr, TraceN):
        return hodge_boundary(contract(normal(), ext_d(expr.child)), "alpha")
    return expr


def _derive(  # noqa: PLR0911
    expr: FormExpr,
    on_atom: Callable[[FormAtom], FormExpr],
    on_vector: Callable[[Vector], Vector | None],
) -> FormExpr:
    """Apply a derivation obeying the product rule on wedges and contractions."""

    def again(child: FormExpr) -> FormExpr:
        return _derive(child, on_atom, on_vector)

    match _unfold_traces(expr):
        case FormAtom() as leaf:
            return on_atom(leaf)
        case ExtD(child=child):
            return ext_d(again(child))
        case Hodge(metric=metric, child=child):
            return hodge(again(child), metric)
        case HodgeBoundary(metric=metric, child=child):
            return hodge_boundary(again(child), metric)
        case Contract(vector=vector, child=child):
            varied = on_vector(vector)
            moved = ZERO if varied is None else contract(varied, child)
            return add(moved, contract(vector, again(child)))
        case Wedge(left=left, right=right):
            return add(wedge(again(left), right), wedge(left, again(right)))
        case Jump(child=child):
            return jump(again(child))
        case Sum(terms=terms):
            return add(
                *(
                    scale(again(t.expr), t.coefficient.value, t.coefficient.ilam)
                    for t in terms
                )
            )
        case System(parts=parts):
            return System(tuple(again(part) for part in parts))
        case _:
            raise DegreeError(type(expr).__name__, expr.degree, expr.dim)


def delta_omega(expr: FormExpr, index: int) -> FormExpr:
    """Shape derivative of the field atoms along velocity ``index``.

    Scattered-field atoms gain ``index`` in their derivative multi-index; the
    incident field does not depend on the shape and drops out.
    """

    def on_atom(leaf: FormAtom) -> FormExpr:
        if leaf.name == "phi":
            return ZERO
        return atom(leaf.name, leaf.degree, leaf.dim, (*leaf.deltas, index))

    return simplify(_derive(expr, on_atom, lambda _: None))


def delta_normal(expr: FormExpr, index: int) -> FormExpr:
    """Shape derivative of every normal vector in ``expr`` along velocity ``index``."""

    def on_vector(vector: Vector) -> Vector | None:
        if isinstance(vector, NormalVector):
            return normal(*vector.deltas, index)
        return None

    return simplify(_derive(expr, lambda _: ZERO, on_vector))


def _drop(expr: FormExpr) -> FormExpr:  # noqa: PLR0911
    match _unfold_traces(expr):
        case FormAtom() as leaf:
            return leaf
        case Contract(vector=NormalVector(deltas=deltas)) if deltas:
            return ZERO
        case Contract(vector=vector, child=child):
            return contract(vector, _drop(child))
        case ExtD(child=child):
            return ext_d(_drop(child))
        case Hodge(metric=metric, child=child):
            return hodge(_drop(child), metric)
        case HodgeBoundary(metric=metric, child=child):
            return hodge_boundary(_drop(child), metric)
        case Wedge(left=left, right=right):
            return wedge(_drop(left), _drop(right))
        case Jump(child=child):
            return jump(_drop(child))
        case Sum(terms=terms):
            return add(
                *(
                    scale(_drop(t.expr), t.coefficient.value, t.coefficient.ilam)
                    for t in terms
                )
            )
        case System(parts=parts):
            return System(tuple(_drop(part) for part in parts))
        case _:
            raise DegreeError(type(expr).__name__, expr.degree, expr.dim)


def drop_normal_variations(expr: FormExpr) -> FormExpr:
    """Set every contraction with a differentiated normal to zero.

    This specialises a general-velocity expression to velocities of constant
    normal speed.
    """
    return simplify(_drop(expr))
