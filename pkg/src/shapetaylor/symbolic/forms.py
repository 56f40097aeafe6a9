"""Expression trees for differential forms.

Every node is a frozen, tagged :class:`msgspec.Struct`, so trees compare and hash
structurally and serialise to JSON with ``msgspec.json.encode``. Degrees are
checked when a node is built; the lowercase constructors (``ext_d``,
``contract``, ``wedge``, ...) also fold the identities that produce zero, while
the raw node classes raise :class:`~shapetaylor.symbolic.exceptions.DegreeError`.
"""

from __future__ import annotations

from typing import Literal

import msgspec

from .exceptions import DegreeError

__all__ = (
    "ZERO",
    "Coefficient",
    "Contract",
    "ExtD",
    "FormAtom",
    "FormExpr",
    "Hodge",
    "HodgeBoundary",
    "Jump",
    "Metric",
    "NormalVector",
    "Sum",
    "System",
    "Term",
    "TraceD",
    "TraceN",
    "Vector",
    "VelocityVector",
    "Wedge",
    "add",
    "atom",
    "contract",
    "ext_d",
    "hodge",
    "hodge_boundary",
    "is_zero",
    "join_terms",
    "jump",
    "neg",
    "normal",
    "render_form",
    "scale",
    "system",
    "trace_d",
    "trace_n",
    "velocity",
    "wedge",
)

type Metric = Literal["1", "alpha", "alpha^-1", "k^2"]
type AtomName = Literal["omega", "phi"]


class Coefficient(msgspec.Struct, frozen=True):
    """Integer multiple of a power of ``i*lambda``."""

    value: int = 1
    ilam: int = 0

    def __mul__(self, other: Coefficient) -> Coefficient:
        return Coefficient(self.value * other.value, self.ilam + other.ilam)

    def __neg__(self) -> Coefficient:
        return Coefficient(-self.value, self.ilam)

    def prefix(self) -> str:
        """Text placed in front of a term body, sign excluded."""
        text = f"{abs(self.value)}*" if abs(self.value) != 1 else ""
        if self.ilam == 1:
            text += "i*lambda*"
        elif self.ilam > 1:
            text += f"(i*lambda)^{self.ilam}*"
        return text


def _deltas_label(deltas: tuple[int, ...]) -> str:
    return f"delta[{','.join(map(str, deltas))}]" if deltas else ""


class VelocityVector(msgspec.Struct, frozen=True, tag=True):
    index: int

    def label(self) -> str:
        return f"v{self.index}"


class NormalVector(msgspec.Struct, frozen=True, tag=True):
    """Unit normal, or one of its shape derivatives when ``deltas`` is non-empty."""

    deltas: tuple[int, ...] = ()

    def label(self) -> str:
        return f"{_deltas_label(self.deltas)}n"


type Vector = VelocityVector | NormalVector


class FormAtom(msgspec.Struct, frozen=True, tag=True):
    """Scattered (``omega``) or incident (``phi``) field, possibly differentiated."""

    name: AtomName
    degree: int
    dim: int
    deltas: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.dim not in {2, 3} or not 0 <= self.degree <= self.dim:
            raise DegreeError("atom", self.degree, self.dim)


class ExtD(msgspec.Struct, frozen=True, tag=True):
    child: FormExpr

    def __post_init__(self) -> None:
        if self.child.degree is None or self.child.degree >= self.child.dim:
            raise DegreeError("d", self.child.degree, self.child.dim)

    @property
    def degree(self) -> int:
        return self.child.degree + 1  # pyright: ignore[reportOptionalOperand]

    @property
    def dim(self) -> int:
        return self.child.dim


class Hodge(msgspec.Struct, frozen=True, tag=True):
    """Weighted Hodge star on the domain."""

    metric: Metric
    child: FormExpr

    def __post_init__(self) -> None:
        if self.child.degree is None:
            raise DegreeError("*", None, self.child.dim)

    @property
    def degree(self) -> int:
        return self.dim - self.child.degree  # pyright: ignore[reportOptionalOperand]

    @property
    def dim(self) -> int:
        return self.child.dim


class HodgeBoundary(msgspec.Struct, frozen=True, tag=True):
    """Weighted Hodge star of the boundary manifold."""

    metric: Metric
    child: FormExpr

    def __post_init__(self) -> None:
        if self.child.degree is None or self.child.degree > self.child.dim - 1:
            raise DegreeError("*G", self.child.degree, self.child.dim)

    @property
    def degree(self) -> int:
        return self.dim - 1 - self.child.degree  # pyright: ignore[reportOptionalOperand]

    @property
    def dim(self) -> int:
        return self.child.dim


class Contract(msgspec.Struct, frozen=True, tag=True):
    """Interior product with a velocity or a (differentiated) normal."""

    vector: Vector
    child: FormExpr

    def __post_init__(self) -> None:
        if not self.child.degree:
            label = f"i_{self.vector.label()}"
            raise DegreeError(label, self.child.degree, self.child.dim)

    @property
    def degree(self) -> int:
        return self.child.degree - 1  # pyright: ignore[reportOptionalOperand]

    @property
    def dim(self) -> int:
        return self.child.dim


class Wedge(msgspec.Struct, frozen=True, tag=True):
    left: FormExpr
    right: FormExpr

    def __post_init__(self) -> None:
        left, right = self.left.degree, self.right.degree
        if left is None or right is None:
            raise DegreeError("^", None, self.left.dim)
        if left + right > self.left.dim:
            raise DegreeError("^", left + right, self.left.dim)

    @property
    def degree(self) -> int:
        return (self.left.degree or 0) + (self.right.degree or 0)

    @property
    def dim(self) -> int:
        return self.left.dim


class TraceD(msgspec.Struct, frozen=True, tag=True):
    """Dirichlet trace ``i_n *``; expanded by ``simplify``."""

    child: FormExpr

    def __post_init__(self) -> None:
        if self.child.degree is None or self.child.degree >= self.child.dim:
            raise DegreeError("TrD", self.child.degree, self.child.dim)

    @property
    def degree(self) -> int:
        return self.dim - self.child.degree - 1  # pyright: ignore[reportOptionalOperand]

    @property
    def dim(self) -> int:
        return self.child.dim


class TraceN(msgspec.Struct, frozen=True, tag=True):
    """Neumann trace ``*G_alpha i_n d``; expanded by ``simplify``."""

    child: FormExpr

    def __post_init__(self) -> None:
        if self.child.degree is None or self.child.degree >= self.child.dim:
            raise DegreeError("TrN", self.child.degree, self.child.dim)

    @property
    def degree(self) -> int:
        return self.dim - 1 - self.child.degree  # pyright: ignore[reportOptionalOperand]

    @property
    def dim(self) -> int:
        return self.child.dim


class Jump(msgspec.Struct, frozen=True, tag=True):
    """Jump across the interface; left undistributed."""

    child: FormExpr

    @property
    def degree(self) -> int | None:
        return self.child.degree

    @property
    def dim(self) -> int:
        return self.child.dim


class Term(msgspec.Struct, frozen=True):
    """Coefficient times a monomial."""

    coefficient: Coefficient
    expr: FormExpr


class Sum(msgspec.Struct, frozen=True, tag=True):
    """Linear combination of like-degree forms; the empty sum is zero."""

    terms: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        degrees = {term.expr.degree for term in self.terms}
        if len(degrees) > 1:
            raise DegreeError("+", None, self.dim)

    @property
    def degree(self) -> int | None:
        return self.terms[0].expr.degree if self.terms else None

    @property
    def dim(self) -> int:
        return self.terms[0].expr.dim if self.terms else 0


class System(msgspec.Struct, frozen=True, tag=True):
    """Pair of conditions, as for the transmission problem."""

    parts: tuple[FormExpr, ...]

    @property
    def degree(self) -> None:
        return None

    @property
    def dim(self) -> int:
        return self.parts[0].dim if self.parts else 0


type FormExpr = (
    FormAtom
    | ExtD
    | Hodge
    | HodgeBoundary
    | Contract
    | Wedge
    | TraceD
    | TraceN
    | Jump
    | Sum
    | System
)

ZERO = Sum()
_ONE = Coefficient()


def is_zero(expr: FormExpr) -> bool:
    return isinstance(expr, Sum) and not expr.terms


def atom(name: AtomName, degree: int, dim: int, deltas: tuple[int, ...] = ()) -> FormAtom:
    """Field atom; ``deltas`` lists the velocities it has been differentiated along."""
    return FormAtom(name, degree, dim, tuple(sorted(deltas)))


def velocity(index: int) -> VelocityVector:
    """Velocity vector ``v_index``."""
    return VelocityVector(index)


def normal(*deltas: int) -> NormalVector:
    """Normal vector, differentiated along ``deltas``."""
    return NormalVector(tuple(sorted(deltas)))


def ext_d(expr: FormExpr) -> FormExpr:
    """``d expr``, zero on top-degree forms."""
    if is_zero(expr) or expr.degree == expr.dim:
        return ZERO
    return ExtD(expr)


def hodge(expr: FormExpr, metric: Metric = "1") -> FormExpr:
    """Hodge star with weight ``metric``."""
    return ZERO if is_zero(expr) else Hodge(metric, expr)


def hodge_boundary(expr: FormExpr, metric: Metric = "1") -> FormExpr:
    """Hodge star of the boundary with weight ``metric``."""
    return ZERO if is_zero(expr) else HodgeBoundary(metric, expr)


def contract(vector: Vector, expr: FormExpr) -> FormExpr:
    """``i_vector expr``, zero on 0-forms."""
    if is_zero(expr) or expr.degree == 0:
        return ZERO
    return Contract(vector, expr)


def wedge(left: FormExpr, right: FormExpr) -> FormExpr:
    """Exterior product; zero when the degrees exceed the dimension."""
    if is_zero(left) or is_zero(right):
        return ZERO
    if (left.degree or 0) + (right.degree or 0) > left.dim:
        return ZERO
    return Wedge(left, right)


def trace_d(expr: FormExpr) -> FormExpr:
    return ZERO if is_zero(expr) else TraceD(expr)


def trace_n(expr: FormExpr) -> FormExpr:
    return ZERO if is_zero(expr) else TraceN(expr)


def jump(expr: FormExpr) -> FormExpr:
    """Jump ``[X]`` across the boundary."""
    return ZERO if is_zero(expr) else Jump(expr)


def system(*parts: FormExpr) -> System:
    """Transmission pair of jump conditions."""
    return System(parts)


def scale(expr: FormExpr, value: int = 1, ilam: int = 0) -> FormExpr:
    """Multiply by ``value * (i*lambda)**ilam``."""
    if is_zero(expr) or value == 0:
        return ZERO
    factor = Coefficient(value, ilam)
    if isinstance(expr, Sum):
        return Sum(tuple(Term(factor * t.coefficient, t.expr) for t in expr.terms))
    return Sum((Term(factor, expr),))


def neg(expr: FormExpr) -> FormExpr:
    return scale(expr, -1)


def add(*exprs: FormExpr) -> FormExpr:
    """Concatenate the terms of ``exprs``; like terms are merged by ``simplify``."""
    terms: list[Term] = []
    for expr in exprs:
        if isinstance(expr, Sum):
            terms.extend(expr.terms)
        else:
            terms.append(Term(_ONE, expr))
    return Sum(tuple(terms))


def _metric_suffix(metric: Metric) -> str:
    return "" if metric == "1" else f"_{metric}"


def render_form(expr: FormExpr) -> str:  # noqa: PLR0911
    """Plain-text rendering of a form expression, also used as its sort key."""
    match expr:
        case FormAtom(name=name, deltas=deltas):
            return f"{_deltas_label(deltas)}{name}"
        case ExtD(child=child):
            return f"d {render_form(child)}"
        case Hodge(metric=metric, child=child):
            return f"*{_metric_suffix(metric)} {render_form(child)}"
        case HodgeBoundary(metric=metric, child=child):
            return f"*G{_metric_suffix(metric)} {render_form(child)}"
        case Contract(vector=vector, child=child):
            return f"i_{vector.label()} {render_form(child)}"
        case Wedge(left=left, right=right):
            return f"({render_form(left)} ^ {render_form(right)})"
        case TraceD(child=child):
            return f"TrD {render_form(child)}"
        case TraceN(child=child):
            return f"TrN {render_form(child)}"
        case Jump(child=child):
            return f"[{render_form(child)}]"
        case System(parts=parts):
            return "\n".join(render_form(part) for part in parts)
        case Sum(terms=terms):
            return join_terms([(t.coefficient, render_form(t.expr)) for t in terms])


def join_terms(terms: list[tuple[Coefficient, str]]) -> str:
    """Join signed terms as ``a - b + c``; an empty list renders as ``0``."""
    if not terms:
        return "0"
    pieces: list[str] = []
    for position, (coefficient, body) in enumerate(terms):
        text = f"{coefficient.prefix()}{body}"
        negative = coefficient.value < 0
        if position == 0:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    return "".join(pieces)
