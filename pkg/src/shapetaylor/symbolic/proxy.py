"""Vector-calculus proxies of boundary data and their canonical text.

Translation works on the normal form produced by
:func:`~shapetaylor.symbolic.rules.simplify`. The trace patterns are recognised
first; everything else falls back to the generic dictionary (``d`` of a 0-form is
a gradient, of a 1-form in 3D a curl, of an ``(d-1)``-form a divergence, and
contractions become dot or cross products with the vector).

Canonical text
--------------
``delta[1,2]u`` for a differentiated field, ``n`` and ``delta[1]n`` for normals,
``(a . b)`` and ``(a x b)`` for products, ``grad_j``, ``div_j`` and ``curl_j``
for the tangential operators along velocity ``j``, ``*`` between factors,
``[...]`` around jumps and one line per part of a system. Terms are sorted by
their text (ASCII), then by coefficient; the zero datum is ``0``.
"""

from __future__ import annotations

from collections import defaultdict
from typing import TYPE_CHECKING, Literal

import msgspec

from .exceptions import UnsupportedProxyError
from .forms import (
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
    VelocityVector,
    Wedge,
    join_terms,
)
from .rules import simplify

if TYPE_CHECKING:
    from collections.abc import Callable

    from .forms import FormExpr, Vector

__all__ = (
    "VApply",
    "VCross",
    "VDirectional",
    "VDot",
    "VField",
    "VJump",
    "VNormal",
    "VProduct",
    "VSum",
    "VSymbol",
    "VSystem",
    "VTerm",
    "VVelocity",
    "VectorExpr",
    "render_canonical",
    "substitute",
    "to_vector_proxy",
)


class VField(msgspec.Struct, frozen=True, tag=True):
    """Vector proxy of a field atom."""

    name: str
    deltas: tuple[int, ...] = ()


class VNormal(msgspec.Struct, frozen=True, tag=True):
    deltas: tuple[int, ...] = ()


class VVelocity(msgspec.Struct, frozen=True, tag=True):
    index: int


class VSymbol(msgspec.Struct, frozen=True, tag=True):
    name: str


class VApply(msgspec.Struct, frozen=True, tag=True):
    """Volume operator (``nabla``, ``curl``, ``rot``, ``div``, ``perp``)."""

    op: str
    child: VectorExpr


class VDirectional(msgspec.Struct, frozen=True, tag=True):
    """Tangential operator along velocity ``index``."""

    kind: Literal["grad", "curl", "div"]
    index: int
    child: VectorExpr


class VDot(msgspec.Struct, frozen=True, tag=True):
    """Dot product."""

    left: VectorExpr
    right: VectorExpr


class VCross(msgspec.Struct, frozen=True, tag=True):
    """Cross product."""

    left: VectorExpr
    right: VectorExpr


class VProduct(msgspec.Struct, frozen=True, tag=True):
    factors: tuple[VectorExpr, ...]


class VTerm(msgspec.Struct, frozen=True):
    coefficient: Coefficient
    expr: VectorExpr


class VSum(msgspec.Struct, frozen=True, tag=True):
    """Sum of proxy terms, in canonical order."""

    terms: tuple[VTerm, ...] = ()


class VJump(msgspec.Struct, frozen=True, tag=True):
    child: VSum


class VSystem(msgspec.Struct, frozen=True, tag=True):
    """Transmission pair of proxies."""

    parts: tuple[VSum, ...]


type VectorExpr = (
    VField
    | VNormal
    | VVelocity
    | VSymbol
    | VApply
    | VDirectional
    | VDot
    | VCross
    | VProduct
    | VJump
    | VSum
    | VSystem
)

type _Pieces = list[tuple[Coefficient, VectorExpr]]

_ONE = Coefficient()
_N = VNormal()
_ALPHA = VSymbol("alpha")


def _label(deltas: tuple[int, ...]) -> str:
    return f"delta[{','.join(map(str, deltas))}]" if deltas else ""


def render_canonical(expr: VectorExpr) -> str:  # noqa: PLR0911
    """Canonical text of a proxy expression."""
    match expr:
        case VField(name=name, deltas=deltas):
            return f"{_label(deltas)}{name}"
        case VNormal(deltas=deltas):
            return f"{_label(deltas)}n"
        case VVelocity(index=index):
            return f"v_{index}"
        case VSymbol(name=name):
            return name
        case VApply(op=op, child=child):
            return f"{op}({render_canonical(child)})"
        case VDirectional(kind=kind, index=index, child=child):
            return f"{kind}_{index}({render_canonical(child)})"
        case VDot(left=left, right=right):
            return f"({render_canonical(left)} . {render_canonical(right)})"
        case VCross(left=left, right=right):
            return f"({render_canonical(left)} x {render_canonical(right)})"
        case VProduct(factors=factors):
            return "*".join(render_canonical(factor) for factor in factors)
        case VJump(child=child):
            return f"[{render_canonical(child)}]"
        case VSystem(parts=parts):
            return "\n".join(render_canonical(part) for part in parts)
        case VSum(terms=terms):
            ordered = sorted(
                ((render_canonical(t.expr), t.coefficient) for t in terms),
                key=lambda item: (item[0], item[1].ilam, item[1].value),
            )
            return join_terms([(c, body) for body, c in ordered])


def _collect(pieces: _Pieces) -> VSum:
    totals: defaultdict[tuple[VectorExpr, int], int] = defaultdict(int)
    for coefficient, body in pieces:
        totals[body, coefficient.ilam] += coefficient.value
    terms = sorted(
        (
            (render_canonical(body), ilam, value, body)
            for (body, ilam), value in totals.items()
            if value
        ),
        key=lambda item: item[:3],
    )
    return VSum(tuple(VTerm(Coefficient(v, ilam), body) for _, ilam, v, body in terms))


def _wrap(
    pieces: _Pieces, build: Callable[[VectorExpr], VectorExpr], sign: int = 1
) -> _Pieces:
    return [(Coefficient(sign * c.value, c.ilam), build(body)) for c, body in pieces]


def _vector(vector: Vector) -> VectorExpr:
    if isinstance(vector, VelocityVector):
        return VVelocity(vector.index)
    return VNormal(vector.deltas)


class _Translator:
    """Pattern-directed translation of one normal-form expression."""

    __slots__ = ("degree", "dim")

    def __init__(self, dim: int, degree: int) -> None:
        self.dim = dim
        self.degree = degree

    def unsupported(self, expr: FormExpr) -> UnsupportedProxyError:
        return UnsupportedProxyError(type(expr).__name__, self.dim, self.degree)

    def field(self, leaf: FormAtom) -> _Pieces:
        if leaf.dim != self.dim or leaf.degree != self.degree:
            raise self.unsupported(leaf)
        vector_field = self.dim == 3 and self.degree == 1  # noqa: PLR2004
        # forms write the condition as B(omega) = phi, proxies as B(u) = -B(phi)
        if leaf.name == "phi":
            return [(Coefficient(-1), VField("Phi" if vector_field else "phi"))]
        return [(_ONE, VField("E" if vector_field else "u", leaf.deltas))]

    def is_vector_field(self, expr: FormExpr) -> bool:
        return expr.degree == 1 and self.dim == 3  # noqa: PLR2004

    def dirichlet(self, vector: NormalVector, inner: FormExpr) -> _Pieces:
        pieces = self(inner)
        if self.is_vector_field(inner):
            m = VNormal(vector.deltas)
            return _wrap(pieces, lambda f: VCross(_N, VCross(m, f)), -1)
        if inner.degree != 0:
            raise self.unsupported(inner)
        if not vector.deltas:
            return pieces
        if len(vector.deltas) == 1:
            # delta_j n is tangential
            return []
        m = VNormal(vector.deltas)
        return _wrap(pieces, lambda f: VProduct((VDot(m, _N), f)))

    def neumann(self, vector: NormalVector, inner: FormExpr) -> _Pieces:
        pieces = self(inner)
        m = VNormal(vector.deltas)
        if self.is_vector_field(inner):
            return _wrap(
                pieces,
                lambda f: VCross(_N, VCross(m, VProduct((_ALPHA, VApply("curl", f))))),
                -1,
            )
        if inner.degree != 0:
            raise self.unsupported(inner)
        return _wrap(
            pieces, lambda f: VProduct((_ALPHA, VDot(VApply("nabla", f), m), _N))
        )

    def robin(self, vector: NormalVector, inner: FormExpr) -> _Pieces:
        pieces = self(inner)
        m = VNormal(vector.deltas)
        if self.is_vector_field(inner):
            return _wrap(pieces, lambda f: VCross(m, f), -1)
        if inner.degree != 0:
            raise self.unsupported(inner)
        return _wrap(pieces, lambda f: VProduct((f, m)))

    def directional(self, index: int, inner: FormExpr) -> _Pieces:
        if inner.degree == 0:
            kind = "grad"
        elif self.is_vector_field(inner):
            kind = "curl"
        elif inner.degree == self.dim - 1:
            kind = "div"
        else:
            raise self.unsupported(inner)
        return _wrap(self(inner), lambda f: VDirectional(kind, index, f))

    def exterior(self, inner: FormExpr) -> _Pieces:
        match inner.degree:
            case 0:
                op = "nabla"
            case 1:
                op = "curl" if self.dim == 3 else "rot"  # noqa: PLR2004
            case 2:
                op = "div"
            case _:
                raise self.unsupported(inner)
        return _wrap(self(inner), lambda f: VApply(op, f))

    def contraction(self, vector: Vector, inner: FormExpr) -> _Pieces:
        v = _vector(vector)
        match inner.degree, self.dim:
            case 1, _:
                return _wrap(self(inner), lambda f: VDot(v, f))
            case 2, 3:
                return _wrap(self(inner), lambda f: VCross(f, v))
            case 2, 2:
                return _wrap(self(inner), lambda f: VProduct((f, VApply("perp", v))))
            case 3, 3:
                return _wrap(self(inner), lambda f: VProduct((f, v)))
            case _:
                raise self.unsupported(inner)

    def wedge(self, left: FormExpr, right: FormExpr) -> _Pieces:
        if left.degree == 0 or right.degree == 0:
            build: Callable[[VectorExpr, VectorExpr], VectorExpr] = (
                lambda a, b: VProduct((a, b))
            )
        elif self.dim == 3 and left.degree == right.degree == 1:  # noqa: PLR2004
            build = VCross
        else:
            build = VDot
        return [
            (cl * cr, build(fl, fr)) for cl, fl in self(left) for cr, fr in self(right)
        ]

    def __call__(self, expr: FormExpr) -> _Pieces:  # noqa: PLR0911
        match expr:
            case FormAtom():
                return self.field(expr)
            case HodgeBoundary("1", Contract(NormalVector() as m, Hodge("1", inner))):
                return self.dirichlet(m, inner)
            case HodgeBoundary("alpha", Contract(NormalVector() as m, ExtD(inner))):
                return self.neumann(m, inner)
            case Contract(NormalVector() as m, Hodge("1", inner)):
                return self.robin(m, inner)
            case Contract(VelocityVector(index=index), ExtD(inner)):
                return self.directional(index, inner)
            case ExtD(child=inner):
                return self.exterior(inner)
            case Contract(vector=vector, child=inner):
                return self.contraction(vector, inner)
            case Hodge(metric="1", child=inner):
                return self(inner)
            case Hodge(metric=metric, child=inner):
                return _wrap(self(inner), lambda f: VProduct((VSymbol(metric), f)))
            case Wedge(left=left, right=right):
                return self.wedge(left, right)
            case Jump(child=inner):
                return [(_ONE, VJump(_collect(self(inner))))]
            case Sum(terms=terms):
                return [
                    (t.coefficient * c, body) for t in terms for c, body in self(t.expr)
                ]
            case _:
                raise self.unsupported(expr)


def to_vector_proxy(expr: FormExpr, dim: int = 2, degree: int = 0) -> VSum | VSystem:
    """Translate a form expression into its vector proxy.

    The incident atom ``phi`` translates to ``-phi``: the form datum reads
    ``B(omega) = phi`` while the proxies read ``B(u) = -B(phi)`` with ``phi`` the
    incident field.

    Parameters
    ----------
    expr : FormExpr
        Expression whose field atoms live in dimension ``dim`` with degree
        ``degree``; it is brought to normal form first.
    dim : {2, 3}
        Ambient dimension.
    degree : {0, 1}
        Degree of the field forms: ``0`` for acoustic potentials, ``1`` for the
        electric field.

    Returns
    -------
    VSum or VSystem
        The proxy, with like terms collected.

    Raises
    ------
    UnsupportedProxyError
        When a node has no proxy in the requested setting.
    """
    translate = _Translator(dim, degree)
    normal_form = simplify(expr)
    if isinstance(normal_form, System):
        return VSystem(tuple(_collect(translate(part)) for part in normal_form.parts))
    return _collect(translate(normal_form))


def substitute(  # noqa: PLR0911
    expr: VectorExpr, replace: Callable[[VField], VectorExpr]
) -> VectorExpr:
    """Replace every field of ``expr`` by ``replace(field)``."""

    def again(child: VectorExpr) -> VectorExpr:
        return substitute(child, replace)

    match expr:
        case VField():
            return replace(expr)
        case VApply(op=op, child=child):
            return VApply(op, again(child))
        case VDirectional(kind=kind, index=index, child=child):
            return VDirectional(kind, index, again(child))
        case VDot(left=left, right=right):
            return VDot(again(left), again(right))
        case VCross(left=left, right=right):
            return VCross(again(left), again(right))
        case VProduct(factors=factors):
            return VProduct(tuple(again(f) for f in factors))
        case VJump(child=child):
            return VJump(_substitute_sum(child, replace))
        case VSum():
            return _substitute_sum(expr, replace)
        case VSystem(parts=parts):
            return VSystem(tuple(_substitute_sum(part, replace) for part in parts))
        case _:
            return expr


def _substitute_sum(expr: VSum, replace: Callable[[VField], VectorExpr]) -> VSum:
    return _collect([(t.coefficient, substitute(t.expr, replace)) for t in expr.terms])
