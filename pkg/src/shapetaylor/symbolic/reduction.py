"""Planar reduction of first-order acoustic data to boundary jets.

For ``d = 2`` and ``l = 0`` the first-order proxies only involve the total
field ``ut = u + phi``, its normal and tangential derivatives on the curve, the
curvature and the normal velocity. With the parametrisation-free identities

* ``grad_j(w) -> v_j w_n`` (the velocity is normal),
* ``div_j(alpha*(nabla(w) . n)*n) -> alpha v_j (kappa w_n + w_nn)``,
* ``div_j(w*n) -> v_j (kappa w + w_n)``,
* ``(nabla(w) . delta[j]n) -> -v_j_s w_s`` and ``(delta[j]n . n) -> 0``,

the proxy becomes a polynomial in jet symbols, printed with the same
conventions as the numeric data provenance (e.g. ``-ut_n*v1``).
"""

from __future__ import annotations

from collections import defaultdict
from typing import TYPE_CHECKING

from .exceptions import UnsupportedProxyError
from .forms import Coefficient, join_terms
from .proxy import (
    VApply,
    VDirectional,
    VDot,
    VField,
    VNormal,
    VProduct,
    VSum,
    VSymbol,
    substitute,
)

if TYPE_CHECKING:
    from .proxy import VectorExpr

__all__ = ("reduce_first_order_2d",)

type _Monomial = tuple[str, ...]

_TOTAL = VField("ut")
_N = VNormal()
_ALPHA = VSymbol("alpha")
_SOURCE = VProduct((_TOTAL, _N))


def _merge_incident(field: VField) -> VectorExpr:
    if field.deltas or field.name not in {"u", "phi"}:
        raise UnsupportedProxyError(f"field {field.name}", 2, 0)
    return _TOTAL


def _neumann_flux(normal: VNormal) -> VectorExpr:
    return VProduct((_ALPHA, VDot(VApply("nabla", _TOTAL), normal), _N))


def _jets(body: VectorExpr) -> list[tuple[int, _Monomial]]:  # noqa: PLR0911
    match body:
        case VField(name="ut"):
            return [(1, ("ut",))]
        case VDirectional(kind="grad", index=j, child=VField(name="ut")):
            return [(1, ("ut_n", f"v{j}"))]
        case VDirectional(kind="div", index=j, child=child) if child == _SOURCE:
            return [(1, ("kappa", "ut", f"v{j}")), (1, ("ut_n", f"v{j}"))]
        case VDirectional(kind="div", index=j, child=child) if child == _neumann_flux(_N):
            return [
                (1, ("alpha", "kappa", "ut_n", f"v{j}")),
                (1, ("alpha", "ut_nn", f"v{j}")),
            ]
        case _ if body == _neumann_flux(_N):
            return [(1, ("alpha", "ut_n"))]
        case VProduct(factors=(VField(), VNormal(deltas=(_,)))):
            # delta_j n is tangential, so the normal component vanishes
            return []
        case VProduct(factors=(_, VDot(right=VNormal(deltas=(j,))), _)) if (
            body == _neumann_flux(VNormal((j,)))
        ):
            return [(-1, ("alpha", "ut_s", f"v{j}_s"))]
        case _:
            raise UnsupportedProxyError(type(body).__name__, 2, 0)


def reduce_first_order_2d(proxy: VSum) -> str:
    """Reduce a first-order planar acoustic proxy to a polynomial in boundary jets.

    Scattered and incident contributions with equal coefficients are merged into
    the total field ``ut``; the result is written for the conormal datum, with
    factors in alphabetical order and terms sorted by their text.

    Raises
    ------
    UnsupportedProxyError
        When ``proxy`` is not a first-order acoustic datum in two dimensions.
    """
    merged: dict[tuple[VectorExpr, int], int] = {}
    for term in proxy.terms:
        body = substitute(term.expr, _merge_incident)
        key = (body, term.coefficient.ilam)
        if merged.setdefault(key, term.coefficient.value) != term.coefficient.value:
            raise UnsupportedProxyError("unbalanced incident term", 2, 0)
    polynomial: defaultdict[tuple[_Monomial, int], int] = defaultdict(int)
    for (body, ilam), value in merged.items():
        for factor, monomial in _jets(body):
            polynomial[tuple(sorted(monomial)), ilam] += factor * value
    terms = sorted(
        ("*".join(monomial), ilam, value)
        for (monomial, ilam), value in polynomial.items()
        if value
    )
    return join_terms([(Coefficient(value, ilam), text) for text, ilam, value in terms])
