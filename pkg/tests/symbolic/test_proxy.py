from __future__ import annotations

import pytest

from shapetaylor.symbolic import (
    FormExpr,
    UnsupportedProxyError,
    VField,
    VSum,
    atom,
    contract,
    ext_d,
    generate,
    hodge,
    hodge_boundary,
    initial_datum,
    normal,
    render_canonical,
    substitute,
    to_vector_proxy,
    trace_d,
    velocity,
    wedge,
)
from shapetaylor.symbolic.proxy import VApply, VProduct, VSymbol


def _text(expr: FormExpr, dim: int, degree: int) -> str:
    return render_canonical(to_vector_proxy(expr, dim, degree))


def test_dirichlet_trace_of_scalar() -> None:
    assert _text(trace_d(atom("omega", 0, 2)), 2, 0) == "u*n"


def test_contraction_of_two_form_in_space() -> None:
    assert _text(contract(velocity(1), atom("omega", 2, 3)), 3, 2) == "(u x v_1)"


def test_contraction_of_one_form_is_a_dot_product() -> None:
    assert _text(contract(velocity(2), atom("omega", 1, 3)), 3, 1) == "(v_2 . E)"


@pytest.mark.parametrize(
    "degree, expected", [(0, "nabla(u)"), (1, "curl(E)"), (2, "div(u)")]
)
def test_exterior_derivative_proxies(degree: int, expected: str) -> None:
    assert _text(ext_d(atom("omega", degree, 3)), 3, degree) == expected


def test_weighted_hodge_star_keeps_its_metric() -> None:
    assert _text(hodge(atom("omega", 0, 2), "k^2"), 2, 0) == "k^2*u"


def test_incident_field_enters_with_minus_sign() -> None:
    assert _text(atom("phi", 0, 2), 2, 0) == "-phi"


def test_soft_datum_is_minus_the_incident_trace() -> None:
    assert _text(initial_datum("dirichlet", 2, 0), 2, 0) == "-phi"


def test_wedge_of_vector_fields_is_a_cross_product() -> None:
    expr = wedge(atom("omega", 1, 3), atom("phi", 1, 3))
    assert _text(expr, 3, 1) == "-(E x Phi)"


def test_dirichlet_trace_with_normal_variation_vanishes_for_scalars() -> None:
    expr = hodge_boundary(contract(normal(1), hodge(atom("omega", 0, 2))))
    assert _text(expr, 2, 0) == "0"


def test_second_normal_variation_projects_on_the_normal() -> None:
    expr = hodge_boundary(contract(normal(2, 1), hodge(atom("omega", 0, 2))))
    assert _text(expr, 2, 0) == "(delta[1,2]n . n)*u"


def test_field_of_other_setting_is_unsupported() -> None:
    with pytest.raises(UnsupportedProxyError):
        to_vector_proxy(atom("omega", 1, 2), 2, 0)


def test_boundary_hodge_star_without_trace_pattern_is_unsupported() -> None:
    with pytest.raises(UnsupportedProxyError):
        to_vector_proxy(hodge_boundary(atom("omega", 1, 3)), 3, 1)


def test_magnetic_datum_is_electric_datum_with_curl_substituted() -> None:
    def flux(field: VField) -> VProduct:
        return VProduct((VSymbol("alpha"), VApply("curl", field)))

    pec = to_vector_proxy(generate("dirichlet", 2, 3, 1, general_velocity=True), 3, 1)
    pmc = to_vector_proxy(generate("neumann", 2, 3, 1, general_velocity=True), 3, 1)
    assert isinstance(pec, VSum)
    assert render_canonical(substitute(pec, flux)) == render_canonical(pmc)


def test_transmission_renders_one_line_per_jump() -> None:
    text = _text(generate("transmission", 1), 2, 0)
    first, second = text.splitlines()
    assert first == "[-grad_1(phi) - grad_1(u)]"
    assert second == "[-div_1(alpha*(nabla(phi) . n)*n) - div_1(alpha*(nabla(u) . n)*n)]"
