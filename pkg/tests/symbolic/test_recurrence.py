from __future__ import annotations

from pathlib import Path

import pytest

from shapetaylor.lib.exceptions import DomainError
from shapetaylor.symbolic import (
    DegreeError,
    drop_normal_variations,
    generate,
    render_canonical,
    to_vector_proxy,
)

GOLDEN = Path(__file__).parent / "golden"
BOUNDARY_CONDITIONS = ("dirichlet", "neumann", "impedance", "transmission")


def _golden(name: str) -> str:
    lines = (GOLDEN / f"{name}.txt").read_text().splitlines()
    return "\n".join(line for line in lines if not line.startswith("#"))


def _proxy_text(bc: str, order: int, dim: int, degree: int, *, general: bool) -> str:
    expr = generate(bc, order, dim, degree, general_velocity=general)  # pyright: ignore[reportArgumentType]
    return render_canonical(to_vector_proxy(expr, dim, degree))


def test_first_order_dirichlet_proxy() -> None:
    assert _proxy_text("dirichlet", 1, 2, 0, general=False) == "-grad_1(phi) - grad_1(u)"


def test_first_order_neumann_proxy_with_normal_variation() -> None:
    text = _proxy_text("neumann", 1, 2, 0, general=True)
    assert text == (
        "-alpha*(nabla(phi) . delta[1]n)*n - alpha*(nabla(u) . delta[1]n)*n"
        " - div_1(alpha*(nabla(phi) . n)*n) - div_1(alpha*(nabla(u) . n)*n)"
    )


def test_second_order_dirichlet_constant_speed() -> None:
    assert _proxy_text("dirichlet", 2, 2, 0, general=False) == _golden(
        "acoustic_dirichlet_constant"
    )


@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("bc", BOUNDARY_CONDITIONS)
def test_second_order_acoustic_data(bc: str, dim: int) -> None:
    assert _proxy_text(bc, 2, dim, 0, general=True) == _golden(f"acoustic_{bc}")


@pytest.mark.parametrize("bc", BOUNDARY_CONDITIONS)
def test_second_order_maxwell_data(bc: str) -> None:
    assert _proxy_text(bc, 2, 3, 1, general=True) == _golden(f"maxwell_{bc}")


@pytest.mark.parametrize("bc", BOUNDARY_CONDITIONS)
@pytest.mark.parametrize("setting", [(2, 0), (3, 1)])
def test_constant_speed_is_general_without_normal_variations(
    bc: str, setting: tuple[int, int]
) -> None:
    dim, degree = setting
    general = generate(bc, 2, dim, degree, general_velocity=True)  # pyright: ignore[reportArgumentType]
    constant = generate(bc, 2, dim, degree)  # pyright: ignore[reportArgumentType]
    assert drop_normal_variations(general) == constant


def test_third_order_terms_keep_growing() -> None:
    second = to_vector_proxy(generate("neumann", 2, general_velocity=True))
    third = to_vector_proxy(generate("neumann", 3, general_velocity=True))
    assert len(third.terms) > len(second.terms)  # pyright: ignore[reportAttributeAccessIssue]
    assert "div_3(div_2(div_1(alpha*(nabla(u) . n)*n)))" in render_canonical(third)


def test_unknown_boundary_condition_is_rejected() -> None:
    with pytest.raises(DomainError):
        generate("robin", 1)  # pyright: ignore[reportArgumentType]


@pytest.mark.parametrize("dim, degree", [(2, 2), (4, 0), (3, 3)])
def test_invalid_setting_is_rejected(dim: int, degree: int) -> None:
    with pytest.raises(DegreeError):
        generate("dirichlet", 1, dim, degree)


def test_order_must_be_positive() -> None:
    with pytest.raises(DegreeError):
        generate("dirichlet", 0)
