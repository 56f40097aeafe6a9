from __future__ import annotations

from typing import TYPE_CHECKING

import msgspec
from click.testing import CliRunner

from shapetaylor.cli import shapetaylor_group

if TYPE_CHECKING:
    from pathlib import Path


def _invoke(*args: str) -> tuple[int, str]:
    result = CliRunner().invoke(shapetaylor_group, ["--log-level", "WARNING", *args])
    return result.exit_code, result.output


def test_symbolic_prints_the_proxy() -> None:
    code, output = _invoke("symbolic", "--bc", "dirichlet", "--order", "1")
    assert code == 0
    assert output.strip() == "-grad_1(phi) - grad_1(u)"


def test_symbolic_json() -> None:
    code, output = _invoke(
        "symbolic", "--bc", "neumann", "--order", "1", "--general-velocity", "--json"
    )
    assert code == 0
    payload = msgspec.json.decode(output.strip())
    assert payload["boundary_formula"] == (
        "-alpha*kappa*ut_n*v1 - alpha*ut_nn*v1 + alpha*ut_s*v1_s"
    )


def test_missing_config_is_a_one_line_error(tmp_path: Path) -> None:
    code, output = _invoke("solve", "--config", str(tmp_path / "absent.toml"))
    assert code != 0
    assert "Config file not found" in output


def test_invalid_config_value(tmp_path: Path) -> None:
    path = tmp_path / "run.toml"
    path.write_text("[solver]\nn_nodes = 15\n")
    code, output = _invoke("solve", "--config", str(path), "--output-dir", str(tmp_path))
    assert code != 0
    assert "ConfigError: solver.n_nodes" in output


def test_verify_zero_velocity_passes(tmp_path: Path) -> None:
    path = tmp_path / "run.toml"
    path.write_text("[[velocities]]\ncos = []\n")
    code, output = _invoke(
        "verify", "--config", str(path), "--suite", "derivatives", "--output-dir", str(tmp_path)
    )
    assert code == 0
    assert "norm [1] = 0.000000e+00" in output
    assert (tmp_path / "report.json").exists()


def test_verify_symbolic_suite(tmp_path: Path) -> None:
    code, output = _invoke("verify", "--suite", "symbolic", "--output-dir", str(tmp_path))
    assert code == 0
    assert "PASS symbolic: symbolic consistency" in output
