from __future__ import annotations

from pathlib import Path

import msgspec
import numpy as np
import pytest

from shapetaylor.config.app import (
    AppSettings,
    CurveConfig,
    FourierCurveConfig,
    RunConfig,
    SceneConfig,
    SolverConfig,
    StarCurveConfig,
    VelocityConfig,
)
from shapetaylor.geometry import ClosedCurve, StarCurve
from shapetaylor.harness import build_scene
from shapetaylor.lib.exceptions import ConfigError
from shapetaylor.solvers import BoundaryKind

TEMPLATE = Path(__file__).parents[2] / "config" / "run.template.toml"
STAR = CurveConfig(star=StarCurveConfig(a0=1.0, cos=(0.0, 0.0, 0.2)))


def test_template_matches_defaults() -> None:
    assert RunConfig.from_toml(TEMPLATE) == RunConfig()


def test_missing_file(tmp_path: Path) -> None:
    with pytest.raises(ConfigError, match="Config file not found"):
        RunConfig.from_toml(tmp_path / "absent.toml")


def test_wrong_type_names_the_field(tmp_path: Path) -> None:
    path = tmp_path / "run.toml"
    path.write_text('[scene]\nk = "fast"\n')
    with pytest.raises(ConfigError) as info:
        RunConfig.from_toml(path)
    assert "scene.k" in str(info.value.detail)


def test_toml_values_are_read(tmp_path: Path) -> None:
    path = tmp_path / "run.toml"
    path.write_text(
        'command = "derive"\norder = 2\n[scene]\nbc = "hard"\nk = 2.5\n'
        "[[velocities]]\ncos = [0.0, 0.0, 1.0]\n"
    )
    config = RunConfig.from_toml(path)
    assert config.command == "derive"
    assert config.scene.bc is BoundaryKind.HARD
    assert config.velocity_fields()[0].cos == (0.0, 0.0, 1.0)


@pytest.mark.parametrize(
    "config, field",
    [
        (RunConfig(scene=SceneConfig(k=float("nan"))), "scene.k"),
        (RunConfig(scene=SceneConfig(k=-1.0)), "scene.k"),
        (RunConfig(scene=SceneConfig(curve=CurveConfig(star=StarCurveConfig(a0=0.5, cos=(0.0, 0.0, 0.6))))), "scene.curve"),
        (RunConfig(scene=SceneConfig(curve=CurveConfig())), "scene.curve"),
        (RunConfig(scene=SceneConfig(curve=CurveConfig(star=StarCurveConfig(), fourier=FourierCurveConfig()))), "scene.curve"),
        (RunConfig(scene=SceneConfig(curve=CurveConfig(fourier=FourierCurveConfig(x=(0.0, 1.0, 0.0), y=(0.0, 0.0, -1.0))))), "scene.curve"),
        (RunConfig(scene=SceneConfig(curve=STAR, bc=BoundaryKind.TRANSMISSION)), "scene.bc"),
        (RunConfig(scene=SceneConfig(curve=STAR), solver=SolverConfig(backend="series")), "solver.backend"),
        (RunConfig(velocities=()), "velocities"),
        (RunConfig(velocities=(VelocityConfig(cos=(float("inf"),)),)), "velocities[0].cos"),
        (RunConfig(order=3), "order"),
        (RunConfig(t_values=(0.1, 1.5)), "t_values"),
        (RunConfig(solver=SolverConfig(n_nodes=255)), "solver.n_nodes"),
        (RunConfig(suite="everything"), "suite"),
    ],
)
def test_validation_names_the_field(config: RunConfig, field: str) -> None:
    with pytest.raises(ConfigError) as info:
        config.validate()
    assert str(info.value.detail).startswith(f"{field}:")


def test_symbolic_runs_ignore_the_expansion_order() -> None:
    config = RunConfig(command="symbolic", order=5)
    assert config.validate() is config


def test_thread_setting_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("SHAPETAYL_THREADS", "3")
    monkeypatch.setenv("SHAPETAYL_LOG_LEVEL", "debug")
    settings = AppSettings.from_env()
    assert settings.threads == 3
    assert settings.log_level == "DEBUG"

    monkeypatch.setenv("SHAPETAYL_THREADS", "many")
    with pytest.raises(ConfigError):
        AppSettings.from_env()


def test_config_round_trips_through_json() -> None:
    config = RunConfig(scene=SceneConfig(curve=STAR, bc=BoundaryKind.IMPEDANCE))
    assert msgspec.json.decode(msgspec.json.encode(config), type=RunConfig) == config


def test_star_curve_table(tmp_path: Path) -> None:
    path = tmp_path / "run.toml"
    path.write_text("[scene.curve.star]\na0 = 1.0\ncos = [0.0, 0.0, 0.0, 0.1]\n")
    config = RunConfig.from_toml(path)

    assert config.scene.curve == CurveConfig(star=StarCurveConfig(cos=(0.0, 0.0, 0.0, 0.1)))
    assert build_scene(config).curve == StarCurve(a0=1.0, cos=(0.0, 0.0, 0.0, 0.1))


def test_fourier_curve_table_builds_an_ellipse(tmp_path: Path) -> None:
    path = tmp_path / "run.toml"
    path.write_text(
        '[scene]\nbc = "hard"\n[scene.curve.fourier]\nx = [0.5, 2.0, 0.0]\ny = [0.0, 0.0, 1.0]\n'
    )
    config = RunConfig.from_toml(path)
    scene = build_scene(config)

    assert isinstance(scene.curve, ClosedCurve)
    assert scene.resolved_backend() == "nystrom"
    theta = np.linspace(0.0, 2.0 * np.pi, 7)
    np.testing.assert_allclose(
        scene.curve.evaluate(theta), 0.5 + 2.0 * np.cos(theta) + 1j * np.sin(theta), atol=1e-13
    )


def test_fourier_curve_cannot_use_the_series_backend() -> None:
    ellipse = CurveConfig(fourier=FourierCurveConfig(x=(0.0, 1.5, 0.0), y=(0.0, 0.0, 1.0)))
    config = RunConfig(scene=SceneConfig(curve=ellipse), solver=SolverConfig(backend="series"))
    with pytest.raises(ConfigError) as info:
        config.validate()
    assert str(info.value.detail).startswith("solver.backend:")
