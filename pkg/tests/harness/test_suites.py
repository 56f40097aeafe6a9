from __future__ import annotations

import pytest

from shapetaylor import __version__
from shapetaylor.config.app import VERIFY_SUITES, RunConfig
from shapetaylor.harness import SUITES, StudyReport
from shapetaylor.harness.suites import (
    REMAINDER_TS,
    geometry_suite,
    jets_suite,
    remainder_cases,
    remainder_suite,
    solvers_suite,
)


def _report() -> tuple[RunConfig, StudyReport]:
    config = RunConfig(command="verify")
    return config, StudyReport(command="verify", version=__version__, config=config)


def test_every_configured_suite_is_registered() -> None:
    assert set(SUITES) == set(VERIFY_SUITES)
    assert {"jets", "geometry"} <= set(SUITES)


def test_solvers_suite_covers_every_wavenumber() -> None:
    config, report = _report()

    solvers_suite(config, report)

    names = [check.name for check in report.checks]
    assert len(names) == 27
    for k in ("1", "2", "3.7"):
        assert f"impedance k={k} normal trace" in names
    assert report.passed, report.failures()


def test_jets_suite_on_circle_and_star() -> None:
    config, report = _report()

    jets_suite(config, report)

    assert {check.name for check in report.checks} == {
        "plane wave jet on the circle",
        "inner source jet on the circle",
        "plane wave jet on the star",
        "inner source jet on the star",
    }
    assert report.passed, report.failures()


def test_geometry_suite_checks_normal_variations() -> None:
    config, report = _report()

    geometry_suite(config, report)

    assert len(report.checks) == 5
    assert report.checks[-1].name == "mixed normal variation symmetry"
    assert report.passed, report.failures()


def test_remainder_sweep_cases() -> None:
    labels = [label for label, _, _ in remainder_cases()]

    assert len(labels) == 10
    assert "circle transmission v=1" in labels
    assert "circle transmission v=cos2" not in labels
    assert {f"star {bc} v=cos2" for bc in ("soft", "hard", "impedance")} <= set(labels)
    assert REMAINDER_TS[-1] == pytest.approx(1.5625e-3)


@pytest.mark.slow
def test_remainder_suite_passes() -> None:
    config, report = _report()

    remainder_suite(config, report)

    names = [check.name for check in report.checks]
    assert "circle hard v=cos2 order 2 remainder slope" in names
    assert "two-field order 2 remainder slope" in names
    assert "mixed derivative symmetry" in names
    assert report.passed, report.failures()
