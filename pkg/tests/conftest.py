"""Shared fixtures: oracle sweeps are expensive, so they run once per session.

Acceptance tests register one line per criterion in ``acceptance_log``; the
terminal summary prints them all after the run.
"""

from __future__ import annotations

import pytest

from tangenttab import oracle

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def acceptance_log() -> dict[int, tuple[str, str]]:
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        desc, status = _ACCEPTANCE[num]
        terminalreporter.write_line(f"ACCEPTANCE {num:02d} {status} {desc}")


@pytest.fixture(scope="session")
def conic_one_flag_sweep() -> oracle.TrialSummary:
    return oracle.run_conic_flag_trials(100, seed=20240, flags=1)


@pytest.fixture(scope="session")
def conic_two_flag_sweep() -> oracle.TrialSummary:
    return oracle.run_conic_flag_trials(100, seed=20241, flags=2)


@pytest.fixture(scope="session")
def tangent_sweep() -> oracle.TrialSummary:
    return oracle.run_tangent_line_trials(10, seed=20242, on_curve=False)


@pytest.fixture(scope="session")
def tangent_on_curve_sweep() -> oracle.TrialSummary:
    return oracle.run_tangent_line_trials(10, seed=20243, on_curve=True)


@pytest.fixture(scope="session")
def pencil_sweep() -> oracle.TrialSummary:
    return oracle.run_pencil_trials(10, seed=20244)


@pytest.fixture(scope="session")
def calibration() -> oracle.CalibrationResult:
    return oracle.calibrate(trials=100, seed=20240)
