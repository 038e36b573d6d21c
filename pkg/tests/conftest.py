"""Shared fixtures plus the acceptance-criterion summary printer."""

import numpy as np
import pytest

_CRITERION_RESULTS = {}


def record_criterion(number: int, description: str, passed: bool):
    _CRITERION_RESULTS[number] = (description, passed)


def check_criterion(number: int, description: str, passed: bool):
    record_criterion(number, description, bool(passed))
    assert passed, f"acceptance criterion {number} failed: {description}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERION_RESULTS):
        description, passed = _CRITERION_RESULTS[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} [{verdict}] {description}")


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
