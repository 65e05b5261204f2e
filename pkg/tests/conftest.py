"""Shared fixtures and the acceptance-criteria terminal summary.

Tests in ``test_acceptance.py`` named ``test_criterion_NN_*`` each
cover one numbered acceptance criterion. Their outcomes are collected
here and echoed as one PASS/FAIL/SKIP line per criterion at the end of
the run, so the gate status is readable without scrolling the dots.
"""

import os
import re

import pytest

FIXTURES_DIR = os.path.join(os.path.dirname(__file__), "fixtures")

# Path to the real two-year scores CSV, for the conditional criteria.
# Either set GAPFAIR_COMPAS_CSV or drop the file at data/ in the repo.
_DEFAULT_COMPAS = os.path.join(
    os.path.dirname(os.path.dirname(__file__)),
    "data", "compas-scores-two-years.csv",
)


def compas_csv_path() -> str | None:
    path = os.environ.get("GAPFAIR_COMPAS_CSV", _DEFAULT_COMPAS)
    return path if os.path.exists(path) else None


@pytest.fixture
def fixtures_dir() -> str:
    return FIXTURES_DIR


_CRITERION_RE = re.compile(r"test_criterion_(\d+)_(\w+)")
_criterion_outcomes: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    match = _CRITERION_RE.search(report.nodeid)
    if not match:
        return
    number = int(match.group(1))
    title = match.group(2).replace("_", " ")
    if report.when == "call":
        outcome = "PASS" if report.passed else (
            "SKIP" if report.skipped else "FAIL")
        _criterion_outcomes[number] = (outcome, title)
    elif report.when == "setup" and (report.skipped or report.failed):
        outcome = "SKIP" if report.skipped else "FAIL"
        _criterion_outcomes.setdefault(number, (outcome, title))


def pytest_terminal_summary(terminalreporter):
    if not _criterion_outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_criterion_outcomes):
        outcome, title = _criterion_outcomes[number]
        terminalreporter.write_line(
            f"criterion {number:2d} [{outcome}] {title}"
        )
