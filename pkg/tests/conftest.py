"""Shared fixtures and the acceptance-criteria reporter."""

from __future__ import annotations

import functools

import pytest

from lexidyn import FrequencyStore

TOL = 1e-12


def close(got: float, want: float, tol: float = TOL) -> None:
    """Absolute tolerance scaled by max(1, |want|)."""
    assert abs(got - want) <= tol * max(1.0, abs(want)), f"{got!r} != {want!r} (tol {tol})"


@pytest.fixture
def two_word_store() -> FrequencyStore:
    """a: 0.5 -> 0.25, abcd: 0.5 -> 0.75; mean length 2.5 -> 3.25."""
    return FrequencyStore.from_counts(
        {1900: {"a": 1, "abcd": 1}, 1950: {"a": 1, "abcd": 3}}
    )


# ---------------------------------------------------------------------------
# Acceptance reporting: tests in test_acceptance.py register one line per
# criterion; the summary prints them after the run.

ACCEPTANCE_RESULTS: dict[int, tuple[str, str, str]] = {}


def criterion(number: int, description: str):
    """Record PASS/FAIL for one acceptance criterion around a test."""

    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                ACCEPTANCE_RESULTS[number] = (description, "FAIL", f"{type(exc).__name__}")
                raise
            ACCEPTANCE_RESULTS[number] = (description, "PASS", detail or "")

        return wrapper

    return decorate


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        description, status, detail = ACCEPTANCE_RESULTS[number]
        suffix = f"  [{detail}]" if detail else ""
        tr.write_line(f"criterion {number:2d} {status}  {description}{suffix}")
