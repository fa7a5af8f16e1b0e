"""Acceptance battery: one test per criterion, one pass/fail line each.

Runs under pytest (lines are collected into the terminal summary) or as a
script: ``python tests/test_acceptance.py``.
"""

import os
import sys

import pytest

from leibniz_local.acceptance import DEFAULT_SEED, run_suite

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # running as a script from elsewhere
    ACCEPTANCE_LINES = []


def _workers():
    env = os.environ.get("LEIBNIZ_WORKERS")
    return int(env) if env else None


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run_suite(seed=DEFAULT_SEED, workers=_workers())}


@pytest.mark.parametrize("number", range(1, 10))
def test_criterion(results, number):
    r = results[number]
    ACCEPTANCE_LINES.append(r.line())
    print(r.line())
    assert r.passed, r.to_json()


if __name__ == "__main__":
    rs = run_suite(seed=DEFAULT_SEED, workers=_workers(), echo=print)
    sys.exit(0 if all(r.passed for r in rs) else 1)
