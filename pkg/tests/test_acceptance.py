"""Acceptance criteria 1-12, one PASS/FAIL line each (run with -s to see them)."""

import pytest

from hopftwist.acceptance import CRITERIA, criterion_12, run_criterion

SEED = 0
NUMBERS = sorted(CRITERIA)


@pytest.fixture(scope="module")
def results():
    return {n: run_criterion(n, SEED) for n in NUMBERS}


@pytest.mark.parametrize("number", NUMBERS)
def test_criterion(results, number):
    r = results[number]
    print(r.line())
    failed = [k for k, v in r.checks.items() if not v]
    assert r.ok, f"criterion {number} failed checks: {failed}"


def test_criterion_12_determinism(results):
    r = criterion_12(SEED, first=[results[n] for n in NUMBERS], numbers=NUMBERS)
    print(r.line())
    assert r.ok
