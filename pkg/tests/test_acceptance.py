"""One test per acceptance criterion; each prints a PASS/FAIL line.

The lines are also collected and repeated in the terminal summary
(see conftest.py), so they show up without ``-s``.
"""

import pytest

from qmatch.verify import ALL_CHECKS

RESULTS = {}


@pytest.fixture(scope="module")
def checks():
    return {fn.number: fn for fn in ALL_CHECKS}


def _run(checks, number):
    if number not in RESULTS:
        RESULTS[number] = checks[number]()
        print(RESULTS[number].line())
    return RESULTS[number]


@pytest.mark.parametrize("number", [1, 2, 3, 4, 5, 6, 8, 9, 10, 11])
def test_criterion(checks, number):
    res = _run(checks, number)
    assert res.passed, res.failures


def test_criterion_7_secants(checks):
    res = _run(checks, 7)
    assert [f for f in res.failures if f.startswith("secant")] == []


@pytest.mark.xfail(strict=True, reason="the literal footnote construction has q^3+2q^2+q+1 lines "
                   "meeting l alone, more than the printed total; analysis in the decisions ledger")
def test_criterion_7_footnote(checks):
    res = _run(checks, 7)
    assert [f for f in res.failures if f.startswith("footnote")] == []
