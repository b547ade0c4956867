import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from frobvir.frobenius import (
    direct_sum,
    dual_numbers,
    group_algebra_z2,
    k_c,
    truncated_poly,
)


def builtins():
    return [
        k_c(5),
        k_c(0),
        k_c(Fraction(-2, 3)),
        dual_numbers(0),
        dual_numbers(3),
        group_algebra_z2(),
        truncated_poly(3),
        direct_sum(k_c(1), k_c(2)),
        direct_sum(k_c(1), dual_numbers(0)),
    ]


BUILTINS = builtins()
SMALL = [F for F in BUILTINS if F.dim <= 2]


@pytest.fixture(params=BUILTINS, ids=lambda F: F.name)
def algebra(request):
    return request.param


@pytest.fixture(params=SMALL, ids=lambda F: F.name)
def small_algebra(request):
    return request.param


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def vectors(d):
    return st.lists(rationals, min_size=d, max_size=d).map(tuple)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
