from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from frobvir.linalg import InconsistentSystemError, SingularSystemError, rank, rref, solve

from conftest import rationals


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_and_rref_agree_with_sympy(m):
    ours, pivots = rref(m)
    theirs, their_pivots = sympy.Matrix(m).rref()
    assert rank(m) == sympy.Matrix(m).rank()
    assert tuple(pivots) == their_pivots
    assert [[sympy.Rational(v.numerator, v.denominator) for v in row] for row in ours] == theirs.tolist()


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n + 1, max_size=n + 2),
    st.lists(rationals, min_size=n, max_size=n))))
def test_solve_recovers_x(data):
    a, x = data
    b = [sum(r * v for r, v in zip(row, x)) for row in a]
    if rank(a) < len(x):
        with pytest.raises(SingularSystemError):
            solve(a, b)
    else:
        assert solve(a, b) == x


def test_inconsistent_system():
    with pytest.raises(InconsistentSystemError):
        solve([[1, 0], [0, 1], [1, 1]], [1, 1, 3])


def test_singular_system():
    with pytest.raises(SingularSystemError):
        solve([[1, 2], [2, 4]], [1, 2])


def test_exact_small_solve():
    assert solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
