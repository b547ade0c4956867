import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobvir.frobenius import FrobeniusAlgebra, dual_numbers, k_c, multiply, pairing
from frobvir.modes import (
    ModeVector,
    bracket,
    bracket_basis,
    bracket_vectors,
    central_coefficient,
    charge_of_virasoro_vector,
    check_lie,
)

from conftest import BUILTINS, SMALL, vectors

D = dual_numbers(0)


def binom(p, j):
    """C(p, j) for any integer p."""
    out = Fraction(1)
    for r in range(j):
        out = out * (p - r) / (r + 1)
    return out


def ope_oracle(F, m, x, n, y):
    """[x_(p), y_(q)] from the OPE table of two degree-2 states, with p = m + 1, q = n + 1.

    x_(0)y = d(xy), x_(1)y = 2xy, x_(2)y = 0, x_(3)y = <x,y> 1, together with
    (d a)_(k) = -k a_(k-1) and 1_(k) = delta_{k,-1}.
    """
    p, q = m + 1, n + 1
    xy = multiply(F, x, y)
    coeff = Fraction(0)
    central = Fraction(0)
    # j = 0: (d(xy))_(p+q) = -(p+q) (xy)_(p+q-1)
    coeff += binom(p, 0) * -(p + q)
    # j = 1: (2xy)_(p+q-1)
    coeff += binom(p, 1) * 2
    # j = 3: <x,y> 1_(p+q-3)
    if p + q - 3 == -1:
        central += binom(p, 3) * pairing(F, x, y)
    out = ModeVector({(m + n, k): coeff * c for k, c in enumerate(xy)}, central)
    return out


def test_bracket_trivial_central():
    for F in BUILTINS:
        x = tuple(range(1, F.dim + 1))
        y = tuple(range(F.dim, 0, -1))
        got = bracket(F, (1, x), (-1, y))
        assert got == ModeVector.generator(0, multiply(F, x, y)) * 2
        assert got.central == 0


def test_bracket_virasoro_k_c():
    got = bracket(k_c(7), (2, (1,)), (-2, (1,)))
    assert got == ModeVector({(0, 0): 4}, central=7)


def test_bracket_dual_nilpotent():
    t = (0, 1)
    assert bracket(D, (0, t), (3, t)).is_zero()


@pytest.mark.parametrize("F", SMALL, ids=lambda F: F.name)
def test_bracket_matches_ope_oracle(F):
    basis = [F.basis_vector(i) for i in range(F.dim)]
    for m, n in itertools.product(range(-5, 6), repeat=2):
        for x, y in itertools.product(basis, repeat=2):
            assert bracket(F, (m, x), (n, y)) == ope_oracle(F, m, x, n, y), (m, n, x, y)


@settings(max_examples=50, deadline=None)
@given(vectors(3), vectors(3), st.integers(-6, 6), st.integers(-6, 6))
def test_bracket_matches_ope_oracle_on_vectors(x, y, m, n):
    F = BUILTINS[6]  # truncated_poly(3)
    assert bracket(F, (m, x), (n, y)) == ope_oracle(F, m, x, n, y)


def test_bracket_agrees_with_basis_expansion(algebra):
    F = algebra
    x = tuple(Fraction(i + 1, 2) for i in range(F.dim))
    y = tuple(Fraction(3 - i) for i in range(F.dim))
    for m, n in ((2, -2), (3, 1), (-1, 1), (0, 0)):
        via = bracket_vectors(F, ModeVector.generator(m, x), ModeVector.generator(n, y))
        assert via == bracket(F, (m, x), (n, y))


def test_central_term_support():
    for m in range(-6, 7):
        assert (central_coefficient(m) != 0) == (abs(m) >= 2)
    for F in BUILTINS:
        for (m, n), i, j in itertools.product(itertools.product(range(-4, 5), repeat=2),
                                              range(F.dim), range(F.dim)):
            c = bracket_basis(F, m, i, n, j).central
            if m + n != 0 or abs(m) < 2:
                assert c == 0


@pytest.mark.parametrize("F", [k_c(1), D], ids=lambda F: F.name)
def test_check_lie_passes(F):
    rep = check_lie(F, range(-3, 4))
    assert rep.ok, rep.summary()
    g = 7 * F.dim
    assert rep.checked["antisymmetry"] == g ** 2
    assert rep.checked["jacobi"] == g ** 3


def test_check_lie_fails_for_non_invariant_form():
    bad = FrobeniusAlgebra(D.labels, D.mult, D.unit, [[0, 1], [1, 1]])
    rep = check_lie(bad, range(-3, 4))
    assert rep.failed_axioms() == {"jacobi"}
    (v,) = [v for v in rep if v.axiom == "jacobi"]
    assert v.rhs == ModeVector()
    assert v.lhs.terms == {} and v.lhs.central != 0


def test_check_lie_fails_for_non_commutative_product():
    mult = [[[1, 0], [0, 1]], [[0, 2], [0, 0]]]
    nc = FrobeniusAlgebra(("1", "t"), mult, (1, 0), [[0, 1], [1, 0]])
    assert "antisymmetry" in check_lie(nc, range(-1, 2)).failed_axioms()


def test_charge_of_virasoro_vector():
    assert charge_of_virasoro_vector(k_c(5)) == 10
    assert charge_of_virasoro_vector(D) == 0
    assert charge_of_virasoro_vector(dual_numbers(3)) == 6


def test_mode_vector_arithmetic():
    a = ModeVector({(1, 0): 2, (0, 1): 0}, central=1)
    assert a.terms == {(1, 0): 2}
    b = ModeVector({(1, 0): -2})
    assert (a + b) == ModeVector(central=1)
    assert (a - a).is_zero()
    assert 3 * a == a * 3 == ModeVector({(1, 0): 6}, central=3)
    assert hash(a) == hash(ModeVector({(1, 0): 2}, central=1))
    assert a.format(["e", "t"]) == "2*L[1](e) + 1*K"
    assert ModeVector().format() == "0"
