import itertools
from fractions import Fraction

import pytest
import sympy

from frobvir.algebroid import (
    IDENTITIES,
    VirasoroAlgebroid,
    check_axioms,
    check_cyclic_corollaries,
    from_frobenius,
    rational_base,
    replace,
)
from frobvir.frobenius import FrobeniusAlgebra, ShapeError, dual_numbers, k_c

from conftest import BUILTINS, SMALL


def _mutate(table, i, j, k, a=0):
    t = [[[list(c) for c in e] for e in row] for row in table]
    t[i][j][k][a] += 1
    return t


def test_symbolic_reduction_oracle():
    """Each identity holds identically for x(1)y = 2xy, x(0~)y = xy, <x,y> = lam(xy)."""
    x, y, z = sympy.symbols("x y z")
    lam = sympy.Function("lam")

    def pair(p, q):
        return sum(c * lam(m) for m, c in sympy.expand(p * q).as_coefficients_dict().items())

    def p1(p, q):
        return 2 * p * q

    def p0(p, q):
        return p * q

    sides = {
        "eq1": (p1(p1(x, y), z), p1(x, p1(y, z)) - p1(y, p1(x, z)) + 2 * p1(p0(x, z), y)),
        "eq2": (p0(x, y), -p0(y, x) + p1(y, x)),
        "eq3": (p0(p0(x, y), z), -p0(x, p1(y, z)) - p0(p0(x, z), y) + 2 * p1(p0(x, z), y)),
        "eq4": (p1(p0(x, y), z), p1(p0(x, z), y)),
        "eq5": (pair(p0(x, y), z), pair(p0(x, z), y)),
        "eq6": (pair(p1(x, y), z), 4 * pair(p0(x, z), y) - pair(y, p1(x, z))),
    }
    assert set(sides) == set(IDENTITIES)
    for name, (lhs, rhs) in sides.items():
        assert sympy.expand(lhs - rhs) == 0, name


@pytest.mark.parametrize("F", BUILTINS, ids=lambda F: F.name)
def test_vir_of_builtin_satisfies_all_identities(F):
    A = from_frobenius(F)
    rep = check_axioms(A)
    assert rep.ok, rep.summary()
    assert set(rep.checked) >= set(IDENTITIES)
    assert all(rep.checked[name] == F.dim ** 3 for name in IDENTITIES)
    assert check_cyclic_corollaries(A).ok


def test_from_frobenius_k_c():
    A = from_frobenius(k_c(7))
    assert A.rank == 1 and A.base.dim == 1
    assert A.op1[0][0] == ((2,),)
    assert A.op0t[0][0] == ((1,),)
    assert A.form[0][0] == (7,)


def test_from_frobenius_dual_numbers():
    A = from_frobenius(dual_numbers(0))
    t, one = 1, 0
    assert A.op1[t][t] == ((0,), (0,))
    assert A.op1[one][t] == ((0,), (2,))
    assert A.form[one][t] == (1,)


def test_from_frobenius_rejects_invalid():
    D = dual_numbers(0)
    bad = FrobeniusAlgebra(D.labels, D.mult, D.unit, [[0, 1], [1, 1]])
    with pytest.raises(ValueError, match="not a Frobenius algebra"):
        from_frobenius(bad)


def test_zero_op0t_breaks_eq2():
    A = from_frobenius(k_c(1))
    broken = replace(A, op0t=[[((0,),)]])
    rep = check_axioms(broken)
    assert "eq2" in rep.failed_axioms()
    (v,) = [v for v in rep if v.axiom == "eq2"]
    assert v.witness == ("e", "e", "e")
    assert v.lhs == ((0,),) and v.rhs == ((2,),)


def test_eq4_specialization_on_basis_triples(algebra):
    A = from_frobenius(algebra)
    basis = [A.basis(i) for i in range(A.rank)]
    for x, y, z in itertools.product(basis, repeat=3):
        assert A.p1(A.p0t(x, y), z) == A.p1(A.p0t(x, z), y)


@pytest.mark.parametrize("F", SMALL, ids=lambda F: F.name)
def test_op0t_mutations_break_eq2_to_eq5(F):
    A = from_frobenius(F)
    d = F.dim
    for i, j, k in itertools.product(range(d), repeat=3):
        rep = check_axioms(replace(A, op0t=_mutate(A.op0t, i, j, k)))
        assert rep.failed_axioms() & {"eq2", "eq3", "eq4", "eq5"}, (i, j, k)


def test_form_mutation_detected_by_eq5_and_eq6():
    A = from_frobenius(dual_numbers(0))
    form = [[list(e) for e in row] for row in A.form]
    form[1][1][0] += 1
    rep = check_axioms(replace(A, form=form))
    assert {"eq5", "eq6"} <= rep.failed_axioms()


def test_asymmetric_op1_reported():
    A = from_frobenius(dual_numbers(0))
    rep = check_axioms(replace(A, op1=_mutate(A.op1, 0, 1, 0)))
    assert "op1-symmetry" in rep.failed_axioms()


def test_report_keeps_first_witness_and_counts_all():
    A = from_frobenius(dual_numbers(0))
    rep = check_axioms(replace(A, op0t=[[((0,), (0,))] * 2] * 2))
    eq2 = [v for v in rep if v.axiom == "eq2"]
    assert len(eq2) == 1
    assert eq2[0].witness == ("1", "1", "1")
    assert rep.failures["eq2"] > 1


def test_cyclic_corollaries_catch_broken_op0t():
    A = from_frobenius(dual_numbers(0))
    rep = check_cyclic_corollaries(replace(A, op0t=_mutate(A.op0t, 1, 1, 0)))
    assert rep.failed_axioms() == {"cycle-form", "cycle-op1"}


# -- algebroids over a nontrivial base ------------------------------------

def _over(base: FrobeniusAlgebra, F: FrobeniusAlgebra, form_scale=None):
    """Vir(F) with scalars extended to ``base``, optionally scaling the form by an element."""
    da, d = base.dim, F.dim
    u = base.unit

    def elem(c):
        return tuple(c * a for a in u)

    op1 = [[tuple(elem(2 * c) for c in F.mult[i][j]) for j in range(d)] for i in range(d)]
    op0t = [[tuple(elem(c) for c in F.mult[i][j]) for j in range(d)] for i in range(d)]
    scale = form_scale or u
    form = [[tuple(F.form[i][j] * s for s in scale) for j in range(d)] for i in range(d)]
    return VirasoroAlgebroid(base, F.labels, op1, op0t, form)


def test_algebroid_over_dual_numbers_base():
    base = dual_numbers(0)
    for F in (k_c(1), dual_numbers(3)):
        assert check_axioms(_over(base, F)).ok
    # a form valued in the nilpotent part of the base is still fine
    assert check_axioms(_over(base, k_c(1), form_scale=(0, 1))).ok


def test_base_coefficients_enter_the_check():
    base = dual_numbers(0)
    A = _over(base, k_c(1))
    # x(0~)x = t*x: twice that is 2t*x, not x(1)x = 2x
    broken = replace(A, op0t=[[((0, 1),)]])
    rep = check_axioms(broken)
    assert "eq2" in rep.failed_axioms()


def test_a_bilinear_extension():
    base = dual_numbers(0)
    A = _over(base, k_c(1))
    t = (Fraction(0), Fraction(1))
    tv = (t,)
    # (t v)(1)(t v) = t^2 (v(1)v) = 0
    assert A.p1(tv, tv) == ((0, 0),)
    assert A.p1(tv, A.basis(0)) == ((0, 2),)
    assert A.pair(tv, A.basis(0)) == (0, 1)


def test_invalid_base_rejected():
    bad_base = FrobeniusAlgebra(("1", "t"), [[[1, 0], [0, 1]], [[0, 2], [0, 0]]], [1, 0], [[0, 0], [0, 0]])
    A = _over(bad_base, k_c(1))
    with pytest.raises(ValueError, match="base algebra"):
        check_axioms(A)


def test_shape_errors():
    with pytest.raises(ShapeError):
        VirasoroAlgebroid(rational_base(), ("v",), [[((1,),)]], [[((1,), (0,))]], [[(1,)]])
    with pytest.raises(ShapeError):
        VirasoroAlgebroid(rational_base(), ("v", "w"), [[((1,),)]], [[((1,),)]], [[(1,)]])
