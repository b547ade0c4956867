"""Virasoro algebroids over a commutative base algebra.

``V2`` is a free ``A``-module of rank ``r``; an element is a tuple of ``r``
coordinates, each an ``A``-vector.  The three operations are stored as
``A``-multilinear tensors on the basis of ``V2``:

* ``op1[i][j]``  = ``v_i _(1) v_j``   (an element of ``V2``)
* ``op0t[i][j]`` = ``v_i _(0~) v_j``  (an element of ``V2``)
* ``form[i][j]`` = ``<v_i, v_j>``     (an element of ``A``)

so ``A``-bilinearity holds by construction and identities only need checking
on basis triples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .frobenius import FrobeniusAlgebra, ShapeError, as_vector, format_combination, multiply, validate
from .reports import ValidationReport

AElem = tuple[Fraction, ...]
V2Elem = tuple[AElem, ...]

IDENTITIES = ("eq1", "eq2", "eq3", "eq4", "eq5", "eq6")


def rational_base() -> FrobeniusAlgebra:
    """Q itself as a base algebra (its form is unused)."""
    return FrobeniusAlgebra(("1",), [[[1]]], [1], [[0]], name="Q")


@dataclass(frozen=True)
class VirasoroAlgebroid:
    base: FrobeniusAlgebra
    labels: tuple[str, ...]
    op1: tuple[tuple[V2Elem, ...], ...]
    op0t: tuple[tuple[V2Elem, ...], ...]
    form: tuple[tuple[AElem, ...], ...]
    name: str = "A"

    def __post_init__(self):
        r, da = len(self.labels), self.base.dim
        if r == 0:
            raise ShapeError("rank must be positive")
        if len(set(self.labels)) != r:
            raise ShapeError(f"V2 labels are not distinct: {self.labels}")

        def v2(e):
            if len(e) != r:
                raise ShapeError(f"V2 element must have {r} coordinates")
            return tuple(as_vector(a, da) for a in e)

        def table(t, conv, what):
            if len(t) != r or any(len(row) != r for row in t):
                raise ShapeError(f"{what} table must be {r}x{r}")
            return tuple(tuple(conv(e) for e in row) for row in t)

        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "op1", table(self.op1, v2, "op1"))
        object.__setattr__(self, "op0t", table(self.op0t, v2, "op0t"))
        object.__setattr__(self, "form", table(self.form, lambda a: as_vector(a, da), "form"))

    @property
    def rank(self) -> int:
        return len(self.labels)

    # -- arithmetic in A and V2 ------------------------------------------

    def a_zero(self) -> AElem:
        return self.base.zero()

    def v_zero(self) -> V2Elem:
        return (self.a_zero(),) * self.rank

    def basis(self, i: int) -> V2Elem:
        z = self.a_zero()
        return tuple(self.base.unit if k == i else z for k in range(self.rank))

    def a_mul(self, a: AElem, b: AElem) -> AElem:
        return multiply(self.base, a, b)

    def v_add(self, *xs: V2Elem, coeffs: Sequence = ()) -> V2Elem:
        coeffs = list(coeffs) or [1] * len(xs)
        return tuple(
            tuple(sum((Fraction(c) * x[k][a] for c, x in zip(coeffs, xs)), Fraction(0))
                  for a in range(self.base.dim))
            for k in range(self.rank))

    def _extend(self, table, x: V2Elem, y: V2Elem, out_rank: int | None):
        # A-bilinear extension of a basis table; out_rank None means A-valued
        da = self.base.dim
        acc = [[Fraction(0)] * da for _ in range(out_rank or 1)]
        for i, xi in enumerate(x):
            if not any(xi):
                continue
            for j, yj in enumerate(y):
                if not any(yj):
                    continue
                coef = self.a_mul(xi, yj)
                if not any(coef):
                    continue
                entry = table[i][j]
                parts = entry if out_rank else (entry,)
                for k, part in enumerate(parts):
                    prod = self.a_mul(coef, part)
                    for a in range(da):
                        acc[k][a] += prod[a]
        if out_rank:
            return tuple(tuple(v) for v in acc)
        return tuple(acc[0])

    def p1(self, x: V2Elem, y: V2Elem) -> V2Elem:
        return self._extend(self.op1, x, y, self.rank)

    def p0t(self, x: V2Elem, y: V2Elem) -> V2Elem:
        return self._extend(self.op0t, x, y, self.rank)

    def pair(self, x: V2Elem, y: V2Elem) -> AElem:
        return self._extend(self.form, x, y, None)

    def format_v2(self, x: V2Elem) -> str:
        terms = []
        for k, a in enumerate(x):
            if any(a):
                coeff = format_combination(a, self.base.labels)
                terms.append(f"({coeff})*{self.labels[k]}")
        return " + ".join(terms) if terms else "0"


def _identities(A: VirasoroAlgebroid) -> dict[str, Callable]:
    p1, p0, pr, add = A.p1, A.p0t, A.pair, A.v_add
    return {
        # (x(1)y)(1)z = x(1)(y(1)z) - y(1)(x(1)z) + 2 (x(0~)z)(1)y
        "eq1": lambda x, y, z: (
            p1(p1(x, y), z),
            add(p1(x, p1(y, z)), p1(y, p1(x, z)), p1(p0(x, z), y), coeffs=(1, -1, 2))),
        # x(0~)y = -y(0~)x + y(1)x
        "eq2": lambda x, y, z: (p0(x, y), add(p0(y, x), p1(y, x), coeffs=(-1, 1))),
        # (x(0~)y)(0~)z = -x(0~)(y(1)z) - (x(0~)z)(0~)y + 2 (x(0~)z)(1)y
        "eq3": lambda x, y, z: (
            p0(p0(x, y), z),
            add(p0(x, p1(y, z)), p0(p0(x, z), y), p1(p0(x, z), y), coeffs=(-1, -1, 2))),
        # (x(0~)y)(1)z = (x(0~)z)(1)y
        "eq4": lambda x, y, z: (p1(p0(x, y), z), p1(p0(x, z), y)),
        # <x(0~)y, z> = <x(0~)z, y>
        "eq5": lambda x, y, z: (pr(p0(x, y), z), pr(p0(x, z), y)),
        # <x(1)y, z> = 4 <x(0~)z, y> - <y, x(1)z>
        "eq6": lambda x, y, z: (
            pr(p1(x, y), z),
            tuple(4 * a - b for a, b in zip(pr(p0(x, z), y), pr(y, p1(x, z))))),
    }


def _check_base(A: VirasoroAlgebroid) -> None:
    rep = validate(A.base)
    bad = rep.failed_axioms() & {"commutativity", "associativity", "unit"}
    if bad:
        raise ValueError(f"base algebra {A.base.name} is not a commutative unital "
                         f"algebra: {', '.join(sorted(bad))} fail")


def check_axioms(A: VirasoroAlgebroid) -> ValidationReport:
    """Evaluate the six algebroid identities on every basis triple.

    The report keeps the first failing witness per identity (triples in
    lexicographic order) and counts all failures.  Symmetry of ``op1`` and of
    the form is checked alongside under ``op1-symmetry``/``form-symmetry``.
    """
    _check_base(A)
    rep = ValidationReport(f"algebroid {A.name}")
    basis = [A.basis(i) for i in range(A.rank)]
    lab = A.labels
    for i, j in itertools.product(range(A.rank), repeat=2):
        rep.record("op1-symmetry", (lab[i], lab[j]), A.op1[i][j], A.op1[j][i], first_only=True)
        rep.record("form-symmetry", (lab[i], lab[j]), A.form[i][j], A.form[j][i], first_only=True)
    ids = _identities(A)
    for name in IDENTITIES:
        f = ids[name]
        for i, j, k in itertools.product(range(A.rank), repeat=3):
            lhs, rhs = f(basis[i], basis[j], basis[k])
            rep.record(name, (lab[i], lab[j], lab[k]), lhs, rhs, first_only=True)
    return rep


def check_cyclic_corollaries(A: VirasoroAlgebroid) -> ValidationReport:
    """Cyclic-sum consequences of the identities, as a redundant consistency check.

    ``cycle-form``:  Cyc <x(1)y, z> = 2 Cyc <x(0~)y, z>
    ``cycle-op1``:   2 Cyc x(1)(y(0~)z) = Cyc x(1)(y(1)z)
    """
    rep = ValidationReport(f"algebroid {A.name} (cyclic sums)")
    basis = [A.basis(i) for i in range(A.rank)]
    for i, j, k in itertools.product(range(A.rank), repeat=3):
        triples = [(i, j, k), (j, k, i), (k, i, j)]
        w = tuple(A.labels[t] for t in (i, j, k))
        lhs = [sum(c) for c in zip(*(A.pair(A.p1(basis[a], basis[b]), basis[c]) for a, b, c in triples))]
        rhs = [2 * sum(c) for c in zip(*(A.pair(A.p0t(basis[a], basis[b]), basis[c]) for a, b, c in triples))]
        rep.record("cycle-form", w, lhs, rhs, first_only=True)
        lhs = A.v_add(*(A.p1(basis[a], A.p0t(basis[b], basis[c])) for a, b, c in triples),
                      coeffs=(2, 2, 2))
        rhs = A.v_add(*(A.p1(basis[a], A.p1(basis[b], basis[c])) for a, b, c in triples))
        rep.record("cycle-op1", w, lhs, rhs, first_only=True)
    return rep


def from_frobenius(F: FrobeniusAlgebra) -> VirasoroAlgebroid:
    """The algebroid Vir(F): x(1)y = 2xy, x(0~)y = xy, <x, y> from F, over Q."""
    rep = validate(F)
    if not rep.ok:
        raise ValueError(f"not a Frobenius algebra:\n{rep.summary()}")
    d = F.dim

    def v2(vec, scale):
        return tuple((scale * c,) for c in vec)

    op1 = [[v2(F.mult[i][j], 2) for j in range(d)] for i in range(d)]
    op0t = [[v2(F.mult[i][j], 1) for j in range(d)] for i in range(d)]
    form = [[(F.form[i][j],) for j in range(d)] for i in range(d)]
    return VirasoroAlgebroid(rational_base(), F.labels, op1, op0t, form, name=f"Vir({F.name})")


def replace(A: VirasoroAlgebroid, **changes) -> VirasoroAlgebroid:
    """Copy of ``A`` with some tables swapped out (used for mutation tests)."""
    fields = dict(base=A.base, labels=A.labels, op1=A.op1, op0t=A.op0t, form=A.form, name=A.name)
    fields.update(changes)
    return VirasoroAlgebroid(**fields)
