"""Finite-dimensional commutative Frobenius algebras over Q.

An algebra is stored by dense structure constants: ``mult[i][j][k]`` is the
coefficient of ``x_k`` in ``x_i * x_j``, ``unit`` the coordinates of the unit
``e`` and ``form[i][j] = <x_i, x_j>``.  The form may be degenerate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import rank
from .reports import ValidationReport

Vector = tuple[Fraction, ...]


class ShapeError(ValueError):
    """Structure tensors of inconsistent size (not an axiom violation)."""


def as_vector(values: Sequence, dim: int | None = None) -> Vector:
    v = tuple(Fraction(x) for x in values)
    if dim is not None and len(v) != dim:
        raise ShapeError(f"expected a vector of length {dim}, got {len(v)}")
    return v


@dataclass(frozen=True)
class FrobeniusAlgebra:
    labels: tuple[str, ...]
    mult: tuple[tuple[Vector, ...], ...]
    unit: Vector
    form: tuple[Vector, ...]
    name: str = "F"

    def __post_init__(self):
        d = len(self.labels)
        if d == 0:
            raise ShapeError("dimension must be positive")
        if len(set(self.labels)) != d:
            raise ShapeError(f"basis labels are not distinct: {self.labels}")
        if len(self.mult) != d or any(len(row) != d for row in self.mult):
            raise ShapeError(f"product table must be {d}x{d}x{d}")
        mult = tuple(tuple(as_vector(v, d) for v in row) for row in self.mult)
        if len(self.form) != d:
            raise ShapeError(f"form must be {d}x{d}")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "unit", as_vector(self.unit, d))
        object.__setattr__(self, "form", tuple(as_vector(r, d) for r in self.form))

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def zero(self) -> Vector:
        return (Fraction(0),) * self.dim

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def format_vector(self, v: Sequence) -> str:
        return format_combination(v, self.labels)


def format_combination(v: Sequence, labels: Sequence[str]) -> str:
    terms = []
    for c, lab in zip(v, labels):
        if c == 0:
            continue
        terms.append(lab if c == 1 else f"{c}*{lab}")
    return " + ".join(terms) if terms else "0"


def multiply(F: FrobeniusAlgebra, x: Sequence, y: Sequence) -> Vector:
    d = F.dim
    x, y = as_vector(x, d), as_vector(y, d)
    out = [Fraction(0)] * d
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            s = xi * yj
            for k, c in enumerate(F.mult[i][j]):
                if c:
                    out[k] += s * c
    return tuple(out)


def pairing(F: FrobeniusAlgebra, x: Sequence, y: Sequence) -> Fraction:
    d = F.dim
    x, y = as_vector(x, d), as_vector(y, d)
    return sum((xi * F.form[i][j] * yj for i, xi in enumerate(x) if xi
                for j, yj in enumerate(y) if yj), Fraction(0))


def charge(F: FrobeniusAlgebra) -> Fraction:
    return pairing(F, F.unit, F.unit)


def validate(F: FrobeniusAlgebra) -> ValidationReport:
    """Check the five defining axiom families on all basis index tuples.

    Every violation is kept, ordered by axiom family and then
    lexicographically by index tuple.  The rank of the form is attached as
    ``info["form_rank"]`` (informational only).
    """
    d, c, u, b = F.dim, F.mult, F.unit, F.form
    rep = ValidationReport(f"algebra {F.name}")
    lab = F.labels
    idx = range(d)

    for i, j, k in itertools.product(idx, repeat=3):
        rep.record("commutativity", (lab[i], lab[j], lab[k]), c[i][j][k], c[j][i][k])
    for i, j, k, q in itertools.product(idx, repeat=4):
        lhs = sum(c[i][j][p] * c[p][k][q] for p in idx)
        rhs = sum(c[j][k][p] * c[i][p][q] for p in idx)
        rep.record("associativity", (lab[i], lab[j], lab[k], lab[q]), lhs, rhs)
    for j, k in itertools.product(idx, repeat=2):
        lhs = sum(u[i] * c[i][j][k] for i in idx)
        rep.record("unit", (lab[j], lab[k]), lhs, Fraction(int(j == k)))
    for i, j in itertools.product(idx, repeat=2):
        rep.record("form-symmetry", (lab[i], lab[j]), b[i][j], b[j][i])
    for i, j, k in itertools.product(idx, repeat=3):
        lhs = sum(c[i][j][p] * b[p][k] for p in idx)
        rhs = sum(c[j][k][p] * b[i][p] for p in idx)
        rep.record("invariance", (lab[i], lab[j], lab[k]), lhs, rhs)

    r = rank(b)
    rep.info["form_rank"] = r
    rep.info["nondegenerate"] = r == d
    return rep


def _algebra(name, labels, products, unit, form) -> FrobeniusAlgebra:
    """Build from a sparse product table ``{(i, j): {k: coeff}}``, filled symmetrically."""
    d = len(labels)
    mult = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for (i, j), out in products.items():
        for k, v in out.items():
            mult[i][j][k] = Fraction(v)
            mult[j][i][k] = Fraction(v)
    return FrobeniusAlgebra(tuple(labels), mult, unit, form, name=name)


def k_c(c=1) -> FrobeniusAlgebra:
    c = Fraction(c)
    return _algebra(f"k_{c}", ["e"], {(0, 0): {0: 1}}, [1], [[c]])


def dual_numbers(a=0) -> FrobeniusAlgebra:
    """Q[t]/(t^2) with form [[a, 1], [1, 0]]."""
    a = Fraction(a)
    return _algebra(f"dual_numbers({a})", ["1", "t"],
                    {(0, 0): {0: 1}, (0, 1): {1: 1}}, [1, 0], [[a, 1], [1, 0]])


def truncated_poly(m: int = 3) -> FrobeniusAlgebra:
    """Q[t]/(t^m) with <t^i, t^j> = 1 exactly when i + j = m - 1."""
    if m < 1:
        raise ValueError("truncation order must be >= 1")
    labels = ["1"] + ["t" if i == 1 else f"t^{i}" for i in range(1, m)]
    products = {(i, j): {i + j: 1} for i in range(m) for j in range(i, m) if i + j < m}
    form = [[int(i + j == m - 1) for j in range(m)] for i in range(m)]
    return _algebra(f"truncated_poly({m})", labels, products,
                    [1] + [0] * (m - 1), form)


def group_algebra_z2() -> FrobeniusAlgebra:
    """Q[Z/2] with its trace form."""
    return _algebra("group_algebra_z2", ["1", "g"],
                    {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 1): {0: 1}},
                    [1, 0], [[2, 0], [0, 2]])


def direct_sum(F1: FrobeniusAlgebra, F2: FrobeniusAlgebra) -> FrobeniusAlgebra:
    """Product algebra F1 x F2 with the orthogonal sum of the forms."""
    d1, d = F1.dim, F1.dim + F2.dim
    zero = Fraction(0)
    mult = [[[zero] * d for _ in range(d)] for _ in range(d)]
    form = [[zero] * d for _ in range(d)]
    for off, G in ((0, F1), (d1, F2)):
        for i, j, k in itertools.product(range(G.dim), repeat=3):
            mult[off + i][off + j][off + k] = G.mult[i][j][k]
        for i, j in itertools.product(range(G.dim), repeat=2):
            form[off + i][off + j] = G.form[i][j]
    labels = [f"{l}_1" for l in F1.labels] + [f"{l}_2" for l in F2.labels]
    return FrobeniusAlgebra(tuple(labels), mult, F1.unit + F2.unit, form,
                            name=f"direct_sum({F1.name},{F2.name})")


CATALOG = {
    "k_c": k_c,
    "dual_numbers": dual_numbers,
    "truncated_poly": truncated_poly,
    "group_algebra_z2": group_algebra_z2,
    "direct_sum": direct_sum,
}


def builtin(name: str, *params) -> FrobeniusAlgebra:
    try:
        factory = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown built-in algebra {name!r}; "
                       f"choose from {', '.join(CATALOG)}") from None
    return factory(*params)


def parse_builtin(expr: str) -> FrobeniusAlgebra:
    """Parse expressions like ``k_c(5)`` or ``direct_sum(k_c(1), dual_numbers(0))``."""
    expr = expr.replace(" ", "")
    pos = 0

    def atom():
        nonlocal pos
        start = pos
        while pos < len(expr) and expr[pos] not in "(),":
            pos += 1
        return expr[start:pos]

    def node():
        nonlocal pos
        name = atom()
        if name.startswith("k_") and name != "k_c":
            return k_c(Fraction(name[2:]))
        if name not in CATALOG:
            raise ValueError(f"unknown built-in algebra {name!r} in {expr!r}")
        args = []
        if pos < len(expr) and expr[pos] == "(":
            pos += 1
            while expr[pos] != ")":
                if name == "direct_sum":
                    args.append(node())
                else:
                    tok = atom()
                    args.append(int(tok) if name == "truncated_poly" else Fraction(tok))
                if expr[pos] == ",":
                    pos += 1
            pos += 1
        return builtin(name, *args)

    try:
        F = node()
    except (IndexError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse built-in expression {expr!r}: {exc}") from None
    if pos != len(expr):
        raise ValueError(f"trailing text in built-in expression {expr!r}")
    return F
