"""The Lie algebra of modes of V_F.

Generators are ``L_m (x) x`` for ``m`` in Z and ``x`` in F, written
``L^x_m := x_(m+1)`` for the degree-2 state ``x``, plus a central ``K``.  The
bracket follows from the operator product of two degree-2 generators,

    x_(0)y = d(xy),  x_(1)y = 2xy,  x_(2)y = 0,  x_(3)y = <x, y> 1,

through the commutator formula, giving

    [L^x_m, L^y_n] = (m - n) L^{xy}_{m+n} + delta_{m+n,0} (m^3 - m)/6 <x, y> K.

``K`` acts as 1 on the vacuum module, so ``<e, e>`` plays the role of
``e_(3)e``; the matching Virasoro-convention charge (``L_(3)L = c/2``) is
``2 <e, e>``, see :func:`charge_of_virasoro_vector`.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .frobenius import FrobeniusAlgebra, as_vector, charge, multiply, pairing
from .reports import ValidationReport

Mode = tuple[int, int]  # (m, basis index)


class ModeVector:
    """Finite combination of ``L_m (x) x_i`` plus a multiple of ``K``."""

    __slots__ = ("terms", "central")

    def __init__(self, terms: Mapping[Mode, Fraction] | None = None, central=0):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}
        self.central = Fraction(central)

    @classmethod
    def generator(cls, m: int, x: Sequence) -> "ModeVector":
        return cls({(m, i): c for i, c in enumerate(x)})

    def __add__(self, other: "ModeVector") -> "ModeVector":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return ModeVector(terms, self.central + other.central)

    def __neg__(self) -> "ModeVector":
        return self * -1

    def __sub__(self, other: "ModeVector") -> "ModeVector":
        return self + (-other)

    def __mul__(self, s) -> "ModeVector":
        s = Fraction(s)
        return ModeVector({k: v * s for k, v in self.terms.items()}, self.central * s)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModeVector):
            return NotImplemented
        return self.terms == other.terms and self.central == other.central

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.central))

    def is_zero(self) -> bool:
        return not self.terms and not self.central

    def format(self, labels: Sequence[str] | None = None) -> str:
        parts = []
        for (m, i), c in sorted(self.terms.items()):
            lab = labels[i] if labels else f"x{i}"
            parts.append(f"{c}*L[{m}]({lab})")
        if self.central:
            parts.append(f"{self.central}*K")
        return " + ".join(parts) or "0"

    def __repr__(self) -> str:
        return f"ModeVector({self.format()})"


def central_coefficient(m: int) -> Fraction:
    return Fraction(m ** 3 - m, 6)


def bracket_basis(F: FrobeniusAlgebra, m: int, i: int, n: int, j: int) -> ModeVector:
    terms = {}
    if m != n:
        for k, c in enumerate(F.mult[i][j]):
            if c:
                terms[(m + n, k)] = (m - n) * c
    central = central_coefficient(m) * F.form[i][j] if m + n == 0 else 0
    return ModeVector(terms, central)


def bracket(F: FrobeniusAlgebra, a: tuple[int, Sequence], b: tuple[int, Sequence]) -> ModeVector:
    """``[L_m (x) x, L_n (x) y]`` for coordinate vectors ``x``, ``y``."""
    (m, x), (n, y) = a, b
    x, y = as_vector(x, F.dim), as_vector(y, F.dim)
    terms = {}
    if m != n:
        for k, c in enumerate(multiply(F, x, y)):
            if c:
                terms[(m + n, k)] = (m - n) * c
    central = central_coefficient(m) * pairing(F, x, y) if m + n == 0 else 0
    return ModeVector(terms, central)


def bracket_vectors(F: FrobeniusAlgebra, u: ModeVector, v: ModeVector) -> ModeVector:
    out = ModeVector()
    for (m, i), a in u.terms.items():
        for (n, j), b in v.terms.items():
            out = out + bracket_basis(F, m, i, n, j) * (a * b)
    return out


def check_lie(F: FrobeniusAlgebra, modes: Iterable[int] = range(-3, 4)) -> ValidationReport:
    """Antisymmetry on all pairs and Jacobi on all triples of sampled generators."""
    gens = [(m, i) for m in modes for i in range(F.dim)]
    rep = ValidationReport(f"mode algebra of {F.name}")

    def lab(g):
        return f"L[{g[0]}]({F.labels[g[1]]})"

    for g, h in itertools.product(gens, repeat=2):
        lhs = bracket_basis(F, *g, *h)
        rhs = -bracket_basis(F, *h, *g)
        rep.record("antisymmetry", (lab(g), lab(h)), lhs, rhs, first_only=True)
    for g, h, k in itertools.product(gens, repeat=3):
        total = ModeVector()
        for a, b, c in ((g, h, k), (h, k, g), (k, g, h)):
            inner = bracket_basis(F, *a, *b)
            total = total + bracket_vectors(F, inner, ModeVector({c: 1}))
        rep.record("jacobi", (lab(g), lab(h), lab(k)), total, ModeVector(), first_only=True)
    return rep


def charge_of_virasoro_vector(F: FrobeniusAlgebra) -> Fraction:
    """Charge of ``e`` in the convention ``L_(3)L = c/2``, i.e. ``2 <e, e>``."""
    return 2 * charge(F)
