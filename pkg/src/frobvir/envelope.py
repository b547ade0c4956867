"""The vacuum module V_F, built degree by degree up to a cutoff.

A PBW monomial is a tuple of factors ``(n, i)`` with ``n >= 2`` standing for
``L_{-n} (x) x_i``, sorted by decreasing ``n`` and then increasing ``i``; the
empty tuple is the vacuum.  States are homogeneous finite combinations of
monomials.

The mode action is computed by straightening: an operator is commuted to
the right through the PBW factors using the mode bracket, annihilating the
vacuum when ``m >= -1``.  General products ``u_(n)v`` are rebuilt from the
first PBW factor of ``u`` with the iterate formula

    (a_(k) b)_(n) = sum_j (-1)^j C(k, j) (a_(k-j) b_(n+j) - (-1)^k b_(k+n-j) a_(j)),

where ``a`` is a degree-2 generator, ``k = 1 - p`` for the factor
``L_{-p} (x) x`` and ``b`` is the rest of the monomial.

Internal computations are not limited by the cutoff; only the public API
refuses inputs and results above it.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Mapping, Sequence

from .frobenius import FrobeniusAlgebra, Vector, as_vector
from .linalg import SingularSystemError, InconsistentSystemError, rank, solve
from .modes import central_coefficient

Factor = tuple[int, int]
Monomial = tuple[Factor, ...]
Coeffs = dict[Monomial, Fraction]

VACUUM: Monomial = ()
DEFAULT_CUTOFF = 8


class CutoffError(ValueError):
    """A requested state lies above the degree cutoff of the envelope."""


class StructureError(ArithmeticError):
    """The envelope does not have the expected graded structure."""


def _key(f: Factor) -> tuple[int, int]:
    return (-f[0], f[1])


def normal_order(factors) -> Monomial:
    return tuple(sorted(factors, key=_key))


def monomial_degree(mono: Monomial) -> int:
    return sum(n for n, _ in mono)


def _add_into(acc: Coeffs, terms: Mapping[Monomial, Fraction], scale=1) -> None:
    for mono, c in terms.items():
        v = acc.get(mono, 0) + scale * c
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)


def gen_binom(k: int, j: int) -> Fraction:
    """Binomial coefficient C(k, j) for any integer ``k`` and ``j >= 0``."""
    num = 1
    for t in range(j):
        num *= k - t
    return Fraction(num, factorial(j))


def partitions_min2(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` into parts >= 2, parts non-increasing, largest first."""
    if n == 0:
        yield ()
        return
    largest = n if largest is None else min(largest, n)
    for p in range(largest, 1, -1):
        for rest in partitions_min2(n - p, p):
            yield (p,) + rest


class State:
    """A homogeneous vector of V_F: ``degree`` plus ``{monomial: coefficient}``."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Mapping[Monomial, Fraction] | None = None):
        self.degree = degree
        self.coeffs: Coeffs = {}
        for mono, c in (coeffs or {}).items():
            if c:
                if monomial_degree(mono) != degree:
                    raise ValueError(f"monomial {mono} is not of degree {degree}")
                self.coeffs[mono] = Fraction(c)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "State") -> "State":
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"adding states of degrees {self.degree} and {other.degree}")
        acc = dict(self.coeffs)
        _add_into(acc, other.coeffs)
        return State(self.degree if self.coeffs or not other.coeffs else other.degree, acc)

    def __neg__(self) -> "State":
        return self * -1

    def __sub__(self, other: "State") -> "State":
        return self + (-other)

    def __mul__(self, s) -> "State":
        s = Fraction(s)
        return State(self.degree, {m: c * s for m, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        return self.degree == other.degree or not self.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.coeffs.get(mono, Fraction(0))

    def format(self, labels: Sequence[str] | None = None) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for mono in sorted(self.coeffs, key=lambda m: [_key(f) for f in m]):
            c = self.coeffs[mono]
            word = format_monomial(mono, labels)
            parts.append(word if c == 1 else f"{c}*{word}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"State[{self.degree}]({self.format()})"


def format_monomial(mono: Monomial, labels: Sequence[str] | None = None) -> str:
    if not mono:
        return "|0>"
    return "".join(f"L[-{n}]({labels[i] if labels else i})" for n, i in mono) + "|0>"


class Envelope:
    """Vacuum module of the mode algebra of ``F`` truncated at degree ``cutoff``."""

    def __init__(self, F: FrobeniusAlgebra, cutoff: int = DEFAULT_CUTOFF):
        if cutoff < 0:
            raise ValueError("cutoff must be non-negative")
        self.F = F
        self.cutoff = cutoff
        self._unit = F.unit
        # insert-only caches; values are pure functions of the keys
        self._act_cache: dict[tuple[int, int, Monomial], Coeffs] = {}
        self._field_cache: dict[tuple[Monomial, int, Monomial], Coeffs] = {}

    # -- basis -------------------------------------------------------------

    def basis(self, degree: int) -> list[Monomial]:
        self._check_degree(degree)
        d = self.F.dim
        out = []
        for parts in partitions_min2(degree):
            groups = [(p, len(list(g))) for p, g in itertools.groupby(parts)]
            choices = [itertools.combinations_with_replacement(range(d), mult) for _, mult in groups]
            for picks in itertools.product(*choices):
                out.append(tuple((p, i) for (p, _), idx in zip(groups, picks) for i in idx))
        out.sort(key=lambda m: [_key(f) for f in m])
        return out

    def dim(self, degree: int) -> int:
        d = self.F.dim
        total = 0
        for parts in partitions_min2(degree):
            prod = 1
            for mult in Counter(parts).values():
                prod *= comb(d + mult - 1, mult)
            total += prod
        return total

    def character(self, top: int | None = None) -> list[int]:
        top = self.cutoff if top is None else top
        return [self.dim(n) for n in range(top + 1)]

    def _check_degree(self, degree: int) -> None:
        if degree > self.cutoff:
            raise CutoffError(f"degree {degree} exceeds cutoff {self.cutoff}")
        if degree < 0:
            raise ValueError(f"negative degree {degree}")

    # -- states ------------------------------------------------------------

    def vacuum(self) -> State:
        return State(0, {VACUUM: 1})

    def zero(self, degree: int) -> State:
        return State(degree)

    def embed(self, x: Sequence) -> State:
        """The degree-2 state ``L_{-2} (x) x |0>``."""
        self._check_degree(2)
        x = as_vector(x, self.F.dim)
        return State(2, {((2, i),): c for i, c in enumerate(x) if c})

    def generator(self, i: int) -> State:
        return self.embed(self.F.basis_vector(i))

    def basis_state(self, mono: Monomial) -> State:
        mono = tuple(mono)
        if normal_order(mono) != mono:
            raise ValueError(f"{mono} is not in PBW order")
        self._check_degree(monomial_degree(mono))
        return State(monomial_degree(mono), {mono: 1})

    def word(self, factors: Sequence[Factor]) -> State:
        """``L_{-n_1} (x) x_{i_1} ... L_{-n_k} (x) x_{i_k} |0>`` in any factor order."""
        acc: Coeffs = {VACUUM: Fraction(1)}
        for n, i in reversed(list(factors)):
            acc = self._act_coeffs(-n, i, acc)
        deg = sum(n for n, _ in factors)
        self._check_degree(deg)
        return State(deg, acc)

    def coordinates(self, v: State) -> list[Fraction]:
        basis = self.basis(v.degree)
        index = {m: k for k, m in enumerate(basis)}
        out = [Fraction(0)] * len(basis)
        for mono, c in v.coeffs.items():
            out[index[mono]] = c
        return out

    def from_coordinates(self, degree: int, coords: Sequence) -> State:
        return State(degree, dict(zip(self.basis(degree), (Fraction(c) for c in coords))))

    # -- mode action -------------------------------------------------------

    def _act(self, m: int, i: int, mono: Monomial) -> Coeffs:
        key = (m, i, mono)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        res = self._act_uncached(m, i, mono)
        self._act_cache[key] = res
        return res

    def _act_uncached(self, m: int, i: int, mono: Monomial) -> Coeffs:
        F = self.F
        if not mono:
            return {} if m >= -1 else {((-m, i),): Fraction(1)}
        (n1, i1), rest = mono[0], mono[1:]
        if m <= -2 and _key((-m, i)) <= _key((n1, i1)):
            return {((-m, i),) + mono: Fraction(1)}
        out: Coeffs = {}
        # L^i_m L^{i1}_{-n1} R = L^{i1}_{-n1} (L^i_m R) + [L^i_m, L^{i1}_{-n1}] R
        _add_into(out, self._act_coeffs(-n1, i1, self._act(m, i, rest)))
        if m != -n1:
            for k, c in enumerate(F.mult[i][i1]):
                if c:
                    _add_into(out, self._act(m - n1, k, rest), (m + n1) * c)
        if m == n1:
            central = central_coefficient(m) * F.form[i][i1]
            if central:
                _add_into(out, {rest: Fraction(1)}, central)
        return out

    def _act_coeffs(self, m: int, i: int, coeffs: Mapping[Monomial, Fraction]) -> Coeffs:
        out: Coeffs = {}
        for mono, c in coeffs.items():
            _add_into(out, self._act(m, i, mono), c)
        return out

    def _act_vector(self, m: int, x: Sequence, coeffs: Mapping[Monomial, Fraction]) -> Coeffs:
        out: Coeffs = {}
        for i, xi in enumerate(x):
            if xi:
                _add_into(out, self._act_coeffs(m, i, coeffs), xi)
        return out

    def apply_mode(self, m: int, x: Sequence, v: State) -> State:
        """``(L_m (x) x) v``, returned in PBW normal form."""
        deg = v.degree - m
        if v.is_zero():
            return State(deg)
        self._check_degree(v.degree)
        if deg < 0:
            return State(deg)
        self._check_degree(deg)
        x = as_vector(x, self.F.dim)
        return State(deg, self._act_vector(m, x, v.coeffs))

    def translate(self, v: State) -> State:
        """The translation operator, acting as ``L_{-1} (x) e``."""
        return self.apply_mode(-1, self._unit, v)

    # -- general vertex operations ----------------------------------------

    def _field(self, u: Monomial, n: int, v: Monomial) -> Coeffs:
        key = (u, n, v)
        hit = self._field_cache.get(key)
        if hit is not None:
            return hit
        res = self._field_uncached(u, n, v)
        self._field_cache[key] = res
        return res

    def _field_coeffs(self, u: Monomial, n: int, coeffs: Mapping[Monomial, Fraction]) -> Coeffs:
        out: Coeffs = {}
        for mono, c in coeffs.items():
            _add_into(out, self._field(u, n, mono), c)
        return out

    def _field_uncached(self, u: Monomial, n: int, v: Monomial) -> Coeffs:
        du, dv = monomial_degree(u), monomial_degree(v)
        if du + dv - n - 1 < 0:
            return {}
        if not u:
            return {v: Fraction(1)} if n == -1 else {}
        (p, i), w = u[0], u[1:]
        k = 1 - p
        dw = du - p
        sign_k = -1 if k % 2 else 1
        out: Coeffs = {}
        # a_(k-j) (w_(n+j) v): w_(n+j) v vanishes once its degree is negative
        for j in range(max(0, dw + dv - n)):
            coef = (-1) ** j * gen_binom(k, j)
            inner = self._field(w, n + j, v)
            if inner:
                _add_into(out, self._act_coeffs(k - j - 1, i, inner), coef)
        # w_(k+n-j) (a_(j) v): a_(j) v vanishes for j > dv + 1
        for j in range(dv + 2):
            coef = (-1) ** j * gen_binom(k, j) * -sign_k
            inner = self._act(j - 1, i, v)
            if inner:
                _add_into(out, self._field_coeffs(w, k + n - j, inner), coef)
        return out

    def field_action(self, u: State, n: int, v: State) -> State:
        """The vertex operation ``u_(n) v``."""
        deg = u.degree + v.degree - n - 1
        if u.is_zero() or v.is_zero():
            return State(deg)
        self._check_degree(u.degree)
        self._check_degree(v.degree)
        if deg < 0:
            return State(deg)
        self._check_degree(deg)
        out: Coeffs = {}
        for um, uc in u.coeffs.items():
            for vm, vc in v.coeffs.items():
                _add_into(out, self._field(um, n, vm), uc * vc)
        return State(deg, out)

    # -- linear maps and the recovered algebroid ---------------------------

    def matrix(self, op, degree: int, target: int) -> list[list[Fraction]]:
        """Matrix of a degree-shifting linear map in the PBW bases (columns = inputs)."""
        cols = [self.coordinates_in(target, op(self.basis_state(b))) for b in self.basis(degree)]
        return [list(r) for r in zip(*cols)] if cols else [[] for _ in self.basis(target)]

    def coordinates_in(self, degree: int, v: State) -> list[Fraction]:
        if v.is_zero():
            return [Fraction(0)] * len(self.basis(degree))
        if v.degree != degree:
            raise ValueError(f"state of degree {v.degree}, expected {degree}")
        return self.coordinates(v)

    def translate_rank(self, degree: int = 2) -> int:
        return rank(self.matrix(self.translate, degree, degree + 1))

    def inverse_translate(self, v: State) -> State:
        """Solve ``translate(z) = v`` exactly for ``z`` one degree lower."""
        deg = v.degree - 1
        a = self.matrix(self.translate, deg, v.degree)
        try:
            z = solve(a, self.coordinates_in(v.degree, v))
        except SingularSystemError as exc:
            raise StructureError(f"translation is not injective on degree {deg}: {exc}") from None
        except InconsistentSystemError:
            raise StructureError(f"{v.format(self.F.labels)} is not a translate") from None
        return self.from_coordinates(deg, z)

    def recovered_ops(self, x: Sequence, y: Sequence) -> tuple[Vector, Vector, Fraction]:
        """Read ``x_(1)y``, ``d^{-1}(x_(0)y)`` and ``<x, y>`` back out of V_F."""
        if self.cutoff < 3:
            raise CutoffError("recovering the operations needs cutoff >= 3")
        ex, ey = self.embed(x), self.embed(y)
        op1 = self._degree2_vector(self.field_action(ex, 1, ey))
        op0t = self._degree2_vector(self.inverse_translate(self.field_action(ex, 0, ey)))
        form = self.field_action(ex, 3, ey).coefficient(VACUUM)
        return op1, op0t, form

    def _degree2_vector(self, v: State) -> Vector:
        out = [Fraction(0)] * self.F.dim
        for mono, c in v.coeffs.items():
            ((_, i),) = mono
            out[i] = c
        return tuple(out)
