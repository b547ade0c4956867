"""Exact verification harness for V_F.

Each ``check_*`` function returns a :class:`CheckReport`; none of them raise
on a failed identity.  All comparisons are exact equalities of rational
states.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Iterable

from . import algebroid, modes
from .envelope import Envelope, State, StructureError, gen_binom
from .frobenius import FrobeniusAlgebra, charge, validate
from .reports import ValidationReport

NORMALIZATION_NOTE = (
    "e_(3)e is normalized to <e,e>|0>; in the convention L_(3)L = (c/2)|0> "
    "the unit is a Virasoro vector of charge c = 2<e,e>"
)

DEFAULT_MODES = (-4, 4)
DEFAULT_DEGREE = 6
SAMPLE_SIZE = 200


@dataclass
class CheckReport:
    name: str
    passed: bool
    counts: dict[str, int] = field(default_factory=dict)
    witness: dict[str, Any] | None = None
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def __str__(self) -> str:
        lines = [f"{self.name}: {self.status}"]
        if self.counts:
            lines.append("  " + ", ".join(f"{k}={v}" for k, v in self.counts.items()))
        for k, v in self.notes.items():
            lines.append(f"  {k}: {v}")
        if self.witness:
            for k, v in self.witness.items():
                lines.append(f"  witness {k}: {v}")
        return "\n".join(lines)

    def to_record(self) -> str:
        rec = {"check": self.name, "status": self.status, "counts": self.counts,
               "witness": self.witness, "notes": self.notes}
        return json.dumps(rec, sort_keys=True, default=str)


class _Tally:
    """Accumulates comparisons; keeps the first failing witness."""

    def __init__(self):
        self.counts = {"checked": 0, "failed": 0}
        self.witness = None

    def compare(self, lhs, rhs, **inputs) -> bool:
        self.counts["checked"] += 1
        if lhs == rhs:
            return True
        self.counts["failed"] += 1
        if self.witness is None:
            self.witness = {**{k: str(v) for k, v in inputs.items()},
                            "lhs": str(lhs), "rhs": str(rhs)}
        return False

    def report(self, name: str, **notes) -> CheckReport:
        return CheckReport(name, self.counts["failed"] == 0, dict(self.counts), self.witness, notes)


def _plain(value) -> str:
    """Render nested tuples/lists of rationals without ``Fraction(...)`` noise."""
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(_plain(v) for v in value) + ")"
    return str(value)


def from_validation(name: str, rep: ValidationReport) -> CheckReport:
    counts = {"checked": sum(rep.checked.values()), "failed": sum(rep.failures.values())}
    witness = None
    if rep.violations:
        v = rep.violations[0]
        witness = {"axiom": v.axiom, "at": ", ".join(map(str, v.witness)),
                   "lhs": _plain(v.lhs), "rhs": _plain(v.rhs)}
    return CheckReport(name, rep.ok, counts, witness, dict(rep.info))


def _fmt(E: Envelope, v: State) -> str:
    return f"[deg {v.degree}] {v.format(E.F.labels)}"


def intrinsic_translation(E: Envelope, v: State) -> State:
    """Translation defined without the unit of F.

    Uses ``d|0> = 0`` and ``[d, L_{-n} (x) x] = (n - 1) L_{-n-1} (x) x`` on
    each PBW factor, then re-sorts.  Serves as an independent route to
    compare ``e_(0)`` and :meth:`Envelope.translate` against.
    """
    out = State(v.degree + 1)
    for mono, c in v.coeffs.items():
        for pos, (n, i) in enumerate(mono):
            factors = list(mono)
            factors[pos] = (n + 1, i)
            out = out + E.word(factors) * ((n - 1) * c)
    return out


def check_virasoro_vector(F: FrobeniusAlgebra, N: int = DEFAULT_DEGREE) -> CheckReport:
    """The unit ``e`` of F acts as a Virasoro vector on all states of degree <= N.

    Checks ``e_(0) = d`` and ``e_(1) = j Id`` on degree ``j``, then ``e_(2)e = 0``
    and ``e_(3)e = <e,e>|0>``.
    """
    E = Envelope(F, cutoff=N + 1)
    L = E.embed(F.unit)
    tally = _Tally()
    for deg in range(N + 1):
        for mono in E.basis(deg):
            v = E.basis_state(mono)
            d_v = intrinsic_translation(E, v)
            tally.compare(E.field_action(L, 0, v), d_v, relation="e_(0) = d", state=_fmt(E, v))
            tally.compare(E.translate(v), d_v, relation="L_{-1}(e) = d", state=_fmt(E, v))
            e1 = E.field_action(L, 1, v)
            tally.compare(e1, v * deg, relation="e_(1) = j Id", state=_fmt(E, v))
    tally.compare(E.field_action(L, 2, L), E.zero(1), relation="e_(2)e = 0")
    c = charge(F)
    tally.compare(E.field_action(L, 3, L), E.vacuum() * c, relation="e_(3)e = <e,e>|0>")
    return tally.report(
        "virasoro-vector",
        charge=str(c),
        virasoro_convention_charge=str(modes.charge_of_virasoro_vector(F)),
        normalization=NORMALIZATION_NOTE,
        max_degree=N,
    )


def check_ope(F: FrobeniusAlgebra) -> CheckReport:
    """The four products of the unit with itself: d e, 2e, 0 and <e,e>|0>."""
    E = Envelope(F, cutoff=4)
    L = E.embed(F.unit)
    tally = _Tally()
    c = charge(F)
    expected = {0: E.translate(L), 1: L * 2, 2: E.zero(1), 3: E.vacuum() * c}
    products = {}
    for n, rhs in expected.items():
        lhs = E.field_action(L, n, L)
        products[f"e_({n})e"] = lhs.format(F.labels)
        tally.compare(lhs, rhs, relation=f"e_({n})e")
    return tally.report("ope", charge=str(c),
                        virasoro_convention_charge=str(modes.charge_of_virasoro_vector(F)),
                        normalization=NORMALIZATION_NOTE, **products)


def _sampled(items: list, d: int, seed: int = 0) -> list:
    if d <= 2 or len(items) <= SAMPLE_SIZE:
        return items
    return random.Random(seed).sample(items, SAMPLE_SIZE)


def check_commutator_formula(F: FrobeniusAlgebra, N: int = 8,
                             mode_range: tuple[int, int] = DEFAULT_MODES,
                             max_degree: int = DEFAULT_DEGREE) -> CheckReport:
    """``[a_(m), b_(n)] v = sum_j C(m, j) (a_(j)b)_(m+n-j) v`` for generators a, b.

    ``v`` runs over basis states of degree <= ``max_degree``; combinations
    needing a state above the cutoff ``N`` are skipped and counted.  For
    ``dim F >= 3`` a seeded sample of the remaining cases is checked.
    """
    E = Envelope(F, cutoff=N)
    gens = [E.generator(i) for i in range(F.dim)]
    lo, hi = mode_range
    states = [mono for deg in range(min(max_degree, N) + 1) for mono in E.basis(deg)]
    cases = []
    skipped = 0
    for case in itertools.product(range(F.dim), range(F.dim), range(lo, hi + 1),
                                  range(lo, hi + 1), states):
        _, _, m, n, mono = case
        dv = sum(p for p, _ in mono)
        if max(dv + 1 - m, dv + 1 - n, dv + 2 - m - n) > N:
            skipped += 1
        else:
            cases.append(case)
    cases = _sampled(cases, F.dim)
    tally = _Tally()
    products = {}
    for ia, ib, m, n, mono in cases:
        a, b, v = gens[ia], gens[ib], E.basis_state(mono)
        dv = v.degree
        lhs = E.field_action(a, m, E.field_action(b, n, v)) - E.field_action(b, n, E.field_action(a, m, v))
        rhs = E.zero(dv + 2 - m - n)
        for j in range(4):
            key = (ia, ib, j)
            if key not in products:
                products[key] = E.field_action(a, j, b)
            rhs = rhs + E.field_action(products[key], m + n - j, v) * gen_binom(m, j)
        tally.compare(lhs, rhs, a=F.labels[ia], b=F.labels[ib], m=m, n=n, v=_fmt(E, v))
    tally.counts["skipped_above_cutoff"] = skipped
    return tally.report("commutator-formula", mode_range=f"[{lo}, {hi}]", max_degree=max_degree)


def skew_symmetry_sides(E: Envelope, a: State, b: State, n: int) -> tuple[State, State]:
    """``a_(n)b`` and ``(-1)^(n+1) sum_j (-1)^j / j! d^j (b_(n+j) a)``."""
    lhs = E.field_action(a, n, b)
    rhs = E.zero(lhs.degree)
    top = a.degree + b.degree - n - 1
    for j in range(max(0, top + 1)):
        term = E.field_action(b, n + j, a)
        for _ in range(j):
            term = E.translate(term)
        rhs = rhs + term * Fraction((-1) ** (n + 1 + j), factorial(j))
    return lhs, rhs


def check_skew_symmetry(F: FrobeniusAlgebra, N: int = 8,
                        n_range: Iterable[int] = range(0, 4)) -> CheckReport:
    E = Envelope(F, cutoff=N)
    tally = _Tally()
    ns = list(n_range)
    for i, j in itertools.product(range(F.dim), repeat=2):
        a, b = E.generator(i), E.generator(j)
        for n in ns:
            lhs, rhs = skew_symmetry_sides(E, a, b, n)
            tally.compare(lhs, rhs, a=F.labels[i], b=F.labels[j], n=n)
    return tally.report("skew-symmetry", n_range=f"[{min(ns)}, {max(ns)}]")


def check_algebroid_recovery(F: FrobeniusAlgebra,
                             target: algebroid.VirasoroAlgebroid | None = None) -> CheckReport:
    """Vir(F) read back from V_F: x_(1)y = 2xy, d^{-1}(x_(0)y) = xy, x_(3)y = <x,y>.

    ``target`` defaults to ``from_frobenius(F)``; any algebroid over Q of rank
    ``dim F`` may be compared instead.
    """
    E = Envelope(F, cutoff=4)
    A = algebroid.from_frobenius(F) if target is None else target
    tally = _Tally()
    notes = {"translate_rank_2_to_3": E.translate_rank(2)}
    for i, j in itertools.product(range(F.dim), repeat=2):
        x, y = F.basis_vector(i), F.basis_vector(j)
        try:
            op1, op0t, form = E.recovered_ops(x, y)
        except StructureError as exc:
            tally.compare(str(exc), "invertible translation", x=F.labels[i], y=F.labels[j])
            continue
        expected = (tuple(c[0] for c in A.op1[i][j]), tuple(c[0] for c in A.op0t[i][j]),
                    A.form[i][j][0])
        for what, got, want in zip(("op1", "op0t", "form"), (op1, op0t, form), expected):
            tally.compare(got, want, op=what, x=F.labels[i], y=F.labels[j])
    return tally.report("algebroid-recovery", **notes)


def character(F: FrobeniusAlgebra, N: int = 8) -> list[int]:
    return Envelope(F, cutoff=N).character()


def check_character(F: FrobeniusAlgebra, N: int = 8) -> CheckReport:
    """Closed-form graded dimensions agree with basis enumeration; degree 1 is empty."""
    E = Envelope(F, cutoff=N)
    tally = _Tally()
    for n in range(N + 1):
        tally.compare(len(E.basis(n)), E.dim(n), degree=n)
    tally.compare(E.dim(1), 0, degree=1)
    return tally.report("character", dims=" ".join(map(str, E.character())))


def run_all(F: FrobeniusAlgebra, N: int = 8) -> list[CheckReport]:
    """Every check for F; degree-bounded checks use ``min(N, 6)`` as sample degree."""
    rep = validate(F)
    reports = [from_validation("frobenius-axioms", rep)]
    if rep.ok:
        sample = min(N, DEFAULT_DEGREE)
        reports += [
            from_validation("algebroid-axioms", algebroid.check_axioms(algebroid.from_frobenius(F))),
            from_validation("mode-lie-algebra", modes.check_lie(F)),
            check_character(F, N),
            check_ope(F),
            check_virasoro_vector(F, sample),
            check_algebroid_recovery(F),
            check_skew_symmetry(F, N),
            check_commutator_formula(F, N, max_degree=sample),
        ]
    return sorted(reports, key=lambda r: r.name)
