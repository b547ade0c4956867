"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 on parse or usage errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import algebroid, verify
from .envelope import CutoffError, Envelope, format_monomial
from .fileformat import AlgebraSpec, AlgebroidSpec, ParseError, parse
from .frobenius import FrobeniusAlgebra, ShapeError, parse_builtin, validate

log = logging.getLogger("frobvir")

DEFAULT_DEGREE = 8
# beyond these cutoffs runs get slow; warn but proceed
SAFE_DEGREE_SMALL = 12  # dim F <= 2
SAFE_DEGREE_LARGE = 10  # dim F >= 3


class UsageError(Exception):
    pass


def _load(path: str) -> AlgebraSpec | AlgebroidSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from None


def _load_algebra(path: str) -> FrobeniusAlgebra:
    spec = _load(path)
    if not isinstance(spec, AlgebraSpec):
        raise UsageError(f"{path}: expected an algebra definition, found an algebroid")
    try:
        return spec.to_algebra()
    except ShapeError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _check_degree(F: FrobeniusAlgebra, degree: int) -> None:
    if degree < 0:
        raise UsageError("--degree must be non-negative")
    bound = SAFE_DEGREE_SMALL if F.dim <= 2 else SAFE_DEGREE_LARGE
    if degree > bound:
        log.warning("degree %d is above the safety bound %d for dim %d; this may be slow",
                    degree, bound, F.dim)


def _emit(reports: list[verify.CheckReport], machine: bool) -> int:
    for rep in reports:
        print(rep.to_record() if machine else rep)
    return 0 if all(r.passed for r in reports) else 1


def cmd_validate(args) -> int:
    spec = _load(args.file)
    if isinstance(spec, AlgebroidSpec):
        return cmd_check_axioms(args)
    F = spec.to_algebra()
    rep = validate(F)
    if not args.machine:
        print(rep.summary())
        print(f"form rank: {rep.info['form_rank']} of {F.dim}"
              + ("" if rep.info["nondegenerate"] else " (degenerate)"))
        return 0 if rep.ok else 1
    return _emit([verify.from_validation("frobenius-axioms", rep)], True)


def cmd_check_axioms(args) -> int:
    spec = _load(args.file)
    if isinstance(spec, AlgebraSpec):
        F = spec.to_algebra()
        frob = validate(F)
        if not frob.ok:
            return _emit([verify.from_validation("frobenius-axioms", frob)], args.machine)
        A = algebroid.from_frobenius(F)
    else:
        try:
            A = spec.to_algebroid()
        except ShapeError as exc:
            raise UsageError(f"{args.file}: {exc}") from None
    try:
        reports = [verify.from_validation("algebroid-axioms", algebroid.check_axioms(A)),
                   verify.from_validation("algebroid-cyclic-sums", algebroid.check_cyclic_corollaries(A))]
    except ValueError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    return _emit(reports, args.machine)


def cmd_build(args) -> int:
    F = _load_algebra(args.file)
    _check_degree(F, args.degree)
    E = Envelope(F, cutoff=args.degree)
    for n in range(args.degree + 1):
        basis = E.basis(n)
        print(f"degree {n}: dim {len(basis)}")
        for mono in basis:
            print(f"  {format_monomial(mono, F.labels)}")
    if args.degree >= 3:
        print(f"rank of translation from degree 2 to 3: {E.translate_rank(2)} (dim F = {F.dim})")
    return 0


def cmd_character(args) -> int:
    F = _load_algebra(args.file)
    _check_degree(F, args.degree)
    rep = verify.check_character(F, args.degree)
    if args.machine:
        return _emit([rep], True)
    print(" ".join(str(d) for d in verify.character(F, args.degree)))
    return 0 if rep.passed else 1


def _run_verify(F: FrobeniusAlgebra, degree: int, machine: bool) -> int:
    _check_degree(F, degree)
    if degree < 4:
        raise UsageError("verify needs --degree >= 4")
    return _emit(verify.run_all(F, degree), machine)


def cmd_verify(args) -> int:
    return _run_verify(_load_algebra(args.file), args.degree, args.machine)


def cmd_demo(args) -> int:
    try:
        F = parse_builtin(args.name)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if not args.machine:
        print(f"# {F.name}: basis {' '.join(F.labels)}")
    return _run_verify(F, args.degree, args.machine)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobvir",
        description="Build and verify Frobenius-Virasoro vertex algebras exactly.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true",
                        help="emit one JSON record per check instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the Frobenius axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check-axioms", parents=[common],
                       help="check the six algebroid identities (of Vir(F) for an algebra file)")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_axioms)

    for name, func, helptext in (
        ("build", cmd_build, "list the PBW basis of V_F up to a degree"),
        ("character", cmd_character, "print the graded dimensions of V_F"),
        ("verify", cmd_verify, "run the full verification suite"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("demo", parents=[common],
                       help="verify a built-in algebra, e.g. 'k_c(5)' or 'direct_sum(k_c(1),dual_numbers(0))'")
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("name")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, CutoffError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
