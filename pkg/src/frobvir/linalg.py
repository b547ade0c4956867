"""Exact linear algebra over the rationals.

Matrices are plain lists of rows of :class:`~fractions.Fraction`.  Only what
the envelope needs is here: reduced row echelon form, rank and unique solves.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class LinearAlgebraError(ArithmeticError):
    pass


class SingularSystemError(LinearAlgebraError):
    """The coefficient matrix has a nontrivial kernel."""


class InconsistentSystemError(LinearAlgebraError):
    """The right-hand side is not in the column space."""


def _copy(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Return the reduced row echelon form of ``rows`` and its pivot columns."""
    m = _copy(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    if any(len(r) != ncols for r in m):
        raise ValueError("ragged matrix")
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        # exact arithmetic: any nonzero entry is a valid pivot
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``a @ x = b`` for the unique ``x``.

    Raises :class:`SingularSystemError` when ``a`` has dependent columns and
    :class:`InconsistentSystemError` when no solution exists.
    """
    if len(a) != len(b):
        raise ValueError(f"row count {len(a)} != rhs length {len(b)}")
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        raise InconsistentSystemError("right-hand side outside the column space")
    if len(pivots) < ncols:
        raise SingularSystemError(f"rank {len(pivots)} < {ncols} unknowns")
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    return x
