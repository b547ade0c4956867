"""Exact construction and verification of Frobenius-Virasoro vertex algebras."""

from .algebroid import VirasoroAlgebroid, check_axioms, from_frobenius
from .envelope import CutoffError, Envelope, State
from .frobenius import (
    FrobeniusAlgebra,
    builtin,
    charge,
    direct_sum,
    dual_numbers,
    group_algebra_z2,
    k_c,
    multiply,
    pairing,
    truncated_poly,
    validate,
)
from .modes import ModeVector, bracket, check_lie

__all__ = [
    "CutoffError", "Envelope", "FrobeniusAlgebra", "ModeVector", "State", "VirasoroAlgebroid",
    "bracket", "builtin", "charge", "check_axioms", "check_lie", "direct_sum", "dual_numbers",
    "from_frobenius", "group_algebra_z2", "k_c", "multiply", "pairing", "truncated_poly", "validate",
]
