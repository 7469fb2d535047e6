"""Lyndon words, noncommutative Groebner bases and the AS-regular algebras A(U,q)."""

__version__ = "0.1.0"

from .words import Alphabet, generate_lyndon, is_lyndon, lyndon_decomposition, shirshov
from .closedsets import ClosedSet, close, phi, phibar, psi, upsilon
from .freealg import NcPoly, is_groebner, normal_form
from .qcalc import QMatrix, bracket, super_letter, to_superword_basis, is_primitive
from .presentations import build_G, build_H, certify, extract_conditions, fibonacci_failure
from .invariants import fibonacci_bound, hilbert_product, invariant_report

__all__ = [
    "Alphabet", "ClosedSet", "NcPoly", "QMatrix",
    "generate_lyndon", "is_lyndon", "lyndon_decomposition", "shirshov",
    "close", "phi", "phibar", "psi", "upsilon",
    "is_groebner", "normal_form",
    "bracket", "super_letter", "to_superword_basis", "is_primitive",
    "build_G", "build_H", "certify", "extract_conditions", "fibonacci_failure",
    "fibonacci_bound", "hilbert_product", "invariant_report",
]
