"""Exact tools for Moor algebras: products, coproducts and rigidity checks."""

from .free_algebra import MoorWord, SymWord, basis_words, comb, moor_mul, word
from .linalg import Element, Scalar, tensor
from .reports import Check, Report

__all__ = [
    "Check",
    "Element",
    "MoorWord",
    "Report",
    "Scalar",
    "SymWord",
    "basis_words",
    "comb",
    "moor_mul",
    "tensor",
    "word",
]

__version__ = "0.1.0"
