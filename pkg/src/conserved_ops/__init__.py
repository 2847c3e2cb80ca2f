"""Exact symbolic algebra and a numeric oracle for differential operators
acting on the periodic wavefunction ``psi(phi) = rho * e^{i phi}``."""

from .conservation import (
    Family,
    Kind,
    classify,
    conserved_family,
    delta_expectation,
    expectation,
    is_conserved,
    solve_special_case,
    substitute_physical,
)
from .diffop import CollapsedOp, D, DiffOp, WaveSpec, apply_symbolic, collapse, symbol
from .exactnum import ConstPoly, GaussRat, I, const
from .exactnum import symbol as constant
from .fourier import E, FourierPoly
from .syntax import ParseError, parse_operator, print_operator

__all__ = [
    "CollapsedOp", "ConstPoly", "D", "DiffOp", "E", "Family", "FourierPoly", "GaussRat", "I",
    "Kind", "ParseError", "WaveSpec", "apply_symbolic", "classify", "collapse", "const",
    "constant", "conserved_family", "delta_expectation", "expectation", "is_conserved",
    "parse_operator", "print_operator", "solve_special_case", "substitute_physical", "symbol",
]
