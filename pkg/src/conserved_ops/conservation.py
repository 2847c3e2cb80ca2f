"""Conservation analysis of operators acting on ``psi = rho e^{i phi}``.

An operator is *conserved* when its collapsed form ``(A0, B1, B2)`` satisfies
``B1 == -i*B2`` and ``A0`` is independent of phi.  Every such operator is
``A - i*B2*D1 + B2*D2`` and acts on psi as the constant ``A``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from .diffop import DiffOp, WaveSpec, collapse, symbol
from .exactnum import ConstPoly, GaussRat, I, symbol as const_symbol
from .fourier import FourierPoly
from .syntax import format_const, print_operator

__all__ = [
    "Kind",
    "Family",
    "CaseConstraint",
    "IntegralCondition",
    "FORCES_A_ZERO",
    "DomainError",
    "conserved_family",
    "is_conserved",
    "expectation",
    "delta_expectation",
    "case_operator",
    "solve_special_case",
    "classify",
    "substitute_physical",
]


class DomainError(ValueError):
    """Operation is undefined for the given input (e.g. no physical form)."""


class Kind(str, enum.Enum):
    ALPHA = "Alpha"
    BETA = "Beta"
    GAMMA = "Gamma"
    GENERAL_CONSERVED = "GeneralConserved"
    NULL_SYMBOL = "NullSymbol"
    NOT_CONSERVED = "NotConserved"


CANONICAL_KINDS = frozenset({Kind.ALPHA, Kind.BETA, Kind.GAMMA})


@dataclass(frozen=True)
class Family:
    kind: Kind
    constant: ConstPoly = ConstPoly()

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "constant", ConstPoly.coerce(self.constant))
        if self.kind in CANONICAL_KINDS and self.constant.is_zero():
            raise ValueError(f"{self.kind.value} requires a nonzero constant")

    def __str__(self):
        return f"{self.kind.value}({format_const(self.constant)})"


def conserved_family(a, b2) -> DiffOp:
    """``a - i*b2*D1 + b2*D2``."""
    b2 = FourierPoly.coerce(b2)
    return DiffOp({0: ConstPoly.coerce(a), 1: b2.scale(-I), 2: b2})


def is_conserved(p: DiffOp) -> bool:
    c = collapse(p)
    return c.b1 == c.b2.scale(-I) and c.a0.is_constant()


def expectation(p: DiffOp, w: WaveSpec | None = None) -> ConstPoly:
    """Exact ``<psi|p|psi>``: the mean of the symbol times ``<psi|psi>``."""
    w = w or WaveSpec()
    mean = symbol(p).mean()
    return mean if w.is_normalized else mean.scale(GaussRat(w.norm))


def delta_expectation(p: DiffOp, dp: DiffOp, w: WaveSpec | None = None) -> ConstPoly:
    """Change of the expectation when ``p`` is perturbed to ``p + dp``."""
    return expectation(p + dp, w) - expectation(p, w)


# ---------------------------------------------------------------- special cases

FORCES_A_ZERO = "forces A = 0"


def case_operator(k: int, a, b2) -> DiffOp:
    """The k-th special case of the conserved family, k = 0..6.

    k = 0 is the full family; 1..6 keep the subsets of its three terms
    ``{A}, {D1}, {D2}, {A, D1}, {A, D2}, {D1, D2}``.
    """
    keep = {
        0: (0, 1, 2),
        1: (0,),
        2: (1,),
        3: (2,),
        4: (0, 1),
        5: (0, 2),
        6: (1, 2),
    }
    if k not in keep:
        raise DomainError(f"special case index must be in 1..6, got {k}")
    full = conserved_family(a, b2)
    return DiffOp((n, f) for n, f in full.coeffs if n in keep[k])


@dataclass(frozen=True)
class IntegralCondition:
    """The linear relation ``a_coeff * A + b2_coeff * B2 == 0``.

    In integral mode ``B2`` stands for ``mean(B2)``; in pointwise mode for
    ``B2(phi)`` at every phi.
    """

    a_coeff: GaussRat
    b2_coeff: GaussRat

    @property
    def trivial(self) -> bool:
        return self.a_coeff.is_zero() and self.b2_coeff.is_zero()

    @property
    def forces_a_zero(self) -> bool:
        return self.b2_coeff.is_zero() and not self.a_coeff.is_zero()

    def b2_ratio(self) -> GaussRat:
        """``r`` with ``B2 = r*A``; only defined when B2 appears."""
        return -self.a_coeff * self.b2_coeff.inv()


@dataclass(frozen=True)
class CaseConstraint:
    case_index: int
    mode: str
    condition: IntegralCondition
    integral_condition: str
    pointwise_solution: Union[FourierPoly, str, None]
    template: DiffOp
    solved: DiffOp

    def as_dict(self) -> dict:
        sol = self.pointwise_solution
        return {
            "case": self.case_index,
            "mode": self.mode,
            "template": print_operator(self.template),
            "condition": self.integral_condition,
            "solution": sol if isinstance(sol, str) or sol is None else str(sol),
            "operator": print_operator(self.solved),
        }


def _relation(k: int, a_name: str, b2_name: str) -> IntegralCondition:
    # sigma_0 - sigma_k is linear in A and B2 and contains no derivatives of
    # B2, so B2 can stand in as an opaque symbol for both modes.
    a, b2 = const_symbol(a_name), const_symbol(b2_name)
    diff = symbol(case_operator(0, a, b2) - case_operator(k, a, b2))
    if any(m != 0 for m, _ in diff.modes):
        raise AssertionError("symbol difference should be phi-independent here")
    poly = diff.mean()
    coeffs = {(): GaussRat(0)}
    for mono, c in poly.terms:
        coeffs[mono] = c
    unexpected = set(coeffs) - {(), ((a_name, 1),), ((b2_name, 1),)}
    if unexpected:
        raise AssertionError(f"nonlinear relation: {poly}")
    return IntegralCondition(
        coeffs.get(((a_name, 1),), GaussRat(0)),
        coeffs.get(((b2_name, 1),), GaussRat(0)),
    )


def solve_special_case(
    k: int, mode: str = "pointwise", constant: str = "A", b2_name: str = "B2"
) -> CaseConstraint:
    """Solve ``<psi|(L0 - Lk)|psi> = 0`` (integral) or ``L0 psi = Lk psi``
    for all phi (pointwise) for the unknown coefficient function B2.

    When B2 is left free the solved operator keeps the symbol ``b2_name`` as
    a generic stand-in.
    """
    if not isinstance(k, int) or not 1 <= k <= 6:
        raise DomainError(f"special case index must be in 1..6, got {k!r}")
    if mode not in ("integral", "pointwise"):
        raise DomainError(f"mode must be 'integral' or 'pointwise', got {mode!r}")
    a = const_symbol(constant)
    cond = _relation(k, constant, b2_name)
    lhs = "mean(B2)" if mode == "integral" else "B2"
    template = case_operator(k, a, const_symbol(b2_name))

    if cond.trivial:
        text = "identically satisfied"
        solution = None
        solved = template
    elif cond.forces_a_zero:
        text = f"{constant} = 0"
        solution = FORCES_A_ZERO
        solved = case_operator(k, 0, const_symbol(b2_name))
    else:
        value = a.scale(cond.b2_ratio())
        text = f"{lhs} = {format_const(value)}"
        # integral mode fixes only the mean; the constant function is the
        # representative solution in both modes
        solution = FourierPoly.coerce(value)
        solved = case_operator(k, a, value)
    return CaseConstraint(k, mode, cond, text, solution, template, solved)


# ---------------------------------------------------------------- classification


def _constant_value(f: FourierPoly):
    """The ConstPoly of a phi-independent f, else None."""
    return f.mean() if f.is_constant() else None


def classify(p: DiffOp) -> Family:
    """Match the collapsed form of p against the three canonical families.

    A vanishing symbol is reported as NullSymbol before the general
    conserved check, so case 6 (``-i*B2*D1 + B2*D2``) and the zero operator
    land there.
    """
    c = collapse(p)
    a0, b1, b2 = (_constant_value(f) for f in (c.a0, c.b1, c.b2))
    if a0 is not None and a0 and c.b1.is_zero() and c.b2.is_zero():
        return Family(Kind.ALPHA, a0)
    if c.a0.is_zero() and b1 is not None and b1 and c.b2.is_zero():
        return Family(Kind.BETA, b1.scale(I))
    if c.a0.is_zero() and c.b1.is_zero() and b2 is not None and b2:
        return Family(Kind.GAMMA, b2)
    if symbol(p).is_zero():
        return Family(Kind.NULL_SYMBOL)
    if is_conserved(p):
        return Family(Kind.GENERAL_CONSERVED, c.a0.mean())
    return Family(Kind.NOT_CONSERVED)


def substitute_physical(family: Family, var: str = "x", constant: str = "hbar") -> str:
    """Render a canonical family in the variable ``var`` with its constant
    renamed to ``constant``; any sign or scale of the constant is absorbed.
    """
    if family.kind not in CANONICAL_KINDS:
        raise DomainError(f"{family.kind.value} has no physical operator form")
    if family.kind is Kind.ALPHA:
        return constant
    if family.kind is Kind.BETA:
        return f"-i*{constant}*d/d{var}"
    return f"{constant}*d^2/d{var}^2"
