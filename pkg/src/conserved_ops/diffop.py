"""Differential operators ``sum_n A_n(phi) d^n/dphi^n`` and their action on
the periodic wavefunction ``psi = rho * e^{i phi}``.

On this psi every derivative is a multiplication, ``d^n psi = i^n psi``, so an
operator acts on psi like its *symbol* ``sigma(phi) = sum_n A_n(phi) i^n``.
Two operators are called equivalent here when they have the same symbol;
that is equality of action on psi, not operator identity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from collections.abc import Iterable, Mapping
from typing import Union

from .exactnum import ConstPoly, GaussRat
from .fourier import E, FourierPoly

__all__ = [
    "DiffOp",
    "CollapsedOp",
    "WaveSpec",
    "collapse",
    "symbol",
    "apply_symbolic",
    "D",
]

# i^n for n mod 4
_I_POWERS = (GaussRat(1), GaussRat(0, 1), GaussRat(-1), GaussRat(0, -1))


class DiffOp:
    """Finite-order linear differential operator with FourierPoly coefficients.

    ``coeffs`` is a tuple of ``(order, A_order)`` pairs sorted by order with
    zero coefficient functions dropped.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, object], Iterable[tuple[int, object]]] = ()):
        acc: dict[int, FourierPoly] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for n, f in items:
            if int(n) != n or n < 0:
                raise ValueError(f"derivative order must be a non-negative integer, got {n!r}")
            f = FourierPoly.coerce(f)
            if f is NotImplemented:
                raise TypeError(f"cannot use {f!r} as a coefficient function")
            n = int(n)
            acc[n] = acc[n] + f if n in acc else f
        object.__setattr__(self, "coeffs", tuple(sorted((n, f) for n, f in acc.items() if f)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOp is immutable")

    @property
    def order(self) -> int:
        return self.coeffs[-1][0] if self.coeffs else 0

    def coeff(self, n: int) -> FourierPoly:
        for order, f in self.coeffs:
            if order == n:
                return f
        return FourierPoly()

    def is_zero(self) -> bool:
        return not self.coeffs

    def symbols(self) -> set[str]:
        return set().union(*(f.symbols() for _, f in self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.coeffs))
        return self._hash

    @classmethod
    def _from_canonical(cls, acc: dict) -> "DiffOp":
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(sorted((n, f) for n, f in acc.items() if f)))
        object.__setattr__(obj, "_hash", None)
        return obj

    def __neg__(self):
        return DiffOp._from_canonical({n: -f for n, f in self.coeffs})

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return DiffOp(self.coeffs + other.coeffs)

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "DiffOp":
        """Left-multiply every coefficient by a scalar or coefficient function."""
        c = FourierPoly.coerce(c)
        return DiffOp((n, c * f) for n, f in self.coeffs)

    def __rmul__(self, c):
        if isinstance(c, DiffOp):
            return NotImplemented
        return self.scale(c)

    def compose(self, other: "DiffOp") -> "DiffOp":
        """Operator product ``self o other`` expanded with the Leibniz rule."""
        acc: dict[int, FourierPoly] = {}
        for n, a in self.coeffs:
            for m, b in other.coeffs:
                deriv = b
                for j in range(n + 1):
                    if j:
                        deriv = deriv.diff()
                    if deriv.is_zero():
                        break
                    term = (a * deriv).scale(math.comb(n, j))
                    order = n - j + m
                    acc[order] = acc[order] + term if order in acc else term
        return DiffOp._from_canonical(acc)

    __matmul__ = compose

    def substitute(self, values: Mapping[str, ConstPoly]) -> "DiffOp":
        return DiffOp((n, f.substitute(values)) for n, f in self.coeffs)

    def __repr__(self):
        return f"DiffOp({str(self)!r})"

    def __str__(self):
        from .syntax import print_operator

        return print_operator(self)


def D(n: int = 1) -> DiffOp:
    """The bare derivative ``d^n/dphi^n``."""
    return DiffOp({n: 1})


@dataclass(frozen=True)
class CollapsedOp:
    """Second-order reduced form ``a0 + b1 d + b2 d^2``.

    No conservation condition is implied; any triple is legal.
    """

    a0: FourierPoly = field(default_factory=FourierPoly)
    b1: FourierPoly = field(default_factory=FourierPoly)
    b2: FourierPoly = field(default_factory=FourierPoly)

    def expand(self) -> DiffOp:
        return DiffOp({0: self.a0, 1: self.b1, 2: self.b2})


@dataclass(frozen=True, init=False)
class WaveSpec:
    """The wavefunction ``psi(phi) = rho * e^{i phi}`` on ``[0, 2pi)``.

    ``norm`` is ``<psi|psi> = 2 pi rho^2`` as a Fraction so symbolic
    expectations can be scaled exactly.  ``WaveSpec()`` is the normalized
    state (``norm == 1``).  Giving only ``rho`` derives ``norm`` from the
    float value of ``2 pi rho^2``; giving only ``norm`` derives ``rho``.
    """

    rho: float
    norm: Fraction

    def __init__(self, rho: float | Fraction | None = None, *, norm=None):
        if rho is None and norm is None:
            rho, norm = (2 * math.pi) ** -0.5, Fraction(1)
        elif norm is None:
            norm = Fraction(2 * math.pi * float(rho) ** 2)
        elif rho is None:
            norm = Fraction(norm)
            rho = math.sqrt(norm / (2 * math.pi))
        if not rho > 0:
            raise ValueError(f"rho must be positive, got {rho}")
        if not norm > 0:
            raise ValueError(f"norm must be positive, got {norm}")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "norm", Fraction(norm))

    @property
    def is_normalized(self) -> bool:
        return self.norm == 1


def symbol(p: DiffOp) -> FourierPoly:
    """sigma(phi) with ``p psi = sigma psi``: ``sum_n A_n(phi) i^n``."""
    out = FourierPoly()
    for n, f in p.coeffs:
        out = out + f.scale(_I_POWERS[n % 4])
    return out


def collapse(p: DiffOp) -> CollapsedOp:
    """Fold all orders above two into ``(A0, B1, B2)``.

    ``B1 = A1 - A3 + A5 - ...`` and ``B2 = A2 - A4 + A6 - ...``; this uses
    ``d^{n+2} psi = -d^n psi`` and so preserves the symbol.
    """
    a0, b1, b2 = FourierPoly(), FourierPoly(), FourierPoly()
    for n, f in p.coeffs:
        if n == 0:
            a0 = a0 + f
            continue
        sign = 1 if ((n - 1) // 2) % 2 == 0 else -1
        if n % 2:
            b1 = b1 + f.scale(sign)
        else:
            b2 = b2 + f.scale(sign)
    return CollapsedOp(a0, b1, b2)


def apply_symbolic(p: DiffOp, w: WaveSpec | None = None) -> FourierPoly:
    """``p psi = rho * sigma(phi) * e^{i phi}`` as a FourierPoly.

    rho enters through ``Fraction(rho)``, exact for rational amplitudes and
    the binary float value otherwise.
    """
    w = w or WaveSpec()
    return (symbol(p) * E(1)).scale(GaussRat(Fraction(w.rho)))
