"""Exact scalars: Gaussian rationals and polynomials in real symbolic constants.

Everything here is immutable and kept in canonical form, so ``==`` is
mathematical equality.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from collections.abc import Iterable, Mapping
from typing import Union

__all__ = ["GaussRat", "ConstPoly", "I", "Monomial", "const", "symbol"]

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by name, exponents > 0


class GaussRat:
    """A complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        # Fraction keeps lowest terms with a positive denominator.
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    @classmethod
    def _new(cls, re: Fraction, im: Fraction) -> "GaussRat":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        return NotImplemented

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other):
        other = GaussRat.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __neg__(self):
        return GaussRat._new(-self.re, -self.im)

    def __add__(self, other):
        if type(other) is not GaussRat:
            other = GaussRat.coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return GaussRat._new(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussRat.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat._new(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if type(other) is not GaussRat:
            other = GaussRat.coerce(other)
            if other is NotImplemented:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if b == 0 and d == 0:
            return GaussRat._new(a * c, b)
        return GaussRat._new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "GaussRat":
        return GaussRat._new(self.re, -self.im)

    def inv(self) -> "GaussRat":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("GaussRat zero has no inverse")
        return GaussRat(self.re / norm, -self.im / norm)


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    powers = dict(m1)
    for name, e in m2:
        powers[name] = powers.get(name, 0) + e
    return tuple(sorted(powers.items()))


class ConstPoly:
    """Polynomial in named, real-valued symbolic constants over GaussRat.

    ``terms`` is a tuple of ``(monomial, coefficient)`` pairs in ascending
    monomial order, with no zero coefficients.  The empty monomial ``()`` is
    the numeric part.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Union[Mapping[Monomial, object], Iterable[tuple[Monomial, object]]] = ()):
        acc: dict[Monomial, GaussRat] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            powers: dict[str, int] = {}
            for name, e in mono:
                if e < 0:
                    raise ValueError("monomial exponents must be non-negative")
                if e:
                    powers[str(name)] = powers.get(str(name), 0) + int(e)
            mono = tuple(sorted(powers.items()))
            acc[mono] = acc.get(mono, ZERO) + GaussRat.coerce(coeff)
        object.__setattr__(
            self, "terms", tuple(sorted((m, c) for m, c in acc.items() if not c.is_zero()))
        )
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _from_canonical(cls, acc: dict) -> "ConstPoly":
        # monomials in acc are already canonical
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", tuple(sorted((m, c) for m, c in acc.items() if c)))
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ConstPoly is immutable")

    @classmethod
    def coerce(cls, x) -> "ConstPoly":
        if isinstance(x, ConstPoly):
            return x
        g = GaussRat.coerce(x)
        if g is NotImplemented:
            return NotImplemented
        return cls({(): g})

    # predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        """True when no symbolic constant occurs, i.e. a plain GaussRat.

        ``A`` is *not* constant in this sense even though it is constant in phi.
        """
        return all(m == () for m, _ in self.terms)

    def symbols(self) -> set[str]:
        return {name for m, _ in self.terms for name, _ in m}

    def numeric_value(self) -> GaussRat:
        if not self.is_constant():
            raise ValueError(f"{self} still contains symbolic constants")
        return self.terms[0][1] if self.terms else ZERO

    def as_scaled_monomial(self):
        """Return ``(coeff, monomial)`` if this is a single term, else None."""
        if len(self.terms) != 1:
            return None
        mono, coeff = self.terms[0]
        return coeff, mono

    def __bool__(self):
        return bool(self.terms)

    # arithmetic

    def __eq__(self, other):
        other = ConstPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.terms))
        return self._hash

    def __lt__(self, other):
        # total order used only for deterministic sorting
        return _sort_key(self) < _sort_key(other)

    def __neg__(self):
        return ConstPoly._from_canonical({m: -c for m, c in self.terms})

    def __add__(self, other):
        if type(other) is not ConstPoly:
            other = ConstPoly.coerce(other)
            if other is NotImplemented:
                return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc[m] + c if m in acc else c
        return ConstPoly._from_canonical(acc)

    __radd__ = __add__

    def __sub__(self, other):
        other = ConstPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is not ConstPoly:
            other = ConstPoly.coerce(other)
            if other is NotImplemented:
                return NotImplemented
        acc: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = m2 if not m1 else m1 if not m2 else _mono_mul(m1, m2)
                c = c1 * c2
                acc[m] = acc[m] + c if m in acc else c
        return ConstPoly._from_canonical(acc)

    __rmul__ = __mul__

    def scale(self, c) -> "ConstPoly":
        c = GaussRat.coerce(c)
        return ConstPoly._from_canonical({m: c * k for m, k in self.terms})

    def conj(self) -> "ConstPoly":
        # symbolic constants are real
        return ConstPoly._from_canonical({m: c.conj() for m, c in self.terms})

    def substitute(self, values: Mapping[str, "ConstPoly"]) -> "ConstPoly":
        out = ConstPoly()
        for mono, coeff in self.terms:
            term = ConstPoly({(): coeff})
            for name, e in mono:
                factor = ConstPoly.coerce(values[name]) if name in values else symbol(name)
                for _ in range(e):
                    term = term * factor
            out = out + term
        return out

    def __repr__(self):
        return f"ConstPoly({str(self)!r})"

    def __str__(self):
        from .syntax import format_const

        return format_const(self)


def _sort_key(p: ConstPoly):
    return tuple((m, (c.re, c.im)) for m, c in p.terms)


def const(value=0, im=0) -> ConstPoly:
    """Numeric ConstPoly ``value + im*i``."""
    return ConstPoly({(): GaussRat(value, im)})


def symbol(name: str) -> ConstPoly:
    """The real symbolic constant ``name``."""
    return ConstPoly({((name, 1),): ONE})
