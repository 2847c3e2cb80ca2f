"""Finite Fourier polynomials ``sum_k c_k e^{ik phi}`` with ConstPoly coefficients."""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from typing import Union

from .exactnum import ConstPoly, GaussRat

__all__ = ["FourierPoly", "E"]


class FourierPoly:
    """Immutable trigonometric polynomial in the real variable phi.

    ``modes`` holds ``(k, c_k)`` pairs sorted by frequency, zero coefficients
    dropped, so structural equality is equality of functions.
    """

    __slots__ = ("modes", "_hash")

    def __init__(self, modes: Union[Mapping[int, object], Iterable[tuple[int, object]]] = ()):
        acc: dict[int, ConstPoly] = {}
        items = modes.items() if isinstance(modes, Mapping) else modes
        for k, c in items:
            c = ConstPoly.coerce(c)
            if c is NotImplemented:
                raise TypeError(f"cannot use {c!r} as a Fourier coefficient")
            k = int(k)
            acc[k] = acc[k] + c if k in acc else c
        object.__setattr__(self, "modes", tuple(sorted((k, c) for k, c in acc.items() if c)))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _from_canonical(cls, acc: dict) -> "FourierPoly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "modes", tuple(sorted((k, c) for k, c in acc.items() if c)))
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("FourierPoly is immutable")

    @classmethod
    def coerce(cls, x) -> "FourierPoly":
        if isinstance(x, FourierPoly):
            return x
        c = ConstPoly.coerce(x)
        if c is NotImplemented:
            return NotImplemented
        return cls({0: c})

    def coeff(self, k: int) -> ConstPoly:
        for freq, c in self.modes:
            if freq == k:
                return c
        return ConstPoly()

    @property
    def bandwidth(self) -> int:
        return max((abs(k) for k, _ in self.modes), default=0)

    def is_zero(self) -> bool:
        return not self.modes

    def is_constant(self) -> bool:
        """True when independent of phi (only frequency 0, or empty)."""
        return all(k == 0 for k, _ in self.modes)

    def mean(self) -> ConstPoly:
        """Average over one period, i.e. the frequency-zero coefficient."""
        return self.coeff(0)

    def symbols(self) -> set[str]:
        return set().union(*(c.symbols() for _, c in self.modes))

    def __bool__(self):
        return bool(self.modes)

    def __eq__(self, other):
        other = FourierPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.modes == other.modes

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.modes))
        return self._hash

    def __neg__(self):
        return FourierPoly._from_canonical({k: -c for k, c in self.modes})

    def __add__(self, other):
        if type(other) is not FourierPoly:
            other = FourierPoly.coerce(other)
            if other is NotImplemented:
                return NotImplemented
        acc = dict(self.modes)
        for k, c in other.modes:
            acc[k] = acc[k] + c if k in acc else c
        return FourierPoly._from_canonical(acc)

    __radd__ = __add__

    def __sub__(self, other):
        other = FourierPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = FourierPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict = {}
        for k1, c1 in self.modes:
            for k2, c2 in other.modes:
                k, c = k1 + k2, c1 * c2
                acc[k] = acc[k] + c if k in acc else c
        return FourierPoly._from_canonical(acc)

    __rmul__ = __mul__

    def scale(self, c) -> "FourierPoly":
        if isinstance(c, ConstPoly) and not c.is_constant():
            return FourierPoly._from_canonical({k: c * v for k, v in self.modes})
        c = ConstPoly.coerce(c).numeric_value()
        return FourierPoly._from_canonical({k: v.scale(c) for k, v in self.modes})

    def diff(self) -> "FourierPoly":
        """d/dphi, mode-wise multiplication by ``i*k``."""
        return FourierPoly._from_canonical({k: v.scale(GaussRat(0, k)) for k, v in self.modes})

    def conj(self) -> "FourierPoly":
        """Complex conjugate as a function of real phi: frequency k <- conj(c_{-k})."""
        return FourierPoly._from_canonical({-k: v.conj() for k, v in self.modes})

    def substitute(self, values: Mapping[str, ConstPoly]) -> "FourierPoly":
        return FourierPoly((k, v.substitute(values)) for k, v in self.modes)

    def __repr__(self):
        return f"FourierPoly({str(self)!r})"

    def __str__(self):
        from .syntax import format_fourier

        return format_fourier(self)


def E(k: int, coeff=1) -> FourierPoly:
    """``coeff * e^{ik phi}``."""
    return FourierPoly({k: coeff})
