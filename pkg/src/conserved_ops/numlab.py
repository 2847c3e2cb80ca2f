"""Floating-point oracle.

Operators are evaluated on an equispaced periodic grid and expectations are
integrated with the equal-weight trapezoid rule.  Nothing here reads a symbol
or a mean off the exact representation: derivatives of psi are taken from
psi's own mode list, and integrals come from summing grid values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .diffop import DiffOp, WaveSpec
from .exactnum import ConstPoly, GaussRat
from .fourier import FourierPoly

__all__ = [
    "Binding",
    "GridSpec",
    "UnboundConstantError",
    "eval_const",
    "eval_fourier",
    "psi_values",
    "apply_numeric",
    "quad_mean",
    "quad_expectation",
    "quad_delta",
    "check_normalization",
    "ProbeReport",
    "probe_ensemble",
    "random_fourier",
    "random_diffop",
]

Binding = Mapping[str, Fraction]


class UnboundConstantError(LookupError):
    def __init__(self, name: str):
        super().__init__(f"symbolic constant {name!r} is not bound")
        self.name = name


@dataclass(frozen=True)
class GridSpec:
    """``n_nodes`` equispaced points ``2 pi j / n`` on ``[0, 2 pi)``."""

    n_nodes: int = 64

    def __post_init__(self):
        if int(self.n_nodes) != self.n_nodes or self.n_nodes < 4:
            raise ValueError(f"n_nodes must be an integer >= 4, got {self.n_nodes}")

    @property
    def nodes(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_nodes) / self.n_nodes


def eval_const(c: ConstPoly, binding: Binding | None = None) -> GaussRat:
    """Evaluate exactly with rational values for the constants."""
    binding = binding or {}
    total = GaussRat(0)
    for mono, coeff in c.terms:
        value = Fraction(1)
        for name, e in mono:
            if name not in binding:
                raise UnboundConstantError(name)
            value *= Fraction(binding[name]) ** e
        total = total + coeff * value
    return total


def eval_fourier(f: FourierPoly, binding: Binding | None = None, phi=0.0):
    """``sum_k c_k e^{ik phi}`` in complex floating point; phi may be an array."""
    phi = np.asarray(phi, dtype=float)
    out = np.zeros(phi.shape, dtype=complex)
    for k, c in f.modes:
        out = out + complex(eval_const(c, binding)) * np.exp(1j * k * phi)
    return out if out.ndim else complex(out)


# psi = rho * e^{i phi}, stored as its mode list
def _psi_modes(w: WaveSpec) -> dict[int, complex]:
    return {1: complex(w.rho)}


def psi_values(w: WaveSpec, g: GridSpec, derivative: int = 0) -> np.ndarray:
    """n-th phi-derivative of psi at the grid nodes, by the mode rule ``(ik)^n``."""
    phi = g.nodes
    out = np.zeros(phi.shape, dtype=complex)
    for k, amp in _psi_modes(w).items():
        out += amp * (1j * k) ** derivative * np.exp(1j * k * phi)
    return out


def apply_numeric(p: DiffOp, w: WaveSpec, binding: Binding | None, g: GridSpec) -> np.ndarray:
    """``(p psi)(phi_j) = sum_n A_n(phi_j) * psi^(n)(phi_j)`` on the grid."""
    out = np.zeros(g.n_nodes, dtype=complex)
    for n, f in p.coeffs:
        out += eval_fourier(f, binding, g.nodes) * psi_values(w, g, n)
    return out


def _trapezoid(values: np.ndarray) -> complex:
    # equal weights on a periodic grid; fsum runs in node order
    h = 2 * math.pi / len(values)
    return complex(h * math.fsum(values.real), h * math.fsum(values.imag))


def quad_mean(f: FourierPoly, binding: Binding | None, g: GridSpec) -> complex:
    """``(1/2pi) * integral of f`` over one period, by quadrature."""
    return _trapezoid(eval_fourier(f, binding, g.nodes)) / (2 * math.pi)


def quad_expectation(p: DiffOp, w: WaveSpec | None = None, binding: Binding | None = None,
                     g: GridSpec | None = None) -> complex:
    """``integral psi* (p psi) dphi`` over ``[0, 2pi)``."""
    w = w or WaveSpec()
    g = g or GridSpec()
    if p.is_zero():
        return 0j
    integrand = np.conj(psi_values(w, g)) * apply_numeric(p, w, binding, g)
    return _trapezoid(integrand)


def quad_delta(p: DiffOp, dp: DiffOp, w: WaveSpec | None = None, binding: Binding | None = None,
               g: GridSpec | None = None) -> complex:
    return quad_expectation(p + dp, w, binding, g) - quad_expectation(p, w, binding, g)


def check_normalization(w: WaveSpec | None = None, g: GridSpec | None = None) -> float:
    """Quadrature of ``|psi|^2``; ``2 pi rho^2``."""
    w = w or WaveSpec()
    g = g or GridSpec()
    return _trapezoid(np.abs(psi_values(w, g)) ** 2).real


# ---------------------------------------------------------------- sampling


def _small_rational(rng: np.random.Generator, span: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(int(rng.integers(-span, span + 1)), int(rng.integers(1, max_den + 1)))


def random_const(rng: np.random.Generator, symbols=(), max_terms: int = 2) -> ConstPoly:
    terms = []
    for _ in range(int(rng.integers(1, max_terms + 1))):
        coeff = GaussRat(_small_rational(rng), _small_rational(rng))
        mono = ()
        if symbols and rng.random() < 0.5:
            mono = ((symbols[int(rng.integers(len(symbols)))], int(rng.integers(1, 3))),)
        terms.append((mono, coeff))
    return ConstPoly(terms)


def random_fourier(rng: np.random.Generator, bandwidth: int = 4, symbols=(),
                   density: float = 0.5) -> FourierPoly:
    """Random FourierPoly with frequencies in ``[-bandwidth, bandwidth]``."""
    modes = [
        (k, random_const(rng, symbols))
        for k in range(-bandwidth, bandwidth + 1)
        if rng.random() < density
    ]
    return FourierPoly(modes)


def random_diffop(rng: np.random.Generator, max_order: int = 8, bandwidth: int = 4,
                  symbols=(), density: float = 0.5) -> DiffOp:
    return DiffOp(
        (n, random_fourier(rng, bandwidth, symbols))
        for n in range(max_order + 1)
        if rng.random() < density
    )


@dataclass(frozen=True)
class ProbeReport:
    trials: int
    family_only: bool
    seed: int
    deltas: tuple = field(repr=False)
    max_abs_delta: float = 0.0
    detected_fraction: float = 0.0

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "family_only": self.family_only,
            "seed": self.seed,
            "max_abs_delta": self.max_abs_delta,
            "detected_fraction": self.detected_fraction,
        }


DETECTION_THRESHOLD = 1e-6


def probe_ensemble(p: DiffOp, family_only: bool, trials: int, seed: int = 0,
                   binding: Binding | None = None, g: GridSpec | None = None,
                   w: WaveSpec | None = None) -> ProbeReport:
    """Perturb ``p`` by random operators and measure the expectation change by
    quadrature.

    With ``family_only`` the perturbations are ``-i*dB2*D1 + dB2*D2`` (the
    conserved family with zero constant); otherwise they are arbitrary
    operators of order <= 4.  Trial t draws from ``default_rng([seed, t])``.
    """
    if int(trials) != trials or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials}")
    from .conservation import conserved_family

    deltas = []
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        if family_only:
            dp = conserved_family(0, random_fourier(rng, 4))
        else:
            dp = random_diffop(rng, max_order=4, bandwidth=4)
        deltas.append(quad_delta(p, dp, w, binding, g))
    mags = [abs(d) for d in deltas]
    return ProbeReport(
        trials=trials,
        family_only=family_only,
        seed=seed,
        deltas=tuple(deltas),
        max_abs_delta=max(mags),
        detected_fraction=sum(m > DETECTION_THRESHOLD for m in mags) / trials,
    )
