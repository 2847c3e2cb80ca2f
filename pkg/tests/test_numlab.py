import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conserved_ops.conservation import conserved_family, expectation
from conserved_ops.diffop import D, DiffOp, WaveSpec
from conserved_ops.exactnum import I, symbol
from conserved_ops.fourier import E, FourierPoly
from conserved_ops.numlab import (
    GridSpec,
    UnboundConstantError,
    check_normalization,
    eval_const,
    eval_fourier,
    probe_ensemble,
    quad_delta,
    quad_expectation,
    quad_mean,
    random_diffop,
    random_fourier,
)

from conftest import diffops, numeric_fourierpolys, rational_binding

A = symbol("A")


def test_eval_fourier():
    assert eval_fourier(E(1), {}, 0.0) == 1 + 0j
    assert eval_fourier(FourierPoly.coerce(A), {"A": 2}, 1.3) == 2
    assert abs(eval_fourier(E(1) + E(-1), {}, math.pi / 2)) < 1e-15


def test_unbound_constant_is_named():
    with pytest.raises(UnboundConstantError) as err:
        eval_fourier(E(1, A), {}, 0.0)
    assert err.value.name == "A"
    assert "A" in str(err.value)


def test_quad_expectation_examples():
    g = GridSpec(64)
    assert abs(quad_expectation(DiffOp({1: -I}), g=g) - 1.0) < 1e-10
    assert quad_expectation(DiffOp(), g=g) == 0.0
    fam = conserved_family(A, E(2, 3))
    assert abs(quad_expectation(fam, binding={"A": 2}, g=g) - 2.0) < 1e-10


@pytest.mark.parametrize("rho, expected", [(None, 1.0), (1.0, 2 * math.pi), (0.5, math.pi / 2)])
def test_normalization(rho, expected):
    w = WaveSpec() if rho is None else WaveSpec(rho)
    assert abs(check_normalization(w, GridSpec(32)) - expected) < 1e-12


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(3)


@given(numeric_fourierpolys)
def test_trapezoid_exact_for_low_bandwidth(f):
    exact = complex(eval_const(f.mean()))
    assert abs(quad_mean(f, {}, GridSpec(32)) - exact) < 1e-12
    assert abs(quad_mean(f, {}, GridSpec(16)) - exact) < 1e-12


def test_trapezoid_aliases_when_under_resolved():
    # e^{4i phi} sampled on 4 nodes is the constant 1
    assert abs(quad_mean(E(4), {}, GridSpec(4)) - 1) < 1e-12


@settings(max_examples=200)
@given(diffops, rational_binding())
def test_oracle_agreement(p, binding):
    exact = complex(eval_const(expectation(p), binding))
    assert abs(quad_expectation(p, WaveSpec(), binding, GridSpec(64)) - exact) < 1e-9


def test_nonnormalized_expectation_scales():
    w = WaveSpec(norm=Fraction(5, 2))
    p = DiffOp({0: 3, 2: E(1)})
    exact = complex(eval_const(expectation(p, w)))
    assert abs(quad_expectation(p, w) - exact) < 1e-12
    assert abs(exact - 7.5) < 1e-15


def test_quad_delta_fixed_perturbations():
    p = DiffOp({0: A, 2: E(1)})
    b = {"A": Fraction(1, 3)}
    assert abs(quad_delta(p, DiffOp({0: 1}), binding=b) - 1) < 1e-10
    assert abs(quad_delta(p, D(1), binding=b) - 1j) < 1e-10
    assert abs(quad_delta(p, D(2), binding=b) + 1) < 1e-10


def test_probe_family_only():
    rep = probe_ensemble(DiffOp({0: A, 1: E(1)}), True, 100, seed=3, binding={"A": 2})
    assert rep.max_abs_delta < 1e-10
    assert rep.detected_fraction == 0


def test_probe_arbitrary_detects():
    rep = probe_ensemble(DiffOp({0: A}), False, 100, seed=3, binding={"A": 2})
    assert rep.detected_fraction >= 0.5


def test_probe_requires_trials():
    with pytest.raises(ValueError):
        probe_ensemble(D(1), True, 0)


def test_probe_deterministic():
    a = probe_ensemble(D(2), False, 20, seed=11)
    b = probe_ensemble(D(2), False, 20, seed=11)
    assert a.deltas == b.deltas
    assert a == b


def test_samplers_bounded(rng):
    for _ in range(20):
        assert random_fourier(rng, 4).bandwidth <= 4
        p = random_diffop(rng, 8, 4)
        assert p.order <= 8
