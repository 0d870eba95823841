"""Moment-generating-function norms: rate functions, sample constructors,
the minimal-tau norm, and the companion generating function."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glsnum import (
    DiscreteMeasureSpace,
    PhiFunction,
    RandomVariableSample,
    bphi_norm,
    discretized_normal,
    log_mgf,
    membership_check,
    mgf,
    phi_from_descriptor,
    power_phi,
    probability_space,
    psi_from_phi,
    quadratic_phi,
    rademacher,
    two_point,
)


# ---------------------------------------------------------------------------
# rate functions
# ---------------------------------------------------------------------------

def test_phi_validation():
    with pytest.raises(ValueError, match="lambda0 > 0"):
        PhiFunction(lambda0=0.0, core=lambda x: x ** 2)
    with pytest.raises(ValueError, match="phi\\(0\\) must be 0"):
        PhiFunction(lambda0=1.0, core=lambda x: x + 1.0)
    with pytest.raises(ValueError, match="positive for lambda > 0"):
        PhiFunction(lambda0=1.0, core=lambda x: -x ** 2)
    with pytest.raises(ValueError, match="midpoint convexity"):
        PhiFunction(lambda0=4.0, core=lambda x: np.sqrt(x))
    with pytest.raises(ValueError, match="non-finite"):
        PhiFunction(lambda0=2.0, core=lambda x: np.where(x > 1, math.inf, x))


def test_phi_even_and_domain():
    phi = quadratic_phi(2.0)
    assert phi(1.5) == phi(-1.5) == pytest.approx(1.125)
    assert phi(2.0) == math.inf  # open interval
    assert phi(5.0) == math.inf
    out = phi(np.array([-1.0, 0.0, 3.0]))
    assert out.shape == (3,)
    assert out[0] == pytest.approx(0.5)
    assert out[1] == 0.0
    assert math.isinf(out[2])


def test_phi_diagnostics():
    quad = quadratic_phi()
    assert quad.curvature_at_zero() == pytest.approx(1.0, rel=1e-6)
    assert quad.sup_value == math.inf
    capped = quadratic_phi(3.0)
    assert capped.sup_value == pytest.approx(4.5, rel=1e-9)


def test_power_phi_values_and_validation():
    phi = power_phi(3.0)
    assert phi(2.0) == pytest.approx(8.0 / 3.0)
    with pytest.raises(ValueError, match="m > 1"):
        power_phi(1.0)
    with pytest.raises(ValueError, match="m > 1"):
        power_phi(math.inf)
    lam = np.linspace(0.0, 5.0, 11)
    np.testing.assert_allclose(power_phi(2.0)(lam), quadratic_phi()(lam))


def test_phi_from_descriptor(tmp_path):
    assert phi_from_descriptor({"family": "quadratic"}).label == "quadratic"
    phi = phi_from_descriptor('{"family": "power", "params": {"m": 3}}')
    assert phi(1.0) == pytest.approx(1.0 / 3.0)
    path = tmp_path / "phi.json"
    path.write_text(json.dumps(
        {"family": "quadratic", "params": {"lambda0": 2.0}}))
    assert phi_from_descriptor(path).lambda0 == 2.0
    with pytest.raises(ValueError, match="family"):
        phi_from_descriptor({"params": {}})
    with pytest.raises(ValueError, match="unknown rate-function"):
        phi_from_descriptor({"family": "cubic"})


# ---------------------------------------------------------------------------
# samples
# ---------------------------------------------------------------------------

def test_sample_requires_probability_space():
    space = DiscreteMeasureSpace(atoms=("a", "b"), weights=(0.5, 0.7))
    with pytest.raises(ValueError, match="probability space"):
        RandomVariableSample(space.function([1.0, -1.0]))


def test_sample_requires_centering():
    space = probability_space([0.5, 0.5])
    with pytest.raises(ValueError, match="not centered"):
        RandomVariableSample(space.function([1.0, 2.0]))


def test_rademacher_shape():
    xi = rademacher(2.0)
    assert sorted(xi.values.tolist()) == [-2.0, 2.0]
    np.testing.assert_allclose(xi.probs, [0.5, 0.5])


def test_two_point():
    xi = two_point(3.0, 0.25)
    mean = float(np.dot(xi.values, xi.probs))
    assert abs(mean) <= 1e-12
    assert xi.values[0] == pytest.approx(3.0, abs=1e-12)
    assert xi.values[1] == pytest.approx(-1.0, abs=1e-12)
    with pytest.raises(ValueError, match="q in \\(0, 1\\)"):
        two_point(1.0, 1.0)


def test_discretized_normal_moments():
    xi = discretized_normal()
    assert xi.space.is_probability
    mean = float(np.dot(xi.values, xi.probs))
    var = float(np.dot(xi.values ** 2, xi.probs))
    assert abs(mean) <= 1e-12
    assert var == pytest.approx(1.0, abs=1e-3)


def test_sample_scaled():
    xi = rademacher()
    np.testing.assert_allclose(xi.scaled(3.0).values, 3.0 * xi.values)


# ---------------------------------------------------------------------------
# mgf helpers
# ---------------------------------------------------------------------------

def test_log_mgf_rademacher_is_log_cosh():
    xi = rademacher()
    for lam in (0.0, 0.3, 1.0, 5.0, -2.0):
        assert log_mgf(xi, lam) == pytest.approx(
            math.log(math.cosh(lam)), abs=1e-12)
    lams = np.array([0.5, 1.5])
    out = log_mgf(xi, lams)
    assert out.shape == (2,)


def test_log_mgf_never_overflows():
    # lambda * sup = 5000: the plain expectation overflows but the
    # log-domain accumulation stays exact
    assert log_mgf(rademacher(), 5000.0) == pytest.approx(
        5000.0 - math.log(2.0), rel=1e-12)


def test_mgf_values_and_overflow():
    xi = rademacher()
    assert mgf(xi, 0.0) == 1.0
    assert mgf(xi, 1.0) == pytest.approx(math.cosh(1.0), rel=1e-12)
    assert mgf(xi, 5000.0) == math.inf


# ---------------------------------------------------------------------------
# the norm
# ---------------------------------------------------------------------------

def test_bphi_norm_rademacher_quadratic():
    # ln cosh(lambda) <= (lambda tau)^2 / 2 first binds as lambda -> 0
    # where ln cosh ~ lambda^2 / 2, so the norm is 1
    norm = bphi_norm(rademacher(), quadratic_phi())
    assert norm == pytest.approx(1.0, abs=1e-6)


def test_bphi_norm_discretized_normal():
    norm = bphi_norm(discretized_normal(), quadratic_phi())
    assert 0.99 <= norm <= 1.01


def test_bphi_norm_zero_variable():
    space = probability_space([0.5, 0.5])
    xi = RandomVariableSample(space.function([0.0, 0.0]))
    assert bphi_norm(xi, quadratic_phi()) == 0.0


def test_bphi_norm_scale_invariance_exact():
    xi = rademacher()
    phi = quadratic_phi()
    base = bphi_norm(xi, phi)
    for c in (2.0, 10.0, 0.125, 3.7e3):
        assert bphi_norm(xi.scaled(c), phi) == pytest.approx(
            c * base, rel=1e-12)


@settings(max_examples=15, deadline=None)
@given(st.floats(min_value=0.05, max_value=0.95),
       st.floats(min_value=0.25, max_value=4.0))
def test_bphi_norm_homogeneous_two_point(q, c):
    xi = two_point(1.0, q)
    phi = quadratic_phi()
    assert bphi_norm(xi.scaled(c), phi) == pytest.approx(
        c * bphi_norm(xi, phi), rel=1e-10)


def test_bphi_norm_infinite_when_no_feasible_tau():
    # phi = lambda^4 / 4 vanishes faster than the mgf's lambda^2 / 2 at the
    # origin, so the smallest grid lambda forces tau into the hundreds; with
    # tau_max below that every probe is infeasible and the norm is +inf
    finite = bphi_norm(rademacher(), power_phi(4.0))
    assert 100.0 < finite < 1e4
    capped = bphi_norm(rademacher(), power_phi(4.0), tau_max=10.0)
    assert capped == math.inf


# ---------------------------------------------------------------------------
# companion generating function and membership
# ---------------------------------------------------------------------------

def test_psi_from_phi_quadratic_is_sqrt():
    psi = psi_from_phi(quadratic_phi())
    ps = np.array([1.0, 2.0, 16.0, 100.0])
    np.testing.assert_allclose(psi(ps), np.sqrt(ps), rtol=1e-8)


def test_psi_from_phi_raw_scale():
    # without normalization: p / phi^(-1)(p) = p / sqrt(2 p) = sqrt(p / 2)
    psi = psi_from_phi(quadratic_phi(), normalize=False)
    ps = np.array([1.0, 4.0, 50.0])
    np.testing.assert_allclose(psi(ps), np.sqrt(ps / 2.0), rtol=1e-8)


def test_psi_from_phi_needs_enough_range():
    with pytest.raises(ValueError, match="no exponents"):
        psi_from_phi(quadratic_phi(1.0))  # sup over (-1, 1) is 1/2


def test_membership_check_rademacher():
    rep = membership_check(rademacher(), quadratic_phi())
    assert rep.bphi == pytest.approx(1.0, abs=1e-5)
    assert rep.grand == pytest.approx(1.0, abs=1e-6)
    assert rep.ratio == pytest.approx(1.0, abs=1e-4)
    assert set(rep.to_dict()) == {"bphi", "grand", "ratio"}
