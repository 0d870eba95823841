"""Associate-norm machinery: the exponent-scan upper bound, the unit-ball
pairing oracle, set functions on the finite algebra, and the representation /
dual-bound reports."""

import math

import numpy as np
import pytest

from glsnum import (
    GridSpec,
    SetFunction,
    StepFunction,
    associate_bound,
    associate_norm_oracle,
    batch_embedding_check,
    conjugate_exponent,
    ess_sup,
    lp_norm,
    make_extremal_psi,
    make_power_psi,
    make_sv_psi,
    probability_space,
    setfunction_norm,
    step_integral,
    theorem_bound_check,
    verify_representation,
)
from conftest import random_function, random_space

SV_LOG = lambda p: np.log(math.e - 1.0 + np.asarray(p, dtype=float))


# ---------------------------------------------------------------------------
# associate_bound
# ---------------------------------------------------------------------------

def test_bound_is_dual_lp_norm_for_extremal(rng):
    # psi == 1 on [1, r] has adjacent function == 1 from r' = r/(r-1) on,
    # so the infimum sits at q = r' and the bound is the plain dual norm
    for r in (2.0, 3.0, 5.0):
        psi = make_extremal_psi(r)
        r_conj = conjugate_exponent(r)
        for _ in range(5):
            space = random_space(rng)
            g = random_function(rng, space)
            res = associate_bound(g, psi, space)
            assert res.value == pytest.approx(lp_norm(g, r_conj, space),
                                              rel=1e-9)
            assert res.arginf_q == pytest.approx(r_conj, rel=1e-6)
            assert not res.hit_cap


def test_bound_scaling(rng):
    space = random_space(rng)
    g = random_function(rng, space)
    psi = make_power_psi(2.0)
    one = associate_bound(g, psi, space).value
    three = associate_bound(3.0 * g, psi, space).value
    assert three == pytest.approx(3.0 * one, rel=1e-12)


def test_bound_zero_density(rng):
    space = random_space(rng)
    res = associate_bound(space.function(np.zeros(space.n_atoms)),
                          make_power_psi(2.0), space)
    assert res.value == 0.0


def test_restricted_window_raises_when_empty():
    space = probability_space([0.5, 0.5])
    g = space.function([1.0, 2.0])
    with pytest.raises(ValueError, match="empty restricted q-window"):
        associate_bound(g, make_power_psi(1.0), space, q_lo=50.0, q_hi=3.0)


def test_restricted_window_overestimates_sharply():
    # a near-degenerate two-atom space with one rare large value: the scan
    # wants a small exponent (the weight of the big atom barely registers in
    # low moments), and cutting that region off inflates the bound a lot --
    # though never past the crude 2 * sup|g| that any window satisfies here
    space = probability_space([0.999, 0.001])
    g = space.function([0.1, 50.0])
    psi = make_power_psi(1.0)
    full = associate_bound(g, psi, space)
    assert full.arginf_q < 2.0
    assert full.value == pytest.approx(1.30995, rel=1e-4)
    truncated = associate_bound(g, psi, space, q_lo=10.0)
    assert truncated.arginf_q == pytest.approx(10.0)
    assert truncated.value > 20.0 * full.value
    assert truncated.value <= 2.0 * ess_sup(g, space)


def test_bound_result_to_dict(rng):
    space = random_space(rng)
    g = random_function(rng, space)
    d = associate_bound(g, make_power_psi(2.0), space).to_dict()
    assert set(d) == {"value", "arginf_q", "hit_cap"}
    assert isinstance(d["hit_cap"], bool)


# ---------------------------------------------------------------------------
# the pairing oracle against the bound
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("psi_factory", [
    lambda: make_extremal_psi(3.0),
    lambda: make_power_psi(1.0),
    lambda: make_power_psi(2.0),
    lambda: make_sv_psi(2.0, SV_LOG),
])
def test_oracle_never_exceeds_bound(rng, psi_factory):
    psi = psi_factory()
    for _ in range(6):
        space = random_space(rng, max_atoms=8)
        g = random_function(rng, space)
        bound = associate_bound(g, psi, space).value
        oracle = associate_norm_oracle(g, psi, space)
        assert oracle <= bound + 1e-8 * (1.0 + bound)


def test_oracle_tight_for_extremal(rng):
    # against L_r the associate norm IS the dual norm; the seeded ascent
    # reaches it through the Hoelder-equality profile
    psi = make_extremal_psi(3.0)
    for _ in range(6):
        space = random_space(rng, max_atoms=8)
        g = random_function(rng, space)
        bound = associate_bound(g, psi, space).value
        oracle = associate_norm_oracle(g, psi, space)
        assert bound - oracle <= 1e-4 * (1.0 + bound)


def test_oracle_zero_density(rng):
    space = random_space(rng)
    z = space.function(np.zeros(space.n_atoms))
    assert associate_norm_oracle(z, make_power_psi(2.0), space) == 0.0


def test_oracle_scaling(rng):
    space = random_space(rng, max_atoms=6)
    g = random_function(rng, space)
    psi = make_power_psi(2.0)
    one = associate_norm_oracle(g, psi, space)
    five = associate_norm_oracle(5.0 * g, psi, space)
    assert five == pytest.approx(5.0 * one, rel=1e-6)


# ---------------------------------------------------------------------------
# set functions and step functions
# ---------------------------------------------------------------------------

def test_setfunction_validation():
    space = probability_space([0.25, 0.25, 0.5])
    with pytest.raises(ValueError, match="atom values"):
        SetFunction(space, (1.0, 2.0))
    with pytest.raises(ValueError, match="finite"):
        SetFunction(space, (1.0, math.inf, 0.0))


def test_setfunction_from_density_and_of():
    space = probability_space([0.25, 0.25, 0.5])
    g = space.function([2.0, -4.0, 1.0])
    gamma = SetFunction.from_density(g, space)
    assert gamma.atom_values == (0.5, -1.0, 0.5)
    assert gamma.of([0]) == 0.5
    assert gamma.of([0, 2]) == 1.0
    assert gamma.of([]) == 0.0
    assert gamma.total == pytest.approx(0.0)
    with pytest.raises(ValueError, match="repeated"):
        gamma.of([1, 1])
    with pytest.raises(ValueError, match="out of range"):
        gamma.of([3])


def test_stepfunction_validation():
    with pytest.raises(ValueError, match="one coefficient per set"):
        StepFunction((1.0,), ((0,), (1,)))
    with pytest.raises(ValueError, match="repeated atom inside"):
        StepFunction((1.0,), ((0, 0),))
    with pytest.raises(ValueError, match="overlap on atoms"):
        StepFunction((1.0, 2.0), ((0, 1), (1, 2)))
    with pytest.raises(ValueError, match="finite"):
        StepFunction((math.nan,), ((0,),))


def test_step_integral_matches_direct_sum():
    space = probability_space([0.1, 0.2, 0.3, 0.4])
    gamma = SetFunction(space, (1.0, -2.0, 0.5, 3.0))
    phi = StepFunction((2.0, -1.0), ((0, 3), (1,)))
    # 2 * (1 + 3) + (-1) * (-2)
    assert step_integral(phi, gamma) == 10.0


def test_setfunction_norm_equals_oracle_on_induced_gamma(rng):
    # gamma(A) = integral_A g dmu carries exactly the pairing weights
    # g_i w_i, so both optimizations coincide
    psi = make_power_psi(2.0)
    for _ in range(4):
        space = random_space(rng, max_atoms=6)
        g = random_function(rng, space)
        gamma = SetFunction.from_density(g, space)
        direct = associate_norm_oracle(g, psi, space)
        vianorm = setfunction_norm(gamma, psi, space)
        assert vianorm == pytest.approx(direct, rel=1e-9, abs=1e-12)


def test_setfunction_norm_space_mismatch():
    space_a = probability_space([0.5, 0.5])
    space_b = probability_space([0.4, 0.6])
    gamma = SetFunction(space_a, (1.0, 2.0))
    with pytest.raises(ValueError, match="not defined on the given space"):
        setfunction_norm(gamma, make_power_psi(2.0), space_b)


# ---------------------------------------------------------------------------
# representation and the dual bound
# ---------------------------------------------------------------------------

def test_verify_representation_power_family(rng):
    psi = make_power_psi(2.0)
    for _ in range(3):
        space = random_space(rng, max_atoms=6)
        g = random_function(rng, space)
        rep = verify_representation(g, psi, space, growth_alpha=0.25)
        assert rep.passed, rep.to_dict()
        assert rep.difference <= 1e-5 * (1.0 + max(rep.oracle, rep.setnorm))
        assert rep.growth is not None
        assert rep.growth.passed


def test_verify_representation_without_growth(rng):
    space = random_space(rng, max_atoms=5)
    g = random_function(rng, space)
    rep = verify_representation(g, make_power_psi(1.0), space,
                                check_growth=False)
    assert rep.growth is None
    d = rep.to_dict()
    assert "growth" not in d
    assert set(d) == {"oracle", "setnorm", "difference", "passed"}


def test_theorem_bound_check(rng):
    # ||f||_(N) <= c_high ||f||_G on the sampled batch, so with a modest
    # safety factor the conjugate-Orlicz bound 2 c ||g||_(N*) must dominate
    # the pairing oracle; an absurdly small constant must flip it to failing
    psi = make_power_psi(2.0)
    space = random_space(rng, max_atoms=6)
    batch = [random_function(rng, space) for _ in range(30)]
    c_high = batch_embedding_check(batch, psi, space).c_high
    g = random_function(rng, space)
    rep = theorem_bound_check(g, psi, 1.2 * c_high, space)
    assert rep.passed, rep.to_dict()
    assert rep.margin >= -1e-6
    assert set(rep.to_dict()) == {"oracle", "bound", "margin", "passed"}
    assert not theorem_bound_check(g, psi, 1e-9 * c_high, space).passed
