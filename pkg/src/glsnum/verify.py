"""Seeded self-verification battery behind the `verify` CLI subcommand.

Runs a compact randomized version of the package's core identities and
inequalities (the full-size battery lives in the test suite) with a fixed
random seed, so two runs with the same seed produce byte-identical reports.
Each check contributes a named entry with a passed flag and its worst
observed deviation.
"""
from __future__ import annotations

import math

import numpy as np

from glsnum.bphi import bphi_norm, discretized_normal, quadratic_phi, \
    rademacher, two_point
from glsnum.convex import (RealFunction1D, check_growth_condition, h_of,
                           young_fenchel)
from glsnum.duality import (SetFunction, StepFunction, associate_bound,
                            associate_norm_oracle, step_integral,
                            verify_representation)
from glsnum.glnorm import gls_norm
from glsnum.measure import lp_norm, probability_space
from glsnum.orlicz import (build_N, conjugate_young, conjugate_young_function,
                           luxemburg_norm, orlicz_holder_check, power_young)
from glsnum.psi import (adjacent, conjugate_exponent, make_extremal_psi,
                        make_power_psi)

__all__ = ["run_verification_suite"]


def _random_space(rng: np.random.Generator, max_atoms: int = 12):
    n = int(rng.integers(2, max_atoms + 1))
    return probability_space(rng.uniform(0.2, 1.0, size=n))


def _random_function(rng: np.random.Generator, space, lo=-3.0, hi=3.0):
    return space.function(rng.uniform(lo, hi, size=space.n_atoms))


def _check_extremal_identity(rng) -> dict:
    worst_norm = 0.0
    worst_bound = 0.0
    for r in (2.0, 3.0, 5.0):
        psi = make_extremal_psi(r)
        for _ in range(6):
            space = _random_space(rng)
            f = _random_function(rng, space)
            worst_norm = max(worst_norm, abs(
                gls_norm(f, psi, space).value - lp_norm(f, r, space)))
            g = _random_function(rng, space)
            rp = conjugate_exponent(r)
            worst_bound = max(worst_bound, abs(
                associate_bound(g, psi, space).value - lp_norm(g, rp, space)))
    return {"passed": worst_norm <= 1e-9 and worst_bound <= 1e-6,
            "worst_norm_dev": worst_norm, "worst_bound_dev": worst_bound,
            "tolerances": [1e-9, 1e-6]}


def _check_adjacent_formula() -> dict:
    qs = np.geomspace(1.01, 100.0, 50)
    worst = 0.0
    for m in (1.0, 2.0, 4.0):
        nu = adjacent(make_power_psi(m))
        exact = ((qs - 1.0) / qs) ** (1.0 / m)
        worst = max(worst, float(np.max(np.abs(nu(qs) - exact))))
    return {"passed": worst <= 1e-12, "worst_dev": worst,
            "tolerance": 1e-12}


def _check_duality_bracket(rng) -> dict:
    worst_excess = -math.inf
    worst_gap = 0.0
    for i in range(30):
        space = _random_space(rng)
        g = _random_function(rng, space)
        if i % 2 == 0:
            r = float(rng.choice([2.0, 3.0, 5.0]))
            psi = make_extremal_psi(r)
        else:
            psi = make_power_psi(float(rng.choice([1.0, 2.0, 4.0])))
            r = None
        bound = associate_bound(g, psi, space).value
        oracle = associate_norm_oracle(g, psi, space, iterations=30)
        worst_excess = max(worst_excess, oracle - bound)
        if r is not None:
            worst_gap = max(worst_gap, bound - oracle)
    return {"passed": worst_excess <= 1e-8 and worst_gap <= 1e-4,
            "worst_excess": worst_excess, "worst_extremal_gap": worst_gap,
            "tolerances": [1e-8, 1e-4]}


def _check_holder(rng) -> dict:
    worst = -math.inf
    for _ in range(200):
        space = _random_space(rng)
        f = _random_function(rng, space)
        g = _random_function(rng, space)
        p = float(rng.uniform(1.0, 8.0))
        lhs = abs(float(np.dot(f.value_array * g.value_array,
                               space.weight_array)))
        rhs = lp_norm(f, p, space) * lp_norm(g, conjugate_exponent(p), space)
        worst = max(worst, lhs - rhs)
    return {"passed": worst <= 1e-10, "worst_excess": worst,
            "tolerance": 1e-10}


def _check_young_conjugate(rng) -> dict:
    half_square = RealFunction1D(-100.0, 100.0, lambda z: 0.5 * z ** 2,
                                 label="z^2/2")
    vs = np.linspace(-50.0, 50.0, 21)
    worst_sq = float(max(abs(young_fenchel(half_square, float(v)) - 0.5 * v * v)
                         for v in vs))
    h = h_of(make_power_psi(2.0))
    worst_fy = -math.inf
    for _ in range(100):
        z = float(rng.uniform(1.0, 150.0))
        v = float(rng.uniform(-3.0, 3.0))
        worst_fy = max(worst_fy,
                       v * z - (float(h(z)) + young_fenchel(h, v)))
    return {"passed": worst_sq <= 1e-8 and worst_fy <= 1e-9,
            "worst_quadratic_dev": worst_sq, "worst_fenchel_young": worst_fy,
            "tolerances": [1e-8, 1e-9]}


def _check_orlicz_build() -> dict:
    worst_jump = 0.0
    zero_ok = True
    for psi in (make_extremal_psi(3.0), make_power_psi(2.0)):
        N = build_N(psi)
        zero_ok = zero_ok and float(N(0.0)) == 0.0
        left = float(N(math.e * (1 - 1e-12)))
        right = float(N(math.e * (1 + 1e-12)))
        worst_jump = max(worst_jump, abs(right - left))
    N3 = build_N(make_extremal_psi(3.0))
    us = np.geomspace(math.e, 100.0, 50)
    worst_power = float(np.max(np.abs(N3(us) / us ** 3 - 1.0)))
    return {"passed": worst_jump <= 1e-9 and zero_ok and worst_power <= 1e-6,
            "worst_branch_jump": worst_jump, "zero_at_zero": zero_ok,
            "worst_power_rel_dev": worst_power,
            "tolerances": [1e-9, 1e-6]}


def _check_luxemburg(rng) -> dict:
    worst = 0.0
    worst_integral = 0.0
    for _ in range(20):
        space = _random_space(rng)
        f = _random_function(rng, space)
        if not np.any(f.value_array):
            continue
        p = float(rng.uniform(1.0, 6.0))
        N = power_young(p)
        k = luxemburg_norm(f, N, space)
        worst = max(worst, abs(k - lp_norm(f, p, space)))
        integral = float(np.dot(N(np.abs(f.value_array) / k),
                                space.weight_array))
        worst_integral = max(worst_integral, abs(integral - 1.0))
    return {"passed": worst <= 1e-9 and worst_integral <= 1e-6,
            "worst_dev": worst, "worst_integral_dev": worst_integral,
            "tolerances": [1e-9, 1e-6]}


def _check_conjugate_asymptotics() -> dict:
    ratios = []
    for m in (1.0, 2.0):
        N = build_N(make_power_psi(m))
        for y in (10.0, 1e2, 1e3, 1e4):
            val = conjugate_young(N, y)
            ratios.append(val / (y * math.log(math.e + y) ** (1.0 / m)))
    lo, hi = min(ratios), max(ratios)
    return {"passed": lo >= 0.1 and hi <= 10.0, "ratio_low": lo,
            "ratio_high": hi, "band": [0.1, 10.0]}


def _check_orlicz_holder(rng) -> dict:
    psi = make_power_psi(2.0)
    N = build_N(psi)
    N_conj = conjugate_young_function(N)
    worst = 0.0
    for _ in range(40):
        space = _random_space(rng)
        f = _random_function(rng, space)
        g = _random_function(rng, space)
        rep = orlicz_holder_check(f, g, N, space, N_conj=N_conj)
        worst = max(worst, rep.ratio)
    return {"passed": worst <= 1.0 + 1e-6, "worst_ratio": worst,
            "tolerance": 1e-6}


def _check_growth() -> dict:
    xs = np.geomspace(1e-3, 1e6, 400)
    results = []
    for m in (1.0, 2.0, 3.0):
        V = lambda x, _m=m: x ** _m
        at = check_growth_condition(V, 2.0, 2.0 ** (-m), x_grid=xs)
        below = check_growth_condition(V, 2.0, 2.0 ** (-m) - 1e-3, x_grid=xs)
        results.append(at.passed and abs(at.worst_ratio - 2.0 ** (-m)) <= 1e-12
                       and not below.passed)
    log_fail = not check_growth_condition(
        lambda x: np.log1p(x), 2.0, 0.9, x_grid=xs).passed
    ok = all(results) and log_fail
    return {"passed": ok, "power_cases": results, "log_fails_at_0.9": log_fail}


def _check_representation(rng) -> dict:
    worst = 0.0
    worst_step = 0.0
    for _ in range(10):
        space = _random_space(rng, max_atoms=10)
        g = _random_function(rng, space)
        psi = make_extremal_psi(float(rng.choice([2.0, 3.0])))
        rep = verify_representation(g, psi, space, check_growth=False)
        worst = max(worst,
                    rep.difference / (1.0 + max(abs(rep.oracle),
                                                abs(rep.setnorm))))
        gamma = SetFunction.from_density(g, space)
        n = space.n_atoms
        perm = list(rng.permutation(n))
        cut = n // 2
        phi = StepFunction(coefficients=(1.5, -0.5),
                           sets=(tuple(perm[:cut]), tuple(perm[cut:])))
        direct = 1.5 * sum(gamma.atom_values[i] for i in perm[:cut]) \
            - 0.5 * sum(gamma.atom_values[i] for i in perm[cut:])
        worst_step = max(worst_step, abs(step_integral(phi, gamma) - direct))
    return {"passed": worst <= 1e-5 and worst_step <= 1e-12,
            "worst_rel_difference": worst, "worst_step_dev": worst_step,
            "tolerances": [1e-5, 1e-12]}


def _check_bphi(rng) -> dict:
    phi = quadratic_phi()
    rad_dev = abs(bphi_norm(rademacher(), phi) - 1.0)
    normal_norm = bphi_norm(discretized_normal(), phi)
    worst_hom = 0.0
    for _ in range(10):
        xi = two_point(float(rng.uniform(0.5, 2.0)),
                       float(rng.uniform(0.2, 0.8)))
        c = float(rng.uniform(0.2, 5.0))
        worst_hom = max(worst_hom, abs(bphi_norm(xi.scaled(c), phi)
                                       - c * bphi_norm(xi, phi)))
    return {"passed": (rad_dev <= 1e-6 and 0.99 <= normal_norm <= 1.01
                       and worst_hom <= 1e-6),
            "rademacher_dev": rad_dev, "normal_norm": normal_norm,
            "worst_homogeneity": worst_hom,
            "tolerances": [1e-6, 0.01, 1e-6]}


def _check_gls_axioms(rng) -> dict:
    families = [make_extremal_psi(3.0), make_power_psi(2.0)]
    worst_hom = 0.0
    worst_tri = -math.inf
    for i in range(150):
        psi = families[i % len(families)]
        space = _random_space(rng)
        f = _random_function(rng, space)
        g = _random_function(rng, space)
        c = float(rng.uniform(0.1, 10.0))
        nf = gls_norm(f, psi, space).value
        ng = gls_norm(g, psi, space).value
        worst_hom = max(worst_hom,
                        abs(gls_norm(c * f, psi, space).value - c * nf))
        worst_tri = max(worst_tri,
                        gls_norm(f + g, psi, space).value - (nf + ng))
    return {"passed": worst_hom <= 1e-9 and worst_tri <= 1e-9,
            "worst_homogeneity": worst_hom, "worst_triangle_excess": worst_tri,
            "tolerance": 1e-9}


def run_verification_suite(seed: int) -> dict:
    """Run the battery with one seeded generator; returns the report dict."""
    rng = np.random.default_rng(seed)
    checks = {
        "extremal_identity": _check_extremal_identity(rng),
        "adjacent_formula": _check_adjacent_formula(),
        "duality_bracket": _check_duality_bracket(rng),
        "holder": _check_holder(rng),
        "young_conjugate": _check_young_conjugate(rng),
        "orlicz_build": _check_orlicz_build(),
        "luxemburg": _check_luxemburg(rng),
        "conjugate_asymptotics": _check_conjugate_asymptotics(),
        "orlicz_holder": _check_orlicz_holder(rng),
        "growth_checker": _check_growth(),
        "representation": _check_representation(rng),
        "bphi": _check_bphi(rng),
        "gls_axioms": _check_gls_axioms(rng),
    }
    all_passed = all(c["passed"] for c in checks.values())
    return {"seed": seed, "checks": checks, "all_passed": all_passed,
            "n_checks": len(checks)}
