"""Moment-generating-function norms for centered random variables.

A centered random variable xi on a finite probability space belongs to the
ball of a convex even rate function phi at scale tau when

    E exp(lambda xi) <= exp(phi(lambda tau))   for all admissible lambda;

its norm is the smallest such tau.  Feasibility is checked on a fixed
symmetric log-spaced lambda grid with the comparison done in the log domain,
and the minimal tau is found by geometric bracketing plus bisection.  The
companion generating function psi_phi(p) = p / phi^(-1)(p) transfers the mgf
bound into moment growth, linking these norms to grand norms.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
from scipy.special import logsumexp

from glsnum.glnorm import DEFAULT_GRID, gls_norm
from glsnum.measure import DiscreteMeasureSpace, MeasurableFunction
from glsnum.psi import PsiFunction
from glsnum.search import (GridSpec, NoFeasiblePoint, NoInfeasiblePoint,
                           grid_refine_max, increasing_inverse, log_grid,
                           min_feasible)

__all__ = [
    "PhiFunction",
    "quadratic_phi",
    "power_phi",
    "phi_from_descriptor",
    "RandomVariableSample",
    "rademacher",
    "two_point",
    "discretized_normal",
    "mgf",
    "log_mgf",
    "bphi_norm",
    "psi_from_phi",
    "MembershipReport",
    "membership_check",
]

CENTERING_TOL = 1e-10

#: default cap for the lambda grid when phi lives on the whole line
LAMBDA_CAP = 50.0

#: log-domain slack in the feasibility comparison
FEASIBILITY_SLACK = 1e-12

TAU_MAX = 1e6


@dataclass(frozen=True, eq=False)
class PhiFunction:
    """Even convex rate function on (-lambda0, lambda0) with phi(0) = 0.

    Outside the open interval the function is +inf (so constraints there are
    vacuous).  `core` is the formula on nonnegative arguments inside the
    interval and must accept numpy arrays.
    """

    lambda0: float
    core: Callable[[np.ndarray], np.ndarray]
    label: str = "phi"

    def __post_init__(self) -> None:
        if not self.lambda0 > 0:
            raise ValueError(f"needs lambda0 > 0, got {self.lambda0}")
        probes = np.linspace(0.0, min(self.lambda0 * (1 - 1e-9), 10.0), 257)
        vals = np.asarray(self.core(probes), dtype=float)
        if abs(float(vals[0])) > 1e-12:
            raise ValueError(f"{self.label}: phi(0) must be 0")
        if np.any(~np.isfinite(vals)):
            raise ValueError(f"{self.label}: non-finite inside the interval")
        if np.any(vals[1:] <= 0):
            raise ValueError(f"{self.label}: must be positive for lambda > 0")
        mid = self.core(0.5 * (probes[:-1] + probes[1:]))
        if np.any(mid - 0.5 * (vals[:-1] + vals[1:])
                  > 1e-9 * np.maximum(vals[1:], 1.0)):
            raise ValueError(f"{self.label}: midpoint convexity fails")

    def __call__(self, lam):
        arr = np.asarray(lam, dtype=float)
        scalar = arr.ndim == 0
        x = np.abs(np.atleast_1d(arr).astype(float))
        out = np.full(x.shape, math.inf)
        inside = x < self.lambda0
        if inside.any():
            out[inside] = self.core(x[inside])
        return float(out[0]) if scalar else out

    def curvature_at_zero(self, eps: float = 1e-5) -> float:
        """Second difference at 0 (diagnostic; finite positive curvature is
        what makes small-lambda expansions control the second moment)."""
        return float((self.core(np.array([2 * eps]))[0]
                      - 2 * self.core(np.array([eps]))[0]) / eps ** 2)

    @property
    def sup_value(self) -> float:
        """Supremum of phi over its interval (may be inf)."""
        if math.isinf(self.lambda0):
            return math.inf
        return float(self.core(np.array([self.lambda0 * (1 - 1e-12)]))[0])


def quadratic_phi(lambda0: float = math.inf) -> PhiFunction:
    """phi(lambda) = lambda^2 / 2, the canonical subgaussian rate."""
    return PhiFunction(lambda0=float(lambda0),
                       core=lambda x: 0.5 * x ** 2,
                       label="quadratic")


def power_phi(m: float, lambda0: float = math.inf) -> PhiFunction:
    """phi(lambda) = |lambda|^m / m for m > 1 (even extension).

    Note the curvature at 0 degenerates for m != 2 (zero for m > 2, infinite
    for m < 2); the norm machinery still applies, but variables with a
    genuine second moment have no finite norm when m > 2.
    """
    m = float(m)
    if not (m > 1 and math.isfinite(m)):
        raise ValueError(f"needs m > 1, got {m}")
    return PhiFunction(lambda0=float(lambda0),
                       core=lambda x: x ** m / m,
                       label=f"power({m:g})")


def phi_from_descriptor(desc) -> PhiFunction:
    """Build a rate function from {"family": "quadratic"|"power", "params": {}}.

    Accepts a dict, a JSON string, or a path to a JSON file; quadratic takes
    an optional lambda0, power takes m and an optional lambda0.
    """
    if isinstance(desc, (str, Path)):
        text = str(desc)
        if text.lstrip().startswith("{"):
            desc = json.loads(text)
        else:
            with Path(desc).open() as fh:
                desc = json.load(fh)
    if not isinstance(desc, dict) or "family" not in desc:
        raise ValueError("descriptor needs a 'family' field")
    family = desc["family"]
    params = desc.get("params", {})
    lambda0 = float(params.get("lambda0", math.inf))
    if family == "quadratic":
        return quadratic_phi(lambda0)
    if family == "power":
        return power_phi(params["m"], lambda0)
    raise ValueError(f"unknown rate-function family {family!r}")


@dataclass(frozen=True, eq=False)
class RandomVariableSample:
    """Centered random variable on a finite probability space."""

    function: MeasurableFunction

    def __post_init__(self) -> None:
        space = self.function.space
        if not space.is_probability:
            raise ValueError("random variables need a probability space")
        mean = float(np.dot(self.function.value_array, space.weight_array))
        if abs(mean) > CENTERING_TOL:
            raise ValueError(f"not centered: mean = {mean!r}")

    @property
    def space(self) -> DiscreteMeasureSpace:
        return self.function.space

    @property
    def values(self) -> np.ndarray:
        return self.function.value_array

    @property
    def probs(self) -> np.ndarray:
        return self.function.space.weight_array

    def scaled(self, c: float) -> "RandomVariableSample":
        return RandomVariableSample(self.function * float(c))


def rademacher(scale: float = 1.0) -> RandomVariableSample:
    """Symmetric +-scale variable with equal masses."""
    space = DiscreteMeasureSpace(atoms=("minus", "plus"),
                                 weights=(0.5, 0.5), is_probability=True)
    return RandomVariableSample(space.function((-scale, scale)))


def two_point(x: float, q: float) -> RandomVariableSample:
    """Centered two-point variable: value x with probability q, and the
    balancing value -q x / (1 - q) with probability 1 - q."""
    q = float(q)
    x = float(x)
    if not 0 < q < 1:
        raise ValueError(f"needs q in (0, 1), got {q}")
    y = -q * x / (1.0 - q)
    space = DiscreteMeasureSpace(atoms=("hi", "lo"), weights=(q, 1.0 - q),
                                 is_probability=True)
    values = np.array([x, y])
    values -= float(np.dot(values, space.weight_array))  # exact recentering
    return RandomVariableSample(space.function(values))


def discretized_normal(points: int = 401, half_width: float = 8.0
                       ) -> RandomVariableSample:
    """Standard normal discretized on a symmetric grid, masses from the
    density renormalized to 1."""
    xs = np.linspace(-half_width, half_width, points)
    dens = np.exp(-0.5 * xs ** 2)
    probs = dens / math.fsum(dens)
    space = DiscreteMeasureSpace(atoms=tuple(range(points)),
                                 weights=tuple(probs), is_probability=True)
    values = xs - float(np.dot(xs, space.weight_array))
    return RandomVariableSample(space.function(values))


def log_mgf(xi: RandomVariableSample, lam) -> np.ndarray | float:
    """ln E exp(lambda xi), accumulated in the log domain (never overflows)."""
    arr = np.asarray(lam, dtype=float)
    scalar = arr.ndim == 0
    lams = np.atleast_1d(arr).astype(float)
    mat = np.multiply.outer(lams, xi.values) + np.log(xi.probs)
    out = logsumexp(mat, axis=-1)
    return float(out[0]) if scalar else out


def mgf(xi: RandomVariableSample, lam: float) -> float:
    """E exp(lambda xi); overflows of the final exponential surface as inf."""
    lm = float(log_mgf(xi, float(lam)))
    if lm > 709.0:
        return math.inf
    return math.exp(lm)


def _lambda_grid(phi: PhiFunction, cap: float, points: int) -> np.ndarray:
    lam_max = cap if math.isinf(phi.lambda0) else phi.lambda0 * (1 - 1e-9)
    mags = log_grid(1e-4, lam_max, points)
    return np.concatenate([-mags[::-1], mags])


def bphi_norm(xi: RandomVariableSample, phi: PhiFunction, *,
              lambda_grid=None, lambda_cap: float = LAMBDA_CAP,
              grid_points: int = 200, rel_tol: float = 1e-8,
              tau_max: float = TAU_MAX,
              slack: float = FEASIBILITY_SLACK) -> float:
    """Minimal tau with ln E exp(lambda xi) <= phi(lambda tau) on the grid.

    Returns +inf when no tau up to tau_max is feasible (the variable is not
    in the ball of phi) and 0 for the zero variable.  The variable is
    rescaled to unit sup before the scan and the result scaled back, so the
    lambda-grid discretization cancels between a variable and its multiples
    and the norm is exactly positively homogeneous.  (An explicit
    lambda_grid therefore applies to the unit-sup normalized variable.)
    """
    scale = float(np.max(np.abs(xi.values)))
    if scale == 0.0:
        return 0.0
    lams = (_lambda_grid(phi, lambda_cap, grid_points)
            if lambda_grid is None else np.asarray(lambda_grid, dtype=float))
    mat = np.multiply.outer(lams, xi.values / scale) + np.log(xi.probs)
    lmgf = logsumexp(mat, axis=-1)

    def feasible(tau: float) -> bool:
        with np.errstate(invalid="ignore"):
            gap = lmgf - phi(lams * tau)
        return bool(np.max(gap) <= slack)

    try:
        return scale * min_feasible(feasible, 1.0, rel_tol=rel_tol,
                                    x_min=1e-12, x_max=tau_max, side="hi")
    except NoFeasiblePoint:
        return math.inf
    except NoInfeasiblePoint:
        return 0.0


def psi_from_phi(phi: PhiFunction, *, normalize: bool = True,
                 p_max: float = 200.0, grid_points: int = 512,
                 inverse_tol: float = 1e-12) -> PsiFunction:
    """Companion generating function psi(p) = p / phi^(-1)(p).

    The support is [1, b) with b the supremum of phi over its interval
    (exponents beyond the range of phi are outside the support); with
    normalize the function is rescaled to infimum 1 over [1, p_max].
    """
    sup_phi = phi.sup_value
    if sup_phi <= 1.0:
        raise ValueError(
            f"{phi.label}: range sup {sup_phi!r} <= 1 leaves no exponents "
            "p >= 1 in the support")
    lam_hi = phi.lambda0 if math.isfinite(phi.lambda0) else 1e154

    def inv(p: float) -> float:
        return increasing_inverse(lambda lam: float(phi(lam)), p,
                                  x_hi=lam_hi, rel_tol=inverse_tol)

    def raw(p: np.ndarray) -> np.ndarray:
        flat = np.atleast_1d(np.asarray(p, dtype=float))
        out = np.array([x / inv(float(x)) for x in flat])
        return out if np.ndim(p) else out[0]

    scale = 1.0
    if normalize:
        hi = min(sup_phi * (1 - 1e-9), p_max)
        probes = log_grid(1.0, hi, grid_points)
        vals = raw(probes)
        _, neg_min, _ = grid_refine_max(lambda p: -float(raw(p)), probes,
                                        values=-vals, rel_tol=1e-12,
                                        refine_in_log=True)
        scale = -neg_min
        if not (scale > 0 and math.isfinite(scale)):
            raise ValueError("normalization scan failed")
    return PsiFunction(
        a=1.0, b=sup_phi, include_a=True, include_b=False,
        interior=lambda p: raw(p) / scale,
        label=f"from_phi[{phi.label}]")


@dataclass(frozen=True)
class MembershipReport:
    """mgf-ball norm next to the grand norm under the companion generating
    function, with their ratio (empirical equivalence constant)."""

    bphi: float
    grand: float
    ratio: float

    def to_dict(self) -> dict:
        return {"bphi": self.bphi, "grand": self.grand, "ratio": self.ratio}


def membership_check(xi: RandomVariableSample, phi: PhiFunction, *,
                     psi: PsiFunction | None = None,
                     grid: GridSpec = DEFAULT_GRID) -> MembershipReport:
    if psi is None:
        psi = psi_from_phi(phi)
    norm = bphi_norm(xi, phi)
    grand = gls_norm(xi.function, psi, xi.space, grid).value
    if grand > 0 and math.isfinite(norm):
        ratio = norm / grand
    elif norm == 0 and grand == 0:
        ratio = 1.0
    else:
        ratio = math.inf
    return MembershipReport(bphi=norm, grand=grand, ratio=ratio)
