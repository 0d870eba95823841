"""Scalar search utilities: grids, golden-section refinement, monotone bisection.

Every supremum or infimum in this package reduces to a one-dimensional scan
over a bounded interval (computational caps stand in for infinite endpoints),
so the tools here stay deliberately small: evaluate on a grid, polish the best
cell with golden-section search, and never report less than the best grid
value.  Norm-type quantities (Luxemburg norms, mgf-bounding norms) reduce to
finding the smallest feasible scale for a monotone feasibility predicate,
handled by geometric bracket expansion plus bisection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class BracketError(RuntimeError):
    """Raised when a monotone feasibility bracket cannot be established."""


class NoFeasiblePoint(BracketError):
    """Nothing was feasible up to the allowed expansion limit."""


class NoInfeasiblePoint(BracketError):
    """Everything stayed feasible down to the allowed shrink limit."""


@dataclass(frozen=True)
class GridSpec:
    """Resolution of a sup/inf scan.

    points   -- size of the coarse grid
    cap      -- computational stand-in for an infinite upper endpoint
    rel_tol  -- relative tolerance of the golden-section polish
    """

    points: int = 256
    cap: float = 200.0
    rel_tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.points < 3:
            raise ValueError("grid needs at least 3 points")
        if not (self.cap > 0 and math.isfinite(self.cap)):
            raise ValueError("cap must be a positive finite real")
        if not (0 < self.rel_tol < 1):
            raise ValueError("rel_tol must lie in (0, 1)")


def log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    """Geometrically spaced grid on [lo, hi] with lo > 0."""
    if not (0 < lo < hi):
        raise ValueError(f"log grid needs 0 < lo < hi, got [{lo}, {hi}]")
    return np.geomspace(lo, hi, n)


def linear_grid(lo: float, hi: float, n: int) -> np.ndarray:
    if not lo < hi:
        raise ValueError(f"grid needs lo < hi, got [{lo}, {hi}]")
    return np.linspace(lo, hi, n)


def golden_max(fn: Callable[[float], float], a: float, b: float,
               tol: float) -> tuple[float, float]:
    """Golden-section maximization of fn on [a, b]; returns (x, fn(x)).

    Assumes unimodality on the bracket; on flat or monotone stretches it
    converges to an endpoint, which is all the callers need.
    """
    if b < a:
        a, b = b, a
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, fn(x)
    c = b - _INV_GOLDEN * h
    d = a + _INV_GOLDEN * h
    fc = fn(c)
    fd = fn(d)
    while h > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INV_GOLDEN * h
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_GOLDEN * h
            fd = fn(d)
    return (c, fc) if fc >= fd else (d, fd)


def grid_refine_max(fn: Callable[[float], float], xs: Sequence[float], *,
                    values: Sequence[float] | None = None,
                    rel_tol: float = 1e-10,
                    refine_in_log: bool = False) -> tuple[float, float, int]:
    """Coarse grid scan followed by a golden-section polish of the best cell.

    fn      -- scalar objective
    values  -- optional precomputed fn(xs) (a vectorized evaluation path)
    Returns (x_star, f_star, best_grid_index).  The polish never returns a
    value below the best grid value, so included endpoints are exact.
    """
    xs = np.asarray(xs, dtype=float)
    if values is None:
        vals = np.array([fn(float(x)) for x in xs], dtype=float)
    else:
        vals = np.asarray(values, dtype=float)
    vals = np.where(np.isnan(vals), -np.inf, vals)
    i = int(np.argmax(vals))
    x0, f0 = float(xs[i]), float(vals[i])
    lo = float(xs[max(i - 1, 0)])
    hi = float(xs[min(i + 1, len(xs) - 1)])
    if not (hi > lo) or not math.isfinite(f0):
        return x0, f0, i
    if refine_in_log and lo > 0:
        t, ft = golden_max(lambda t: fn(math.exp(t)),
                           math.log(lo), math.log(hi), tol=rel_tol)
        xr, fr = math.exp(t), ft
    else:
        tol = rel_tol * max(abs(lo), abs(hi), 1.0)
        xr, fr = golden_max(fn, lo, hi, tol=tol)
    if fr > f0:
        return xr, fr, i
    return x0, f0, i


def min_feasible(feasible: Callable[[float], bool], x0: float, *,
                 rel_tol: float = 1e-10, factor: float = 2.0,
                 x_min: float = 1e-300, x_max: float = 1e308,
                 max_steps: int = 1100, side: str = "mid") -> float:
    """Smallest x with feasible(x) true, for a monotone predicate.

    Feasibility must be nondecreasing in x (infeasible below some threshold,
    feasible above it).  Brackets by geometric expansion/shrinkage from x0,
    then bisects in the geometric mean to relative tolerance rel_tol.

    Raises NoFeasiblePoint if nothing up to x_max is feasible and
    NoInfeasiblePoint if everything down to x_min stays feasible.
    """
    if not (x0 > 0 and math.isfinite(x0)):
        raise ValueError("x0 must be a positive finite real")
    x0 = min(max(x0, x_min), x_max)
    if feasible(x0):
        hi = x0
        lo = x0 / factor
        for _ in range(max_steps):
            if lo < x_min:
                raise NoInfeasiblePoint(
                    f"feasible all the way down to {x_min:g}")
            if not feasible(lo):
                break
            hi = lo
            lo /= factor
        else:
            raise NoInfeasiblePoint("bracket shrink budget exhausted")
    else:
        lo = x0
        hi = x0 * factor
        for _ in range(max_steps):
            if hi > x_max:
                if feasible(x_max):
                    hi = x_max
                    break
                raise NoFeasiblePoint(f"infeasible all the way up to {x_max:g}")
            if feasible(hi):
                break
            lo = hi
            hi *= factor
        else:
            raise NoFeasiblePoint("bracket expansion budget exhausted")
    while (hi - lo) > rel_tol * hi:
        mid = math.sqrt(lo * hi)
        if not (lo < mid < hi):
            break
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi if side == "hi" else 0.5 * (lo + hi)


def increasing_inverse(fn: Callable[[float], float], y: float, *,
                       x_hi: float = 1e308, rel_tol: float = 1e-12) -> float:
    """Inverse of a continuous nondecreasing fn with fn(0) <= y: smallest x
    with fn(x) >= y.  Raises NoFeasiblePoint when y is above the range of fn
    on (0, x_hi]."""
    if y <= fn(0.0):
        return 0.0
    return min_feasible(lambda x: fn(x) >= y, 1.0,
                        rel_tol=rel_tol, x_max=x_hi, side="hi")
