"""Generating functions psi(p) on exponent intervals and their adjacent maps.

A generating function is defined on a support interval inside [1, inf] (any
of the four shapes [a,b], [a,b), (a,b], (a,b)), takes values >= 1 there, and
is +inf outside.  The grand norm of f is sup_p |f|_p / psi(p) over the
support.  The adjacent function nu(q) = 1 / psi(q/(q-1)) lives on the
interval of conjugate exponents and drives the associate-norm bound.

Four named families are provided (constant-one on [1,r], p^(1/m), slowly
varying corrections, exponentials), plus tabulated functions obtained either
from CSV tables or as the natural generating function of a finite family of
functions: psi_S(p) = sup over the family of |f|_p.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from glsnum.measure import DiscreteMeasureSpace, MeasurableFunction, lp_norms
from glsnum.search import GridSpec, grid_refine_max, log_grid

__all__ = [
    "PsiFunction",
    "AdjacentFunction",
    "conjugate_exponent",
    "make_extremal_psi",
    "make_power_psi",
    "make_sv_psi",
    "make_exp_psi",
    "make_table_psi",
    "natural_function",
    "adjacent",
    "psi_from_descriptor",
    "export_psi_csv",
    "load_psi_csv",
    "SLOWLY_VARYING",
]

_NORMALIZATION_TOL = 1e-9


def conjugate_exponent(p: float) -> float:
    """Conjugate exponent p/(p-1), with 1 <-> inf."""
    p = float(p)
    if p < 1.0:
        raise ValueError(f"conjugate exponent needs p >= 1, got {p}")
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def _conjugate_array(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    out = np.empty_like(q)
    one = q == 1.0
    inf = np.isinf(q)
    rest = ~(one | inf)
    out[one] = math.inf
    out[inf] = 1.0
    out[rest] = q[rest] / (q[rest] - 1.0)
    return out


@dataclass(frozen=True, eq=False)
class PsiFunction:
    """Generating function on a support interval inside [1, inf].

    Calls accept scalars or arrays; points outside the support evaluate to
    +inf.  `interior` is the closed-form (or interpolated) formula on the
    support and must accept numpy arrays.
    """

    a: float
    b: float
    include_a: bool
    include_b: bool
    interior: Callable[[np.ndarray], np.ndarray]
    label: str = "psi"
    table: tuple | None = None  # (p_nodes, values) for tabulated functions

    def __post_init__(self) -> None:
        if not (1.0 <= self.a < self.b):
            raise ValueError(
                f"support needs 1 <= a < b, got a={self.a}, b={self.b}")
        if math.isinf(self.b) and self.include_b:
            raise ValueError("an infinite right endpoint cannot be included")

    def in_support(self, p) -> np.ndarray:
        x = np.asarray(p, dtype=float)
        inside = (x > self.a) & (x < self.b)
        if self.include_a:
            inside = inside | (x == self.a)
        if self.include_b:
            inside = inside | (x == self.b)
        return inside

    def __call__(self, p):
        arr = np.asarray(p, dtype=float)
        scalar = arr.ndim == 0
        x = np.atleast_1d(arr).astype(float)
        inside = self.in_support(x)
        out = np.full(x.shape, math.inf)
        if inside.any():
            out[inside] = self.interior(x[inside])
        return float(out[0]) if scalar else out

    def effective_interval(self, cap: float) -> tuple[float, float, bool]:
        """Support clipped to [a, cap]; the flag records whether clipping cut
        anything off."""
        hi = min(self.b, cap)
        capped = self.b > cap
        if not self.a < hi:
            raise ValueError(
                f"empty effective support: a={self.a} >= min(b, cap)={hi}")
        return self.a, hi, capped

    def scan_grid(self, grid: GridSpec) -> tuple[np.ndarray, bool]:
        """Log-spaced scan grid over the effective support.

        Included endpoints are grid nodes; excluded ones are offset inward by
        1e-9 of the interval length.  Returns (grid, capped).
        """
        lo, hi, capped = self.effective_interval(grid.cap)
        span = hi - lo
        lo_eff = lo if self.include_a else lo + 1e-9 * span
        hi_eff = hi if (self.include_b or capped) else hi - 1e-9 * span
        return log_grid(lo_eff, hi_eff, grid.points), capped


@dataclass(frozen=True, eq=False)
class AdjacentFunction:
    """nu(q) = 1 / psi(q/(q-1)) on the interval of conjugate exponents.

    The domain runs from q_lower = b/(b-1) to q_upper = a/(a-1); an endpoint
    belongs to the domain exactly when its conjugate belongs to the support
    of psi.  Outside the domain psi is +inf, so nu evaluates to 0 there.
    """

    psi: PsiFunction
    q_lower: float
    q_upper: float
    lower_included: bool
    upper_included: bool

    def __call__(self, q):
        arr = np.asarray(q, dtype=float)
        scalar = arr.ndim == 0
        x = np.atleast_1d(arr).astype(float)
        if np.any(x < 1.0):
            raise ValueError("adjacent functions live on exponents q >= 1")
        vals = self.psi(_conjugate_array(x))
        vals = np.atleast_1d(np.asarray(vals, dtype=float))
        out = np.where(np.isinf(vals), 0.0, 1.0 / vals)
        return float(out[0]) if scalar else out

    def scan_grid(self, grid: GridSpec) -> tuple[np.ndarray, bool]:
        """Log-spaced grid over the domain, capped at grid.cap from above."""
        lo = self.q_lower
        hi = min(self.q_upper, grid.cap)
        capped = self.q_upper > grid.cap
        if not lo < hi:
            raise ValueError(
                f"empty adjacent domain after capping: [{lo}, {hi}]")
        span = hi - lo
        lo_eff = lo if self.lower_included else lo + 1e-9 * span
        hi_eff = hi if (self.upper_included or capped) else hi - 1e-9 * span
        return log_grid(lo_eff, hi_eff, grid.points), capped


def adjacent(psi: PsiFunction) -> AdjacentFunction:
    return AdjacentFunction(
        psi=psi,
        q_lower=conjugate_exponent(psi.b),
        q_upper=conjugate_exponent(psi.a),
        lower_included=psi.include_b,
        upper_included=psi.include_a,
    )


def _check_normalized(psi: PsiFunction, *, points: int = 512) -> PsiFunction:
    lo, hi, _ = psi.effective_interval(200.0)
    probes = log_grid(max(lo, 1.0), hi, points)
    probes = probes[psi.in_support(probes)]
    if probes.size:
        vals = psi(probes)
        if not np.all(np.isfinite(vals)):
            raise ValueError(f"{psi.label}: non-finite values on the support")
        if float(np.min(vals)) < 1.0 - _NORMALIZATION_TOL:
            raise ValueError(
                f"{psi.label}: values below 1 on the support "
                f"(min {float(np.min(vals))!r}); generating functions are "
                "normalized to infimum 1")
    return psi


def make_extremal_psi(r: float) -> PsiFunction:
    """Constant-one generating function on [1, r]; its grand norm is the
    plain r-norm.  Needs r > 1 (r = 1 would collapse the support)."""
    r = float(r)
    if not (r > 1.0 and math.isfinite(r)):
        raise ValueError(f"extremal family needs finite r > 1, got {r}")
    return _check_normalized(PsiFunction(
        a=1.0, b=r, include_a=True, include_b=True,
        interior=lambda p: np.ones_like(p),
        label=f"extremal(r={r:g})"))


def make_power_psi(m: float) -> PsiFunction:
    """psi(p) = p^(1/m) on [1, inf); already normalized since psi(1) = 1."""
    m = float(m)
    if not (m > 0 and math.isfinite(m)):
        raise ValueError(f"power family needs finite m > 0, got {m}")
    return _check_normalized(PsiFunction(
        a=1.0, b=math.inf, include_a=True, include_b=False,
        interior=lambda p: p ** (1.0 / m),
        label=f"power(m={m:g})"))


def make_sv_psi(m: float, L: Callable[[np.ndarray], np.ndarray], *,
                label: str = "sv", p_max: float = 200.0,
                grid_points: int = 512) -> PsiFunction:
    """psi(p) = p^(1/m) L(p) / c on [1, inf) with a slowly varying positive L.

    The constant c is the infimum of the raw product over [1, p_max], found
    by a log-grid scan with golden-section polish, so the result is
    normalized to infimum 1 (within scan accuracy).
    """
    m = float(m)
    if not (m > 0 and math.isfinite(m)):
        raise ValueError(f"needs finite m > 0, got {m}")
    raw = lambda p: p ** (1.0 / m) * L(p)
    probes = log_grid(1.0, p_max, grid_points)
    lvals = np.asarray(L(probes), dtype=float)
    if np.any(~np.isfinite(lvals)) or np.any(lvals <= 0):
        raise ValueError("the slowly varying factor must be positive and "
                         "finite on [1, p_max]")
    vals = raw(probes)
    _, neg_min, _ = grid_refine_max(lambda p: -raw(p), probes, values=-vals,
                                    rel_tol=1e-12, refine_in_log=True)
    c = -neg_min
    if not (c > 0 and math.isfinite(c)):
        raise ValueError("could not normalize: infimum not positive/finite")
    return _check_normalized(PsiFunction(
        a=1.0, b=math.inf, include_a=True, include_b=False,
        interior=lambda p: raw(p) / c,
        label=f"{label}(m={m:g})"))


def make_exp_psi(C: float, beta: float) -> PsiFunction:
    """psi(p) = exp(C (p^beta - 1)) on [1, inf), normalized at p = 1."""
    C = float(C)
    beta = float(beta)
    if not (C > 0 and math.isfinite(C)):
        raise ValueError(f"needs C > 0, got {C}")
    if not (beta > 0 and math.isfinite(beta)):
        raise ValueError(f"needs beta > 0, got {beta}")
    return _check_normalized(PsiFunction(
        a=1.0, b=math.inf, include_a=True, include_b=False,
        interior=lambda p: np.exp(C * (p ** beta - 1.0)),
        label=f"exponential(C={C:g},beta={beta:g})"))


def make_table_psi(p_nodes, values, *, label: str = "table") -> PsiFunction:
    """Tabulated generating function, interpolated linearly in log-log.

    The support is the closed node range; evaluation outside it is +inf.
    """
    p_nodes = np.asarray(p_nodes, dtype=float)
    values = np.asarray(values, dtype=float)
    if p_nodes.ndim != 1 or p_nodes.size < 2:
        raise ValueError("need at least two table nodes")
    if p_nodes.shape != values.shape:
        raise ValueError("node and value arrays differ in length")
    if np.any(np.diff(p_nodes) <= 0):
        raise ValueError("table nodes must be strictly increasing")
    if p_nodes[0] < 1.0:
        raise ValueError("table nodes must lie in [1, inf)")
    if np.any(~np.isfinite(values)) or np.any(values <= 0):
        raise ValueError("table values must be positive and finite")
    log_p = np.log(p_nodes)
    log_v = np.log(values)

    def interior(p: np.ndarray) -> np.ndarray:
        return np.exp(np.interp(np.log(p), log_p, log_v))

    return PsiFunction(
        a=float(p_nodes[0]), b=float(p_nodes[-1]),
        include_a=True, include_b=True,
        interior=interior, label=label,
        table=(tuple(float(x) for x in p_nodes),
               tuple(float(v) for v in values)))


def natural_function(family: Sequence[MeasurableFunction],
                     space: DiscreteMeasureSpace | None = None,
                     p_grid=None) -> PsiFunction:
    """Natural generating function of a finite family: sup of member p-norms.

    Tabulates sup_z |f_z|_p on a log-spaced exponent grid (default 4096
    points on [1, 200]) and interpolates log-log between nodes.  The family
    must be non-empty with at least one nonzero member, all bound to the
    same space.
    """
    family = list(family)
    if not family:
        raise ValueError("the family is empty")
    if space is None:
        space = family[0].space
    for f in family:
        if f.space != space:
            raise ValueError("family members live on different spaces")
    if p_grid is None:
        p_grid = log_grid(1.0, 200.0, 4096)
    p_grid = np.asarray(p_grid, dtype=float)
    if np.any(p_grid < 1.0) or np.any(np.diff(p_grid) <= 0):
        raise ValueError("the exponent grid must be increasing and >= 1")
    sup = np.zeros_like(p_grid)
    for f in family:
        sup = np.maximum(sup, lp_norms(f, p_grid, space))
    if not np.all(sup > 0):
        raise ValueError("every member vanishes identically; the natural "
                         "generating function would be zero")
    return make_table_psi(p_grid, sup, label=f"natural(k={len(family)})")


# ---------------------------------------------------------------------------
# descriptors and CSV tables
# ---------------------------------------------------------------------------

SLOWLY_VARYING: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "one": lambda p: np.ones_like(np.asarray(p, dtype=float)),
    "log": lambda p: np.log(math.e - 1.0 + np.asarray(p, dtype=float)),
}


def psi_from_descriptor(desc) -> PsiFunction:
    """Build a generating function from a JSON descriptor.

    Accepts a dict, a JSON string, or a path to a JSON file with shape
    {"family": "extremal"|"power"|"slowly_varying"|"exponential"|"table",
     "params": {...}}.
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
    if family == "extremal":
        return make_extremal_psi(params["r"])
    if family == "power":
        return make_power_psi(params["m"])
    if family == "slowly_varying":
        name = params.get("L", "log")
        if name not in SLOWLY_VARYING:
            raise ValueError(
                f"unknown slowly varying factor {name!r}; "
                f"choose from {sorted(SLOWLY_VARYING)}")
        return make_sv_psi(params["m"], SLOWLY_VARYING[name],
                           label=f"sv[{name}]")
    if family == "exponential":
        return make_exp_psi(params.get("C", 1.0), params.get("beta", 1.0))
    if family == "table":
        if "path" in params:
            return load_psi_csv(params["path"])
        return make_table_psi(params["p"], params["psi"])
    raise ValueError(f"unknown generating-function family {family!r}")


def export_psi_csv(psi: PsiFunction, path, p_grid=None) -> None:
    """Write a p,psi table.  Tabulated functions dump their own nodes; the
    closed-form families are sampled on a log grid over the effective
    support."""
    if psi.table is not None and p_grid is None:
        nodes, values = psi.table
    else:
        if p_grid is None:
            lo, hi, _ = psi.effective_interval(200.0)
            p_grid = log_grid(lo, hi, 256)
        nodes = np.asarray(p_grid, dtype=float)
        values = psi(nodes)
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["p", "psi"])
        for p, v in zip(nodes, values):
            writer.writerow([repr(float(p)), repr(float(v))])


def load_psi_csv(path) -> PsiFunction:
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip().lower() for c in header][:2] != ["p", "psi"]:
            raise ValueError(f"{path}: expected header 'p,psi'")
        nodes: list[float] = []
        values: list[float] = []
        for row in reader:
            if not row or all(not c.strip() for c in row):
                continue
            nodes.append(float(row[0]))
            values.append(float(row[1]))
    return make_table_psi(nodes, values, label=f"table[{path.name}]")
