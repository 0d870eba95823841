"""Command-line front end.

Every subcommand reads its data from files or inline JSON, runs one of the
library computations, and prints a JSON report to stdout (keys sorted, two
space indent) so runs are easy to diff and archive.  Exit codes: 0 on
success, 1 on validation problems (bad arguments, malformed files, domain
errors), 2 when the `verify` battery reports a failing check.

Input formats
-------------
* function data: CSV with header ``weight,value`` (one atom per row), or
  JSON ``{"weights": [...], "values": [...]}`` where values may be a list of
  lists for a family; inline JSON is accepted wherever a path is.
* generating functions: descriptor JSON such as
  ``{"family": "power", "params": {"m": 2}}``; see `psi_from_descriptor`.
* rate functions: ``{"family": "quadratic"}`` or
  ``{"family": "power", "params": {"m": 3}}``.
* set functions: JSON ``{"weights": [...], "gamma": [...]}`` with gamma the
  atom values of the set function.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from glsnum.bphi import (RandomVariableSample, bphi_norm, membership_check,
                         phi_from_descriptor, psi_from_phi)
from glsnum.convex import conjugate, exponent_V, h_of
from glsnum.duality import (SetFunction, associate_bound,
                            associate_norm_oracle, setfunction_norm,
                            verify_representation)
from glsnum.glnorm import family_unit_norm_check, gls_norm
from glsnum.measure import (MeasurableFunction, lp_norm, load_csv, load_json,
                            make_space, parse_space_dict)
from glsnum.orlicz import (build_N, conjugate_young_point, luxemburg_norm,
                           power_young, validate_young)
from glsnum.psi import adjacent, export_psi_csv, natural_function, \
    psi_from_descriptor
from glsnum.search import BracketError, GridSpec
from glsnum.verify import run_verification_suite

__all__ = ["main", "RunConfig"]


@dataclass(frozen=True)
class RunConfig:
    """Validated numerical knobs shared by the subcommands."""

    grid_points: int = 256
    p_max: float = 200.0
    q_max: float = 200.0
    tol: float = 1e-10

    def __post_init__(self) -> None:
        if not 16 <= self.grid_points <= 65536:
            raise ValueError(
                f"--grid-points must lie in [16, 65536], got {self.grid_points}")
        for name, cap in (("--p-max", self.p_max), ("--q-max", self.q_max)):
            if not 10.0 <= cap <= 1e4:
                raise ValueError(f"{name} must lie in [10, 1e4], got {cap}")
        if not 1e-14 <= self.tol <= 1e-2:
            raise ValueError(f"--tol must lie in [1e-14, 1e-2], got {self.tol}")

    def p_grid(self) -> GridSpec:
        return GridSpec(points=self.grid_points, cap=self.p_max,
                        rel_tol=self.tol)

    def q_grid(self) -> GridSpec:
        return GridSpec(points=self.grid_points, cap=self.q_max,
                        rel_tol=self.tol)


def _config_from(args: argparse.Namespace) -> RunConfig:
    return RunConfig(grid_points=args.grid_points, p_max=args.p_max,
                     q_max=args.q_max, tol=args.tol)


def _jsonable(obj):
    """Recursively coerce a report into plain JSON types; non-finite floats
    become the strings "inf" / "-inf" / "nan" so the output stays strict."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text)


def _load_functions(source: str):
    """Load (space, [functions]) from a CSV path, JSON path, or inline JSON."""
    text = source.lstrip()
    if text.startswith("{"):
        return parse_space_dict(json.loads(source))
    path = Path(source)
    if path.suffix.lower() == ".csv":
        space, f = load_csv(path)
        return space, [f]
    return load_json(path)


def _load_one_function(source: str) -> MeasurableFunction:
    space, fs = _load_functions(source)
    if len(fs) != 1:
        raise ValueError(
            f"expected exactly one function in {source!r}, found {len(fs)}")
    return fs[0]


def _young_from(args: argparse.Namespace, grid: GridSpec):
    if getattr(args, "power", None) is not None:
        if args.psi is not None:
            raise ValueError("give either --psi or --power, not both")
        return power_young(args.power)
    if args.psi is None:
        raise ValueError("one of --psi or --power is required")
    psi = psi_from_descriptor(args.psi)
    return build_N(psi, u_max=args.u_max, grid=grid)


# ---------------------------------------------------------------------------
# subcommand handlers (each returns an exit code)
# ---------------------------------------------------------------------------


def _cmd_gnorm(args) -> int:
    config = _config_from(args)
    f = _load_one_function(args.input)
    psi = psi_from_descriptor(args.psi)
    res = gls_norm(f, psi, f.space, config.p_grid())
    _emit({"command": "gnorm", "psi": psi.label, "n_atoms": f.space.n_atoms,
           "result": res.to_dict(), "config": vars(config) | {}}, args.out)
    return 0


def _cmd_lp(args) -> int:
    f = _load_one_function(args.input)
    p = math.inf if args.p.lower() in ("inf", "infinity") else float(args.p)
    _emit({"command": "lp", "p": p, "value": lp_norm(f, p, f.space),
           "n_atoms": f.space.n_atoms}, args.out)
    return 0


def _cmd_natural(args) -> int:
    config = _config_from(args)
    space, family = _load_functions(args.input)
    if not family:
        raise ValueError("the input contains no functions")
    psi = natural_function(family, space)
    report = family_unit_norm_check(family, space, grid=config.p_grid())
    if args.csv:
        export_psi_csv(psi, args.csv)
    _emit({"command": "natural", "n_members": len(family),
           "psi": psi.label, "sup_member_norm": report.sup_norm,
           "deviation_from_1": report.deviation,
           "member_norms": list(report.member_norms),
           "csv": args.csv}, args.out)
    return 0


def _cmd_adjacent(args) -> int:
    psi = psi_from_descriptor(args.psi)
    nu = adjacent(psi)
    qs = [float(q) for q in args.q]
    _emit({"command": "adjacent", "psi": psi.label,
           "support_q": [nu.q_lower, nu.q_upper],
           "values": [{"q": q, "nu": float(nu(q))} for q in qs]}, args.out)
    return 0


def _cmd_dual_bound(args) -> int:
    config = _config_from(args)
    g = _load_one_function(args.input)
    psi = psi_from_descriptor(args.psi)
    res = associate_bound(g, psi, g.space, config.q_grid())
    _emit({"command": "dual-bound", "psi": psi.label,
           "result": res.to_dict()}, args.out)
    return 0


def _cmd_dual_oracle(args) -> int:
    config = _config_from(args)
    g = _load_one_function(args.input)
    psi = psi_from_descriptor(args.psi)
    bound = associate_bound(g, psi, g.space, config.q_grid())
    oracle = associate_norm_oracle(g, psi, g.space, config.q_grid(),
                                   iterations=args.iterations)
    report = {"command": "dual-oracle", "psi": psi.label,
              "oracle": oracle, "bound": bound.to_dict(),
              "gap": bound.value - oracle}
    if args.representation:
        rep = verify_representation(g, psi, g.space, config.q_grid(),
                                    check_growth=False)
        report["setnorm"] = rep.setnorm
        report["representation_difference"] = rep.difference
    _emit(report, args.out)
    return 0


def _cmd_setnorm(args) -> int:
    config = _config_from(args)
    text = args.input.lstrip()
    if text.startswith("{"):
        data = json.loads(args.input)
    else:
        with Path(args.input).open() as fh:
            data = json.load(fh)
    if "weights" not in data or "gamma" not in data:
        raise ValueError("setnorm input needs 'weights' and 'gamma' fields")
    space = make_space(data["weights"])
    gamma = SetFunction(space, tuple(float(v) for v in data["gamma"]))
    psi = psi_from_descriptor(args.psi)
    value = setfunction_norm(gamma, psi, space, config.q_grid(),
                             iterations=args.iterations)
    _emit({"command": "setnorm", "psi": psi.label, "value": value,
           "total_mass": gamma.total}, args.out)
    return 0


def _cmd_legendre(args) -> int:
    config = _config_from(args)
    psi = psi_from_descriptor(args.psi)
    h = h_of(psi, cap=config.p_max)
    conj = conjugate(h, config.p_grid())
    report = {"command": "legendre", "psi": psi.label,
              "domain": [h.lo, h.hi], "capped": h.capped}
    if args.v:
        rows = []
        for v in args.v:
            pt = conj.point(float(v))
            rows.append({"v": float(v), "value": pt.value,
                         "argmax_p": pt.argmax_z, "hit_cap": pt.hit_cap})
        report["conjugate"] = rows
    if args.u:
        report["exponent"] = [
            {"u": float(u),
             "V": exponent_V(psi, float(u), h=h, grid=config.p_grid())}
            for u in args.u]
    if not args.v and not args.u:
        raise ValueError("give at least one --v or --u to evaluate")
    _emit(report, args.out)
    return 0


def _cmd_orlicz_build(args) -> int:
    config = _config_from(args)
    psi = psi_from_descriptor(args.psi)
    N = build_N(psi, u_max=args.u_max, grid=config.p_grid())
    checks = validate_young(N, u_max=min(50.0, args.u_max))
    if args.csv:
        us = np.geomspace(1e-3, args.u_max, 512)
        with Path(args.csv).open("w") as fh:
            fh.write("u,N\n")
            for u, val in zip(us, N(us)):
                fh.write(f"{float(u)!r},{float(val)!r}\n")
    _emit({"command": "orlicz-build", "psi": psi.label, "label": N.label,
           "branch_point": N.branch_point, "trusted_up_to": N.trusted_up_to,
           "value_at_1": float(N(1.0)), "value_at_e": float(N(math.e)),
           "validation": checks, "csv": args.csv}, args.out)
    return 0


def _cmd_orlicz_norm(args) -> int:
    config = _config_from(args)
    f = _load_one_function(args.input)
    N = _young_from(args, config.p_grid())
    value = luxemburg_norm(f, N, f.space, rel_tol=config.tol)
    _emit({"command": "orlicz-norm", "young": N.label, "value": value},
          args.out)
    return 0


def _cmd_conjugate_young(args) -> int:
    config = _config_from(args)
    N = _young_from(args, config.p_grid())
    rows = []
    for y in args.y:
        pt = conjugate_young_point(N, float(y), u_max=args.u_max,
                                   grid=config.p_grid())
        rows.append({"y": float(y), "value": pt.value,
                     "argmax_u": pt.argmax_z, "hit_cap": pt.hit_cap})
    _emit({"command": "conjugate-young", "young": N.label, "values": rows},
          args.out)
    return 0


def _cmd_bphi_norm(args) -> int:
    config = _config_from(args)
    space, fs = _load_functions(args.input)
    if len(fs) != 1:
        raise ValueError("bphi-norm expects exactly one value row")
    if not space.is_probability:
        raise ValueError("bphi-norm needs a probability space "
                         "(weights summing to 1)")
    values = fs[0].value_array
    if args.center:
        values = values - float(np.dot(values, space.weight_array))
    xi = RandomVariableSample(space.function(values))
    phi = phi_from_descriptor(args.phi)
    report = {"command": "bphi-norm", "phi": phi.label,
              "value": bphi_norm(xi, phi)}
    if args.membership:
        psi = psi_from_phi(phi)
        mem = membership_check(xi, phi, psi=psi, grid=config.p_grid())
        report["membership"] = mem.to_dict() | {"psi": psi.label}
    _emit(report, args.out)
    return 0


def _cmd_verify(args) -> int:
    report = run_verification_suite(args.seed)
    _emit({"command": "verify"} | report, args.out)
    return 0 if report["all_passed"] else 2


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid-points", type=int, default=256,
                   help="scan grid resolution (default 256)")
    p.add_argument("--p-max", type=float, default=200.0,
                   help="computational cap for unbounded exponent supports")
    p.add_argument("--q-max", type=float, default=200.0,
                   help="cap for conjugate-exponent scans")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="relative refinement tolerance")
    p.add_argument("--out", default=None, metavar="PATH",
                   help="also write the JSON report to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glsnum",
        description="Numerics for grand Lebesgue norms, their associate "
                    "spaces, and exponential Orlicz companions on finite "
                    "measure spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gnorm", help="grand norm of one function")
    p.add_argument("--input", required=True)
    p.add_argument("--psi", required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_gnorm)

    p = sub.add_parser("lp", help="classical p-norm")
    p.add_argument("--input", required=True)
    p.add_argument("--p", required=True, help="exponent (>= 1, or 'inf')")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_lp)

    p = sub.add_parser("natural",
                       help="natural generating function of a family")
    p.add_argument("--input", required=True,
                   help="JSON with values as a list of lists")
    p.add_argument("--csv", default=None, help="export the p,psi table here")
    _add_common(p)
    p.set_defaults(handler=_cmd_natural)

    p = sub.add_parser("adjacent", help="evaluate the adjacent function")
    p.add_argument("--psi", required=True)
    p.add_argument("--q", action="append", required=True,
                   help="conjugate exponent to evaluate at (repeatable)")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_adjacent)

    p = sub.add_parser("dual-bound",
                       help="adjacent-function bound on the associate norm")
    p.add_argument("--input", required=True)
    p.add_argument("--psi", required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_dual_bound)

    p = sub.add_parser("dual-oracle",
                       help="associate-norm oracle with the bound bracket")
    p.add_argument("--input", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--iterations", type=int, default=60)
    p.add_argument("--representation", action="store_true",
                   help="also compute the induced set-function norm")
    _add_common(p)
    p.set_defaults(handler=_cmd_dual_oracle)

    p = sub.add_parser("setnorm", help="norm of a finitely additive "
                                       "set function")
    p.add_argument("--input", required=True,
                   help='JSON {"weights": [...], "gamma": [...]}')
    p.add_argument("--psi", required=True)
    p.add_argument("--iterations", type=int, default=60)
    _add_common(p)
    p.set_defaults(handler=_cmd_setnorm)

    p = sub.add_parser("legendre",
                       help="Young conjugate of p ln psi(p) and the "
                            "exponent function")
    p.add_argument("--psi", required=True)
    p.add_argument("--v", action="append", type=float, default=[],
                   help="slope to evaluate the conjugate at (repeatable)")
    p.add_argument("--u", action="append", type=float, default=[],
                   help="argument for the exponent V(u), |u| >= e "
                        "(repeatable)")
    _add_common(p)
    p.set_defaults(handler=_cmd_legendre)

    p = sub.add_parser("orlicz-build",
                       help="build and validate the exponential Young "
                            "function of psi")
    p.add_argument("--psi", required=True)
    p.add_argument("--u-max", type=float, default=200.0)
    p.add_argument("--csv", default=None, help="export a u,N table here")
    _add_common(p)
    p.set_defaults(handler=_cmd_orlicz_build)

    p = sub.add_parser("orlicz-norm", help="Luxemburg norm of a function")
    p.add_argument("--input", required=True)
    p.add_argument("--psi", default=None,
                   help="build the exponential Young function of this psi")
    p.add_argument("--power", type=float, default=None,
                   help="use N(u) = |u|^p instead of --psi")
    p.add_argument("--u-max", type=float, default=200.0)
    _add_common(p)
    p.set_defaults(handler=_cmd_orlicz_norm)

    p = sub.add_parser("conjugate-young",
                       help="conjugate Young function values")
    p.add_argument("--psi", default=None)
    p.add_argument("--power", type=float, default=None)
    p.add_argument("--y", action="append", type=float, required=True,
                   help="argument to evaluate N* at (repeatable)")
    p.add_argument("--u-max", type=float, default=200.0)
    _add_common(p)
    p.set_defaults(handler=_cmd_conjugate_young)

    p = sub.add_parser("bphi-norm",
                       help="mgf-ball norm of a centered random variable")
    p.add_argument("--input", required=True,
                   help="probability weights + values (JSON or CSV)")
    p.add_argument("--phi", required=True,
                   help="rate-function descriptor (JSON or path)")
    p.add_argument("--center", action="store_true",
                   help="subtract the mean before computing")
    p.add_argument("--membership", action="store_true",
                   help="also compare with the grand norm under the "
                        "companion generating function")
    _add_common(p)
    p.set_defaults(handler=_cmd_bphi_norm)

    p = sub.add_parser("verify",
                       help="run the seeded self-verification battery")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, BracketError, OSError, KeyError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
