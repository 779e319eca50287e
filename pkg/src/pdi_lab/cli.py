"""Command-line surface.

Every subcommand prints one JSON report on stdout and a one-line human
summary on stderr. Exit codes: 0 for a passing run, 1 when a verification
or audit fails on the science (residual too large, witness missing,
mismatched verdicts), 2 for usage and precondition errors. Reports carry
no timestamps and all randomness is seeded, so identical invocations
produce byte-identical output; floats are serialized with shortest
round-trip precision (up to 17 significant digits).

``sweep`` writes CSV (stdout or --out) over a parameter grid; the env var
PDI_LAB_THREADS caps its worker threads without affecting row order.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import __version__
from .errors import (
    DomainExceeded,
    IllPosedBoundary,
    InsufficientScales,
    NoAdmissibleScale,
    NoConvergence,
    NonIntegrable,
    PreconditionViolation,
)
from .params import (
    INFINITY,
    ProblemParams,
    classify_regime,
    exponent_report,
    holder_exponent,
    liouville_threshold,
)
from .radial import (
    GeneralizedMeanCurvature,
    MeanCurvature,
    PLaplacian,
    PowerProfile,
    SampledProfile,
    bump_profile_scale,
    nonconstant_entire_profile,
    residual_scan,
    sharpness_profile,
)
from .solver import (
    RadialPowerSource,
    SampledSource,
    SolverConfig,
    ZeroSource,
    solution_residual,
    solve_radial_dirichlet,
)
from .audit import caccioppoli_audit, holder_fit, morrey_norm
from .liouville import (
    EuclideanArea,
    ExponentialArea,
    IntegralVerdict,
    Mechanism,
    PowerArea,
    SampledArea,
    Verdict,
    area_condition_test,
    liouville_classify_euclidean,
    liouville_classify_manifold,
    power_area_diverges,
    sigma_lower_bound,
    verify_euclidean_witness,
)

__all__ = ["RunReport", "main", "run"]


@dataclass(frozen=True)
class RunReport:
    """One invocation's machine-readable record: what ran, with which
    parameters, what came out, and whether it passed. Everything in it is
    already JSON-safe, so ``as_dict`` round-trips losslessly."""

    command: str
    params: dict
    results: dict
    provenance: dict
    passed: bool

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "provenance": self.provenance,
            "passed": self.passed,
        }


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------


def _parse_q(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return INFINITY
    value = float(text)
    return value


def _parse_floats(text: str, what: str, count: int):
    parts = text.split(",")
    if len(parts) != count:
        raise PreconditionViolation(f"{what} needs {count} number(s), got {text!r}")
    try:
        return tuple(float(x) for x in parts)
    except ValueError:
        raise PreconditionViolation(f"malformed {what} {text!r}") from None


def _parse_operator(text: str):
    t = text.strip().lower()
    if t.startswith("gmc:"):
        (k,) = _parse_floats(t[4:], "operator", 1)
        return GeneralizedMeanCurvature(k=k)
    if t == "mean-curvature":
        return MeanCurvature()
    if t == "p-laplacian":
        return None  # placeholder; built later with the actual p
    raise PreconditionViolation(f"unknown operator {text!r}")


def _read_two_column_csv(path: str):
    rows = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                rows.append((float(row[0]), float(row[1])))
            except ValueError:
                continue  # header line
    if len(rows) < 2:
        raise PreconditionViolation(f"{path}: need at least 2 data rows of r,value")
    grid = np.array([r for r, _ in rows])
    vals = np.array([v for _, v in rows])
    if not np.all(np.diff(grid) > 0):
        raise PreconditionViolation(f"{path}: radii must be strictly increasing")
    return grid, vals


def _parse_source(text: str):
    t = text.strip()
    if t.lower() == "zero":
        return ZeroSource()
    if t.lower().startswith("power:"):
        a, beta = _parse_floats(t[6:], "source", 2)
        return RadialPowerSource(amplitude=a, beta=beta)
    if t.lower().startswith("file:"):
        grid, vals = _read_two_column_csv(t[5:])
        return SampledSource(grid=grid, values=vals)
    raise PreconditionViolation(f"unknown source {text!r}")


def _parse_area_profile(text: str, dim: int):
    t = text.strip().lower()
    if t == "euclidean":
        return EuclideanArea(dim=dim)
    if t.startswith("power:"):
        a, beta = _parse_floats(text[6:], "area profile", 2)
        return PowerArea(amplitude=a, beta=beta)
    if t.startswith("exp:"):
        a, kappa = _parse_floats(text[4:], "area profile", 2)
        return ExponentialArea(amplitude=a, kappa=kappa)
    if t.startswith("file:"):
        grid, vals = _read_two_column_csv(text[5:])
        return SampledArea(grid=grid, values=vals)
    raise PreconditionViolation(f"unknown area profile {text!r}")


def _parse_value_list(text: str):
    """Grid syntax: comma list '1,2,3' or range 'start:stop:step' (inclusive)."""
    t = text.strip()
    try:
        if ":" in t:
            parts = t.split(":")
            if len(parts) != 3:
                raise PreconditionViolation(f"range syntax is start:stop:step, got {text!r}")
            start, stop, step = (float(x) for x in parts)
            if step <= 0:
                raise PreconditionViolation("range step must be positive")
            n = int(math.floor((stop - start) / step + 0.5)) + 1
            return [round(start + k * step, 10) for k in range(n) if start + k * step <= stop + step / 2]
        return [INFINITY if x.strip().lower() in ("inf", "infinity") else float(x) for x in t.split(",")]
    except ValueError:
        raise PreconditionViolation(f"malformed value list {text!r}") from None


def _jsonable(obj):
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        obj = obj.item()
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
    return obj


def _emit(command: str, params: dict, results: dict, passed: bool, seed: int = 0) -> int:
    params_clean = _jsonable(params)
    blob = json.dumps(params_clean, sort_keys=True).encode()
    report = RunReport(
        command=command,
        params=params_clean,
        results=_jsonable(results),
        provenance={
            "version": __version__,
            "seed": seed,
            "config_hash": hashlib.sha256(blob).hexdigest()[:12],
        },
        passed=bool(passed),
    )
    sys.stdout.write(json.dumps(report.as_dict(), allow_nan=False) + "\n")
    status = "PASS" if passed else "FAIL"
    sys.stderr.write(f"{command}: {status}\n")
    return 0 if passed else 1


def _problem_params(args, default_q=INFINITY) -> ProblemParams:
    return ProblemParams(
        dim=args.dim,
        p=args.p,
        gamma=args.gamma,
        lam=getattr(args, "lam", 0.0),
        c_h=getattr(args, "c_h", 1.0),
        nu=getattr(args, "nu", 1.0),
        q=getattr(args, "q", default_q) if getattr(args, "q", None) is not None else default_q,
    )


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------


def _cmd_exponents(args) -> int:
    params = _problem_params(args)
    rep = exponent_report(params)
    results = {
        "alpha": rep.alpha,
        "s": rep.s,
        "gamma_star": rep.gamma_star,
        "alpha_branch": rep.alpha_branch.value if rep.alpha_branch else None,
        "s_branch": rep.s_branch.value,
    }
    if 1 < params.p < params.dim:
        regime = classify_regime(params)
        results["growth_regime"] = regime.growth.value
        results["liouville_regime"] = regime.liouville.value
    return _emit("exponents", _params_dict(params), results, passed=True)


def _params_dict(params: ProblemParams) -> dict:
    return {
        "dim": params.dim,
        "p": params.p,
        "gamma": params.gamma,
        "lambda": params.lam,
        "c_h": params.c_h,
        "nu": params.nu,
        "q": "inf" if params.q == INFINITY else params.q,
    }


def _cmd_verify_sharpness(args) -> int:
    profile = sharpness_profile(args.dim, args.p, args.gamma)
    params = _problem_params(args)
    grid = np.linspace(0.05, 0.95, args.nodes)
    report = residual_scan(PLaplacian(args.p), profile, params, None, grid, tol=args.tol)
    passed = report.max_abs_residual <= args.tol
    results = {
        "c": profile.c,
        "a": profile.a,
        "nodes": args.nodes,
        "min_residual": report.min_residual,
        "max_abs_residual": report.max_abs_residual,
    }
    return _emit("verify-sharpness", _params_dict(params), results, passed)


def _cmd_verify_bump(args) -> int:
    params = _problem_params(args)
    grid = np.linspace(0.05, args.grid_max, args.nodes)
    c, report = bump_profile_scale(args.dim, args.p, args.gamma, args.c_h, grid)
    results = {
        "c": c,
        "delta": (args.p - args.gamma) / (args.gamma - (args.p - 1)),
        "min_residual": report.min_residual,
        "grid_max": args.grid_max,
    }
    return _emit("verify-bump", _params_dict(params), results, passed=report.passed)


def _cmd_solve(args) -> int:
    params = _problem_params(args)
    kind = _parse_operator(args.operator)
    if kind is None:
        kind = PLaplacian(args.p)
    f = _parse_source(args.source)
    bc_left = None if args.bc_left.strip().lower() == "none" else float(args.bc_left)
    config = SolverConfig(n_nodes=args.nodes, newton_tol=args.tol)
    sol = solve_radial_dirichlet(
        kind, params, f, (args.r_in, args.r_out), bc_left, args.bc_right, config
    )
    recomputed = solution_residual(sol, f)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["r", "value"])
            for r, v in zip(sol.grid, sol.values):
                writer.writerow([repr(float(r)), repr(float(v))])
    mid = sol.grid.size // 2
    results = {
        "nodes": args.nodes,
        "iterations": sol.meta["iterations"],
        "final_residual": sol.meta["final_residual"],
        "recomputed_residual": recomputed,
        "u_left": float(sol.values[0]),
        "u_mid": float(sol.values[mid]),
        "u_right": float(sol.values[-1]),
        "u_min": float(np.min(sol.values)),
        "u_max": float(np.max(sol.values)),
    }
    passed = sol.meta["final_residual"] <= args.tol
    return _emit("solve", _params_dict(params), results, passed)


def _load_witness(args):
    spec = args.witness.strip()
    if spec.lower() == "sharpness":
        return sharpness_profile(args.dim, args.p, args.gamma)
    if spec.lower() == "linear":
        return PowerProfile(c=1.0, a=1.0)
    if spec.lower().startswith("file:"):
        grid, vals = _read_two_column_csv(spec[5:])
        return SampledProfile(grid=grid, values=vals)
    raise PreconditionViolation(f"unknown witness {spec!r}")


def _cmd_audit_caccioppoli(args) -> int:
    params = _problem_params(args)
    u = _load_witness(args)
    t_list = np.geomspace(0.02 * args.R, 0.95 * args.R, 24)
    report = caccioppoli_audit(u, params, args.R, t_list)
    results = {
        "predicted_s": report.predicted_s,
        "growth_target": params.dim - report.predicted_s,
        "fitted_growth": report.fitted_growth,
        "fitted_K": report.fitted_K,
        "k_stable": report.k_stable,
    }
    return _emit(
        "audit-caccioppoli",
        _params_dict(params),
        results,
        passed=report.passed and report.k_stable,
        seed=0,
    )


def _cmd_audit_holder(args) -> int:
    params = _problem_params(args)
    u = _load_witness(args)
    predicted = None
    if args.witness.lower() == "sharpness":
        predicted = holder_exponent(params)
    elif args.witness.lower() == "linear":
        predicted = 1.0
    report = holder_fit(
        u,
        pair_budget=args.pairs,
        scale_range=(args.scale_min, args.scale_max),
        seed=args.seed,
        predicted_alpha=predicted,
        tolerance=args.tol,
    )
    results = {
        "fitted_alpha": report.fitted_alpha,
        "r_squared": report.r_squared,
        "predicted_alpha": report.predicted_alpha,
        "bins": int(report.scales.size),
    }
    passed = report.passed if report.passed is not None else 0 < report.fitted_alpha <= 1 + args.tol
    return _emit("audit-holder", _params_dict(params), results, passed, seed=args.seed)


def _cmd_morrey(args) -> int:
    f = _parse_source(args.source)
    norm = morrey_norm(
        f,
        s_index=args.s_index,
        theta=args.theta,
        omega_radius=args.omega_radius,
        center_samples=args.centers,
        dim=args.dim,
    )
    results = {
        "value": "DIVERGENT" if norm.divergent else norm.value,
        "divergent": norm.divergent,
        "argmax_radius": norm.argmax_radius,
    }
    params = {
        "source": args.source,
        "s_index": args.s_index,
        "theta": args.theta,
        "omega_radius": args.omega_radius,
        "dim": args.dim,
        "centers": args.centers,
    }
    return _emit("morrey", params, results, passed=True)


def _cmd_liouville(args) -> int:
    verdict = liouville_classify_euclidean(args.dim, args.p, args.gamma, c_h=args.c_h)
    area = area_condition_test(EuclideanArea(args.dim), args.p, args.gamma)
    consistent = (verdict.verdict is Verdict.LIOUVILLE) == (
        area is IntegralVerdict.DIVERGENT
    )
    witness_ok = None
    witness_info = None
    if verdict.witness is not None:
        _, witness_ok = verify_euclidean_witness(verdict)
        witness_info = {
            "family": type(verdict.witness).__name__,
            "c": verdict.witness.c,
            "exponent": getattr(verdict.witness, "a", None),
            "delta": getattr(verdict.witness, "delta", None),
        }
    results = {
        "verdict": verdict.verdict,
        "mechanism": verdict.mechanism,
        "gamma_star": verdict.gamma_star,
        "area_test": area,
        "witness": witness_info,
        "witness_note": verdict.witness_note,
        "witness_ok": witness_ok,
    }
    passed = consistent and witness_ok is not False
    params = {"dim": args.dim, "p": args.p, "gamma": args.gamma, "c_h": args.c_h}
    return _emit("liouville", params, results, passed)


def _cmd_manifold(args) -> int:
    profile = _parse_area_profile(args.profile, args.dim)
    verdict = liouville_classify_manifold(
        profile, args.p, args.gamma, t_start=args.t_start, mode=args.mode
    )
    results = {
        "verdict": verdict.verdict,
        "mechanism": verdict.mechanism,
        "gamma_star": verdict.gamma_star,
    }
    params = {
        "profile": args.profile,
        "dim": args.dim,
        "p": args.p,
        "gamma": args.gamma,
        "t_start": args.t_start,
        "mode": args.mode,
    }
    return _emit("manifold", params, results, passed=True)


def _cmd_sigma_bound(args) -> int:
    params = _problem_params(args)
    profile = _parse_area_profile(args.profile, args.dim)
    report = sigma_lower_bound(
        args.sigma_r, params, profile, args.R, args.r, weight=args.weight
    )
    results = {
        "lhs": report.lhs,
        "rhs": report.rhs,
        "constant_C": report.constant_C,
        "comparison_integral": report.comparison_integral,
        "area_integral": report.area_integral,
        "contradiction": report.contradiction,
        "weight": report.weight,
    }
    p = _params_dict(params)
    p.update({"profile": args.profile, "sigma_R": args.sigma_r, "R": args.R, "r": args.r})
    return _emit("sigma-bound", p, results, passed=True)


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

_SWEEP_HEADER = [
    "dim",
    "p",
    "gamma",
    "q",
    "alpha",
    "s",
    "gamma_star",
    "growth_regime",
    "liouville_regime",
    "verdict",
]


def _sweep_row(point):
    dim, p, gamma, q = point
    row = {
        "dim": int(dim),
        "p": p,
        "gamma": gamma,
        "q": "inf" if q == INFINITY else q,
        "alpha": "",
        "s": "",
        "gamma_star": "",
        "growth_regime": "",
        "liouville_regime": "",
        "verdict": "INVALID",
    }
    try:
        params = ProblemParams(dim=int(dim), p=p, gamma=gamma, q=q)
        rep = exponent_report(params)
    except PreconditionViolation:
        return row
    row["s"] = repr(rep.s)
    if rep.alpha is not None:
        row["alpha"] = repr(rep.alpha)
    if rep.gamma_star is not None:
        row["gamma_star"] = repr(rep.gamma_star)
        regime = classify_regime(params)
        row["growth_regime"] = regime.growth.value
        row["liouville_regime"] = regime.liouville.value
        row["verdict"] = (
            "LIOUVILLE" if power_area_diverges(dim - 1, p, gamma) else "NO_LIOUVILLE"
        )
    return row


def _cmd_sweep(args) -> int:
    dims = _parse_value_list(args.dim)
    ps = _parse_value_list(args.p)
    gammas = _parse_value_list(args.gamma)
    qs = _parse_value_list(args.q) if args.q else [INFINITY]
    points = sorted(
        (d, p, g, q) for d in dims for p in ps for g in gammas for q in qs
    )
    threads = int(os.environ.get("PDI_LAB_THREADS", "1") or "1")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_sweep_row, points))
    else:
        rows = [_sweep_row(pt) for pt in points]

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_SWEEP_HEADER, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    sys.stderr.write(f"sweep: {len(rows)} rows\n")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_param_flags(sp, p_required=True):
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--p", type=float, required=p_required)
    sp.add_argument("--gamma", type=float, required=p_required)
    sp.add_argument("--lambda", dest="lam", type=float, default=0.0)
    sp.add_argument("--c-h", dest="c_h", type=float, default=1.0)
    sp.add_argument("--nu", type=float, default=1.0)
    sp.add_argument("--q", type=_parse_q, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdi-lab",
        description="Desk-scale verification of exponent formulas, explicit "
        "solutions, energy bounds and Liouville criteria for quasilinear "
        "elliptic inequalities with gradient terms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("exponents", help="closed-form exponent calculus")
    _add_param_flags(sp)
    sp.set_defaults(func=_cmd_exponents)

    sp = sub.add_parser("verify-sharpness", help="residual-check the explicit sharp solution")
    _add_param_flags(sp)
    sp.add_argument("--nodes", type=int, default=512)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.set_defaults(func=_cmd_verify_sharpness)

    sp = sub.add_parser("verify-bump", help="search a bounded supersolution witness scale")
    _add_param_flags(sp)
    sp.add_argument("--nodes", type=int, default=300)
    sp.add_argument("--grid-max", type=float, default=10.0)
    sp.set_defaults(func=_cmd_verify_bump)

    sp = sub.add_parser("solve", help="radial Dirichlet solve of the model equation")
    _add_param_flags(sp)
    sp.add_argument("--operator", default="p-laplacian")
    sp.add_argument("--source", default="zero")
    sp.add_argument("--r-in", type=float, default=0.0)
    sp.add_argument("--r-out", type=float, default=1.0)
    sp.add_argument("--bc-left", default="none")
    sp.add_argument("--bc-right", type=float, required=True)
    sp.add_argument("--nodes", type=int, default=256)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("audit-caccioppoli", help="energy growth vs the two-ball bound")
    _add_param_flags(sp)
    sp.add_argument("--witness", default="sharpness")
    sp.add_argument("--radius", dest="R", type=float, default=1.0)
    sp.set_defaults(func=_cmd_audit_caccioppoli)

    sp = sub.add_parser("audit-holder", help="empirical Holder exponent fit")
    _add_param_flags(sp)
    sp.add_argument("--witness", default="sharpness")
    sp.add_argument("--pairs", type=int, default=20000)
    sp.add_argument("--scale-min", type=float, default=1e-3)
    sp.add_argument("--scale-max", type=float, default=0.25)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=0.05)
    sp.set_defaults(func=_cmd_audit_holder)

    sp = sub.add_parser("morrey", help="Morrey norm of a source term on a ball")
    sp.add_argument("--source", required=True)
    sp.add_argument("--s-index", type=float, default=1.0)
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--omega-radius", type=float, default=1.0)
    sp.add_argument("--centers", type=int, default=8)
    sp.add_argument("--dim", type=int, default=3)
    sp.set_defaults(func=_cmd_morrey)

    sp = sub.add_parser("liouville", help="Euclidean classification with witnesses")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--c-h", dest="c_h", type=float, default=1.0)
    sp.set_defaults(func=_cmd_liouville)

    sp = sub.add_parser("manifold", help="area-growth Liouville test")
    sp.add_argument("--profile", required=True)
    sp.add_argument("--dim", type=int, default=3)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--t-start", type=float, default=1.0)
    sp.add_argument("--mode", choices=("analytic", "numeric"), default="analytic")
    sp.set_defaults(func=_cmd_manifold)

    sp = sub.add_parser("sigma-bound", help="both sides of the energy comparison")
    _add_param_flags(sp)
    sp.add_argument("--profile", default="euclidean")
    sp.add_argument("--sigma-r", type=float, required=True)
    sp.add_argument("--radius-inner", dest="R", type=float, required=True)
    sp.add_argument("--radius-outer", dest="r", type=float, required=True)
    sp.add_argument("--weight", choices=("none", "exp"), default="none")
    sp.set_defaults(func=_cmd_sigma_bound)

    sp = sub.add_parser("sweep", help="CSV exponent/verdict table over a parameter grid")
    sp.add_argument("--dim", required=True)
    sp.add_argument("--p", required=True)
    sp.add_argument("--gamma", required=True)
    sp.add_argument("--q", default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_sweep)

    return parser


def run(argv) -> int:
    """Execute one invocation given its argument tokens and return the
    exit code. The report goes to stdout, the one-line summary to stderr."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return code
    try:
        return args.func(args)
    except PreconditionViolation as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (IllPosedBoundary, DomainExceeded, NonIntegrable) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (NoAdmissibleScale, NoConvergence, InsufficientScales) as exc:
        report = {
            "command": args.command,
            "error": str(exc),
            "provenance": {"version": __version__},
            "passed": False,
        }
        sys.stdout.write(json.dumps(report) + "\n")
        sys.stderr.write(f"{args.command}: FAIL ({exc})\n")
        return 1


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
