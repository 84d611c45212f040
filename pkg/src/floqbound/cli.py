"""Command-line front end.

Subcommands: analyze, simulate, probe, sweep, verify, list-examples.
Systems are named either by a built-in example (see list-examples) or by a
TOML file path; built-in names win on collision, with a warning.

Exit codes: 0 success (vacuous checks count as success), 1 a verification
check concluded inconsistently, 2 usage or input error, 3 numerical failure.

Artifacts land under --out-dir (default: $FLOQUET_OUT_DIR, then
./floqbound-out): report.json always, traces/*.csv and plots/*.svg unless
--format narrows the emission. report.json is serialized with sorted keys
and no timestamps, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import harness
from .errors import (
    DimensionMismatch,
    FloqboundError,
    NonConvergence,
    NonFinite,
    NotDichotomic,
    ParseError,
    Singular,
    StepLimitExceeded,
    ValidationError,
)
from .forced import (
    boundedness_probe,
    default_mu_grid,
    eval_direct,
    uniform_bound_sweep,
    write_sup_csv,
    write_sweep_csv,
    write_trace_csv,
)
from .plots import write_eigenvalue_svg, write_sup_svg
from .propagator import METHOD_DOPRI, METHOD_RK4, IntegratorSettings, Propagation
from .spectral import classify, dichotomy_projection, spectral_split
from .systems import (
    SIDE_ADJOINT,
    SIDE_FORWARD,
    ForcingSpec,
    PeriodicSystem,
    builtin_examples,
    builtin_system,
    parse_complex,
    parse_system,
)

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_USAGE_ERRORS = (ParseError, ValidationError, DimensionMismatch)
_NUMERICAL_ERRORS = (NonConvergence, StepLimitExceeded, NonFinite, Singular,
                     NotDichotomic)


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="floqbound",
        description="Analyze periodic linear systems: monodromy spectrum, "
                    "dichotomy, forced responses, boundedness checks.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, system: bool = True) -> None:
        if system:
            p.add_argument("system", help="built-in example name or TOML file path")
        p.add_argument("--out-dir", default=None,
                       help="artifact directory (default: $FLOQUET_OUT_DIR or "
                            "./floqbound-out)")
        p.add_argument("--integrator", choices=[METHOD_RK4, METHOD_DOPRI],
                       default=METHOD_RK4)
        p.add_argument("--step", type=float, default=None,
                       help="fixed step size for the rk4 integrator")
        p.add_argument("--circle-tol", type=float, default=1e-6,
                       help="half-width of the unit-circle band")
        p.add_argument("--seed", type=int, default=harness.DEFAULT_SEED)
        p.add_argument("--format", choices=["json", "csv", "svg"], default=None,
                       help="restrict artifacts to one format "
                            "(report.json is always written)")

    p = sub.add_parser("analyze", help="spectrum, classification, projector")
    common(p)

    p = sub.add_parser("simulate", help="dense forced trace over n periods")
    common(p)
    p.add_argument("--mu", type=float, required=True, help="forcing frequency")
    p.add_argument("--b", default=None,
                   help="comma-separated complex components (default: all ones)")
    p.add_argument("--side", choices=[SIDE_FORWARD, SIDE_ADJOINT],
                   default=SIDE_FORWARD)
    p.add_argument("--periods", type=int, default=20)

    p = sub.add_parser("probe", help="boundedness verdict for one forcing")
    common(p)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--b", default=None)
    p.add_argument("--side", choices=[SIDE_FORWARD, SIDE_ADJOINT],
                   default=SIDE_FORWARD)
    p.add_argument("--periods", type=int, default=100)

    p = sub.add_parser("sweep", help="per-frequency sup estimates on a grid")
    common(p)
    p.add_argument("--b", default=None)
    p.add_argument("--side", choices=[SIDE_FORWARD, SIDE_ADJOINT],
                   default=SIDE_FORWARD)
    p.add_argument("--grid-points", type=int, default=64)
    p.add_argument("--periods", type=int, default=100)

    p = sub.add_parser("verify", help="run structured checks")
    common(p)
    p.add_argument("check", nargs="?", default="all",
                   choices=["all", *harness.ALL_CHECKS])
    p.add_argument("--periods", type=int, default=100)

    sub.add_parser("list-examples", help="show built-in systems")
    return top


def _settings(args) -> IntegratorSettings:
    return IntegratorSettings(method=args.integrator, step=args.step)


def _resolve_system(name: str) -> PeriodicSystem:
    builtin_names = {n for n, _, _ in builtin_examples()}
    if name in builtin_names:
        if Path(name).exists():
            print(f"warning: '{name}' is both a built-in and a file; "
                  "using the built-in", file=sys.stderr)
        return builtin_system(name)
    path = Path(name)
    if not path.exists():
        raise ValidationError(
            f"unknown system '{name}': not a built-in "
            f"({', '.join(sorted(builtin_names))}) and no such file")
    system, _ = parse_system(path.read_text(encoding="utf-8"))
    return system


def _parse_b(text: str | None, dimension: int) -> np.ndarray:
    if text is None:
        return np.ones(dimension, dtype=np.complex128)
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != dimension:
        raise ValidationError(
            f"--b has {len(parts)} component(s), system dimension is {dimension}")
    return np.array([parse_complex(p) for p in parts], dtype=np.complex128)


def _out_dir(args) -> Path:
    base = args.out_dir or os.environ.get("FLOQUET_OUT_DIR") or "floqbound-out"
    out = Path(base)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _wants(args, kind: str) -> bool:
    return args.format is None or args.format == kind


def _complex_entry(v: complex) -> dict:
    return {"re": float(v.real), "im": float(v.imag)}


def _sanitize(obj):
    """JSON-safe copy: numpy scalars unwrapped, non-finite floats stringified."""
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):  # before int: bool subclasses int
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else repr(f)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.complexfloating, complex)):
        return _complex_entry(complex(obj))
    if isinstance(obj, np.ndarray):
        return [_sanitize(v) for v in obj.tolist()]
    return obj


def _write_report(out: Path, payload: dict) -> Path:
    path = out / "report.json"
    text = json.dumps(_sanitize(payload), indent=2, sort_keys=True,
                      allow_nan=False) + "\n"
    path.write_text(text, encoding="utf-8")
    return path


def _subdir(out: Path, name: str) -> Path:
    d = out / name
    d.mkdir(parents=True, exist_ok=True)
    return d


def render_plots(report: dict, traces, out_dir) -> list[str]:
    """SVG files for a report: a spectrum scatter when the report carries
    eigenvalues, plus one sup polyline per (name, sups) trace pair.

    At least one trace is required; spectrum-only callers write their plot
    through write_eigenvalue_svg directly.
    """
    if not traces:
        raise ValidationError("no traces to plot")
    plots = _subdir(Path(out_dir), "plots")
    paths: list[str] = []
    if "eigenvalues" in report:
        values = [complex(e["re"], e["im"]) for e in report["eigenvalues"]
                  for _ in range(e.get("multiplicity", 1))]
        paths.append(write_eigenvalue_svg(values, plots / "spectrum.svg"))
    for name, sups in traces:
        paths.append(write_sup_svg(sups, plots / f"{name}.svg",
                                   title=f"per-period sup: {name}"))
    return paths


def _system_block(system: PeriodicSystem) -> dict:
    return {"label": system.label, "dimension": system.dimension,
            "period": system.period}


def _cmd_analyze(args) -> int:
    system = _resolve_system(args.system)
    out = _out_dir(args)
    prop = Propagation(system, _settings(args))
    verdict = classify(prop.monodromy, circle_tol=args.circle_tol)
    spectrum = verdict.spectrum
    m_const, omega = prop.growth_constants()
    payload: dict = {
        "command": "analyze",
        "system": _system_block(system),
        "classification": verdict.classification,
        "circle_tol": args.circle_tol,
        "eigenvalues": [
            {**_complex_entry(v), "multiplicity": k, "modulus": abs(v)}
            for v, k in spectrum.eigenvalues
        ],
        "circle_band": [_complex_entry(v) for v in verdict.band],
        "certification_residual": verdict.certification_residual,
        "growth_bound": {"m": m_const, "omega": omega},
        "flow_commutation_residual": prop.commutation_residual(),
        "projector": None,
        "eta": None,
    }
    if verdict.circle_free:
        split = spectral_split(prop.monodromy, circle_tol=args.circle_tol)
        report = dichotomy_projection(split, prop)
        payload["eta"] = split.eta
        payload["projector"] = {
            "matrix": [[_complex_entry(v) for v in row]
                       for row in report.projector],
            "idempotency_residual": report.idempotency_residual,
            "monodromy_commutation": report.monodromy_commutation,
            "forward_commutation": report.forward_commutation,
            "adjoint_commutation": report.adjoint_commutation,
            "stable_dimension": report.x1_dimension,
            "expansive_dimension": report.x2_dimension,
        }
    artifact_paths = []
    if _wants(args, "svg"):
        plots_dir = _subdir(out, "plots")
        values = [v for v, k in spectrum.eigenvalues for _ in range(k)]
        artifact_paths.append(
            write_eigenvalue_svg(values, plots_dir / "spectrum.svg"))
    payload["artifacts"] = artifact_paths
    _write_report(out, payload)
    print(f"{system.label}: {verdict.classification}"
          + (f" (eta={payload['eta']})" if payload["eta"] is not None else ""))
    print(f"report: {out / 'report.json'}")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    system = _resolve_system(args.system)
    out = _out_dir(args)
    if args.periods < 1:
        raise ValidationError("--periods must be >= 1")
    b = _parse_b(args.b, system.dimension)
    prop = Propagation(system, _settings(args))
    forcing = ForcingSpec(args.mu, b, args.side)
    trace = eval_direct(prop, forcing, None, args.periods)
    payload: dict = {
        "command": "simulate",
        "system": _system_block(system),
        "mu": args.mu,
        "side": args.side,
        "b": [_complex_entry(v) for v in b],
        "periods": args.periods,
        "sup_norm": trace.sup_norm,
        "per_period_sup": list(trace.per_period_sup),
    }
    artifact_paths = []
    if _wants(args, "csv"):
        traces_dir = _subdir(out, "traces")
        write_trace_csv(trace, traces_dir / "trace.csv")
        artifact_paths.append(str(traces_dir / "trace.csv"))
    if _wants(args, "svg") and len(trace.per_period_sup) >= 2:
        artifact_paths += render_plots(payload, [("trace", trace.per_period_sup)], out)
    payload["artifacts"] = artifact_paths
    _write_report(out, payload)
    print(f"simulate {system.label} mu={args.mu} {args.side}: "
          f"sup={trace.sup_norm:.6g}")
    print(f"report: {out / 'report.json'}")
    return EXIT_OK


def _cmd_probe(args) -> int:
    system = _resolve_system(args.system)
    out = _out_dir(args)
    b = _parse_b(args.b, system.dimension)
    prop = Propagation(system, _settings(args))
    forcing = ForcingSpec(args.mu, b, args.side)
    verdict = boundedness_probe(prop, forcing, None, n_periods=args.periods)
    payload: dict = {
        "command": "probe",
        "system": _system_block(system),
        "mu": args.mu,
        "side": args.side,
        "b": [_complex_entry(v) for v in b],
        "status": verdict.status,
        "horizon_periods": verdict.horizon_periods,
        "sup_norm": verdict.sup_norm,
        "slope": verdict.slope,
        "slope_ci": verdict.slope_ci,
        "growth_ratio": verdict.growth_ratio,
    }
    artifact_paths = []
    if _wants(args, "csv"):
        traces_dir = _subdir(out, "traces")
        write_sup_csv(verdict.per_period_sup, traces_dir / "sups.csv")
        artifact_paths.append(str(traces_dir / "sups.csv"))
    if _wants(args, "svg"):
        artifact_paths += render_plots(payload, [("sups", verdict.per_period_sup)], out)
    payload["artifacts"] = artifact_paths
    _write_report(out, payload)
    print(f"probe {system.label} mu={args.mu} {args.side}: {verdict.status} "
          f"(sup={verdict.sup_norm:.6g}, horizon={verdict.horizon_periods})")
    print(f"report: {out / 'report.json'}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    system = _resolve_system(args.system)
    out = _out_dir(args)
    if args.grid_points < 1:
        raise ValidationError("--grid-points must be >= 1")
    b = _parse_b(args.b, system.dimension)
    prop = Propagation(system, _settings(args))
    grid = default_mu_grid(system.period, args.grid_points)
    sweep = uniform_bound_sweep(prop, b, None, args.side, mu_grid=grid,
                                n_periods=args.periods)
    payload: dict = {
        "command": "sweep",
        "system": _system_block(system),
        "side": args.side,
        "b": [_complex_entry(v) for v in b],
        "grid_points": args.grid_points,
        "periods": args.periods,
        "k_estimate": sweep.k_estimate,
        "argmax_mu": sweep.argmax_mu,
        "unbounded_mus": list(sweep.unbounded_mus),
        "statuses": {s: sweep.statuses.count(s) for s in sorted(set(sweep.statuses))},
    }
    artifact_paths = []
    if _wants(args, "csv"):
        traces_dir = _subdir(out, "traces")
        write_sweep_csv(sweep, traces_dir / "sweep.csv")
        artifact_paths.append(str(traces_dir / "sweep.csv"))
    payload["artifacts"] = artifact_paths
    _write_report(out, payload)
    print(f"sweep {system.label} {args.side}: K={sweep.k_estimate:.6g} "
          f"at mu={sweep.argmax_mu:.6g}; unbounded at "
          f"{list(sweep.unbounded_mus) or 'none'}")
    print(f"report: {out / 'report.json'}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    system = _resolve_system(args.system)
    out = _out_dir(args)
    settings = _settings(args)
    if args.check == "all":
        reports = harness.run_all(system, settings, seed=args.seed,
                                  n_periods=args.periods)
    elif args.check == harness.CHECK_POWER:
        reports = [harness.verify_power_growth(seed=args.seed)]
    elif args.check == harness.CHECK_ROTATION:
        if system.label != "rotation":
            print("note: the rotation reproduction always runs on the "
                  "built-in rotation system", file=sys.stderr)
        reports = [harness.reproduce_rotation_counterexample(settings,
                                                             n_periods=args.periods)]
    else:
        fn = {
            harness.CHECK_FORWARD: harness.verify_forward_boundedness,
            harness.CHECK_CONVERSE: harness.verify_converse_dichotomy,
            harness.CHECK_UNIFORM: harness.verify_uniform_bounds,
            harness.CHECK_STABILITY: harness.verify_uniform_stability,
        }[args.check]
        reports = [fn(system, settings=settings, n_periods=args.periods)]
    statuses = [r.status for r in reports]
    overall = "fail" if "fail" in statuses else "pass"
    payload = {
        "command": "verify",
        "system": _system_block(system),
        "check": args.check,
        "overall": overall,
        "status_counts": {s: statuses.count(s) for s in sorted(set(statuses))},
        "checks": [r.to_dict() for r in reports],
    }
    payload["artifacts"] = []
    _write_report(out, payload)
    for r in reports:
        print(f"{r.check_id}: {r.status} ({r.conclusion.observed})")
    print(f"overall: {overall}")
    print(f"report: {out / 'report.json'}")
    return EXIT_OK if overall == "pass" else EXIT_INCONSISTENT


def _cmd_list_examples(_args) -> int:
    rows = [(name, system.dimension, system.period, expected)
            for name, system, expected in builtin_examples()]
    width = max(len(r[0]) for r in rows)
    for name, dim, period, expected in rows:
        print(f"{name:<{width}}  dim={dim}  period={period:.6g}  "
              f"expected={expected}")
    return EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "simulate": _cmd_simulate,
    "probe": _cmd_probe,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "list-examples": _cmd_list_examples,
}


def run(argv=None) -> int:
    """Entry point returning the exit code (never raising SystemExit)."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return EXIT_OK if code in (0, None) else int(code)
    try:
        return _COMMANDS[args.command](args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FloqboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
