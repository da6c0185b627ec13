"""Command-line front end: spectral tables, asymptotic profiles, direct
simulation, and simulation-vs-asymptotics comparison.

Every command writes CSV/JSON artifacts plus a manifest.json into the
output directory and is fully deterministic (identical inputs produce
byte-identical CSVs).  Exit codes: 0 ok, 2 io/config, 3 region or
precondition violation, 4 blow-up, 5 numerical-tolerance failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .branches import BranchDomainError, BranchPointError, CutSide
from .errors import (
    BlowupDetected,
    InconclusiveWinding,
    NnlstepError,
    OdeToleranceFailure,
    PoleOnContour,
    RegionMismatch,
    SingularStation,
    SolitonPole,
    ToleranceNotMet,
    WindingOutOfRange,
)
from .nnls_sim import Grid, SimConfig, SolitonSpec, compare, evolve, init_field
from .phase import Direction, RegionTag, classify
from .rh_asymptotics import (
    central_params,
    modulated_params,
    q_central,
    q_modulated,
    q_soliton,
    q_transition,
    transition_params,
)
from .spectral import (
    InitialData,
    StepProfile,
    check_assumptions,
    jost_spectral,
    reflection,
    soliton_spectral,
    step_spectral,
)

_EXIT_OK = 0
_EXIT_IO = 2
_EXIT_REGION = 3
_EXIT_BLOWUP = 4
_EXIT_TOLERANCE = 5


class CliError(Exception):
    def __init__(self, kind: str, message: str, exit_code: int):
        super().__init__(message)
        self.kind = kind
        self.exit_code = exit_code


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(c) if isinstance(c, float) else c for c in row])


def _write_manifest(out_dir: Path, command: str, args: argparse.Namespace) -> None:
    manifest = {
        "command": command,
        "config": getattr(args, "config", None),
        "output_directory": str(out_dir),
        "deterministic": True,
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def _out_dir(args) -> Path:
    out = Path(args.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError("io", f"cannot create output directory: {exc}", _EXIT_IO)
    return out


def _parse_grid(spec: str) -> np.ndarray:
    try:
        lo, hi, n = spec.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise CliError("config", f"bad --k-grid {spec!r}, expected lo:hi:n", _EXIT_IO)
    if n < 1 or hi <= lo:
        raise CliError("config", f"bad --k-grid {spec!r}", _EXIT_IO)
    return np.linspace(lo, hi, n)


def _parse_floats(spec: str) -> list[float]:
    try:
        return [float(s) for s in spec.split(",") if s != ""]
    except ValueError:
        raise CliError("config", f"bad numeric list {spec!r}", _EXIT_IO)


def _load_initial_csv(path: str, A: float) -> InitialData:
    p = Path(path)
    if not p.is_file():
        raise CliError("io", f"input CSV not found: {path}", _EXIT_IO)
    xs, res, ims = [], [], []
    with p.open() as fh:
        reader = csv.reader(fh)
        for i, row in enumerate(reader):
            if i == 0 and any(not _is_number(c) for c in row):
                continue  # header
            if len(row) < 3:
                raise CliError("io", f"row {i} of {path} has fewer than 3 columns", _EXIT_IO)
            xs.append(float(row[0]))
            res.append(float(row[1]))
            ims.append(float(row[2]))
    if len(xs) < 2:
        raise CliError("io", f"{path} contains fewer than 2 samples", _EXIT_IO)
    xs_a = np.asarray(xs)
    order = np.argsort(xs_a)
    xs_a, res_a, ims_a = xs_a[order], np.asarray(res)[order], np.asarray(ims)[order]

    def sampler(x):
        if x <= xs_a[0]:
            return -A
        if x >= xs_a[-1]:
            return A
        return complex(np.interp(x, xs_a, res_a), np.interp(x, xs_a, ims_a))

    return InitialData(sampler=sampler, decay_width=float(max(abs(xs_a[0]), abs(xs_a[-1]))))


def _is_number(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def _spectral_source(args):
    """Build SpectralData from the source flags shared by subcommands."""
    A = args.A
    if args.soliton:
        return soliton_spectral(A, args.phi0)
    if args.input_csv is not None:
        data = _load_initial_csv(args.input_csv, A)
        ks = _parse_grid(args.k_grid) if args.k_grid else np.linspace(1.1 * A, 10 * A, 20)
        return jost_spectral(data, A, list(ks))
    return step_spectral(StepProfile(A=A, R=args.step_R))


def _add_source_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--A", type=float, default=1.0, help="background amplitude A > 0")
    p.add_argument("--step-R", type=float, default=0.0, help="pure-step jump location")
    p.add_argument("--soliton", action="store_true", help="use reflectionless one-soliton data")
    p.add_argument("--phi0", type=float, default=0.0, help="soliton phase parameter")
    p.add_argument("--input-csv", default=None, help="CSV with columns x, re_q0, im_q0")
    p.add_argument("--tol", type=float, default=1e-8, help="quadrature tolerance")


def cmd_spectral(args) -> int:
    out = _out_dir(args)
    sd = _spectral_source(args)
    A = sd.A
    ks = _parse_grid(args.k_grid) if args.k_grid else np.linspace(1.05 * A, 10 * A, 200)
    rows = []
    for k in ks:
        sides = (CutSide.ABOVE, CutSide.BELOW) if -A < k < A else (CutSide.OFF,)
        for side in sides:
            a1 = sd.a1(complex(k), side)
            a2 = sd.a2(complex(k), side)
            b = sd.b(complex(k), side)
            r1, r2 = reflection(sd, complex(k), side)
            rows.append(
                [
                    float(k),
                    side.value,
                    a1.real, a1.imag, a2.real, a2.imag, b.real, b.imag,
                    r1.real, r1.imag, r2.real, r2.imag,
                ]
            )
    _write_csv(
        out / "spectral_data.csv",
        [
            "k", "side",
            "re_a1", "im_a1", "re_a2", "im_a2", "re_b", "im_b",
            "re_r1", "im_r1", "re_r2", "im_r2",
        ],
        rows,
    )
    report = check_assumptions(sd)
    payload = {
        "a1_winding": report.a1_winding,
        "a10": [report.a10.real, report.a10.imag],
        "a10_fit_residual": report.a10_fit_residual,
        "a1_plus_at_zero": [
            report.a1_plus_at_zero.real,
            report.a1_plus_at_zero.imag,
        ],
        "simple_zero_at_origin": report.simple_zero_at_origin,
        "re_a10_small": report.re_a10_small,
        "winding_bound_ok": report.winding_bound_ok,
        "winding_sup": report.winding_sup,
        "endpoint_zero_at_minus_A": report.endpoint_zero_at_minus_A,
        "endpoint_value": [report.endpoint_value.real, report.endpoint_value.imag],
        "passed": report.passed,
        "notes": list(report.notes),
    }
    (out / "assumptions_report.json").write_text(json.dumps(payload, indent=2) + "\n")
    _write_manifest(out, "spectral", args)
    return _EXIT_OK


def cmd_asym(args) -> int:
    out = _out_dir(args)
    sd = _spectral_source(args)
    A = sd.A
    ts = _parse_floats(args.t)
    rows = []
    if args.x is not None:
        params = transition_params(sd, tol=args.tol)
        for x in _parse_floats(args.x):
            for t in ts:
                q = q_transition(sd, x, t, tol=args.tol, params=params)
                rows.append([x, t, q.real, q.imag, abs(q),
                             RegionTag.TRANSITION_AXIS.value, "inf"])
    elif args.xi is not None:
        for xi in _parse_floats(args.xi):
            region = classify(Direction(xi, A))
            if region is RegionTag.BOUNDARY:
                raise RegionMismatch(
                    f"xi={xi} lies exactly on a region boundary (|xi| in {{0, A/2}}); "
                    "no asymptotic formula applies there"
                )
            if region in (RegionTag.MODULATED_PLUS, RegionTag.MODULATED_MINUS):
                params = modulated_params(sd, xi, tol=args.tol)
                evaluate = q_modulated
            else:
                params = central_params(sd, xi, tol=args.tol)
                evaluate = q_central
            for t in ts:
                x = 4.0 * xi * t
                q = evaluate(sd, xi, t, tol=args.tol, params=params)
                rows.append([x, t, q.real, q.imag, abs(q), region.value,
                             _fmt(params.error_exponent) if np.isfinite(params.error_exponent) else "inf"])
    else:
        raise CliError("config", "asym requires --xi or --x", _EXIT_IO)
    _write_csv(
        out / "asym.csv",
        ["x", "t", "re_q", "im_q", "abs_q", "region", "error_exponent"],
        rows,
    )
    if args.gnuplot_script:
        (out / "plot.gp").write_text(
            "set datafile separator ','\n"
            "set key autotitle columnhead\n"
            f"plot '{out / 'asym.csv'}' using 1:5 with lines title '|q|'\n"
        )
    _write_manifest(out, "asym", args)
    return _EXIT_OK


def _load_sim_config(path: str):
    p = Path(path)
    if not p.is_file():
        raise CliError("io", f"config not found: {path}", _EXIT_IO)
    try:
        cfg = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise CliError("config", f"bad JSON in {path}: {exc}", _EXIT_IO)
    try:
        A = float(cfg["A"])
        grid = Grid(L=float(cfg["L"]), N=int(cfg["N"]))
        sim = SimConfig(
            dt=float(cfg["dt"]),
            t_end=float(cfg["t_end"]),
            record_times=tuple(float(t) for t in cfg.get("record_times", [cfg["t_end"]])),
        )
        initial = cfg["initial"]
        kind = initial["kind"]
        if kind == "step":
            q0 = StepProfile(A=A, R=float(initial.get("R", 0.0)))
        elif kind == "soliton":
            q0 = SolitonSpec(A=A, phi0=float(initial.get("phi0", 0.0)))
        elif kind == "csv":
            q0 = _load_initial_csv(initial["path"], A)
        else:
            raise CliError("config", f"unknown initial kind {kind!r}", _EXIT_IO)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError("config", f"invalid simulation config: {exc}", _EXIT_IO)
    return A, grid, sim, q0


def _snapshot_rows(snapshots):
    for fld in snapshots:
        for x, q in zip(fld.grid.x, fld.values):
            yield [fld.t, float(x), q.real, q.imag, abs(q)]


def cmd_simulate(args) -> int:
    out = _out_dir(args)
    A, grid, sim, q0 = _load_sim_config(args.config)
    snapshots = evolve(init_field(q0, grid), sim, A)
    _write_csv(
        out / "snapshots.csv", ["t", "x", "re_q", "im_q", "abs_q"], _snapshot_rows(snapshots)
    )
    _write_manifest(out, "simulate", args)
    return _EXIT_OK


def cmd_compare(args) -> int:
    out = _out_dir(args)
    A, grid, sim, q0 = _load_sim_config(args.config)
    try:
        lo, hi = (float(s) for s in args.window.split(":"))
    except ValueError:
        raise CliError("config", f"bad --window {args.window!r}, expected lo:hi", _EXIT_IO)

    if args.predictor == "soliton":
        phi0 = q0.phi0 if isinstance(q0, SolitonSpec) else 0.0
        predictor = lambda x, t: q_soliton(A, phi0, x, t)
    else:
        if isinstance(q0, StepProfile):
            sd = step_spectral(q0)
        elif isinstance(q0, SolitonSpec):
            sd = soliton_spectral(A, q0.phi0)
        else:
            sd = jost_spectral(q0, A, list(np.linspace(1.1 * A, 10 * A, 20)))
        if args.predictor == "transition":
            params = transition_params(sd, tol=args.tol)
            predictor = lambda x, t: q_transition(sd, x, t, tol=args.tol, params=params)
        elif args.predictor == "central":
            cache = {}

            def predictor(x, t):
                xi = x / (4.0 * t)
                if "p" not in cache:
                    cache["p"] = central_params(sd, xi, tol=args.tol)
                return q_central(sd, xi, t, tol=args.tol, params=cache["p"])

        elif args.predictor == "modulated":
            cache = {}

            def predictor(x, t):
                xi = x / (4.0 * t)
                key = round(xi, 12)
                if key not in cache:
                    cache[key] = modulated_params(sd, xi, tol=args.tol)
                return q_modulated(sd, xi, t, tol=args.tol, params=cache[key])

        else:
            raise CliError("config", f"unknown predictor {args.predictor!r}", _EXIT_IO)

    snapshots = evolve(init_field(q0, grid), sim, A)
    table = compare(snapshots, predictor, (lo, hi))
    rows = [
        [t, s, l2, table.fitted_exponent]
        for t, s, l2 in zip(table.times, table.sup_errors, table.l2_errors)
    ]
    _write_csv(out / "error_table.csv", ["t", "sup_err", "l2_err", "fitted_exponent"], rows)
    _write_manifest(out, "compare", args)
    return _EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nnlstep",
        description="Asymptotics and direct simulation for the nonlocal NLS "
        "equation with asymmetric step background",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectral", help="tabulate scattering data and assumption checks")
    _add_source_flags(p_spec)
    p_spec.add_argument("--k-grid", default=None, help="real k grid as lo:hi:n")
    p_spec.add_argument("--out-dir", required=True)
    p_spec.set_defaults(func=cmd_spectral)

    p_asym = sub.add_parser("asym", help="evaluate long-time asymptotic profiles")
    _add_source_flags(p_asym)
    p_asym.add_argument("--xi", default=None, help="comma-separated ray directions xi = x/(4t)")
    p_asym.add_argument("--x", default=None, help="comma-separated fixed stations (transition)")
    p_asym.add_argument("--t", required=True, help="comma-separated times")
    p_asym.add_argument("--gnuplot-script", action="store_true")
    p_asym.add_argument("--out-dir", required=True)
    p_asym.set_defaults(func=cmd_asym)

    p_sim = sub.add_parser("simulate", help="run the direct solver from a JSON config")
    p_sim.add_argument("--config", required=True)
    p_sim.add_argument("--out-dir", required=True)
    p_sim.set_defaults(func=cmd_simulate)

    p_cmp = sub.add_parser("compare", help="simulate and compare against an asymptotic predictor")
    p_cmp.add_argument("--config", required=True)
    p_cmp.add_argument("--predictor", required=True,
                       choices=["modulated", "central", "transition", "soliton"])
    p_cmp.add_argument("--window", required=True, help="x window as lo:hi")
    p_cmp.add_argument("--tol", type=float, default=1e-8)
    p_cmp.add_argument("--out-dir", required=True)
    p_cmp.set_defaults(func=cmd_compare)

    return parser


_ERROR_MAP = [
    ((BlowupDetected,), "blowup", _EXIT_BLOWUP),
    ((RegionMismatch, SingularStation, SolitonPole, WindingOutOfRange,
      BranchPointError, BranchDomainError, PoleOnContour), "region", _EXIT_REGION),
    ((ToleranceNotMet, OdeToleranceFailure, InconclusiveWinding), "tolerance", _EXIT_TOLERANCE),
    ((NnlstepError,), "error", _EXIT_REGION),
]


def _emit_error(kind: str, message: str, extra: dict | None = None) -> None:
    payload = {"kind": kind, "message": message}
    if extra:
        payload.update(extra)
    print(json.dumps(payload), file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which matches the io/config code
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except CliError as exc:
        _emit_error(exc.kind, str(exc))
        return exc.exit_code
    except (FileNotFoundError, PermissionError, IsADirectoryError) as exc:
        _emit_error("io", str(exc))
        return _EXIT_IO
    except NnlstepError as exc:
        for types, kind, code in _ERROR_MAP:
            if isinstance(exc, types):
                extra = {"t": exc.t} if isinstance(exc, BlowupDetected) else None
                _emit_error(kind, str(exc), extra)
                return code
        _emit_error("error", str(exc))
        return _EXIT_REGION
    except ValueError as exc:
        _emit_error("precondition", str(exc))
        return _EXIT_REGION


if __name__ == "__main__":
    sys.exit(main())
