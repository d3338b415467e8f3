"""Command-line front end: sweeps, precession reports and coordinate maps.

Subcommands
-----------
omega      sweep the vorticity scalar over a radius grid, comparing the
           finite-difference pipeline against the closed forms
precess    per-revolution precession report for one congruence and radius
compare    three-way gal / tt / mtt report at identical parameters
transform  apply one coordinate map (or its inverse) to a single event

Shared flags: --format {csv|json} (default csv), --out PATH (default
stdout), --c VALUE (default 1), --self-check.

CSV output is deterministic: fixed column order, floats printed with 17
significant digits, LF line endings, no timestamps. Rows at or beyond the
gal light cylinder are emitted with status "light_cylinder" and NaN /
null numerics rather than dropped. JSON output is an object
{"params": ..., "rows": [...], "version": ...} whose floats round-trip
exactly (non-finite values become null).

Exit codes: 0 success, 2 self-check failure (some rel_err above 1e-6),
3 domain error (one-line diagnostic, no traceback), 64 usage error.

The environment variable ROTFRAMES_SELF_CHECK_PERTURB, when set to a
float x, multiplies every numerically computed vorticity by (1 + x).
It exists to fault-inject the --self-check gate in tests.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .congruences import (
    KINDS,
    CongruenceSpec,
    fixed_point_speed,
    gal_inverse,
    gal_map,
    proper_time_rate,
    tt_inverse,
    tt_map,
)
from .errors import DegenerateError, DomainError
from .kinematics import omega_closed_form, vorticity_scalar
from .tensors import Event
from .transport import measure_precession_angle, precession_per_revolution

CSV_HEADER = (
    "kind,rho,lambda,omega_numeric,omega_closed,rel_err,"
    "v,dtau_dt,delta_phi_prime,thomas_net,status"
)
ROW_FIELDS = CSV_HEADER.split(",")

SELF_CHECK_TOL = 1e-6
PERTURB_ENV = "ROTFRAMES_SELF_CHECK_PERTURB"

EXIT_OK = 0
EXIT_SELF_CHECK = 2
EXIT_DOMAIN = 3
EXIT_USAGE = 64

_NAN = float("nan")


class UsageError(Exception):
    """Invalid flag combination detected after parsing."""


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits with the usage code on bad flags."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class ReportRow:
    """One line of the unified report table (see CSV_HEADER)."""

    kind: str
    rho: float
    lam: float
    omega_numeric: float
    omega_closed: float
    rel_err: float
    v: float
    dtau_dt: float
    delta_phi_prime: float
    thomas_net: float
    status: str = "ok"

    def values(self) -> list:
        return [
            self.kind,
            self.rho,
            self.lam,
            self.omega_numeric,
            self.omega_closed,
            self.rel_err,
            self.v,
            self.dtau_dt,
            self.delta_phi_prime,
            self.thomas_net,
            self.status,
        ]


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def _jsonable(value):
    if isinstance(value, str) or value is None:
        return value
    v = float(value)
    return v if math.isfinite(v) else None


def _perturbation() -> float:
    raw = os.environ.get(PERTURB_ENV, "")
    return float(raw) if raw.strip() else 0.0


def _marked_row(kind: str, rho: float, lam: float, status: str) -> ReportRow:
    return ReportRow(kind, rho, lam, _NAN, _NAN, _NAN, _NAN, _NAN, _NAN, _NAN, status)


def compute_row(kind: str, rho: float, omega: float, c: float) -> ReportRow:
    """Evaluate one grid point; domain failures become marked rows."""
    spec = CongruenceSpec(kind, omega, c)
    lam = rho * omega / c
    if kind == "gal" and rho * omega >= c:
        return _marked_row(kind, rho, lam, "light_cylinder")
    try:
        closed = omega_closed_form(rho, spec)
        numeric = vorticity_scalar(spec, Event(0.0, rho, 0.0)) * (1.0 + _perturbation())
        report = precession_per_revolution(spec, rho)
        return ReportRow(
            kind=kind,
            rho=rho,
            lam=lam,
            omega_numeric=numeric,
            omega_closed=closed,
            rel_err=abs(numeric - closed) / closed,
            v=fixed_point_speed(rho, spec),
            dtau_dt=proper_time_rate(rho, spec),
            delta_phi_prime=report.delta_phi,
            thomas_net=report.net_angle,
            status="ok",
        )
    except DomainError:
        return _marked_row(kind, rho, lam, "domain_error")


def _render_csv(header: str, rows: list[list]) -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _render_json(params: dict, field_names: list[str], rows: list[list]) -> str:
    payload = {
        "params": params,
        "rows": [
            {name: _jsonable(v) for name, v in zip(field_names, row)} for row in rows
        ],
        "version": __version__,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _gate(args, rows: list[ReportRow]) -> int:
    if not args.self_check:
        return EXIT_OK
    for row in rows:
        if math.isfinite(row.rel_err) and row.rel_err > SELF_CHECK_TOL:
            print(
                f"self-check failed: rel_err {row.rel_err:.3e} at "
                f"kind={row.kind} rho={row.rho}",
                file=sys.stderr,
            )
            return EXIT_SELF_CHECK
    return EXIT_OK


def _emit_report(args, params: dict, rows: list[ReportRow], header: str = CSV_HEADER,
                 field_names: list[str] | None = None) -> int:
    names = field_names or ROW_FIELDS
    values = [r.values() for r in rows]
    if args.format == "json":
        _emit(args, _render_json(params, names, values))
    else:
        _emit(args, _render_csv(header, values))
    return _gate(args, rows)


def _parse_kinds(raw: str) -> list[str]:
    kinds = [k.strip() for k in raw.split(",") if k.strip()]
    if not kinds:
        raise UsageError("at least one congruence kind is required")
    for k in kinds:
        if k not in KINDS:
            raise UsageError(f"unknown kind {k!r}; choose from {','.join(KINDS)}")
    return kinds


def cmd_omega(args) -> int:
    kinds = _parse_kinds(args.kind)
    if not args.rho_min < args.rho_max:
        raise UsageError("--rho-min must be smaller than --rho-max")
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    grid = np.linspace(args.rho_min, args.rho_max, args.steps)
    rows = [
        compute_row(kind, float(rho), args.omega, args.c)
        for kind in kinds
        for rho in grid
    ]
    params = {
        "command": "omega",
        "kind": kinds,
        "rho_min": args.rho_min,
        "rho_max": args.rho_max,
        "steps": args.steps,
        "omega": args.omega,
        "c": args.c,
        "format": args.format,
    }
    return _emit_report(args, params, rows)


def cmd_compare(args) -> int:
    rows = [compute_row(kind, args.rho, args.omega, args.c) for kind in KINDS]
    params = {
        "command": "compare",
        "rho": args.rho,
        "omega": args.omega,
        "c": args.c,
        "format": args.format,
    }
    return _emit_report(args, params, rows)


def cmd_precess(args) -> int:
    row = compute_row(args.kind, args.rho, args.omega, args.c)
    if row.status == "light_cylinder":
        # single-point command: surface the horizon as a domain error
        raise DomainError(
            f"light cylinder reached: rho * omega = {args.rho * args.omega} "
            f">= c = {args.c}"
        )
    if row.status != "ok":
        raise DomainError(
            f"point not numerically evaluable: rho = {args.rho}, "
            f"omega = {args.omega}, c = {args.c}"
        )
    params = {
        "command": "precess",
        "kind": args.kind,
        "rho": args.rho,
        "omega": args.omega,
        "c": args.c,
        "format": args.format,
        "fw_check": args.fw_check,
    }
    if args.fw_check is None:
        return _emit_report(args, params, [row])
    if args.fw_check < 16:
        raise UsageError("--fw-check needs at least 16 steps")
    spec = CongruenceSpec(args.kind, args.omega, args.c)
    fw_angle = measure_precession_angle(spec, args.rho, args.fw_check)
    header = CSV_HEADER + ",fw_measured,fw_deviation"
    names = ROW_FIELDS + ["fw_measured", "fw_deviation"]
    values = row.values() + [fw_angle, fw_angle - row.delta_phi_prime]
    if args.format == "json":
        _emit(args, _render_json(params, names, [values]))
    else:
        _emit(args, _render_csv(header, [values]))
    return _gate(args, [row])


def cmd_transform(args) -> int:
    spec = CongruenceSpec(args.map, args.omega, args.c)
    event = Event(args.t, args.rho, args.phi, args.z)
    maps = {
        ("gal", "fwd"): gal_map,
        ("gal", "inv"): gal_inverse,
        ("tt", "fwd"): tt_map,
        ("tt", "inv"): tt_inverse,
    }
    out = maps[(args.map, args.direction)](event, spec)
    params = {
        "command": "transform",
        "map": args.map,
        "direction": args.direction,
        "omega": args.omega,
        "c": args.c,
        "format": args.format,
    }
    names = ["t", "rho", "phi", "z"]
    values = [[out.t, out.rho, out.phi, out.z]]
    if args.format == "json":
        _emit(args, _render_json(params, names, values))
    else:
        _emit(args, _render_csv(",".join(names), values))
    return EXIT_OK


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _non_negative(text: str) -> float:
    value = float(text)
    if not value >= 0.0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="write output to this path")
    common.add_argument("--c", type=_positive, default=1.0, help="light speed")
    common.add_argument(
        "--self-check",
        action="store_true",
        help=f"exit {EXIT_SELF_CHECK} if any rel_err exceeds {SELF_CHECK_TOL:g}",
    )

    parser = _Parser(
        prog="rotframes",
        description="Rotating-congruence vorticity and gyroscope precession.",
        epilog="exit codes: 0 ok, 2 self-check failure, 3 domain error, 64 usage",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_omega = sub.add_parser(
        "omega", parents=[common], help="vorticity sweep over a radius grid"
    )
    p_omega.add_argument("--kind", default="gal,tt,mtt",
                         help="comma-separated congruences, e.g. gal,tt")
    p_omega.add_argument("--rho-min", type=_positive, required=True)
    p_omega.add_argument("--rho-max", type=_positive, required=True)
    p_omega.add_argument("--steps", type=int, required=True)
    p_omega.add_argument("--omega", type=_positive, required=True)
    p_omega.set_defaults(func=cmd_omega)

    p_precess = sub.add_parser(
        "precess", parents=[common], help="per-revolution precession report"
    )
    p_precess.add_argument("--kind", choices=KINDS, required=True)
    p_precess.add_argument("--rho", type=_positive, required=True)
    p_precess.add_argument("--omega", type=_positive, required=True)
    p_precess.add_argument(
        "--fw-check",
        type=int,
        default=None,
        metavar="STEPS",
        help="also run the transport integrator with this many RK4 steps",
    )
    p_precess.set_defaults(func=cmd_precess)

    p_compare = sub.add_parser(
        "compare", parents=[common], help="three-way congruence comparison"
    )
    p_compare.add_argument("--rho", type=_positive, required=True)
    p_compare.add_argument("--omega", type=_positive, required=True)
    p_compare.set_defaults(func=cmd_compare)

    p_transform = sub.add_parser(
        "transform", parents=[common], help="apply one coordinate map to an event"
    )
    p_transform.add_argument("--map", choices=("gal", "tt"), required=True)
    p_transform.add_argument("--direction", choices=("fwd", "inv"), default="fwd")
    p_transform.add_argument("--t", type=float, default=0.0)
    p_transform.add_argument("--rho", type=_positive, required=True)
    p_transform.add_argument("--phi", type=float, default=0.0)
    p_transform.add_argument("--z", type=float, default=0.0)
    p_transform.add_argument("--omega", type=_non_negative, required=True)
    p_transform.set_defaults(func=cmd_transform)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rotframes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, DegenerateError) as exc:
        print(f"rotframes: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
