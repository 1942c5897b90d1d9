"""Command-line front-end.

Subcommands:

* ``gen``     — generate a basis of the inner polynomials, write JSON.
* ``verify``  — assemble F from the closed-form profiles and certify
                left/right Dirac residuals plus system residuals on a grid.
* ``series``  — run the power-series solver and compare partial sums
                against the closed form.
* ``bessel``  — evaluate J or Y at a point (17 significant digits).

Exit codes: 0 success / verification passed, 1 residual failure,
2 invalid input or configuration.  Reports are byte-deterministic for
identical configurations and are written atomically (temp file plus
rename).  The environment variable AXIAL_THREADS caps verification
parallelism.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from ._jsonfmt import format_csv, format_float, format_json, write_atomic
from .axial import (
    ClosedFormParams,
    a1_closed,
    a2_closed,
    a3_closed,
    verify_grid,
)
from .bessel import Order, z_family
from .errors import DomainError, ParityError, TruncationError, UnsupportedOrderError
from .polynomials import MonogenicBasis, generate_pkl
from .series import (
    RadialSeries,
    bessel_seed_series,
    evaluate_table,
    lambda_coeff,
    seed_scale,
    series_solve,
)

__all__ = ["main", "build_parser"]


class ConfigError(Exception):
    """Invalid flag combination or value; maps to exit code 2."""


def _parse_range(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"range must be 'lo,hi', got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ConfigError(f"bad range {text!r}: {exc}") from exc
    if hi < lo:
        raise ConfigError(f"range {text!r} is decreasing")
    return lo, hi


def _apply_json_override(args: argparse.Namespace):
    """Merge a JSON config file over the parsed flags (sweep scripting)."""
    if not getattr(args, "json", None):
        return
    try:
        with open(args.json) as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {args.json!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config override must be a JSON object")
    for key, value in data.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr) or attr in ("json", "func"):
            raise ConfigError(f"unknown config key {key!r}")
        setattr(args, attr, value)


def _add_mkl(sub, l_required=True):
    sub.add_argument("--m", type=int, required=True, help="algebra dimension")
    sub.add_argument("--k", type=int, required=True, help="polynomial degree")
    sub.add_argument("--l", type=int, required=l_required, default=None,
                     help="grade of the inner polynomial values")


def _add_grid(sub, x0_default, r_default, n_default):
    sub.add_argument("--x0-range", default=x0_default, help="x0 interval 'lo,hi'")
    sub.add_argument("--r-range", default=r_default, help="r interval 'lo,hi' (lo > 0)")
    sub.add_argument("--nx", type=int, default=n_default, help="grid count in x0")
    sub.add_argument("--nr", type=int, default=n_default, help="grid count in r")


def _add_out(sub):
    sub.add_argument("--out", default=None, help="output file path")
    sub.add_argument("--format", choices=("json", "csv"), default="json",
                     help="output format (json is canonical)")
    sub.add_argument("--json", dest="json", default=None, metavar="CFG",
                     help="JSON file whose keys override the flags")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="axialmono",
        description="Construct and verify two-sided axial monogenic functions.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="generate an inner-polynomial basis")
    _add_mkl(gen)
    _add_out(gen)
    gen.set_defaults(func=cmd_gen)

    ver = subs.add_parser("verify", help="residual sweep of the assembled F")
    _add_mkl(ver)
    ver.add_argument("--c1", type=float, default=1.0, help="first-kind weight")
    ver.add_argument("--c2", type=float, default=0.0, help="second-kind weight")
    _add_grid(ver, "0,1", "0.5,5", 8)
    ver.add_argument("--h", type=float, default=1e-3, help="FD base step")
    ver.add_argument("--threshold", type=float, default=1e-6,
                     help="relative Dirac residual bound")
    ver.add_argument("--system-threshold", type=float, default=1e-6,
                     help="absolute system residual bound")
    ver.add_argument("--basis", default=None,
                     help="basis JSON from 'gen' (default: generate inline)")
    ver.add_argument("--scale-a1", type=float, default=1.0,
                     help="fault injection: scale profile a1")
    ver.add_argument("--scale-a2", type=float, default=1.0,
                     help="fault injection: scale profile a2")
    ver.add_argument("--scale-a3", type=float, default=1.0,
                     help="fault injection: scale profile a3")
    _add_out(ver)
    ver.set_defaults(func=cmd_verify)

    ser = subs.add_parser("series", help="power-series solver vs closed form")
    _add_mkl(ser)
    ser.add_argument("--terms", type=int, default=12, help="series steps N")
    ser.add_argument("--trunc", type=int, default=40, help="radial truncation T")
    ser.add_argument("--seed", choices=("bessel", "zero"), default="bessel",
                     help="seed profile for the recurrence")
    _add_grid(ser, "0,0.5", "0.5,2", 6)
    ser.add_argument("--threshold", type=float, default=1e-10,
                     help="absolute difference bound")
    _add_out(ser)
    ser.set_defaults(func=cmd_series)

    bes = subs.add_parser("bessel", help="evaluate a Bessel function")
    bes.add_argument("--kind", choices=("J", "Y"), required=True)
    bes.add_argument("--order", required=True,
                     help="order as 'n', 'p/2' or decimal ending in .5")
    bes.add_argument("--at", type=float, required=True, help="argument t")
    bes.set_defaults(func=cmd_bessel)

    return parser


def _write_or_print(args, report_dict, csv_text=None):
    if args.format == "csv":
        if csv_text is None:
            raise ConfigError("csv output is not available for this command")
        text = csv_text
    else:
        text = format_json(report_dict)
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    if args.m < 2:
        raise ConfigError(f"m must be >= 2, got {args.m}")
    if args.k < 0 or args.l < 0:
        raise ConfigError("k and l must be >= 0")
    if args.format == "csv":
        raise ConfigError("gen writes JSON only")
    basis = generate_pkl(args.m, args.k, args.l)
    print(f"dimension {basis.dimension}")
    if args.out:
        write_atomic(args.out, format_json(basis.to_json_dict()))
    return 0


def _load_basis(args) -> MonogenicBasis:
    if args.basis:
        try:
            with open(args.basis) as handle:
                data = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read basis {args.basis!r}: {exc}") from exc
        basis = MonogenicBasis.from_json_dict(data)
        if (basis.m, basis.k, basis.l) != (args.m, args.k, args.l):
            raise ConfigError(
                f"basis file is for (m,k,l)=({basis.m},{basis.k},{basis.l}), "
                f"flags say ({args.m},{args.k},{args.l})")
        return basis
    return generate_pkl(args.m, args.k, args.l)


def cmd_verify(args) -> int:
    try:
        params = ClosedFormParams(args.m, args.k, args.l,
                                  c1=args.c1, c2=args.c2)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    x0_range = _parse_range(args.x0_range)
    r_range = _parse_range(args.r_range)
    basis = _load_basis(args)
    if basis.dimension == 0:
        print("warning: empty basis, nothing to verify", file=sys.stderr)
    try:
        report = verify_grid(
            params, basis.elements, x0_range, r_range, args.nx, args.nr,
            h=args.h, threshold=args.threshold,
            system_threshold=args.system_threshold,
            scale=(args.scale_a1, args.scale_a2, args.scale_a3),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _write_or_print(args, report.to_json_dict(), report.to_csv())
    return 0 if report.passed else 1


def cmd_series(args) -> int:
    if args.terms < 1:
        raise ConfigError(f"--terms must be >= 1, got {args.terms}")
    if args.trunc < 2 * args.terms + 2:
        raise ConfigError(
            f"--trunc {args.trunc} too small for --terms {args.terms} "
            f"(need >= {2 * args.terms + 2})")
    m, k, l = args.m, args.k, args.l
    if m < 2 or k < 0 or not 0 <= l <= m:
        raise ConfigError(f"invalid (m,k,l)=({m},{k},{l})")
    x0_range = _parse_range(args.x0_range)
    r_range = _parse_range(args.r_range)
    if r_range[0] <= 0:
        raise ConfigError("r range must stay in r > 0")
    if args.nx < 2 or args.nr < 2:
        raise ConfigError("grid counts must be >= 2")

    n, trunc = args.terms, args.trunc
    if args.seed == "zero":
        zero = RadialSeries.zero(trunc=trunc)
        seeds = (zero, zero, zero, zero)
        norm = 0.0
    else:
        a20 = bessel_seed_series(m, k, trunc)
        a30 = a20.derivative().div_r().scale(-1)
        a10 = a20.derivative().mul_r() + a20.scale(lambda_coeff(m, k, l))
        seeds = (a10, a20, a30, a20)
        norm = seed_scale(m, k)
    table = series_solve(seeds[0], seeds[1], seeds[2], seeds[3], n, m, k, l)

    ref = ClosedFormParams(m, k, l, c1=1.0, c2=0.0)
    import numpy as np

    x0s = np.linspace(x0_range[0], x0_range[1], args.nx)
    rs = np.linspace(r_range[0], r_range[1], args.nr)
    points = []
    max_diff = 0.0
    for x0 in x0s:
        for r in rs:
            f1, f2, f3 = evaluate_table(table, n, float(x0), float(r))
            e = math.exp(float(x0)) * norm
            d1 = abs(f1 - e * a1_closed(ref, float(r)))
            d2 = abs(f2 - e * a2_closed(ref, float(r)))
            d3 = abs(f3 - e * a3_closed(ref, float(r)))
            max_diff = max(max_diff, d1, d2, d3)
            points.append({"x0": float(x0), "r": float(r),
                           "diff1": d1, "diff2": d2, "diff3": d3})

    report = {
        "params": {"m": m, "k": k, "l": l, "seed": args.seed,
                   "terms": n, "trunc": trunc},
        "grid": {"x0_range": list(x0_range), "r_range": list(r_range),
                 "nx": args.nx, "nr": args.nr},
        "threshold": args.threshold,
        "max_diff": max_diff,
        "passed": max_diff <= args.threshold,
        "points": points,
    }
    header = ["x0", "r", "diff1", "diff2", "diff3"]
    rows = [[pt["x0"], pt["r"], pt["diff1"], pt["diff2"], pt["diff3"]]
            for pt in points]
    _write_or_print(args, report, format_csv(header, rows))
    return 0 if report["passed"] else 1


def cmd_bessel(args) -> int:
    try:
        order = Order.parse(args.order)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    value = z_family(args.kind, order, args.at)
    print(format_float(value))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_json_override(args)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, UnsupportedOrderError, TruncationError,
            ParityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
