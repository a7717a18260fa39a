"""Command-line interface: moment runs, constants reports, verification
suites, and region diagnostics.

Data outputs (stdout or --out) are deterministic for fixed flags, with
exact rationals serialized as decimal strings; the run manifest is
written alongside (sidecar file with --out, stderr line otherwise) so
the data bytes stay identical across thread counts.

Exit codes: 0 success, 1 assertion/verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass

from fordspheres import __version__
from fordspheres import constants as cn
from fordspheres import moments as mo
from fordspheres import verification as vf
from fordspheres.ford import consecutive_pairs
from fordspheres.gaussint import GaussianInt, canonicalize
from fordspheres.lattice import OmegaRegion, count_omega_coprime, count_omega_lattice

# exact values at large S exceed the default int->str conversion guard
sys.set_int_max_str_digits(100_000_000) if hasattr(sys, "set_int_max_str_digits") else None


@dataclass
class RunManifest:
    command: str
    flags: dict
    config_hash: str
    version: str
    wall_time_s: float
    threads: int


def _manifest(args, command: str, t0: float) -> RunManifest:
    flags = {
        k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None
    }
    blob = json.dumps(flags, sort_keys=True, default=str)
    return RunManifest(
        command=command,
        flags=flags,
        config_hash=hashlib.sha256(blob.encode()).hexdigest()[:16],
        version=__version__,
        wall_time_s=round(time.perf_counter() - t0, 3),
        threads=mo._resolve_threads(getattr(args, "threads", None)),
    )


def _emit(args, text: str, manifest: RunManifest) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        with open(out + ".manifest.json", "w") as fh:
            json.dump(asdict(manifest), fh, sort_keys=True, indent=1)
            fh.write("\n")
    else:
        sys.stdout.write(text)
        sys.stderr.write(json.dumps(asdict(manifest), sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------


def _parse_grid(args) -> list[int]:
    if args.grid:
        try:
            grid = sorted({int(x) for x in args.grid.split(",")})
        except ValueError:
            raise SystemExit(2)
        if not grid or grid[0] < 1:
            raise SystemExit(2)
        return grid
    if args.smax:
        if args.smax < 1:
            raise SystemExit(2)
        grid = []
        s = 1
        while s <= args.smax:
            grid.append(s)
            s *= 2
        if grid[-1] != args.smax:
            grid.append(args.smax)
        return grid
    raise SystemExit(2)


def cmd_moments(args) -> int:
    t0 = time.perf_counter()
    grid = _parse_grid(args)
    rows = []
    for S in grid:
        table = mo.moment_batch([args.k], S, threads=args.threads)[args.k]
        v = table["moment"]
        rows.append(
            {
                "k": args.k,
                "S": S,
                "value_num": str(v.numerator),
                "value_den": str(v.denominator),
                "value_float": float(v),
                "sigma1_float": float(table["sigma1"]),
                "sigma2_float": float(table["sigma2"]),
            }
        )
    fit = None
    if len(rows) >= 3:
        coeff, resid = mo.fit_leading(
            [(r["S"], r["value_float"]) for r in rows], 2.0 if args.k == 1 else 1.0
        )
        fit = {
            "exponent": 2.0 if args.k == 1 else 1.0,
            "coefficient": coeff,
            "residual_exponent": resid,
        }
    if args.format == "json":
        text = json.dumps({"k": args.k, "rows": rows, "fit": fit}, sort_keys=True, indent=1)
        text += "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(
            buf,
            fieldnames=[
                "k",
                "S",
                "value_num",
                "value_den",
                "value_float",
                "sigma1_float",
                "sigma2_float",
            ],
            lineterminator="\r\n",
        )
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    if args.emit_plot_data:
        with open(args.emit_plot_data, "w") as fh:
            for r in rows:
                fh.write(f"{r['S']}\t{r['value_float']!r}\n")
    _emit(args, text, _manifest(args, "moments", t0))
    return 0


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


def cmd_constants(args) -> int:
    t0 = time.perf_counter()
    try:
        config = cn.ConstantsConfig(kappa=args.kappa, r_max=args.rmax, tol=args.tol)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    try:
        table = cn.constants_report(args.kmax, config)
    except ArithmeticError as exc:
        sys.stderr.write(f"verification failure: {exc}\n")
        return 1
    payload = {
        "config": {
            "kappa": config.kappa,
            "r_max": config.r_max,
            "tol": config.tol,
            "k_max": args.kmax,
        },
        "constants": {
            "zeta_i_2": list(table.zeta_i_2),
            "z1": list(table.z1),
            "z2": list(table.z2),
            "C": list(table.C),
            "m1_coeff": list(table.m1_coeff),
            "k": {
                str(k): {
                    "z_prime": list(v["z_prime"]),
                    "z_double_prime": list(v["z_double_prime"]),
                    "xi": list(v["xi"]),
                }
                for k, v in table.per_k.items()
            },
        },
    }
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(["constant", "k", "value", "error"])
        for name in ("zeta_i_2", "z1", "z2", "C", "m1_coeff"):
            v, e = payload["constants"][name]
            writer.writerow([name, "", repr(v), repr(e)])
        for k in sorted(table.per_k):
            for name in ("z_prime", "z_double_prime", "xi"):
                v, e = payload["constants"]["k"][str(k)][name]
                writer.writerow([name, k, repr(v), repr(e)])
        text = buf.getvalue()
    _emit(args, text, _manifest(args, "constants", t0))
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    ctx = vf.VerificationContext(threads=args.threads)
    results = vf.run_suite(args.suite, ctx)
    hard_pass = all(r.passed for r in results if r.hard)
    payload = {
        "suite": args.suite,
        "all_hard_passed": hard_pass,
        "checks": [
            {
                "name": r.name,
                "passed": r.passed,
                "hard": r.hard,
                "observed": r.observed,
                "threshold": r.threshold,
                "detail": r.detail,
            }
            for r in results
        ],
    }
    text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    _emit(args, text, _manifest(args, "verify", t0))
    return 0 if hard_pass else 1


# ---------------------------------------------------------------------------
# region
# ---------------------------------------------------------------------------


def cmd_region(args) -> int:
    t0 = time.perf_counter()
    s = GaussianInt(args.s_re, args.s_im)
    if not s or s.norm() > args.S * args.S or args.S < 1:
        sys.stderr.write("error: region requires 0 < |s| <= S\n")
        return 2
    region = OmegaRegion(canonicalize(s), args.S)
    res = count_omega_lattice(region)
    payload = {
        "S": args.S,
        "s": [region.s.re, region.s.im],
        "count": res.count,
        "coprime_count": count_omega_coprime(region),
        "area": res.area,
        "discrepancy": res.discrepancy,
    }
    _emit(args, json.dumps(payload, sort_keys=True, indent=1) + "\n", _manifest(args, "region", t0))
    return 0


# ---------------------------------------------------------------------------
# pairs
# ---------------------------------------------------------------------------


def cmd_pairs(args) -> int:
    t0 = time.perf_counter()
    if args.S < 1:
        sys.stderr.write("error: S must be >= 1\n")
        return 2
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["S", "s_re", "s_im", "sprime_re", "sprime_im", "dist_num", "dist_den"])
    for rec in consecutive_pairs(args.S):
        d = rec.distance
        writer.writerow(
            [args.S, rec.s.re, rec.s.im, rec.s_prime.re, rec.s_prime.im, d.numerator, d.denominator]
        )
    _emit(args, buf.getvalue(), _manifest(args, "pairs", t0))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fordspheres",
        description="Moments of distances between consecutive Ford spheres "
        "over the Gaussian integers, with independently computed asymptotic constants.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="exact moment values over a grid of S")
    p.add_argument("--k", type=int, required=True, help="moment order, k >= 1")
    p.add_argument("--smax", type=int, help="largest S; grid doubles up to it")
    p.add_argument("--grid", type=str, help="explicit comma-separated S values")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=str, help="write output to this file")
    p.add_argument("--threads", type=int, help="worker cap (default: FORD_MOMENTS_THREADS or all cores)")
    p.add_argument("--emit-plot-data", type=str, help="write S/value TSV for external plotting")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("constants", help="asymptotic constants with error estimates")
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--rmax", type=float, default=1000.0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--kappa", type=float, default=cn.KAPPA_DEFAULT)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=str)
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "--suite",
        choices=("identities", "oracle", "lemmas", "asymptotics", "all"),
        required=True,
    )
    p.add_argument("--out", type=str)
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("region", help="diagnostics for one crescent region")
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--s-re", type=int, required=True)
    p.add_argument("--s-im", type=int, required=True)
    p.add_argument("--out", type=str)
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("pairs", help="stream consecutive denominator records as CSV")
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--out", type=str)
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_pairs)
    return parser


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(100_000_000)
    args = build_parser().parse_args(argv)
    if getattr(args, "k", None) is not None and args.k < 1:
        sys.stderr.write("error: --k must be >= 1\n")
        return 2
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ArithmeticError as exc:
        sys.stderr.write(f"verification failure: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
