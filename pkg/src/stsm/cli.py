"""Command-line front end.

    stsm estimate  --sigma-z 0.5 [--n-theta 64 --n-phi 8] [--format json|csv]
    stsm ensemble  --prep 0,0,+ --obs 1.5707963,0 [--samples N --seed S]
    stsm ensemble  --bell --obs 0,0 --obs2 1.5707963,0
    stsm interfere --layout double-bs --runs 1000 --seed 1
    stsm sweep     --sigma-z-min -0.9 --sigma-z-max 0.9 --steps 19

Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
Angles are radians.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import ensemble as ens
from . import interferometer as ifm
from . import maxent
from .bloch import BlochDirection
from .errors import NoConvergenceError, OutOfRangeError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _direction(text: str) -> BlochDirection:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'theta,phi', got {text!r}")
    try:
        return BlochDirection(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad direction {text!r}: {exc}") from None


def _signed_direction(text: str):
    parts = text.split(",")
    if len(parts) != 3 or parts[2].strip() not in ("+", "-"):
        raise argparse.ArgumentTypeError(f"expected 'theta,phi,+' or 'theta,phi,-', got {text!r}")
    sign = 1 if parts[2].strip() == "+" else -1
    return _direction(",".join(parts[:2])), sign


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _csv_text(rows, comment: str | None = None) -> str:
    buf = io.StringIO()
    if comment:
        buf.write(f"# {comment}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def cmd_estimate(args) -> str:
    report = maxent.estimate(args.sigma_z, n_theta=args.n_theta, n_phi=args.n_phi)
    if args.format == "json":
        return _json_text(report.to_dict())
    rows = [("row", "col", "re", "im")]
    for i in range(2):
        for j in range(2):
            z = report.rho.entries[i, j]
            rows.append((i, j, _fmt(z.real), _fmt(z.imag)))
    sol = report.solution
    comment = f"sigma_z={_fmt(sol.sigma_z_target)} lambda={_fmt(sol.lam)}"
    return _csv_text(rows, comment)


def cmd_ensemble(args) -> str:
    if args.bell:
        if args.obs2 is None:
            raise UsageError("--bell requires --obs2")
        arrangement = ens.Arrangement.bell(args.obs, args.obs2)
    else:
        if args.obs2 is not None:
            raise UsageError("--obs2 is only meaningful with --bell")
        prep, sign = args.prep
        arrangement = ens.Arrangement.single(prep, args.obs, sign)
    dist = ens.ensemble(arrangement)
    out = {"arrangement": arrangement.to_dict(), "seed": args.seed}
    out.update(dist.to_dict())
    if args.samples is not None:
        result = ens.sample(dist, args.seed, args.samples, workers=args.workers)
        out["n"] = result.n
        out["counts"] = list(result.counts)
    if args.format == "json":
        return _json_text(out)
    header = ["label", "probability"] + (["count"] if "counts" in out else [])
    rows = [header]
    for k, label in enumerate(out["labels"]):
        row = [label, _fmt(out["probabilities"][k])]
        if "counts" in out:
            row.append(out["counts"][k])
        rows.append(row)
    return _csv_text(rows, f"seed={args.seed}")


def cmd_interfere(args) -> str:
    layout = ifm.Layout(args.layout)
    if layout is ifm.Layout.DELAYED_CHOICE:
        if args.placement is None:
            raise UsageError("--layout delayed-choice requires --placement")
        if args.placement == "random":
            summary = ifm.delayed_choice_report(args.seed, args.runs, workers=args.workers)
        else:
            setup = ifm.OpticalSetup(layout, ifm.Placement(args.placement))
            summary = ifm.run_experiment(setup, args.seed, args.runs, workers=args.workers)
    else:
        if args.placement is not None:
            raise UsageError("--placement is only meaningful with --layout delayed-choice")
        summary = ifm.run_experiment(ifm.OpticalSetup(layout), args.seed, args.runs, workers=args.workers)
    out = {"seed": args.seed}
    out.update(summary.to_dict())
    if args.format == "json":
        return _json_text(out)
    rows = [("subset", "n", "D1", "D2", "A", "B")]

    def row(name, n, det, path):
        return (name, n, det["D1"], det["D2"], path["A"], path["B"])

    rows.append(row("all", summary.n, summary.detector_counts, summary.path_counts))
    for name, sub in (summary.by_placement or {}).items():
        rows.append(row(name, sub["n"], sub["detector_counts"], sub["path_counts"]))
    return _csv_text(rows, f"seed={args.seed} setup={summary.setup}")


SWEEP_COLUMNS = ("sigma_z", "lambda", "Z", "entropy", "rho00", "rho11")


def sweep_rows(lo: float, hi: float, steps: int, n_theta: int = 64, n_phi: int = 8) -> list:
    rows = []
    for s in np.linspace(lo, hi, steps):
        rep = maxent.estimate(float(s), n_theta=n_theta, n_phi=n_phi)
        rho = rep.rho.entries
        rows.append(
            {
                "sigma_z": float(s),
                "lambda": rep.solution.lam,
                "Z": rep.solution.Z,
                "entropy": rep.entropy,
                "rho00": float(rho[0, 0].real),
                "rho11": float(rho[1, 1].real),
            }
        )
    return rows


def cmd_sweep(args) -> str:
    lo, hi = args.sigma_z_min, args.sigma_z_max
    limit = maxent.MAX_ABS_SIGMA_Z
    if not (-limit <= lo <= limit and -limit <= hi <= limit):
        raise OutOfRangeError(f"sweep range must lie within |sigma_z| <= {limit!r}")
    if lo >= hi:
        raise UsageError("--sigma-z-min must be smaller than --sigma-z-max")
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    rows = sweep_rows(lo, hi, args.steps, args.n_theta, args.n_phi)
    if args.format == "json":
        for r in rows:
            r["Z"] = r["Z"] if np.isfinite(r["Z"]) else None
        return _json_text(rows)
    table = [SWEEP_COLUMNS] + [[_fmt(r[c]) for c in SWEEP_COLUMNS] for r in rows]
    return _csv_text(table)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stsm", description=__doc__.splitlines()[0])
    parser.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="maximum-relative-entropy estimate from a sigma_z mean")
    p.add_argument("--sigma-z", type=float, required=True)
    p.add_argument("--n-theta", type=_positive_int, default=64)
    p.add_argument("--n-phi", type=_positive_int, default=8)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("ensemble", help="configuration distribution of an arrangement")
    p.add_argument("--prep", type=_signed_direction, default=(BlochDirection(0.0, 0.0), 1),
                   help="prepared eigenstate as theta,phi,sign (default 0,0,+)")
    p.add_argument("--obs", type=_direction, required=True)
    p.add_argument("--obs2", type=_direction)
    p.add_argument("--bell", action="store_true")
    p.add_argument("--samples", type=_positive_int)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("interfere", help="single-photon beamsplitter runs")
    p.add_argument("--layout", choices=[x.value for x in ifm.Layout], required=True)
    p.add_argument("--placement", choices=[x.value for x in ifm.Placement] + ["random"])
    p.add_argument("--runs", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_interfere)

    p = sub.add_parser("sweep", help="estimator table over a range of sigma_z")
    p.add_argument("--sigma-z-min", type=float, required=True)
    p.add_argument("--sigma-z-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--n-theta", type=_positive_int, default=64)
    p.add_argument("--n-phi", type=_positive_int, default=8)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        text = args.func(args)
    except (UsageError, OutOfRangeError, ValueError) as exc:
        print(f"stsm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoConvergenceError as exc:
        print(f"stsm {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
