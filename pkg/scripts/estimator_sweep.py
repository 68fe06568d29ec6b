"""Tabulate lambda, Z, entropy and rho against sigma_z; optionally plot.

    python scripts/estimator_sweep.py --steps 39 --out sweep.csv [--plot sweep.png]
"""

import argparse
import csv

from stsm.cli import SWEEP_COLUMNS, sweep_rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lo", type=float, default=-0.95)
    ap.add_argument("--hi", type=float, default=0.95)
    ap.add_argument("--steps", type=int, default=39)
    ap.add_argument("--n-theta", type=int, default=64)
    ap.add_argument("--out", default="sweep.csv")
    ap.add_argument("--plot", help="PNG path; needs matplotlib")
    args = ap.parse_args()

    rows = sweep_rows(args.lo, args.hi, args.steps, n_theta=args.n_theta)
    with open(args.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS)
        w.writeheader()
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        s = [r["sigma_z"] for r in rows]
        fig, axes = plt.subplots(1, 3, figsize=(12, 3.5))
        axes[0].plot(s, [r["lambda"] for r in rows])
        axes[0].set_ylabel("lambda")
        axes[1].plot(s, [r["entropy"] for r in rows])
        axes[1].set_ylabel("relative entropy (nats)")
        axes[2].plot(s, [r["rho00"] for r in rows], label="rho00")
        axes[2].plot(s, [r["rho11"] for r in rows], label="rho11")
        axes[2].legend()
        for ax in axes:
            ax.set_xlabel("sigma_z")
        fig.tight_layout()
        fig.savefig(args.plot, dpi=120)
        print(f"saved {args.plot}")


if __name__ == "__main__":
    main()
