"""Configuration tables for Bell-pair arrangements, exact and sampled."""

import argparse
import math

from stsm.bloch import BlochDirection
from stsm.ensemble import Arrangement, ensemble_bell, sample


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    angles = [0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4]
    a = BlochDirection(0.0, 0.0)
    for t in angles:
        b = BlochDirection(t, 0.0)
        dist = ensemble_bell(Arrangement.bell(a, b))
        res = sample(dist, args.seed, args.samples)
        exact = " ".join(f"{p:.4f}" for p in dist.probabilities)
        freq = " ".join(f"{f:.4f}" for f in res.frequencies())
        print(f"theta_b={t:.4f}  exact [{exact}]  sampled [{freq}]")


if __name__ == "__main__":
    main()
