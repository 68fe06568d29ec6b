"""Delayed-choice runs: statistics split by the placement chosen in flight."""

import argparse

from stsm.interferometer import Layout, OpticalSetup, delayed_choice_report, run_experiment


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--runs", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    for layout in (Layout.DIRECT, Layout.SINGLE_BS, Layout.DOUBLE_BS):
        s = run_experiment(OpticalSetup(layout), args.seed, args.runs, args.workers)
        print(f"{layout.value:>16}: {s.detector_counts}  paths {s.path_counts}")

    rep = delayed_choice_report(args.seed, args.runs, args.workers)
    for name, sub in rep.by_placement.items():
        print(f"{name:>16}: n={sub['n']} {sub['detector_counts']}  paths {sub['path_counts']}")


if __name__ == "__main__":
    main()
