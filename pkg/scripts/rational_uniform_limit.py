#!/usr/bin/env python3
"""Watch discrete laws on the rationals flatten toward equiprobability.

Prints the diagnostics table for a k-indexed family and verifies the
interval sandwich |P(a < Q <= b) - (b - a)| <= (1 + (b - a)) E[1/M] row by
row, together with the uniform distance of the CDF from the identity.
"""

import argparse

import numpy as np

from bertrand_lab import rationals


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", choices=["geometric", "poisson"], default="geometric")
    ap.add_argument("--ks", default="10,100,1000,10000")
    ap.add_argument("--probe", default="0,0.5")
    ap.add_argument("--grid", type=int, default=1000, help="points for the CDF sup check")
    args = ap.parse_args()

    family = (
        rationals.GeometricFamily() if args.family == "geometric" else rationals.PoissonFamily()
    )
    ks = [int(part) for part in args.ks.split(",")]
    a, b = (float(part) for part in args.probe.split(","))

    rows = rationals.convergence_table(family, ks, (a, b))
    xs = np.arange(args.grid) / args.grid

    print(f"{args.family} family, probe interval ({a:g}, {b:g}]")
    print(
        f"{'k':>7} {'sup pmf':>12} {'sup*ln k':>12} {'E[1/M]':>12} "
        f"{'|P - len|':>12} {'bound':>12} {'sup|F-x|':>12}"
    )
    for row in rows:
        law = family.law(row.k)
        sup_f = float(np.max(np.abs(rationals.cdf_grid(xs, law) - xs)))
        bound = (1.0 + (b - a)) * row.mean_reciprocal
        ok = row.interval_error <= bound and sup_f <= row.mean_reciprocal
        print(
            f"{row.k:>7} {row.pmf_sup:>12.5e} {row.pmf_sup_log_k:>12.5e} "
            f"{row.mean_reciprocal:>12.5e} {row.interval_error:>12.5e} "
            f"{bound:>12.5e} {sup_f:>12.5e} {'ok' if ok else 'VIOLATED'}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
