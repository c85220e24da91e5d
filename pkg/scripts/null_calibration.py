"""False-positive rate of the slope test on i.i.d. series, by series length.

    python3 scripts/null_calibration.py --series 20000 --alpha 0.01
"""
import argparse

import numpy as np

from natorient.stats import fit_trend


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--series", type=int, default=20_000, help="series per length band")
    ap.add_argument("--alpha", type=float, default=0.01)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'lengths':>8} {'up %':>6} {'down %':>7} {'total %':>8}")
    for lo, hi in ((3, 9), (10, 16), (17, 23)):
        up = down = 0
        for _ in range(args.series):
            n = int(rng.integers(lo, hi + 1))
            r = fit_trend(list(zip(range(n), rng.normal(size=n))), args.alpha)
            up += r.verdict.value == "sig_increase"
            down += r.verdict.value == "sig_decline"
        k = args.series / 100
        print(f"{lo:>3}-{hi:<4} {up / k:>6.2f} {down / k:>7.2f} {(up + down) / k:>8.2f}")


if __name__ == "__main__":
    main()
