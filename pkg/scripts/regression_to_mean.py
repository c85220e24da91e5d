"""Simulate journals whose INO-P class follows the bordered walk and compare with the exact model.

    python3 scripts/regression_to_mean.py --journals 10000 --steps 17 --out results/walk
"""
import argparse
from pathlib import Path

from natorient import report
from natorient.corpus import CohortSpec, select_cohort
from natorient.nullmodel import WalkConfig, compare_distributions, empirical_net_decline, walk_distribution
from natorient.synthgen import generate, walk_scenario


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--journals", type=int, default=10_000)
    ap.add_argument("--steps", type=int, default=17)
    ap.add_argument("--seed", type=int, default=1717)
    ap.add_argument("--out", default="results/walk")
    args = ap.parse_args()

    entry = 2019 - args.steps
    corpus = generate(walk_scenario(args.journals, args.steps, seed=args.seed, entry_year=entry)).to_corpus()
    cohort = select_cohort(corpus, CohortSpec(min(entry, 1997), max(entry, 2010), 2019))
    model = walk_distribution(WalkConfig(steps=args.steps))
    cmp = compare_distributions(model, empirical_net_decline(corpus, cohort))

    out = Path(args.out)
    report.write_walk(out / "walk.csv", [model])
    report.write_compare(out / "compare.csv", cmp)
    print(f"{'decline':>7} {'model %':>8} {'sim %':>8}")
    for d, m, e in cmp.rows:
        print(f"{d:>7} {m:>8.2f} {e:>8.2f}")
    print(f"journals {cmp.n_empirical}  TV {cmp.tv_distance:.4f}  chi2 {cmp.chi2:.2f} (df {cmp.chi2_df}, p {cmp.chi2_p:.3f})")


if __name__ == "__main__":
    main()
