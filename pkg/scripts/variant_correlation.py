"""Pearson correlations between the six national-orientation variants on a generated corpus.

    python3 scripts/variant_correlation.py --scenario scenarios/national_decline.ini --year 2019
"""
import argparse

from natorient.indicators import TABLE_COLUMNS, indicator_table
from natorient.stats import pearson_matrix
from natorient.synthgen import generate, load_scenario


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scenario", default="scenarios/national_decline.ini")
    ap.add_argument("--year", type=int, default=2019)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    corpus = generate(load_scenario(args.scenario)).to_corpus()
    active = [j for j in corpus.journal_ids if corpus.articles_in(j, args.year)]
    rows = indicator_table(corpus, active, args.year, threads=args.threads)
    res = pearson_matrix(r.variants() for r in rows)
    width = max(map(len, TABLE_COLUMNS))
    print(" " * width, *(f"{c[:10]:>10}" for c in TABLE_COLUMNS))
    for name, line in zip(TABLE_COLUMNS, res.matrix):
        print(f"{name:<{width}}", *(f"{v:>10.2f}" for v in line))
    print(f"journals used {res.n_rows}, dropped {res.n_dropped}")


if __name__ == "__main__":
    main()
