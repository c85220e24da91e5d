"""Command-line front end: ``natorient <subcommand> [flags]``.

Exit codes: 0 success, 1 input or usage error, 2 internal error. Every run
writes ``manifest.json`` next to its outputs.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import __version__
from .corpus import CohortSpec, Corpus, load_corpus, select_cohort
from .country_report import country_cohort_report, domestic_foreign_split, select_report_countries
from .errors import NatOrientError, UndefinedValue
from .impact import jif3, jif_map, national_ratio_series, rjif
from .indicators import TABLE_COLUMNS, AiScope, Counting, indicator_table
from .nullmodel import WalkConfig, compare_distributions, empirical_net_decline, walk_distribution
from .panel import INDICATORS, IndicatorPanel
from .parallel import parallel_map
from . import report
from .stats import Verdict, pearson_matrix
from .synthgen import ScenarioError, generate, load_scenario
from .trends import cohort_breakdown, initial_ino_sets, journal_trends, summarize_cohort

logger = logging.getLogger("natorient")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _years(text: str) -> range:
    try:
        if "-" in text:
            a, b = text.split("-", 1)
            return range(int(a), int(b) + 1)
        y = int(text)
        return range(y, y + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YEAR or FROM-TO, got {text!r}") from None


def _countries(text: str) -> list[str]:
    return [c.strip() for c in text.split(",") if c.strip()]


def _add_corpus(p, required=True):
    g = p.add_argument_group("corpus")
    g.add_argument("--articles", required=required)
    g.add_argument("--journals", required=required)
    g.add_argument("--citations", required=required)


def _add_cohort(p):
    g = p.add_argument_group("cohort")
    g.add_argument("--entry-from", type=int, default=1997)
    g.add_argument("--entry-to", type=int, default=2010)
    g.add_argument("--end-year", type=int, default=2019)
    g.add_argument("--min-avg-pubs", type=float, default=10.0)
    g.add_argument("--max-unaffiliated", type=float, default=50.0)
    g.add_argument("--allow-gaps", action="store_true", help="do not require uninterrupted publication")


def _common(p):
    p.add_argument("--out-dir", default="out")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--ino-threshold", type=float, default=50.0)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--counting", choices=("whole", "countryship"), default="countryship",
                   help="counting scheme for NINO country shares")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="natorient", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"natorient {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="load and check a corpus")
    _add_corpus(p)
    _common(p)

    p = sub.add_parser("indicators", help="INO / NINO table per journal and year")
    _add_corpus(p)
    _common(p)
    p.add_argument("--years", type=_years, help="YEAR or FROM-TO (default: corpus range)")
    p.add_argument("--ai-scope", choices=[s.value for s in AiScope], default="whole_database")

    p = sub.add_parser("impact", help="jif3 / rjif per journal and year, national ratio series")
    _add_corpus(p)
    _common(p)
    p.add_argument("--years", type=_years)

    p = sub.add_parser("trends", help="per-journal trend tests for the cohort")
    _add_corpus(p)
    _common(p)
    _add_cohort(p)

    p = sub.add_parser("cohort", help="cohort trend shares, begin/end medians and breakdowns")
    _add_corpus(p)
    _common(p)
    _add_cohort(p)
    p.add_argument("--breakdown-set", choices=("0-50", "50-100", "80-100", "all"), default="50-100")

    p = sub.add_parser("walk", help="random-walk null model, optionally against a corpus")
    _add_corpus(p, required=False)
    _common(p)
    _add_cohort(p)
    p.add_argument("--steps", type=int, default=17)
    p.add_argument("--num-classes", type=int, default=10)
    p.add_argument("--start-class", type=int)
    p.add_argument("--min-begin-class", type=int, default=10)

    p = sub.add_parser("country", help="per-country national journal reports")
    _add_corpus(p)
    _common(p)
    _add_cohort(p)
    p.add_argument("--countries", type=_countries,
                   help="comma-separated codes (default: countries with more than 5 national journals)")
    p.add_argument("--target-country", default="RU")
    p.add_argument("--reference-year", type=int, help="classification year for shares (default: end year)")
    p.add_argument("--per-year", action="store_true", help="classify national journals in every year")
    p.add_argument("--years", type=_years)

    p = sub.add_parser("generate", help="write a synthetic corpus from a scenario file")
    p.add_argument("--scenario", required=True)
    _common(p)

    p = sub.add_parser("correlate", help="Pearson matrix between the six INO variants")
    _add_corpus(p)
    _common(p)
    _add_cohort(p)
    p.add_argument("--year", type=int, help="default: end year")
    p.add_argument("--cohort-only", action="store_true")
    return parser


# ---------------------------------------------------------------------------


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def _load(args) -> Corpus:
    return load_corpus(args.articles, args.journals, args.citations)


def _spec(args) -> CohortSpec:
    return CohortSpec(
        first_entry_year=args.entry_from,
        last_entry_year=args.entry_to,
        end_year=args.end_year,
        min_avg_pubs_per_year=args.min_avg_pubs,
        max_unaffiliated_share=args.max_unaffiliated,
        require_uninterrupted=not args.allow_gaps,
    )


def _year_span(args, corpus) -> range:
    if getattr(args, "years", None):
        return args.years
    lo, hi = corpus.year_range or (0, -1)
    return range(lo, hi + 1)


def _counting(args) -> Counting:
    return Counting.WHOLE_ARTICLE if args.counting == "whole" else Counting.COUNTRYSHIP


def cmd_validate(args, out):
    corpus = _load(args)
    counts = corpus.counts()
    return [report.write_rows(out / "counts.csv", ("kind", "count"), sorted(counts.items()))]


def cmd_indicators(args, out):
    corpus = _load(args)
    rows = []
    for y in _year_span(args, corpus):
        active = [j for j in corpus.journal_ids if corpus.articles_in(j, y)]
        rows += indicator_table(
            corpus, active, y, counting=_counting(args), ai_scope=AiScope(args.ai_scope), threads=args.threads
        )
    return [report.write_indicators(out / "indicators.csv", rows)]


def cmd_impact(args, out):
    corpus = _load(args)
    years = _year_span(args, corpus)
    rows = []
    for y in years:
        jifs = jif_map(corpus, y)

        def one(j, y=y, jifs=jifs):
            try:
                return rjif(corpus, j, y, jifs)
            except UndefinedValue:
                try:
                    return jif3(corpus, j, y)
                except UndefinedValue:
                    return None

        vals = parallel_map(one, corpus.journal_ids, threads=args.threads)
        rows += [(j, y, v) for j, v in zip(corpus.journal_ids, vals) if v is not None]
    series = national_ratio_series(corpus, years, args.ino_threshold)
    return [
        report.write_impact(out / "impact.csv", rows),
        report.write_ratio_series(out / "ratio_series.csv", series),
    ]


def cmd_trends(args, out):
    corpus = _load(args)
    cohort = select_cohort(corpus, _spec(args))
    panel = IndicatorPanel(corpus, cohort, args.end_year, threads=args.threads)
    rows = []
    for j in panel.journals:
        res = journal_trends(panel, j, INDICATORS, args.alpha)
        for ind in INDICATORS:
            rows.append((j, ind, res[ind], len(panel.values[j][ind])))
    return [report.write_trends(out / "trends.csv", rows)]


def cmd_cohort(args, out):
    corpus = _load(args)
    cohort = select_cohort(corpus, _spec(args))
    if not cohort:
        raise UndefinedValue("cohort is empty for the given selection rules")
    panel = IndicatorPanel(corpus, cohort, args.end_year, threads=args.threads)
    sets = initial_ino_sets(panel, cohort)
    summaries = {
        label: summarize_cohort(corpus, js, INDICATORS, args.alpha, args.end_year, panel=panel)
        for label, js in sets.items()
        if js
    }
    chosen = cohort if args.breakdown_set == "all" else sets.get(args.breakdown_set, ())
    rows = []
    if chosen:
        for grouping in ("discipline", "language", "open_access"):
            rows += cohort_breakdown(corpus, chosen, grouping, args.alpha, args.end_year, panel=panel)
    return [
        report.write_cohort_summary(out / "cohort_summary.csv", summaries),
        report.write_breakdown(out / "breakdown.csv", rows),
    ]


def cmd_walk(args, out):
    config = WalkConfig(steps=args.steps, num_classes=args.num_classes, start_class=args.start_class)
    model = walk_distribution(config)
    written = [report.write_walk(out / "walk.csv", [model])]
    given = [args.articles, args.journals, args.citations]
    if not any(given):
        return written
    if not all(given):
        raise UsageError("--articles, --journals and --citations must be given together")
    corpus = _load(args)
    cohort = select_cohort(corpus, _spec(args))
    hist = empirical_net_decline(corpus, cohort, args.min_begin_class, args.end_year, args.num_classes)
    cmp_all = compare_distributions(model, hist)
    written.append(report.write_compare(out / "compare.csv", cmp_all))
    stats = [("all", cmp_all)]

    panel = IndicatorPanel(corpus, cohort, args.end_year, threads=args.threads)
    declining = [
        j for j in panel.journals
        if (t := journal_trends(panel, j, ("ino_p",), args.alpha)["ino_p"]) is not None
        and t.verdict is Verdict.SIG_DECLINE
    ]
    try:
        sig = empirical_net_decline(corpus, declining, args.min_begin_class, args.end_year, args.num_classes)
    except UndefinedValue:
        sig = None
    if sig:
        cmp_sig = compare_distributions(model, sig)
        written.append(report.write_compare(out / "compare_sig_decline.csv", cmp_sig))
        stats.append(("sig_decline", cmp_sig))
    written.append(report.write_compare_stats(out / "compare_stats.csv", stats))
    return written


def cmd_country(args, out):
    corpus = _load(args)
    spec = _spec(args)
    countries = args.countries
    if not countries:
        cohort = select_cohort(corpus, spec)
        countries = select_report_countries(corpus, cohort, args.end_year, args.ino_threshold)
    if not countries:
        raise UndefinedValue("no country qualifies; pass --countries explicitly")
    rows = country_cohort_report(
        corpus, countries, spec, args.ino_threshold, args.alpha, args.end_year, threads=args.threads
    )
    ref = None if args.per_year else (args.reference_year or args.end_year)
    split = []
    for c in sorted(set(countries)):
        try:
            split += domestic_foreign_split(
                corpus, c, _year_span(args, corpus), args.ino_threshold, ref, args.target_country
            )
        except UndefinedValue as e:
            logger.warning("%s", e)
    return [
        report.write_country_report(out / "country_report.csv", rows),
        report.write_domestic_foreign(out / "domestic_foreign.csv", split),
    ]


def cmd_generate(args, out):
    gen = generate(load_scenario(args.scenario))
    return list(gen.write(out).values())


def cmd_correlate(args, out):
    corpus = _load(args)
    year = args.year or args.end_year
    if args.cohort_only:
        journals = select_cohort(corpus, _spec(args))
    else:
        journals = [j for j in corpus.journal_ids if corpus.articles_in(j, year)]
    rows = indicator_table(corpus, journals, year, counting=_counting(args), threads=args.threads)
    result = pearson_matrix(r.variants() for r in rows)
    logger.info("correlation over %d journals, %d dropped", result.n_rows, result.n_dropped)
    return [
        report.write_correlation(out / "correlation.csv", result, TABLE_COLUMNS),
        report.write_rows(
            out / "correlation_counts.csv", ("n_used", "n_dropped"), [(result.n_rows, result.n_dropped)]
        ),
    ]


COMMANDS = {
    "validate": cmd_validate,
    "indicators": cmd_indicators,
    "impact": cmd_impact,
    "trends": cmd_trends,
    "cohort": cmd_cohort,
    "walk": cmd_walk,
    "country": cmd_country,
    "generate": cmd_generate,
    "correlate": cmd_correlate,
}


def _manifest(args, out: Path, outputs, wall: float) -> Path:
    params = {k: (list(v) if isinstance(v, range) else v) for k, v in sorted(vars(args).items())}
    inputs = {}
    for key in ("articles", "journals", "citations", "scenario"):
        path = params.get(key)
        if path:
            inputs[str(path)] = _sha256(path)
    doc = {
        "command": args.command,
        "parameters": params,
        "inputs": inputs,
        "outputs": sorted(str(Path(p).relative_to(out)) for p in outputs),
        "tool_version": __version__,
        "wall_time_s": round(wall, 3),
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _setup_logging():
    level = os.environ.get("NATORIENT_LOG", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 1
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)

    start = time.perf_counter()
    out = Path(args.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        outputs = COMMANDS[args.command](args, out)
        _manifest(args, out, outputs, time.perf_counter() - start)
    except UsageError as e:
        print(f"natorient {args.command}: {e}", file=sys.stderr)
        return 1
    except (NatOrientError, ScenarioError, FileNotFoundError, ValueError) as e:
        print(f"natorient {args.command}: error: {e}", file=sys.stderr)
        return 1
    except Exception:  # noqa: BLE001
        logger.exception("internal error")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
