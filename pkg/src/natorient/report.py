"""CSV serialization with fixed-point formatting (no exponents, no timestamps)."""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

from .impact import ImpactValue, RatioSeriesPoint
from .indicators import TABLE_COLUMNS, IndicatorRow
from .nullmodel import Comparison, WalkDistribution
from .panel import INDICATORS
from .stats import PearsonResult, TrendResult

INDICATOR_COLUMNS = (
    "journal_id", "year", *TABLE_COLUMNS, "ino_c", "top_country_p", "top_country_c",
)
IMPACT_COLUMNS = ("journal_id", "year", "citable_items", "citations", "jif3", "rjif")
RATIO_COLUMNS = ("year", "ratio_journals", "ratio_articles", "ratio_median_jif")
TREND_COLUMNS = ("journal_id", "indicator", "slope", "growth_rate", "p_value", "verdict", "n_points")
COHORT_COLUMNS = (
    "set", "indicator", "n_journals", "pct_sig_increase", "pct_sig_decline",
    "median_begin", "median_end", "ratio_end_begin",
)
BREAKDOWN_COLUMNS = (
    "factor", "group", "n_journals",
    "pct_inc_publ", "pct_inc_jif", "pct_inc_rjif", "pct_dec_ino_p", "pct_dec_ino_c",
    *(f"median_{k}" for k in INDICATORS),
)
WALK_COLUMNS = ("steps", "net_decline", "path_count", "total_paths", "probability")
COMPARE_COLUMNS = ("net_decline", "model_pct", "empirical_pct")
COMPARE_STATS_COLUMNS = ("subset", "n_journals", "tv_distance", "chi2", "chi2_df", "chi2_p")
COUNTRY_COLUMNS = (
    "country", "n_national_journals", "n_domestic", "n_foreign",
    "pct_sig_decline_ino_p", "pct_sig_increase_rjif",
    *(f"median_{w}_{k}" for k in INDICATORS for w in ("begin", "end")),
    "bench_n_journals", "bench_pct_sig_decline_ino_p", "bench_pct_sig_increase_rjif",
    *(f"bench_median_{w}_{k}" for k in INDICATORS for w in ("begin", "end")),
    "no_national_journals",
)
DOMESTIC_COLUMNS = ("country", "year", "domestic_share", "foreign_share", "target_country_share")


def fixed(x, digits: int) -> str:
    if x is None:
        return ""
    s = f"{x:.{digits}f}"
    if s.lstrip("-").strip("0.") == "":  # avoid "-0.00"
        s = s.lstrip("-")
    return s


def pct(x) -> str:
    return fixed(x, 2)


def pct_int(x) -> str:
    return fixed(x, 0)


def impact_fmt(x) -> str:
    return fixed(x, 3)


def level_fmt(indicator: str, x) -> str:
    return impact_fmt(x) if indicator in ("jif", "rjif") else pct(x)


def write_rows(path, columns: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow(r)
    return path


def write_indicators(path, rows: Iterable[IndicatorRow]) -> Path:
    return write_rows(
        path,
        INDICATOR_COLUMNS,
        (
            (
                r.journal_id, r.year, *(pct(v) for v in r.variants()), pct(r.ino_c),
                r.top_country_p or "", r.top_country_c or "",
            )
            for r in rows
        ),
    )


def write_impact(path, rows: Iterable[tuple[str, int, ImpactValue]]) -> Path:
    return write_rows(
        path,
        IMPACT_COLUMNS,
        ((j, y, v.citable_items, v.citations, impact_fmt(v.jif3), impact_fmt(v.rjif)) for j, y, v in rows),
    )


def write_ratio_series(path, points: Iterable[RatioSeriesPoint]) -> Path:
    return write_rows(
        path,
        RATIO_COLUMNS,
        (
            (p.year, impact_fmt(p.ratio_journals), impact_fmt(p.ratio_articles), impact_fmt(p.ratio_median_jif))
            for p in points
        ),
    )


def write_trends(path, rows: Iterable[tuple[str, str, TrendResult | None, int]]) -> Path:
    def line(j, ind, t, n):
        if t is None:
            return (j, ind, "", "", "", "", n)
        return (j, ind, fixed(t.slope, 6), fixed(t.growth_rate, 6), fixed(t.p_value, 10), t.verdict.value, n)

    return write_rows(path, TREND_COLUMNS, (line(*r) for r in rows))


def write_cohort_summary(path, sets: dict) -> Path:
    rows = []
    for label, summaries in sets.items():
        for s in summaries:
            rows.append(
                (
                    label, s.indicator, s.n_journals, pct_int(s.share_sig_increase), pct_int(s.share_sig_decline),
                    level_fmt(s.indicator, s.median_begin), level_fmt(s.indicator, s.median_end),
                    fixed(s.ratio_end_begin, 3),
                )
            )
    return write_rows(path, COHORT_COLUMNS, rows)


def write_breakdown(path, rows) -> Path:
    return write_rows(
        path,
        BREAKDOWN_COLUMNS,
        (
            (
                r.factor, r.group, r.n_journals,
                *(pct_int(r.pct_sig_increase[k]) for k in ("publ", "jif", "rjif")),
                *(pct_int(r.pct_sig_decline[k]) for k in ("ino_p", "ino_c")),
                *(level_fmt(k, r.median_end[k]) for k in INDICATORS),
            )
            for r in rows
        ),
    )


def write_walk(path, dists: Iterable[WalkDistribution]) -> Path:
    rows = []
    for d in dists:
        for nd, n in d.path_counts.items():
            rows.append((d.config.steps, nd, n, d.total_paths, fixed(n / d.total_paths, 10)))
    return write_rows(path, WALK_COLUMNS, rows)


def write_compare(path, cmp: Comparison) -> Path:
    return write_rows(path, COMPARE_COLUMNS, ((d, pct(m), pct(e)) for d, m, e in cmp.rows))


def write_compare_stats(path, items: Iterable[tuple[str, Comparison]]) -> Path:
    return write_rows(
        path,
        COMPARE_STATS_COLUMNS,
        (
            (name, c.n_empirical, fixed(c.tv_distance, 6), fixed(c.chi2, 6), c.chi2_df if c.chi2_df else "",
             fixed(c.chi2_p, 6))
            for name, c in items
        ),
    )


def write_country_report(path, rows) -> Path:
    def block(g):
        return [
            level_fmt(k, m[k]) for k in INDICATORS for m in (g.median_begin, g.median_end)
        ]

    return write_rows(
        path,
        COUNTRY_COLUMNS,
        (
            (
                r.country, r.n_national_journals, r.n_domestic, r.n_foreign,
                pct_int(r.stats.pct_sig_decline_ino_p), pct_int(r.stats.pct_sig_increase_rjif),
                *block(r.stats),
                r.benchmark.n_journals, pct_int(r.benchmark.pct_sig_decline_ino_p),
                pct_int(r.benchmark.pct_sig_increase_rjif),
                *block(r.benchmark),
                "true" if r.no_national_journals else "false",
            )
            for r in rows
        ),
    )


def write_domestic_foreign(path, rows) -> Path:
    return write_rows(
        path,
        DOMESTIC_COLUMNS,
        (
            (r.country, r.year, pct(r.domestic_share), pct(r.foreign_share), pct(r.target_country_share))
            for r in rows
        ),
    )


def write_correlation(path, result: PearsonResult, columns: Sequence[str] = TABLE_COLUMNS) -> Path:
    m = result.matrix
    return write_rows(
        path,
        ("variant", *columns),
        ((name, *(fixed(m[i, k], 6) for k in range(len(columns)))) for i, name in enumerate(columns)),
    )
