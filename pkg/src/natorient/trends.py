"""Per-journal trend tests and cohort-level summaries of the key indicators."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import DISCIPLINES, LANGUAGES, Corpus
from .errors import UndefinedValue
from .panel import INDICATORS, IndicatorPanel
from .stats import PearsonResult, TrendResult, Verdict, fit_trend, median, pearson_matrix

__all__ = [
    "INDICATORS",
    "TrendResult",
    "Verdict",
    "fit_trend",
    "pearson_matrix",
    "PearsonResult",
    "TrendShares",
    "LevelMedians",
    "CohortSummary",
    "BreakdownRow",
    "journal_trends",
    "cohort_trend_summary",
    "begin_end_medians",
    "summarize_cohort",
    "initial_ino_sets",
    "cohort_breakdown",
]

GROUPINGS = ("discipline", "language", "open_access")
INITIAL_INO_SETS = (("0-50", None, 50.0), ("50-100", 50.0, None), ("80-100", 80.0, None))


@dataclass(frozen=True)
class TrendShares:
    indicator: str
    n_journals: int
    n_excluded: int
    share_sig_increase: float | None
    share_sig_decline: float | None


@dataclass(frozen=True)
class LevelMedians:
    indicator: str
    median_begin: float | None
    median_end: float | None
    ratio_end_begin: float | None


@dataclass(frozen=True)
class CohortSummary:
    indicator: str
    n_journals: int
    share_sig_increase: float | None
    share_sig_decline: float | None
    median_begin: float | None
    median_end: float | None
    ratio_end_begin: float | None


@dataclass(frozen=True)
class BreakdownRow:
    factor: str
    group: str
    n_journals: int
    pct_sig_increase: dict
    pct_sig_decline: dict
    median_end: dict


def _panel(corpus, cohort, end_year, panel, threads=1):
    if panel is not None:
        return panel
    return IndicatorPanel(corpus, cohort, end_year, threads=threads)


def _require(cohort):
    cohort = sorted(set(cohort))
    if not cohort:
        raise UndefinedValue("empty cohort")
    return cohort


def journal_trends(
    panel: IndicatorPanel, journal_id: str, indicators: Sequence[str] = INDICATORS, alpha: float = 0.01
) -> dict[str, TrendResult | None]:
    """Trend per indicator; ``None`` when fewer than 3 defined points remain."""
    out = {}
    for ind in indicators:
        try:
            out[ind] = fit_trend(panel.series(journal_id, ind), alpha)
        except UndefinedValue:
            out[ind] = None
    return out


def _shares(trends: Iterable[TrendResult | None]):
    fitted = [t for t in trends if t is not None]
    n_excl = sum(1 for t in trends if t is None)
    if not fitted:
        return len(fitted), n_excl, None, None
    inc = sum(t.verdict is Verdict.SIG_INCREASE for t in fitted)
    dec = sum(t.verdict is Verdict.SIG_DECLINE for t in fitted)
    return len(fitted), n_excl, 100.0 * inc / len(fitted), 100.0 * dec / len(fitted)


def cohort_trend_summary(
    corpus: Corpus,
    cohort: Iterable[str],
    indicators: Sequence[str] = INDICATORS,
    alpha: float = 0.01,
    *,
    end_year: int = 2019,
    panel: IndicatorPanel | None = None,
) -> dict[str, TrendShares]:
    """Share of journals with a significant increase / decline, per indicator."""
    cohort = _require(cohort)
    panel = _panel(corpus, cohort, end_year, panel)
    per_journal = {j: journal_trends(panel, j, indicators, alpha) for j in cohort if j in panel.entry}
    out = {}
    for ind in indicators:
        trends = [per_journal[j][ind] for j in per_journal]
        n, excl, inc, dec = _shares(trends)
        out[ind] = TrendShares(ind, n, excl + len(cohort) - len(per_journal), inc, dec)
    return out


def first_defined(panel: IndicatorPanel, journal_id: str, indicator: str) -> float | None:
    """Value in the journal's entry year, or its first later year where the indicator is defined."""
    series = panel.series(journal_id, indicator)
    return series[0][1] if series else None


def begin_end_medians(
    corpus: Corpus,
    cohort: Iterable[str],
    indicators: Sequence[str] = INDICATORS,
    end_year: int = 2019,
    *,
    panel: IndicatorPanel | None = None,
) -> dict[str, LevelMedians]:
    cohort = _require(cohort)
    panel = _panel(corpus, cohort, end_year, panel)
    js = [j for j in cohort if j in panel.entry]
    out = {}
    for ind in indicators:
        begin = [v for v in (first_defined(panel, j, ind) for j in js) if v is not None]
        end = [v for v in (panel.value(j, ind, end_year) for j in js) if v is not None]
        mb = median(begin) if begin else None
        me = median(end) if end else None
        ratio = me / mb if mb and me is not None else None
        out[ind] = LevelMedians(ind, mb, me, ratio)
    return out


def summarize_cohort(
    corpus: Corpus,
    cohort: Iterable[str],
    indicators: Sequence[str] = INDICATORS,
    alpha: float = 0.01,
    end_year: int = 2019,
    *,
    panel: IndicatorPanel | None = None,
) -> list[CohortSummary]:
    cohort = _require(cohort)
    panel = _panel(corpus, cohort, end_year, panel)
    shares = cohort_trend_summary(corpus, cohort, indicators, alpha, end_year=end_year, panel=panel)
    levels = begin_end_medians(corpus, cohort, indicators, end_year, panel=panel)
    return [
        CohortSummary(
            indicator=ind,
            n_journals=len(cohort),
            share_sig_increase=shares[ind].share_sig_increase,
            share_sig_decline=shares[ind].share_sig_decline,
            median_begin=levels[ind].median_begin,
            median_end=levels[ind].median_end,
            ratio_end_begin=levels[ind].ratio_end_begin,
        )
        for ind in indicators
    ]


def initial_ino_sets(panel: IndicatorPanel, cohort: Iterable[str]) -> dict[str, tuple[str, ...]]:
    """Split a cohort by INO-P in each journal's entry year: <=50, >50 and >80."""
    out = {}
    for label, above, at_most in INITIAL_INO_SETS:
        keep = []
        for j in sorted(set(cohort)):
            if j not in panel.entry:
                continue
            v = panel.value(j, "ino_p", panel.entry[j])
            if v is None:
                continue
            if above is not None and not v > above:
                continue
            if at_most is not None and not v <= at_most:
                continue
            keep.append(j)
        out[label] = tuple(keep)
    return out


_INCREASE_COLS = ("publ", "jif", "rjif")
_DECLINE_COLS = ("ino_p", "ino_c")


def _group_key(corpus: Corpus, j: str, grouping: str) -> str:
    rec = corpus.journal(j)
    if grouping == "discipline":
        return rec.discipline
    if grouping == "language":
        return rec.languages
    return "oa" if rec.open_access else "not_oa"


def _group_order(grouping: str) -> tuple[str, ...]:
    return {
        "discipline": DISCIPLINES,
        "language": LANGUAGES,
        "open_access": ("oa", "not_oa"),
    }[grouping]


def cohort_breakdown(
    corpus: Corpus,
    cohort: Iterable[str],
    grouping: str,
    alpha: float = 0.01,
    end_year: int = 2019,
    *,
    panel: IndicatorPanel | None = None,
) -> list[BreakdownRow]:
    """Trend shares and end-year medians per discipline, language or access status."""
    if grouping not in GROUPINGS:
        raise ValueError(f"unknown grouping {grouping!r}; expected one of {GROUPINGS}")
    cohort = _require(cohort)
    panel = _panel(corpus, cohort, end_year, panel)
    groups: dict[str, list[str]] = {}
    for j in cohort:
        groups.setdefault(_group_key(corpus, j, grouping), []).append(j)

    rows = []
    for key in _group_order(grouping):
        members = groups.get(key)
        if not members:
            continue
        trends = {j: journal_trends(panel, j, INDICATORS, alpha) for j in members if j in panel.entry}
        inc, dec, med = {}, {}, {}
        for ind in _INCREASE_COLS:
            inc[ind] = _shares([t[ind] for t in trends.values()])[2]
        for ind in _DECLINE_COLS:
            dec[ind] = _shares([t[ind] for t in trends.values()])[3]
        for ind in INDICATORS:
            vals = [v for v in (panel.value(j, ind, end_year) for j in trends) if v is not None]
            med[ind] = median(vals) if vals else None
        rows.append(BreakdownRow(grouping, key, len(members), inc, dec, med))
    return rows
