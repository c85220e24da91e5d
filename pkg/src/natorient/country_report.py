"""National journals seen from individual countries: domestic vs foreign, trends and levels."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import CohortSpec, Corpus, select_cohort
from .errors import UndefinedValue
from .indicators import ino_p
from .panel import INDICATORS, IndicatorPanel
from .trends import begin_end_medians, cohort_trend_summary


@dataclass(frozen=True)
class NationalClassification:
    journal_id: str
    reference_year: int
    national_toward: str | None
    ino_p_at_reference: float


def classify_national(
    corpus: Corpus, journal_id: str, reference_year: int, threshold: float = 50.0
) -> NationalClassification:
    """National toward the top country iff INO-P strictly exceeds the threshold."""
    v = ino_p(corpus, journal_id, reference_year)
    toward = v.top_country if v.value > threshold else None
    return NationalClassification(journal_id, reference_year, toward, v.value)


def national_map(
    corpus: Corpus, reference_year: int, threshold: float = 50.0, journals: Iterable[str] | None = None
) -> dict[str, str]:
    """journal -> country for every journal national in the reference year."""
    out = {}
    for j in corpus.journal_ids if journals is None else sorted(set(journals)):
        try:
            c = classify_national(corpus, j, reference_year, threshold)
        except UndefinedValue:
            continue
        if c.national_toward is not None:
            out[j] = c.national_toward
    return out


@dataclass(frozen=True)
class DomesticForeignRow:
    country: str
    year: int
    n_articles: int
    domestic_share: float | None
    foreign_share: float | None
    target_country_share: float | None


def domestic_foreign_split(
    corpus: Corpus,
    country: str,
    years: Iterable[int],
    threshold: float = 50.0,
    reference_year: int | None = None,
    target_country: str | None = None,
) -> list[DomesticForeignRow]:
    """Per year, the percentage of a country's affiliated articles in national journals.

    With ``reference_year`` set, journals are classified once in that year;
    otherwise each year uses its own classification.
    """
    fixed = national_map(corpus, reference_year, threshold) if reference_year is not None else None
    rows = []
    for y in years:
        nat = fixed if fixed is not None else national_map(corpus, y, threshold)
        n = dom = foreign = target = 0
        for j in corpus.journal_ids:
            toward = nat.get(j)
            for a in corpus.articles_in(j, y):
                if country not in a.countries:
                    continue
                n += 1
                if toward is None:
                    continue
                if toward == country:
                    dom += 1
                else:
                    foreign += 1
                if toward == target_country:
                    target += 1
        pct = (lambda k: 100.0 * k / n) if n else (lambda k: None)
        rows.append(
            DomesticForeignRow(
                country,
                y,
                n,
                pct(dom),
                pct(foreign),
                pct(target) if target_country is not None else None,
            )
        )
    if not any(r.n_articles for r in rows):
        raise UndefinedValue(f"country {country!r} has no affiliated articles in the range")
    return rows


@dataclass(frozen=True)
class GroupStats:
    n_journals: int
    pct_sig_decline_ino_p: float | None
    pct_sig_increase_rjif: float | None
    median_begin: dict = field(default_factory=dict)
    median_end: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CountryReportRow:
    country: str
    n_national_journals: int
    n_domestic: int
    n_foreign: int
    stats: GroupStats
    benchmark: GroupStats
    no_national_journals: bool = False

    @property
    def pct_sig_decline_ino_p(self):
        return self.stats.pct_sig_decline_ino_p

    @property
    def pct_sig_increase_rjif(self):
        return self.stats.pct_sig_increase_rjif


def _group_stats(corpus, journals, alpha, end_year, panel) -> GroupStats:
    if not journals:
        return GroupStats(0, None, None, {k: None for k in INDICATORS}, {k: None for k in INDICATORS})
    shares = cohort_trend_summary(corpus, journals, INDICATORS, alpha, end_year=end_year, panel=panel)
    levels = begin_end_medians(corpus, journals, INDICATORS, end_year, panel=panel)
    return GroupStats(
        n_journals=len(journals),
        pct_sig_decline_ino_p=shares["ino_p"].share_sig_decline,
        pct_sig_increase_rjif=shares["rjif"].share_sig_increase,
        median_begin={k: levels[k].median_begin for k in INDICATORS},
        median_end={k: levels[k].median_end for k in INDICATORS},
    )


def published_in(corpus: Corpus, country: str, journal_id: str, first: int, last: int) -> bool:
    return any(
        country in a.countries for y in range(first, last + 1) for a in corpus.articles_in(journal_id, y)
    )


def select_report_countries(
    corpus: Corpus,
    cohort: Iterable[str],
    reference_year: int,
    threshold: float = 50.0,
    more_than: int = 5,
) -> list[str]:
    """Countries toward which strictly more than ``more_than`` cohort journals are national."""
    tally: dict[str, int] = {}
    for c in national_map(corpus, reference_year, threshold, cohort).values():
        tally[c] = tally.get(c, 0) + 1
    return sorted(c for c, n in tally.items() if n > more_than)


def country_cohort_report(
    corpus: Corpus,
    countries: Sequence[str],
    cohort_spec: CohortSpec,
    threshold: float = 50.0,
    alpha: float = 0.01,
    end_year: int | None = None,
    *,
    panel: IndicatorPanel | None = None,
    threads: int = 1,
) -> list[CountryReportRow]:
    """One row per country (sorted by code) over the national journals it published in.

    National journals are classified in the end year. The benchmark block covers
    every national journal of the cohort regardless of country.
    """
    if not countries:
        raise ValueError("country list is empty")
    end_year = cohort_spec.end_year if end_year is None else end_year
    cohort = select_cohort(corpus, cohort_spec)
    nat = national_map(corpus, end_year, threshold, cohort)
    if panel is None:
        panel = IndicatorPanel(corpus, list(nat), end_year, threads=threads)
    benchmark = _group_stats(corpus, sorted(nat), alpha, end_year, panel)

    rows = []
    for country in sorted(set(countries)):
        mine = [j for j in sorted(nat) if published_in(corpus, country, j, panel.entry[j], end_year)]
        dom = sum(1 for j in mine if nat[j] == country)
        rows.append(
            CountryReportRow(
                country=country,
                n_national_journals=len(mine),
                n_domestic=dom,
                n_foreign=len(mine) - dom,
                stats=_group_stats(corpus, mine, alpha, end_year, panel),
                benchmark=benchmark,
                no_national_journals=not mine,
            )
        )
    return rows
