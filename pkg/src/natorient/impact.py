"""Three-year journal impact factor, field-normalised impact and national/non-national ratios."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .corpus import Corpus
from .errors import UndefinedValue
from .indicators import ino_p
from .stats import median

JIF_WINDOW = 3


@dataclass(frozen=True)
class ImpactValue:
    citable_items: int
    citations: int
    jif3: float
    rjif: float | None = None


@dataclass(frozen=True)
class RatioSeriesPoint:
    year: int
    ratio_journals: float | None
    ratio_articles: float | None
    ratio_median_jif: float | None


def jif3(corpus: Corpus, journal_id: str, year: int) -> ImpactValue:
    """Citations in ``year`` to items of the three preceding years, per citable item.

    Unaffiliated items count in the denominator; citing documents of any type count.
    """
    items = cites = 0
    for py in range(year - JIF_WINDOW, year):
        items += len(corpus.articles_in(journal_id, py))
        cites += len(corpus.citations_to(journal_id, py, year))
    if items == 0:
        raise UndefinedValue(f"no citable items for {journal_id!r} in {year - JIF_WINDOW}..{year - 1}")
    return ImpactValue(citable_items=items, citations=cites, jif3=cites / items)


def jif_map(corpus: Corpus, year: int, journals: Iterable[str] | None = None) -> dict[str, float]:
    """Defined jif3 values of ``year`` for the given journals (all journals by default)."""
    out = {}
    for j in corpus.journal_ids if journals is None else journals:
        try:
            out[j] = jif3(corpus, j, year).jif3
        except UndefinedValue:
            pass
    return out


def field_mean_jif(
    corpus: Corpus, field_ids: Iterable[str], year: int, jifs: Mapping[str, float] | None = None
) -> float:
    """Mean jif3 over the pooled, de-duplicated journals of the given fields.

    ``jifs`` may carry precomputed values (see :func:`jif_map`) to avoid recounting.
    """
    journals = corpus.journals_in_fields(field_ids)
    vals = []
    for j in journals:
        if jifs is not None:
            if j in jifs:
                vals.append(jifs[j])
            continue
        try:
            vals.append(jif3(corpus, j, year).jif3)
        except UndefinedValue:
            pass
    if not vals:
        raise UndefinedValue(f"no journal with a defined jif3 in fields {sorted(field_ids)} ({year})")
    return sum(vals) / len(vals)


def rjif(
    corpus: Corpus, journal_id: str, year: int, jifs: Mapping[str, float] | None = None
) -> ImpactValue:
    value = jif3(corpus, journal_id, year)
    mean = field_mean_jif(corpus, corpus.journal(journal_id).field_ids, year, jifs)
    if mean <= 0:
        raise UndefinedValue(f"field mean jif3 is zero for {journal_id!r} in {year}")
    return replace(value, rjif=value.jif3 / mean)


def _ratio(a, b):
    if a is None or b is None or b == 0:
        return None
    return a / b


def national_ratio_series(
    corpus: Corpus, years: Iterable[int], ino_threshold: float = 50.0
) -> list[RatioSeriesPoint]:
    """National (INO-P above threshold) over non-national ratios per year.

    Journals active in a year (at least one citable article) with a defined INO-P
    are partitioned; ratios are of journal counts, citable article counts and median jif3.
    """
    out = []
    for y in years:
        groups = {True: [], False: []}
        for j in corpus.journal_ids:
            arts = corpus.articles_in(j, y)
            if not arts:
                continue
            try:
                national = ino_p(corpus, j, y).value > ino_threshold
            except UndefinedValue:
                continue
            groups[national].append((j, len(arts)))
        nat, non = groups[True], groups[False]
        jifs = jif_map(corpus, y, [j for j, _ in nat + non])
        med = {}
        for key, grp in groups.items():
            vals = [jifs[j] for j, _ in grp if j in jifs]
            med[key] = median(vals) if vals else None
        out.append(
            RatioSeriesPoint(
                year=y,
                ratio_journals=_ratio(len(nat), len(non)),
                ratio_articles=_ratio(sum(n for _, n in nat), sum(n for _, n in non)),
                ratio_median_jif=_ratio(med[True], med[False]),
            )
        )
    return out
