"""National-orientation indicators of a journal.

INO-P / INO-C give the share of the most represented affiliation country among
a journal's publishing / citing articles. NINO is a weighted mean over all
contributing countries with weights ``p**k * AI**m``.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .corpus import Corpus
from .errors import UndefinedValue
from .parallel import parallel_map


class Counting(str, enum.Enum):
    WHOLE_ARTICLE = "whole_article"
    COUNTRYSHIP = "countryship"


class Basis(str, enum.Enum):
    PUBLISHING = "publishing"
    CITING = "citing"


class AiScope(str, enum.Enum):
    WHOLE_DATABASE = "whole_database"
    SUBJECT_FIELD = "subject_field"


@dataclass(frozen=True)
class CountryDistribution:
    article_count: Mapping[str, int]
    countryship_count: Mapping[str, int]
    total_affiliated_articles: int
    total_countryships: int

    @classmethod
    def from_lists(cls, country_lists: Iterable[Sequence[str]]) -> "CountryDistribution":
        """Build from per-article affiliation lists; empty lists are ignored."""
        whole, ships = Counter(), Counter()
        n = 0
        for countries in country_lists:
            if not countries:
                continue
            n += 1
            whole.update(set(countries))
            ships.update(countries)
        return cls(dict(whole), dict(ships), n, sum(ships.values()))

    def counts(self, counting: Counting) -> Mapping[str, int]:
        if Counting(counting) is Counting.WHOLE_ARTICLE:
            return self.article_count
        return self.countryship_count

    def denominator(self, counting: Counting) -> int:
        if Counting(counting) is Counting.WHOLE_ARTICLE:
            return self.total_affiliated_articles
        return self.total_countryships

    def shares(self, counting: Counting) -> dict[str, float]:
        """Percentage share per country under the given counting scheme."""
        denom = self.denominator(counting)
        return {c: 100.0 * v / denom for c, v in self.counts(counting).items()}


@dataclass(frozen=True)
class InoValue:
    value: float
    top_country: str
    basis: Basis
    counting: Counting


@dataclass(frozen=True)
class NinoParams:
    k: float = 0.0
    m: float = 1.0
    counting: Counting = Counting.COUNTRYSHIP
    ai_scope: AiScope = AiScope.WHOLE_DATABASE

    def __post_init__(self):
        if self.k < 0 or self.m < 0:
            raise ValueError("NINO exponents must be non-negative")


# The four weightings compared against the plain INO variants.
NINO_VARIANTS = {
    "nino_ai": NinoParams(k=0, m=1),
    "nino_sqrt_ai": NinoParams(k=0, m=0.5),
    "nino_p_ai": NinoParams(k=1, m=1),
    "nino_p_sqrt_ai": NinoParams(k=1, m=0.5),
}

TABLE_COLUMNS = ("ino_p", "ino_p_countryship", *NINO_VARIANTS)


def country_distribution(corpus: Corpus, journal_id: str, year: int) -> CountryDistribution:
    dist = CountryDistribution.from_lists(a.countries for a in corpus.articles_in(journal_id, year))
    if dist.total_affiliated_articles == 0:
        raise UndefinedValue(f"no affiliated articles for {journal_id!r} in {year}")
    return dist


def citing_distribution(corpus: Corpus, journal_id: str, citing_year: int) -> CountryDistribution:
    """Distribution over distinct affiliated articles of ``citing_year`` citing the journal."""
    dist = CountryDistribution.from_lists(
        corpus.article(a).countries for a in corpus.citing_articles(journal_id, citing_year)
    )
    if dist.total_affiliated_articles == 0:
        raise UndefinedValue(f"no affiliated citing articles for {journal_id!r} in {citing_year}")
    return dist


def top_share(dist: CountryDistribution, counting: Counting, basis: Basis) -> InoValue:
    counts = dist.counts(counting)
    best = max(counts.values())
    # ties: smallest country code wins; the value itself is tie-independent
    top = min(c for c, v in counts.items() if v == best)
    return InoValue(
        value=100.0 * best / dist.denominator(counting),
        top_country=top,
        basis=Basis(basis),
        counting=Counting(counting),
    )


def ino_p(corpus: Corpus, journal_id: str, year: int, counting=Counting.WHOLE_ARTICLE) -> InoValue:
    return top_share(country_distribution(corpus, journal_id, year), counting, Basis.PUBLISHING)


def ino_c(corpus: Corpus, journal_id: str, citing_year: int, counting=Counting.WHOLE_ARTICLE) -> InoValue:
    return top_share(citing_distribution(corpus, journal_id, citing_year), counting, Basis.CITING)


def _scope_totals(corpus: Corpus, journal_id: str, year: int, scope: AiScope):
    if AiScope(scope) is AiScope.WHOLE_DATABASE:
        return corpus.country_totals(year)
    return corpus.field_country_totals(corpus.journal(journal_id).field_ids, year)


def _ai(journal_share: float, country: str, scope_counts, scope_total) -> float:
    n = scope_counts.get(country, 0)
    if n == 0 or scope_total == 0:
        raise UndefinedValue(f"country {country!r} has no articles in the AI scope")
    return journal_share / (100.0 * n / scope_total)


def activity_index(
    corpus: Corpus, country: str, journal_id: str, year: int, scope=AiScope.WHOLE_DATABASE
) -> float:
    """Country's whole-count share in the journal divided by its share in the scope, same year."""
    dist = country_distribution(corpus, journal_id, year)
    counts, total = _scope_totals(corpus, journal_id, year, scope)
    share = 100.0 * dist.article_count.get(country, 0) / dist.total_affiliated_articles
    return _ai(share, country, counts, total)


def nino_from(dist: CountryDistribution, ai: Mapping[str, float], params: NinoParams) -> float:
    p = dist.shares(params.counting)
    num = den = 0.0
    for c in sorted(p):
        w = p[c] ** params.k * ai[c] ** params.m
        num += w * p[c]
        den += w
    # a convex combination; clamp away rounding so one-country journals give exactly their share
    return min(max(num / den, min(p.values())), max(p.values()))


def nino(corpus: Corpus, journal_id: str, year: int, params: NinoParams = NinoParams()) -> float:
    dist = country_distribution(corpus, journal_id, year)
    counts, total = _scope_totals(corpus, journal_id, year, params.ai_scope)
    whole = dist.shares(Counting.WHOLE_ARTICLE)
    ai = {c: _ai(s, c, counts, total) for c, s in whole.items()}
    return nino_from(dist, ai, params)


@dataclass(frozen=True)
class IndicatorRow:
    journal_id: str
    year: int
    ino_p: float | None = None
    ino_p_countryship: float | None = None
    nino_ai: float | None = None
    nino_sqrt_ai: float | None = None
    nino_p_ai: float | None = None
    nino_p_sqrt_ai: float | None = None
    ino_c: float | None = None
    top_country_p: str | None = None
    top_country_c: str | None = None

    def variants(self) -> tuple[float | None, ...]:
        """The six national-orientation variants in table order."""
        return tuple(getattr(self, c) for c in TABLE_COLUMNS)


def indicator_row(
    corpus: Corpus,
    journal_id: str,
    year: int,
    *,
    counting: Counting = Counting.COUNTRYSHIP,
    ai_scope: AiScope = AiScope.WHOLE_DATABASE,
) -> IndicatorRow:
    """All national-orientation values of one journal-year; NINO uses ``counting`` for p_i."""
    vals = {}
    try:
        dist = country_distribution(corpus, journal_id, year)
    except UndefinedValue:
        dist = None
    if dist is not None:
        whole = top_share(dist, Counting.WHOLE_ARTICLE, Basis.PUBLISHING)
        vals["ino_p"] = whole.value
        vals["top_country_p"] = whole.top_country
        vals["ino_p_countryship"] = top_share(dist, Counting.COUNTRYSHIP, Basis.PUBLISHING).value
        counts, total = _scope_totals(corpus, journal_id, year, ai_scope)
        try:
            ai = {c: _ai(s, c, counts, total) for c, s in dist.shares(Counting.WHOLE_ARTICLE).items()}
        except UndefinedValue:
            ai = None
        if ai is not None:
            for name, params in NINO_VARIANTS.items():
                vals[name] = nino_from(dist, ai, replace(params, counting=counting))
    try:
        c = ino_c(corpus, journal_id, year)
        vals["ino_c"] = c.value
        vals["top_country_c"] = c.top_country
    except UndefinedValue:
        pass
    return IndicatorRow(journal_id, year, **vals)


def indicator_table(
    corpus: Corpus,
    journals: Iterable[str],
    year: int,
    *,
    counting: Counting = Counting.COUNTRYSHIP,
    ai_scope: AiScope = AiScope.WHOLE_DATABASE,
    threads: int = 1,
) -> list[IndicatorRow]:
    """One row per journal (sorted by id); undefined cells are ``None``."""
    js = sorted(set(journals))
    return parallel_map(
        lambda j: indicator_row(corpus, j, year, counting=counting, ai_scope=ai_scope), js, threads=threads
    )
