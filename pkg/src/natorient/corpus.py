"""Corpus data model, CSV ingestion and journal cohort selection.

A :class:`Corpus` is built once from article, journal and citation records,
validated, indexed and then treated as read-only by every other module.
"""
from __future__ import annotations

import csv
import itertools
import logging
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import CorpusError, UndefinedValue

logger = logging.getLogger(__name__)

DOC_TYPES = ("article", "review", "proceedings_paper", "short_survey", "other")
CITABLE_TYPES = frozenset(DOC_TYPES[:4])
LANGUAGES = ("english_only", "english_plus_other", "non_english")
DISCIPLINES = (
    "social_sci_humanities",
    "clinical_med",
    "biomed_res",
    "natural_sci",
    "engineering",
    "other",
)

_COUNTRY_RE = re.compile(r"[A-Z]{2}")

ARTICLE_COLUMNS = ("article_id", "journal_id", "year", "doc_type", "countries")
JOURNAL_COLUMNS = ("journal_id", "languages", "open_access", "field_ids", "discipline")
CITATION_COLUMNS = ("citing_article_id", "cited_journal_id", "cited_pub_year")


@dataclass(frozen=True, slots=True)
class ArticleRecord:
    article_id: str
    journal_id: str
    year: int
    doc_type: str
    countries: tuple[str, ...] = ()

    @property
    def affiliated(self) -> bool:
        return bool(self.countries)

    @property
    def citable(self) -> bool:
        return self.doc_type in CITABLE_TYPES


@dataclass(frozen=True, slots=True)
class JournalRecord:
    journal_id: str
    languages: str
    open_access: bool
    field_ids: frozenset[str]
    discipline: str


@dataclass(frozen=True, slots=True)
class CitationRecord:
    citing_article_id: str
    cited_journal_id: str
    cited_pub_year: int


@dataclass(frozen=True)
class CohortSpec:
    """Journal selection rules: entry window, activity, volume and affiliation coverage."""

    first_entry_year: int = 1997
    last_entry_year: int = 2010
    end_year: int = 2019
    min_avg_pubs_per_year: float = 10.0
    max_unaffiliated_share: float = 50.0
    require_uninterrupted: bool = True

    def __post_init__(self):
        if not self.first_entry_year <= self.last_entry_year < self.end_year:
            raise ValueError(
                "cohort spec needs first_entry_year <= last_entry_year < end_year, got "
                f"{self.first_entry_year}, {self.last_entry_year}, {self.end_year}"
            )
        if self.min_avg_pubs_per_year < 0:
            raise ValueError("min_avg_pubs_per_year must be non-negative")
        if not 0 <= self.max_unaffiliated_share <= 100:
            raise ValueError("max_unaffiliated_share is a percentage in [0, 100]")


def build_indexes(
    articles: Sequence[ArticleRecord],
    journals: Mapping[str, JournalRecord],
    citations: Sequence[CitationRecord],
) -> dict:
    """Derive every lookup structure from the raw record sets.

    Only citable document types enter the (journal, year) article index and the
    per-year country totals; all documents remain resolvable as citing articles.
    """
    by_id = {a.article_id: a for a in articles}

    journal_year = defaultdict(list)
    for a in articles:
        if a.citable:
            journal_year[(a.journal_id, a.year)].append(a)

    journal_years = defaultdict(set)
    for j, y in journal_year:
        journal_years[j].add(y)

    cites = defaultdict(list)
    citing = defaultdict(set)
    for c in citations:
        cy = by_id[c.citing_article_id].year
        cites[(c.cited_journal_id, c.cited_pub_year, cy)].append(c)
        citing[(c.cited_journal_id, cy)].add(c.citing_article_id)

    country_year = defaultdict(Counter)
    affiliated_year = Counter()
    for a in articles:
        if a.citable and a.countries:
            affiliated_year[a.year] += 1
            country_year[a.year].update(set(a.countries))

    field_journals = defaultdict(set)
    for j in journals.values():
        for f in j.field_ids:
            field_journals[f].add(j.journal_id)

    return {
        "journal_year": {k: tuple(v) for k, v in journal_year.items()},
        "journal_years": {k: tuple(sorted(v)) for k, v in journal_years.items()},
        "citations": {k: tuple(v) for k, v in cites.items()},
        "citing_articles": {k: tuple(sorted(v)) for k, v in citing.items()},
        "country_year": {y: dict(c) for y, c in country_year.items()},
        "affiliated_year": dict(affiliated_year),
        "field_journals": {f: tuple(sorted(v)) for f, v in field_journals.items()},
    }


def _validate(articles, journals, citations, year_range, lines=None):
    # lines: optional {"articles": [...], "journals": [...], "citations": [...]} of line numbers
    def where(kind, i):
        if lines is None:
            return {}
        path, nums = lines[kind]
        return {"path": path, "line": nums[i]}

    seen_j = set()
    for i, j in enumerate(journals):
        if j.journal_id in seen_j:
            raise CorpusError(f"duplicate journal_id {j.journal_id!r}", **where("journals", i))
        seen_j.add(j.journal_id)

    seen_a = {}
    lo, hi = year_range if year_range else (None, None)
    for i, a in enumerate(articles):
        if a.article_id in seen_a:
            raise CorpusError(f"duplicate article_id {a.article_id!r}", **where("articles", i))
        seen_a[a.article_id] = a.year
        if a.journal_id not in seen_j:
            raise CorpusError(
                f"article {a.article_id!r} references unknown journal_id {a.journal_id!r}",
                **where("articles", i),
            )
        if lo is not None and not lo <= a.year <= hi:
            raise CorpusError(
                f"article {a.article_id!r} year {a.year} outside corpus range [{lo}, {hi}]",
                **where("articles", i),
            )

    for i, c in enumerate(citations):
        cy = seen_a.get(c.citing_article_id)
        if cy is None:
            raise CorpusError(
                f"citation references unknown citing_article_id {c.citing_article_id!r}",
                **where("citations", i),
            )
        if c.cited_pub_year > cy:
            raise CorpusError(
                f"citation from {c.citing_article_id!r} ({cy}) to a later volume "
                f"{c.cited_journal_id!r} {c.cited_pub_year}",
                **where("citations", i),
            )


class Corpus:
    """Validated, indexed, read-only collection of articles, journals and citations."""

    def __init__(
        self,
        articles: Iterable[ArticleRecord],
        journals: Iterable[JournalRecord],
        citations: Iterable[CitationRecord] = (),
        *,
        year_range: tuple[int, int] | None = None,
        _lines=None,
    ):
        articles = tuple(articles)
        journal_list = tuple(journals)
        citations = tuple(citations)
        for a in articles:
            _check_article(a)
        for j in journal_list:
            _check_journal(j)
        _validate(articles, journal_list, citations, year_range, _lines)

        self._articles = articles
        self._journals = MappingProxyType({j.journal_id: j for j in journal_list})
        self._citations = citations
        self._by_id = MappingProxyType({a.article_id: a for a in articles})
        if year_range is None and articles:
            year_range = (min(a.year for a in articles), max(a.year for a in articles))
        self._year_range = year_range
        self._idx = build_indexes(articles, self._journals, citations)
        self._field_cache: dict = {}

    # raw records ---------------------------------------------------------
    @property
    def articles(self) -> tuple[ArticleRecord, ...]:
        return self._articles

    @property
    def citations(self) -> tuple[CitationRecord, ...]:
        return self._citations

    @property
    def journals(self) -> Mapping[str, JournalRecord]:
        return self._journals

    @property
    def journal_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._journals))

    @property
    def year_range(self) -> tuple[int, int] | None:
        return self._year_range

    @property
    def indexes(self) -> dict:
        return self._idx

    def counts(self) -> dict[str, int]:
        return {
            "articles": len(self._articles),
            "journals": len(self._journals),
            "citations": len(self._citations),
        }

    def article(self, article_id: str) -> ArticleRecord:
        return self._by_id[article_id]

    def journal(self, journal_id: str) -> JournalRecord:
        try:
            return self._journals[journal_id]
        except KeyError:
            raise UndefinedValue(f"unknown journal {journal_id!r}") from None

    # indexes ---------------------------------------------------------------
    def articles_in(self, journal_id: str, year: int) -> tuple[ArticleRecord, ...]:
        """Citable articles of a journal in one year (affiliated or not)."""
        return self._idx["journal_year"].get((journal_id, year), ())

    def journal_years(self, journal_id: str) -> tuple[int, ...]:
        """Sorted years in which the journal has at least one citable article."""
        return self._idx["journal_years"].get(journal_id, ())

    def citations_to(self, journal_id: str, cited_pub_year: int, citing_year: int):
        return self._idx["citations"].get((journal_id, cited_pub_year, citing_year), ())

    def citing_articles(self, journal_id: str, citing_year: int) -> tuple[str, ...]:
        """Distinct ids of articles published in ``citing_year`` that cite the journal."""
        return self._idx["citing_articles"].get((journal_id, citing_year), ())

    def country_totals(self, year: int) -> tuple[Mapping[str, int], int]:
        """Whole-count articles per country and number of affiliated articles, database-wide."""
        return (
            self._idx["country_year"].get(year, {}),
            self._idx["affiliated_year"].get(year, 0),
        )

    def journals_in_fields(self, field_ids: Iterable[str]) -> tuple[str, ...]:
        fj = self._idx["field_journals"]
        out = set()
        for f in field_ids:
            out.update(fj.get(f, ()))
        return tuple(sorted(out))

    def field_country_totals(self, field_ids: Iterable[str], year: int):
        """As :meth:`country_totals`, restricted to journals assigned to any of the fields."""
        key = (frozenset(field_ids), year)
        hit = self._field_cache.get(key)
        if hit is None:
            counts = Counter()
            total = 0
            for j in self.journals_in_fields(key[0]):
                for a in self.articles_in(j, year):
                    if a.countries:
                        total += 1
                        counts.update(set(a.countries))
            hit = (dict(counts), total)
            self._field_cache[key] = hit
        return hit


def _check_article(a: ArticleRecord):
    if a.doc_type not in DOC_TYPES:
        raise CorpusError(f"article {a.article_id!r}: unknown doc_type {a.doc_type!r}")
    if not isinstance(a.countries, tuple):
        raise CorpusError(f"article {a.article_id!r}: countries must be a tuple")
    for c in a.countries:
        if not _COUNTRY_RE.fullmatch(c):
            raise CorpusError(f"article {a.article_id!r}: bad country code {c!r}")


def _check_journal(j: JournalRecord):
    if j.languages not in LANGUAGES:
        raise CorpusError(f"journal {j.journal_id!r}: unknown languages {j.languages!r}")
    if j.discipline not in DISCIPLINES:
        raise CorpusError(f"journal {j.journal_id!r}: unknown discipline {j.discipline!r}")
    if not j.field_ids:
        raise CorpusError(f"journal {j.journal_id!r}: field_ids must be non-empty")


# ---------------------------------------------------------------------------
# CSV ingestion


def _read_rows(path: Path, columns: Sequence[str]):
    """Yield (line_number, {column: value}) skipping leading ``#`` comment lines."""
    with open(path, newline="", encoding="utf-8") as fh:
        skipped = 0
        first = None
        for line in fh:
            if line.startswith("#"):
                skipped += 1
                continue
            first = line
            break
        if first is None:
            raise CorpusError("missing header row", path=path)
        reader = csv.reader(itertools.chain([first], fh))
        header = next(reader)
        missing = [c for c in columns if c not in header]
        if missing:
            raise CorpusError(f"header lacks columns {missing}", path=path, line=skipped + 1)
        pos = [header.index(c) for c in columns]
        for row in reader:
            lineno = skipped + reader.line_num
            if not row:
                continue
            if len(row) != len(header):
                raise CorpusError(
                    f"expected {len(header)} fields, found {len(row)}", path=path, line=lineno
                )
            yield lineno, {c: row[p] for c, p in zip(columns, pos)}


def _split(value: str) -> list[str]:
    return [v.strip() for v in value.split(";") if v.strip()]


def _parse_int(value: str, name: str, path, lineno) -> int:
    try:
        return int(value)
    except ValueError:
        raise CorpusError(f"{name} is not an integer: {value!r}", path=path, line=lineno) from None


def _parse_article(row, path, lineno) -> ArticleRecord:
    a = ArticleRecord(
        article_id=row["article_id"].strip(),
        journal_id=row["journal_id"].strip(),
        year=_parse_int(row["year"], "year", path, lineno),
        doc_type=row["doc_type"].strip(),
        countries=tuple(_split(row["countries"])),
    )
    if not a.article_id or not a.journal_id:
        raise CorpusError("empty article_id or journal_id", path=path, line=lineno)
    try:
        _check_article(a)
    except CorpusError as e:
        raise CorpusError(str(e), path=path, line=lineno) from None
    return a


def _parse_journal(row, path, lineno) -> JournalRecord:
    oa = row["open_access"].strip().lower()
    if oa not in ("true", "false"):
        raise CorpusError(f"open_access must be true/false, got {oa!r}", path=path, line=lineno)
    j = JournalRecord(
        journal_id=row["journal_id"].strip(),
        languages=row["languages"].strip(),
        open_access=oa == "true",
        field_ids=frozenset(_split(row["field_ids"])),
        discipline=row["discipline"].strip(),
    )
    if not j.journal_id:
        raise CorpusError("empty journal_id", path=path, line=lineno)
    try:
        _check_journal(j)
    except CorpusError as e:
        raise CorpusError(str(e), path=path, line=lineno) from None
    return j


def _parse_citation(row, path, lineno) -> CitationRecord:
    return CitationRecord(
        citing_article_id=row["citing_article_id"].strip(),
        cited_journal_id=row["cited_journal_id"].strip(),
        cited_pub_year=_parse_int(row["cited_pub_year"], "cited_pub_year", path, lineno),
    )


def load_corpus(article_path, journal_path, citation_path, *, year_range=None) -> Corpus:
    """Read the three CSV files into a validated :class:`Corpus`.

    Raises :class:`CorpusError` carrying the file and line number of the first
    offending row.
    """
    sources = {
        "articles": (Path(article_path), ARTICLE_COLUMNS, _parse_article),
        "journals": (Path(journal_path), JOURNAL_COLUMNS, _parse_journal),
        "citations": (Path(citation_path), CITATION_COLUMNS, _parse_citation),
    }
    records, lines = {}, {}
    for kind, (path, cols, parse) in sources.items():
        recs, nums = [], []
        for lineno, row in _read_rows(path, cols):
            recs.append(parse(row, path, lineno))
            nums.append(lineno)
        records[kind] = recs
        lines[kind] = (path, nums)

    corpus = Corpus(
        records["articles"],
        records["journals"],
        records["citations"],
        year_range=year_range,
        _lines=lines,
    )
    logger.info(
        "loaded %(articles)d articles, %(journals)d journals, %(citations)d citations",
        corpus.counts(),
    )
    return corpus


# ---------------------------------------------------------------------------
# Cohorts


def entry_year(corpus: Corpus, journal_id: str) -> int:
    """First year with a citable article of the journal."""
    years = corpus.journal_years(journal_id)
    if not years:
        raise UndefinedValue(f"journal {journal_id!r} has no articles")
    return years[0]


def select_cohort(corpus: Corpus, spec: CohortSpec) -> tuple[str, ...]:
    out = []
    for j in corpus.journal_ids:
        years = corpus.journal_years(j)
        if not years:
            continue
        first = years[0]
        if not spec.first_entry_year <= first <= spec.last_entry_year:
            continue
        if not corpus.articles_in(j, spec.end_year):
            continue
        span = range(first, spec.end_year + 1)
        if spec.require_uninterrupted and any(not corpus.articles_in(j, y) for y in span):
            continue
        n = unaffiliated = 0
        for y in span:
            arts = corpus.articles_in(j, y)
            n += len(arts)
            unaffiliated += sum(1 for a in arts if not a.countries)
        if n / len(span) < spec.min_avg_pubs_per_year:
            continue
        if 100.0 * unaffiliated / n > spec.max_unaffiliated_share:
            continue
        out.append(j)
    return tuple(out)
