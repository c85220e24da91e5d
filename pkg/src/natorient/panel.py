"""Annual series of the five key journal indicators, from entry year to an end year."""
from __future__ import annotations

from typing import Iterable

from .corpus import Corpus, entry_year
from .errors import UndefinedValue
from .impact import jif_map
from .indicators import ino_c, ino_p
from .parallel import parallel_map

INDICATORS = ("publ", "ino_p", "ino_c", "jif", "rjif")


class IndicatorPanel:
    """Per-journal ``{indicator: {year: value}}`` with undefined values left out.

    jif3 is computed once per year for every journal of the corpus, because field
    means pool all journals of a field, not just the panel's.
    """

    def __init__(self, corpus: Corpus, journals: Iterable[str], end_year: int, *, threads: int = 1):
        self.corpus = corpus
        self.end_year = end_year
        self.entry: dict[str, int] = {}
        for j in sorted(set(journals)):
            try:
                self.entry[j] = entry_year(corpus, j)
            except UndefinedValue:
                continue
        years = sorted({y for e in self.entry.values() for y in range(e, end_year + 1)})
        self._jif = {y: jif_map(corpus, y) for y in years}
        self._field_mean: dict = {}
        rows = parallel_map(self._journal_series, list(self.entry), threads=threads)
        self.values = dict(zip(self.entry, rows))

    @property
    def journals(self) -> tuple[str, ...]:
        return tuple(self.entry)

    def field_mean(self, field_ids: frozenset, year: int) -> float | None:
        key = (field_ids, year)
        if key not in self._field_mean:
            jifs = self._jif[year]
            vals = [jifs[j] for j in self.corpus.journals_in_fields(field_ids) if j in jifs]
            self._field_mean[key] = sum(vals) / len(vals) if vals else None
        return self._field_mean[key]

    def _journal_series(self, j: str) -> dict[str, dict[int, float]]:
        c = self.corpus
        fields = c.journal(j).field_ids
        out = {k: {} for k in INDICATORS}
        for y in range(self.entry[j], self.end_year + 1):
            out["publ"][y] = float(len(c.articles_in(j, y)))
            try:
                out["ino_p"][y] = ino_p(c, j, y).value
            except UndefinedValue:
                pass
            try:
                out["ino_c"][y] = ino_c(c, j, y).value
            except UndefinedValue:
                pass
            jif = self._jif[y].get(j)
            if jif is not None:
                out["jif"][y] = jif
                mean = self.field_mean(fields, y)
                if mean:
                    out["rjif"][y] = jif / mean
        return out

    def series(self, journal_id: str, indicator: str) -> list[tuple[int, float]]:
        return sorted(self.values[journal_id][indicator].items())

    def value(self, journal_id: str, indicator: str, year: int) -> float | None:
        return self.values[journal_id][indicator].get(year)

    def begin_value(self, journal_id: str, indicator: str) -> float | None:
        return self.value(journal_id, indicator, self.entry[journal_id])
