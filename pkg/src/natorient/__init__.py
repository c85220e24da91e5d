"""Journal national-orientation and citation-impact analytics."""

__version__ = "0.1.0"

from .corpus import (  # noqa: E402
    ArticleRecord,
    CitationRecord,
    CohortSpec,
    Corpus,
    JournalRecord,
    entry_year,
    load_corpus,
    select_cohort,
)
from .errors import CorpusError, NatOrientError, UndefinedValue  # noqa: E402
