import os

import pytest
from hypothesis import HealthCheck, settings

from natorient.corpus import ArticleRecord, CitationRecord, Corpus, JournalRecord

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def journal(jid, fields=("F1",), discipline="natural_sci", languages="non_english", oa=False):
    return JournalRecord(jid, languages, oa, frozenset(fields), discipline)


def build(articles, journals=None, citations=(), **kw):
    """Corpus from compact tuples: articles as (id, journal, year, countries[, doc_type])."""
    recs = []
    for a in articles:
        aid, jid, year, countries = a[:4]
        doc = a[4] if len(a) > 4 else "article"
        recs.append(ArticleRecord(aid, jid, year, doc, tuple(countries)))
    if journals is None:
        journals = [journal(j) for j in sorted({r.journal_id for r in recs})]
    cits = [c if isinstance(c, CitationRecord) else CitationRecord(*c) for c in citations]
    return Corpus(recs, journals, cits, **kw)


@pytest.fixture
def five_article_corpus():
    """Country lists [X], [X,Y], [Y], [X,Z], [Z] in one journal-year."""
    lists = [["XX"], ["XX", "YY"], ["YY"], ["XX", "ZZ"], ["ZZ"]]
    return build([(f"a{i}", "J1", 2019, c) for i, c in enumerate(lists)])


@pytest.fixture
def nino_corpus():
    """J1: countryship and whole shares XX 80 / YY 20; database shares XX 20, YY 40.

    J1 has four [XX] articles and one [YY]; K adds seven [YY] and eight [ZZ], so
    AI(XX) = 80/20 = 4 and AI(YY) = 20/40 = 0.5.
    """
    arts = [(f"j{i}", "J1", 2019, ["XX"]) for i in range(4)] + [("j4", "J1", 2019, ["YY"])]
    arts += [(f"k{i}", "K", 2019, ["YY"]) for i in range(7)]
    arts += [(f"z{i}", "K", 2019, ["ZZ"]) for i in range(8)]
    return build(arts)


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, text): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, text = mark.args
    if rep.when == "call" or rep.failed:
        ok = rep.passed and _ACCEPTANCE.get(number, (True,))[0]
        _ACCEPTANCE[number] = (ok, text)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, text = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {text}")
