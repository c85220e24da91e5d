import textwrap

import pytest
from hypothesis import given
from hypothesis import strategies as st

from natorient.corpus import CohortSpec, Corpus, build_indexes, entry_year, load_corpus, select_cohort
from natorient.errors import CorpusError, UndefinedValue

from conftest import build, journal


def write_files(tmp_path, articles, journals, citations):
    paths = []
    for name, body in (("articles", articles), ("journals", journals), ("citations", citations)):
        p = tmp_path / f"{name}.csv"
        p.write_text(textwrap.dedent(body).lstrip(), encoding="utf-8")
        paths.append(p)
    return paths


JOURNALS = """
    journal_id,languages,open_access,field_ids,discipline
    J1,non_english,false,F1;F2,natural_sci
    J2,english_only,true,F2,clinical_med
"""

ARTICLES = """
    article_id,journal_id,year,doc_type,countries
    a1,J1,2017,article,RU;RU;DE
    a2,J1,2018,review,RU
    a3,J2,2018,article,
    a4,J2,2019,proceedings_paper,"US;GB"
    a5,J1,2019,other,UA
"""

CITATIONS = """
    citing_article_id,cited_journal_id,cited_pub_year
    a2,J1,2017
    a4,J1,2017
    a4,J1,2018
    a5,J2,2018
"""


def test_load_counts(tmp_path):
    corpus = load_corpus(*write_files(tmp_path, ARTICLES, JOURNALS, CITATIONS))
    assert corpus.counts() == {"articles": 5, "journals": 2, "citations": 4}
    assert corpus.article("a1").countries == ("RU", "RU", "DE")
    assert corpus.journal("J1").field_ids == frozenset({"F1", "F2"})
    assert corpus.journal("J2").open_access is True


def test_empty_countries_is_unaffiliated(tmp_path):
    corpus = load_corpus(*write_files(tmp_path, ARTICLES, JOURNALS, CITATIONS))
    a3 = corpus.article("a3")
    assert a3.countries == () and not a3.affiliated
    assert a3 in corpus.articles_in("J2", 2018)


def test_other_doc_type_not_indexed_but_can_cite(tmp_path):
    corpus = load_corpus(*write_files(tmp_path, ARTICLES, JOURNALS, CITATIONS))
    assert corpus.articles_in("J1", 2019) == ()
    assert corpus.citing_articles("J2", 2019) == ("a5",)


def test_dangling_citation_names_id_and_line(tmp_path):
    bad = CITATIONS + "    zz9,J1,2017\n"
    with pytest.raises(CorpusError, match="zz9") as err:
        load_corpus(*write_files(tmp_path, ARTICLES, JOURNALS, bad))
    assert err.value.line == 6


@pytest.mark.parametrize(
    "articles, match",
    [
        (ARTICLES + "    a1,J1,2019,article,RU\n", "duplicate article_id"),
        (ARTICLES + "    a9,J7,2019,article,RU\n", "unknown journal_id"),
        (ARTICLES + "    a9,J1,twenty,article,RU\n", "not an integer"),
        (ARTICLES + "    a9,J1,2019,letter,RU\n", "doc_type"),
        (ARTICLES + "    a9,J1,2019,article,Russia\n", "country code"),
        (ARTICLES + "    a9,J1,2019,article\n", "expected 5 fields"),
    ],
)
def test_malformed_rows(tmp_path, articles, match):
    with pytest.raises(CorpusError, match=match) as err:
        load_corpus(*write_files(tmp_path, articles, JOURNALS, CITATIONS))
    assert err.value.line == 7


def test_duplicate_journal(tmp_path):
    with pytest.raises(CorpusError, match="duplicate journal_id"):
        load_corpus(*write_files(tmp_path, ARTICLES, JOURNALS + "    J1,non_english,false,F1,other\n", CITATIONS))


def test_citation_to_future_volume_rejected():
    with pytest.raises(CorpusError, match="later volume"):
        build([("a", "J", 2010, ["RU"])], citations=[("a", "J", 2011)])


def test_comment_header_lines_skipped(tmp_path):
    paths = write_files(tmp_path, "# generated\n" + ARTICLES.strip() + "\n", JOURNALS, CITATIONS)
    assert load_corpus(*paths).counts()["articles"] == 5


def test_year_range_enforced():
    with pytest.raises(CorpusError, match="outside corpus range"):
        build([("a", "J", 1990, ["RU"])], year_range=(1996, 2019))


def test_indexes_rebuild_identically(tmp_path):
    corpus = load_corpus(*write_files(tmp_path, ARTICLES, JOURNALS, CITATIONS))
    assert build_indexes(corpus.articles, corpus.journals, corpus.citations) == corpus.indexes


def test_corpus_is_read_only(tmp_path):
    corpus = load_corpus(*write_files(tmp_path, ARTICLES, JOURNALS, CITATIONS))
    with pytest.raises(TypeError):
        corpus.journals["J9"] = None
    with pytest.raises(AttributeError):
        corpus.article("a1").year = 1900


def test_entry_year():
    c = build([(f"a{y}", "J", y, ["RU"]) for y in range(2002, 2020)] + [("b", "K", 1997, ["RU"])],
              journals=[journal("J"), journal("K"), journal("L")])
    assert entry_year(c, "J") == 2002
    assert entry_year(c, "K") == 1997
    with pytest.raises(UndefinedValue):
        entry_year(c, "L")


def yearly(jid, years, per_year=12, countries=("RU",), unaffiliated=0):
    out = []
    for y in years:
        for k in range(per_year):
            cs = () if k < unaffiliated else countries
            out.append((f"{jid}-{y}-{k}", jid, y, cs))
    return out


SPEC = CohortSpec(first_entry_year=1997, last_entry_year=2010, end_year=2019)


def test_cohort_examples():
    arts = yearly("ok", range(2000, 2020))
    arts += yearly("gap", [y for y in range(2000, 2020) if y != 2005])
    arts += yearly("unaff", range(2000, 2020), per_year=10, unaffiliated=6)
    c = build(arts)
    assert select_cohort(c, SPEC) == ("ok",)


def test_cohort_spec_invariant():
    with pytest.raises(ValueError):
        CohortSpec(first_entry_year=2011, last_entry_year=2010, end_year=2019)
    with pytest.raises(ValueError):
        CohortSpec(first_entry_year=2000, last_entry_year=2019, end_year=2019)


# random small corpora: per journal an entry year, per-year volume and gaps
journal_plan = st.tuples(
    st.integers(1995, 2012),  # entry
    st.integers(0, 20),  # articles per year
    st.integers(0, 10),  # unaffiliated per year
    st.booleans(),  # has a gap
)


def corpus_from_plan(plan):
    arts = []
    for i, (entry, n, unaff, gap) in enumerate(plan):
        years = [y for y in range(entry, 2020) if not (gap and y == entry + 2)]
        arts += yearly(f"J{i}", years, per_year=max(n, 1), unaffiliated=min(unaff, max(n, 1)))
    return build(arts)


@given(st.lists(journal_plan, min_size=1, max_size=8), st.floats(0, 20), st.floats(0, 20))
def test_cohort_monotone_in_volume_threshold(plan, t1, t2):
    c = corpus_from_plan(plan)
    lo, hi = sorted((t1, t2))
    a = set(select_cohort(c, CohortSpec(1995, 2012, 2019, min_avg_pubs_per_year=lo)))
    b = set(select_cohort(c, CohortSpec(1995, 2012, 2019, min_avg_pubs_per_year=hi)))
    assert b <= a


@given(st.lists(journal_plan, min_size=1, max_size=8), st.integers(1995, 2011))
def test_cohort_windows_partition(plan, split):
    c = corpus_from_plan(plan)
    left = set(select_cohort(c, CohortSpec(1995, split, 2019)))
    right = set(select_cohort(c, CohortSpec(split + 1, 2012, 2019)))
    whole = set(select_cohort(c, CohortSpec(1995, 2012, 2019)))
    assert not left & right
    assert left | right == whole


def test_select_cohort_sorted():
    arts = yearly("b", range(2000, 2020)) + yearly("a", range(2001, 2020))
    assert select_cohort(build(arts), SPEC) == ("a", "b")


def test_corpus_constructor_validates_records():
    with pytest.raises(CorpusError):
        Corpus([], [journal("J", fields=())])
