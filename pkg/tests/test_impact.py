from collections import defaultdict

import pytest
from hypothesis import given
from hypothesis import strategies as st

from natorient.errors import UndefinedValue
from natorient.impact import field_mean_jif, jif3, jif_map, national_ratio_series, rjif

from conftest import build, journal


def cited_journal(jid, per_year, years=(2016, 2017, 2018), countries=("RU",)):
    return [(f"{jid}-{y}-{k}", jid, y, list(countries)) for y in years for k in range(per_year)]


def citations_to(jid, years, n, citing_year=2019, doc_type="article"):
    """``n`` citing articles in ``citing_year``, each citing one item of ``jid``."""
    arts, cits = [], []
    for k in range(n):
        aid = f"c{jid}{k}"
        arts.append((aid, "CITER", citing_year, ["US"], doc_type))
        cits.append((aid, jid, years[k % len(years)]))
    return arts, cits


def test_jif3_half():
    arts = cited_journal("J", 10)
    more, cits = citations_to("J", (2016, 2017, 2018), 15)
    c = build(arts + more, citations=cits)
    v = jif3(c, "J", 2019)
    assert (v.citable_items, v.citations, v.jif3) == (30, 15, 0.5)


def test_jif3_window_and_types():
    arts = cited_journal("J", 2, years=(2015, 2016, 2017, 2018))
    arts += [("u", "J", 2017, []), ("o", "J", 2017, ["RU"], "other")]
    arts += [("x", "X", 2019, [], "other"), ("y", "X", 2019, ["US"]), ("z", "X", 2018, ["US"])]
    cits = [
        ("x", "J", 2017),  # citing 'other' document still counts
        ("y", "J", 2015),  # outside the window
        ("y", "J", 2018),
        ("z", "J", 2017),  # citing year 2018, not 2019
    ]
    c = build(arts, citations=cits)
    v = jif3(c, "J", 2019)
    # 6 affiliated + 1 unaffiliated citable item in 2016-2018
    assert v.citable_items == 7
    assert v.citations == 2


def test_jif3_zero_and_undefined():
    c = build(cited_journal("J", 3))
    assert jif3(c, "J", 2019).jif3 == 0.0
    with pytest.raises(UndefinedValue):
        jif3(c, "J", 2016)


def impact_corpus(cites_per_journal, fields):
    """Journals with 10 items per year 2016-2018 and given citation counts in 2019."""
    arts, cits, journals = [], [], []
    for jid, n in cites_per_journal.items():
        arts += cited_journal(jid, 10)
        a, c = citations_to(jid, (2016, 2017, 2018), n)
        arts += a
        cits += c
        journals.append(journal(jid, fields=fields[jid]))
    journals.append(journal("CITER", fields=("FX",)))
    return build(arts, journals=journals, citations=cits)


def test_field_mean_arithmetic():
    c = impact_corpus({"A": 6, "B": 12, "C": 18}, {"A": ("F1",), "B": ("F1",), "C": ("F1",)})
    assert field_mean_jif(c, ["F1"], 2019) == pytest.approx(0.4)


def test_field_mean_deduplicates_shared_journal():
    c = impact_corpus({"A": 3, "S": 30, "B": 9}, {"A": ("F1",), "S": ("F1", "F2"), "B": ("F2",)})
    # pooled {A, S, B} = (0.1 + 1.0 + 0.3) / 3, not four values with S twice
    assert field_mean_jif(c, ["F1", "F2"], 2019) == pytest.approx(1.4 / 3)
    assert rjif(c, "S", 2019).rjif == pytest.approx(1.0 / (1.4 / 3))


def test_field_mean_undefined():
    c = build([("a", "J", 2019, ["RU"])], journals=[journal("J")])
    with pytest.raises(UndefinedValue):
        field_mean_jif(c, ["F1"], 2019)


def test_rjif_examples():
    c = impact_corpus({"A": 6, "B": 0, "C": 12, "Solo": 7}, {"A": ("F1",), "B": ("F1",), "C": ("F1",), "Solo": ("F9",)})
    assert rjif(c, "A", 2019).rjif == pytest.approx(1.0)
    assert rjif(c, "B", 2019).rjif == 0.0
    assert rjif(c, "Solo", 2019).rjif == pytest.approx(1.0)


def test_jif_map_shortcut_agrees():
    c = impact_corpus({"A": 6, "B": 1, "C": 12}, {"A": ("F1",), "B": ("F1", "F2"), "C": ("F2",)})
    jifs = jif_map(c, 2019)
    for j in ("A", "B", "C"):
        assert rjif(c, j, 2019, jifs) == rjif(c, j, 2019)


@given(st.dictionaries(st.sampled_from("ABCDEFGH"), st.tuples(st.integers(0, 40), st.sampled_from(("F1", "F2", "F3"))),
                       min_size=1))
def test_rjif_field_mean_is_one(spec):
    c = impact_corpus({j: n for j, (n, _) in spec.items()}, {j: (f,) for j, (_, f) in spec.items()})
    by_field = defaultdict(list)
    for j, (n, f) in spec.items():
        by_field[f].append((j, n))
    for members in by_field.values():
        if all(n == 0 for _, n in members):
            # field mean is zero, so relative impact is undefined
            with pytest.raises(UndefinedValue):
                rjif(c, members[0][0], 2019)
            continue
        vals = [rjif(c, j, 2019).rjif for j, _ in members]
        assert abs(sum(vals) / len(vals) - 1.0) <= 1e-9


def ratio_corpus():
    """10 journals 2010-2015; journal i is national in year y when i < 8 - (y - 2010)."""
    arts = []
    for i in range(10):
        for y in range(2010, 2016):
            national = i < 8 - (y - 2010)
            for k in range(4):
                cs = ["RU"] if national or k % 2 else ["US"]
                arts.append((f"J{i}-{y}-{k}", f"J{i}", y, cs))
    return build(arts)


def test_ratio_series_declines():
    pts = national_ratio_series(ratio_corpus(), range(2010, 2016))
    ratios = [p.ratio_journals for p in pts]
    assert ratios == pytest.approx([8 / 2, 7 / 3, 6 / 4, 5 / 5, 4 / 6, 3 / 7])
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert [p.ratio_articles for p in pts] == pytest.approx(ratios)


def test_ratio_all_national_is_null():
    c = build([(f"a{i}", f"J{i}", 2019, ["RU"]) for i in range(3)])
    assert national_ratio_series(c, [2019])[0].ratio_journals is None


def test_ratio_median_jif_symmetric():
    arts, cits = [], []
    for jid, n in {"N1": 3, "N2": 9, "X1": 3, "X2": 9}.items():
        for y in (2016, 2017, 2018, 2019):
            for k in range(10):
                cs = ["RU"] if jid.startswith("N") or k % 2 else ["US"]
                arts.append((f"{jid}-{y}-{k}", jid, y, cs))
        # citing documents of type other keep the citing journal out of the partition
        a, c = citations_to(jid, (2016, 2017, 2018), n, doc_type="other")
        arts += a
        cits += c
    pt = national_ratio_series(build(arts, citations=cits), [2019])[0]
    assert pt.ratio_journals == 1.0
    assert pt.ratio_articles == 1.0
    assert pt.ratio_median_jif == pytest.approx(1.0)
