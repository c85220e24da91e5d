"""Independent reference computations used to check the library.

Each oracle works from raw records or textbook formulas and shares no code
with the implementation it checks.
"""
import itertools
import math
from fractions import Fraction

from scipy import special


def brute_ino(articles, journal_id, year, countryships=False):
    """(value, top_country) by scanning every raw article record."""
    tally = {}
    denom = 0
    for a in articles:
        if a.journal_id != journal_id or a.year != year or not a.countries:
            continue
        if a.doc_type == "other":
            continue
        if countryships:
            for c in a.countries:
                tally[c] = tally.get(c, 0) + 1
                denom += 1
        else:
            denom += 1
            for c in set(a.countries):
                tally[c] = tally.get(c, 0) + 1
    if denom == 0:
        return None
    best = max(tally.values())
    top = sorted(c for c in tally if tally[c] == best)[0]
    return 100.0 * best / denom, top


def brute_ino_c(articles, citations, journal_id, year):
    by_id = {a.article_id: a for a in articles}
    citing = set()
    for c in citations:
        a = by_id[c.citing_article_id]
        if c.cited_journal_id == journal_id and a.year == year and a.countries:
            citing.add(a.article_id)
    if not citing:
        return None
    tally = {}
    for aid in citing:
        for c in set(by_id[aid].countries):
            tally[c] = tally.get(c, 0) + 1
    best = max(tally.values())
    return 100.0 * best / len(citing), sorted(c for c in tally if tally[c] == best)[0]


def brute_ai(articles, country, journal_id, year):
    in_j = [a for a in articles if a.journal_id == journal_id and a.year == year and a.countries
            and a.doc_type != "other"]
    in_db = [a for a in articles if a.year == year and a.countries and a.doc_type != "other"]
    j_share = sum(country in a.countries for a in in_j) / len(in_j)
    db_share = sum(country in a.countries for a in in_db) / len(in_db)
    return j_share / db_share


def ols_t_test(xs, ys):
    """Textbook OLS slope and two-sided p-value via the regularized incomplete beta."""
    n = len(xs)
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    b = sxy / sxx
    a = my - b * mx
    sse = math.fsum((y - a - b * x) ** 2 for x, y in zip(xs, ys))
    df = n - 2
    t = b / math.sqrt(sse / df / sxx)
    # P(|T| > t) = I_{df/(df+t^2)}(df/2, 1/2); near t = 0 use the complement,
    # 1 - I_{t^2/(df+t^2)}(1/2, df/2), which keeps full absolute accuracy
    t2 = t * t
    if t2 < df:
        p = 1.0 - special.betainc(0.5, df / 2.0, t2 / (df + t2))
    else:
        p = special.betainc(df / 2.0, 0.5, df / (df + t2))
    return b, a, float(p)


def pearson(xs, ys):
    n = len(xs)
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    cov = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = math.fsum((x - mx) ** 2 for x in xs)
    vy = math.fsum((y - my) ** 2 for y in ys)
    return cov / math.sqrt(vx * vy)


def enumerate_walks(steps, num_classes=10, start=None):
    """Net-decline distribution by listing every admissible move sequence."""
    start = num_classes if start is None else start
    counts = {}
    for moves in itertools.product((1, 0, -1), repeat=steps):
        c = start
        ok = True
        for m in moves:
            c += m
            if not 1 <= c <= num_classes:
                ok = False
                break
        if ok:
            counts[start - c] = counts.get(start - c, 0) + 1
    total = sum(counts.values())
    return {d: Fraction(n, total) for d, n in sorted(counts.items())}, total
