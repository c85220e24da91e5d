"""Seeded synthetic corpora with controllable national-orientation dynamics.

A scenario is a set of journal groups. Each group fixes how many journals it
has, when they enter, how many articles they publish per year and how the share
of their home country moves over time, either as a linear drift with noise or as
a class-level random walk (see :mod:`natorient.nullmodel`). Article counts are a
deterministic function of the configuration; only affiliations and citations
are drawn from the generator.

Scenario files are INI-style ``key = value`` text: one ``[scenario]`` section
and one ``[group:<name>]`` section per journal group. List values are
comma-separated. See ``scenarios/`` for examples.
"""
from __future__ import annotations

import configparser
import csv
import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .corpus import (
    ARTICLE_COLUMNS,
    CITATION_COLUMNS,
    DISCIPLINES,
    JOURNAL_COLUMNS,
    LANGUAGES,
    ArticleRecord,
    CitationRecord,
    Corpus,
    JournalRecord,
)
from .nullmodel import WalkConfig, sample_paths

RNG_ALGORITHM = "numpy.random.PCG64"

# ISO-3166 alpha-2 codes used as the default country pool.
DEFAULT_COUNTRIES = (
    "RU", "UA", "PL", "CZ", "HU", "RO", "BG", "RS", "HR", "SI",
    "SK", "LT", "LV", "EE", "BY", "MD", "GE", "AM", "AZ", "KZ",
    "UZ", "US", "CN", "GB", "DE", "FR", "IT", "ES", "JP", "IN",
    "BR", "NL", "SE", "CH", "CA", "AU", "KR", "TR", "IR", "MX",
)
CITABLE = ("article", "review", "proceedings_paper", "short_survey")
CITABLE_WEIGHTS = (0.85, 0.10, 0.03, 0.02)


class ScenarioError(ValueError):
    """Infeasible or malformed scenario."""


@dataclass(frozen=True)
class JournalGroup:
    name: str = "journals"
    n_journals: int = 10
    entry_from: int = 1997
    entry_to: int = 2010
    home_countries: tuple[str, ...] = ()  # cycled over the group's journals; empty = country pool
    articles_per_year: float = 20.0
    articles_growth: float = 0.0  # additive change per year since entry
    dynamics: str = "drift"  # "drift" or "walk"
    top_share: float = 0.9
    top_share_drift: float = 0.0
    top_share_noise: float = 0.0
    walk_start_class: int | None = None
    repeat_prob: float = 0.0  # home affiliation listed twice
    collab_prob: float = 0.0  # one extra affiliation from another country
    unaffiliated_share: float = 0.0
    citation_rate: float = 0.5  # expected citations per citable item in the 3-year window
    citation_growth: float = 0.0  # relative growth per year
    citing_top_share: float = 0.9
    citing_drift: float = 0.0
    field_ids: tuple[str, ...] = ("F1",)
    discipline: str = "natural_sci"
    languages: str = "non_english"
    open_access: bool = False


@dataclass(frozen=True)
class ScenarioConfig:
    seed: int = 0
    first_year: int = 1996
    last_year: int = 2019
    countries: tuple[str, ...] = DEFAULT_COUNTRIES
    walk_classes: int = 10
    groups: tuple[JournalGroup, ...] = field(default_factory=lambda: (JournalGroup(),))


def _articles_in_year(g: JournalGroup, t: int) -> int:
    return int(math.floor(g.articles_per_year + g.articles_growth * t + 0.5))


def _clip01(x):
    return min(1.0, max(0.0, x))


def validate_config(cfg: ScenarioConfig) -> None:
    if cfg.first_year > cfg.last_year:
        raise ScenarioError("first_year after last_year")
    if len(set(cfg.countries)) < 2:
        raise ScenarioError("need at least two distinct countries")
    names = [g.name for g in cfg.groups]
    if len(set(names)) != len(names):
        raise ScenarioError("group names must be unique")
    for g in cfg.groups:
        if not cfg.first_year <= g.entry_from <= g.entry_to <= cfg.last_year:
            raise ScenarioError(f"group {g.name}: entry window outside the corpus years")
        if g.n_journals < 0:
            raise ScenarioError(f"group {g.name}: negative n_journals")
        if g.dynamics not in ("drift", "walk"):
            raise ScenarioError(f"group {g.name}: unknown dynamics {g.dynamics!r}")
        if g.discipline not in DISCIPLINES or g.languages not in LANGUAGES:
            raise ScenarioError(f"group {g.name}: bad discipline or languages")
        if not g.field_ids:
            raise ScenarioError(f"group {g.name}: field_ids empty")
        for c in g.home_countries:
            if c not in cfg.countries:
                raise ScenarioError(f"group {g.name}: home country {c} not in the pool")
        span = cfg.last_year - g.entry_from
        for t in (0, span):
            if _articles_in_year(g, t) < 0:
                raise ScenarioError(f"group {g.name}: negative article count")
            for label, base, drift in (
                ("top_share", g.top_share, g.top_share_drift),
                ("citing_top_share", g.citing_top_share, g.citing_drift),
            ):
                if not 0.0 <= base + drift * t <= 1.0:
                    raise ScenarioError(f"group {g.name}: {label} leaves [0, 1]")
        for label in ("repeat_prob", "collab_prob", "unaffiliated_share"):
            if not 0.0 <= getattr(g, label) <= 1.0:
                raise ScenarioError(f"group {g.name}: {label} outside [0, 1]")
        if g.top_share_noise < 0 or g.citation_rate < 0:
            raise ScenarioError(f"group {g.name}: negative noise or citation rate")
        if g.dynamics == "walk":
            n_min = min(_articles_in_year(g, t) for t in range(span + 1))
            k = cfg.walk_classes
            if n_min < k:
                raise ScenarioError(f"group {g.name}: walk needs >= {k} articles per year")
            # lowest class: top count floor(n/k); foreign countries must not exceed it
            foreign = len(set(cfg.countries)) - 1
            top = n_min // k
            if math.ceil((n_min - top) / foreign) > top:
                raise ScenarioError(f"group {g.name}: country pool too small for the walk")


@dataclass
class GeneratedCorpus:
    config: ScenarioConfig
    articles: list[ArticleRecord]
    journals: list[JournalRecord]
    citations: list[CitationRecord]
    group_of: dict[str, str]  # journal -> group name
    home_of: dict[str, str]  # journal -> home country
    entry_of: dict[str, int]
    walk_paths: dict[str, np.ndarray] = field(default_factory=dict)

    def to_corpus(self) -> Corpus:
        return Corpus(
            self.articles,
            self.journals,
            self.citations,
            year_range=(self.config.first_year, self.config.last_year),
        )

    def header(self) -> str:
        return f"# generator: natorient {__version__} rng={RNG_ALGORITHM} seed={self.config.seed}\n"

    def write(self, out_dir) -> dict[str, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = {k: out / f"{k}.csv" for k in ("articles", "journals", "citations")}
        with open(paths["articles"], "w", newline="", encoding="utf-8") as fh:
            fh.write(self.header())
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(ARTICLE_COLUMNS)
            for a in self.articles:
                w.writerow((a.article_id, a.journal_id, a.year, a.doc_type, ";".join(a.countries)))
        with open(paths["journals"], "w", newline="", encoding="utf-8") as fh:
            fh.write(self.header())
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(JOURNAL_COLUMNS)
            for j in self.journals:
                w.writerow(
                    (
                        j.journal_id,
                        j.languages,
                        "true" if j.open_access else "false",
                        ";".join(sorted(j.field_ids)),
                        j.discipline,
                    )
                )
        with open(paths["citations"], "w", newline="", encoding="utf-8") as fh:
            fh.write(self.header())
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CITATION_COLUMNS)
            for c in self.citations:
                w.writerow((c.citing_article_id, c.cited_journal_id, c.cited_pub_year))
        return paths


def _drift_countries(g, home, foreign, share, rng) -> tuple[str, ...]:
    if g.unaffiliated_share and rng.random() < g.unaffiliated_share:
        return ()
    first = home if rng.random() < share else foreign[rng.integers(len(foreign))]
    out = [first]
    if g.repeat_prob and rng.random() < g.repeat_prob:
        out.append(first)
    if g.collab_prob and rng.random() < g.collab_prob:
        out.append(foreign[rng.integers(len(foreign))] if first == home else home)
    return tuple(out)


def _walk_countries(n, cls, n_classes, home, foreign, rng) -> list[tuple[str, ...]]:
    top = n * cls // n_classes
    lists = [(home,)] * top
    offset = int(rng.integers(len(foreign)))
    lists += [(foreign[(offset + i) % len(foreign)],) for i in range(n - top)]
    order = rng.permutation(n)
    return [lists[i] for i in order]


def _group_walks(config, g, rng) -> dict[int, np.ndarray]:
    """Class paths for every journal of a walk group, batched by entry year."""
    n_entry = g.entry_to - g.entry_from + 1
    out = {}
    for e in range(g.entry_from, g.entry_to + 1):
        size = len(range(e - g.entry_from, g.n_journals, n_entry))
        wc = WalkConfig(
            steps=max(config.last_year - e, 1),
            num_classes=config.walk_classes,
            start_class=g.walk_start_class,
        )
        out[e] = sample_paths(wc, size, rng)
    return out


def generate(config: ScenarioConfig) -> GeneratedCorpus:
    """Build a corpus from a scenario; identical configs give identical output."""
    validate_config(config)
    rng = np.random.Generator(np.random.PCG64(config.seed))
    pool = tuple(dict.fromkeys(config.countries))
    doc_cdf = np.cumsum(CITABLE_WEIGHTS)

    articles, journals = [], []
    group_of, home_of, entry_of, walk_paths = {}, {}, {}, {}
    gen_info = {}  # journal -> (group, counts per year)
    for g in config.groups:
        homes = g.home_countries or pool
        n_entry = g.entry_to - g.entry_from + 1
        paths = _group_walks(config, g, rng) if g.dynamics == "walk" else None
        for i in range(g.n_journals):
            jid = f"{g.name}-{i:05d}"
            # the home cycle shifts after each pass over the entry years, so
            # entry year and home country do not lock together
            home = homes[(i + i // n_entry) % len(homes)]
            foreign = tuple(c for c in pool if c != home)
            entry = g.entry_from + (i % n_entry)
            span = config.last_year - entry
            journals.append(
                JournalRecord(jid, g.languages, g.open_access, frozenset(g.field_ids), g.discipline)
            )
            group_of[jid], home_of[jid], entry_of[jid] = g.name, home, entry
            counts = {entry + t: _articles_in_year(g, t) for t in range(span + 1)}
            gen_info[jid] = (g, counts)

            if paths is not None:
                path = paths[entry][i // n_entry][: span + 1]
                walk_paths[jid] = path
            for t in range(span + 1):
                y = entry + t
                n = counts[y]
                if g.dynamics == "walk":
                    lists = _walk_countries(n, int(path[t]), config.walk_classes, home, foreign, rng)
                else:
                    share = g.top_share + g.top_share_drift * t
                    if g.top_share_noise:
                        share += g.top_share_noise * rng.standard_normal()
                    share = _clip01(share)
                    lists = [_drift_countries(g, home, foreign, share, rng) for _ in range(n)]
                kinds = np.searchsorted(doc_cdf, rng.random(n) * doc_cdf[-1], side="right")
                for k in range(n):
                    articles.append(
                        ArticleRecord(f"{jid}-{y}-{k:04d}", jid, y, CITABLE[min(kinds[k], 3)], lists[k])
                    )

    citations = _citations(config, articles, gen_info, home_of, entry_of, rng)
    return GeneratedCorpus(config, articles, journals, citations, group_of, home_of, entry_of, walk_paths)


def _citations(config, articles, gen_info, home_of, entry_of, rng) -> list[CitationRecord]:
    if not any(g.citation_rate > 0 for g, _ in gen_info.values()):
        return []
    by_year: dict[int, list[ArticleRecord]] = {}
    by_year_country: dict[tuple[int, str], list[ArticleRecord]] = {}
    for a in articles:
        by_year.setdefault(a.year, []).append(a)
        for c in set(a.countries):
            by_year_country.setdefault((a.year, c), []).append(a)

    out = []
    for jid, (g, counts) in gen_info.items():
        if g.citation_rate <= 0:
            continue
        home, entry = home_of[jid], entry_of[jid]
        for y in range(entry + 1, config.last_year + 1):
            window = [(py, counts[py]) for py in range(max(entry, y - 3), y) if counts.get(py)]
            items = sum(n for _, n in window)
            if not items or y not in by_year:
                continue
            lam = g.citation_rate * (1.0 + g.citation_growth) ** (y - entry) * items
            n_cites = int(rng.poisson(lam))
            if not n_cites:
                continue
            q = _clip01(g.citing_top_share + g.citing_drift * (y - entry))
            years = np.array([py for py, _ in window])
            w = np.array([n for _, n in window], dtype=float)
            cited_years = rng.choice(years, size=n_cites, p=w / w.sum())
            home_pool = by_year_country.get((y, home), [])
            everyone = by_year[y]
            for py in cited_years:
                if home_pool and rng.random() < q:
                    citer = home_pool[rng.integers(len(home_pool))]
                else:
                    citer = everyone[rng.integers(len(everyone))]
                    for _ in range(20):
                        if home not in citer.countries:
                            break
                        citer = everyone[rng.integers(len(everyone))]
                out.append(CitationRecord(citer.article_id, jid, int(py)))
    return out


# ---------------------------------------------------------------------------
# scenario files


def _convert(value: str, ftype):
    t = str(ftype)
    if "tuple" in t:
        return tuple(v.strip() for v in value.split(",") if v.strip())
    if "bool" in t:
        v = value.strip().lower()
        if v not in ("true", "false", "yes", "no", "1", "0"):
            raise ScenarioError(f"not a boolean: {value!r}")
        return v in ("true", "yes", "1")
    if "int | None" in t:
        return None if value.strip().lower() in ("", "none") else int(value)
    if t == "int":
        return int(value)
    if t == "float":
        return float(value)
    return value.strip()


def _fill(cls, section, extra=None):
    kwargs = dict(extra or {})
    known = {f.name: f for f in dataclasses.fields(cls)}
    for key, value in section.items():
        if key not in known:
            raise ScenarioError(f"unknown key {key!r} for {cls.__name__}")
        try:
            kwargs[key] = _convert(value, known[key].type)
        except ValueError as e:
            raise ScenarioError(f"{key}: {e}") from None
    return cls(**kwargs)


def load_scenario(path) -> ScenarioConfig:
    parser = configparser.ConfigParser(interpolation=None, default_section="__none__")
    parser.optionxform = str
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    if "scenario" not in parser:
        raise ScenarioError("scenario file needs a [scenario] section")
    groups = []
    for name in parser.sections():
        if name.startswith("group:"):
            groups.append(_fill(JournalGroup, parser[name], {"name": name.split(":", 1)[1].strip()}))
        elif name != "scenario":
            raise ScenarioError(f"unknown section [{name}]")
    base = dict(parser["scenario"])
    if "groups" in base:
        raise ScenarioError("groups are given as [group:<name>] sections")
    cfg = _fill(ScenarioConfig, base)
    if groups:
        cfg = dataclasses.replace(cfg, groups=tuple(groups))
    validate_config(cfg)
    return cfg


def scenario_to_text(cfg: ScenarioConfig) -> str:
    """Inverse of :func:`load_scenario` (round-trips every field)."""

    def fmt(v):
        if isinstance(v, tuple):
            return ", ".join(v)
        if isinstance(v, bool):
            return "true" if v else "false"
        if v is None:
            return "none"
        return repr(v) if isinstance(v, float) else str(v)

    lines = ["[scenario]"]
    for f in dataclasses.fields(ScenarioConfig):
        if f.name != "groups":
            lines.append(f"{f.name} = {fmt(getattr(cfg, f.name))}")
    for g in cfg.groups:
        lines += ["", f"[group:{g.name}]"]
        for f in dataclasses.fields(JournalGroup):
            if f.name != "name":
                lines.append(f"{f.name} = {fmt(getattr(g, f.name))}")
    return "\n".join(lines) + "\n"


def walk_scenario(
    n_journals: int, steps: int, *, seed: int = 0, entry_year: int = 2002, articles_per_year: int = 10
) -> ScenarioConfig:
    """Journals entering in one year whose INO-P class follows the bordered walk."""
    g = JournalGroup(
        name="walk",
        n_journals=n_journals,
        entry_from=entry_year,
        entry_to=entry_year,
        articles_per_year=articles_per_year,
        dynamics="walk",
        citation_rate=0.0,
    )
    return ScenarioConfig(seed=seed, first_year=entry_year, last_year=entry_year + steps, groups=(g,))


def group_members(gen: GeneratedCorpus, name: str) -> list[str]:
    return sorted(j for j, g in gen.group_of.items() if g == name)


def realized_counts(gen: GeneratedCorpus) -> dict[tuple[str, int], int]:
    out: dict[tuple[str, int], int] = {}
    for a in gen.articles:
        out[(a.journal_id, a.year)] = out.get((a.journal_id, a.year), 0) + 1
    return out


def configured_counts(gen: GeneratedCorpus) -> dict[tuple[str, int], int]:
    cfg = gen.config
    groups = {g.name: g for g in cfg.groups}
    out = {}
    for j, e in gen.entry_of.items():
        g = groups[gen.group_of[j]]
        for y in range(e, cfg.last_year + 1):
            n = _articles_in_year(g, y - e)
            if n:
                out[(j, y)] = n
    return out


__all__: Sequence[str] = (
    "JournalGroup",
    "ScenarioConfig",
    "ScenarioError",
    "GeneratedCorpus",
    "generate",
    "load_scenario",
    "scenario_to_text",
    "walk_scenario",
)
