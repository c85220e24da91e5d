"""Bordered symmetric random walk over INO-P classes as a regression-to-the-mean baseline.

Each year a journal's class moves up one, stays, or moves down one; at the top
and bottom classes only the two moves staying inside the lattice exist. Every
complete path is equally likely, so probabilities are path counts over the total
number of paths (not products of per-step transition probabilities).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np
from scipy import stats as _sps

from .corpus import Corpus, entry_year
from .errors import UndefinedValue
from .indicators import ino_p


@dataclass(frozen=True)
class WalkConfig:
    steps: int
    num_classes: int = 10
    start_class: int | None = None  # defaults to the top class

    def __post_init__(self):
        if self.num_classes < 1:
            raise ValueError("num_classes must be >= 1")
        if self.start_class is None:
            object.__setattr__(self, "start_class", self.num_classes)
        if not 1 <= self.start_class <= self.num_classes:
            raise ValueError(f"start_class must lie in [1, {self.num_classes}]")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")


@dataclass(frozen=True)
class WalkDistribution:
    config: WalkConfig
    path_counts: Mapping[int, int]  # net decline -> number of paths
    total_paths: int
    end_class_counts: Mapping[int, int] = field(repr=False, default_factory=dict)

    @property
    def probabilities(self) -> dict[int, Fraction]:
        return {d: Fraction(n, self.total_paths) for d, n in self.path_counts.items()}

    def probability(self, net_decline: int) -> Fraction:
        return Fraction(self.path_counts.get(net_decline, 0), self.total_paths)


def successors(c: int, num_classes: int) -> tuple[int, ...]:
    return tuple(x for x in (c + 1, c, c - 1) if 1 <= x <= num_classes)


def walk_distribution(config: WalkConfig) -> WalkDistribution:
    """Exact path counts per net decline (start class minus end class)."""
    n = config.num_classes
    ways = [0] * (n + 2)
    ways[config.start_class] = 1
    for _ in range(config.steps):
        nxt = [0] * (n + 2)
        for c in range(1, n + 1):
            if ways[c]:
                for s in successors(c, n):
                    nxt[s] += ways[c]
        ways = nxt
    ends = {c: ways[c] for c in range(1, n + 1) if ways[c]}
    counts = {config.start_class - c: k for c, k in ends.items()}
    return WalkDistribution(
        config=config,
        path_counts=dict(sorted(counts.items())),
        total_paths=sum(ends.values()),
        end_class_counts=ends,
    )


def completions(config: WalkConfig) -> np.ndarray:
    """``rem[s, c]``: number of ways to finish a path from class ``c`` after ``s`` steps."""
    n, steps = config.num_classes, config.steps
    rem = np.zeros((steps + 1, n + 2), dtype=object)
    rem[steps, 1 : n + 1] = 1
    for s in range(steps - 1, -1, -1):
        for c in range(1, n + 1):
            rem[s, c] = sum(rem[s + 1, x] for x in successors(c, n))
    return rem


def sample_paths(config: WalkConfig, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` complete paths uniformly; returns classes of shape (size, steps + 1)."""
    n, steps = config.num_classes, config.steps
    rem = completions(config).astype(float)
    paths = np.empty((size, steps + 1), dtype=np.int64)
    paths[:, 0] = config.start_class
    for s in range(steps):
        cur = paths[:, s]
        moves = np.array([1, 0, -1])
        cand = cur[:, None] + moves[None, :]
        ok = (cand >= 1) & (cand <= n)
        w = np.where(ok, rem[s + 1][np.clip(cand, 0, n + 1)], 0.0)
        cdf = np.cumsum(w, axis=1)
        u = rng.random(size) * cdf[:, -1]
        pick = (u[:, None] >= cdf).sum(axis=1)
        paths[:, s + 1] = cand[np.arange(size), pick]
    return paths


def ino_class(value: float, num_classes: int = 10) -> int:
    """Class c covers ((c-1)*w, c*w] with w = 100/num_classes; 0 falls in class 1."""
    return min(num_classes, max(1, math.ceil(value * num_classes / 100.0)))


def empirical_net_decline(
    corpus: Corpus,
    cohort: Iterable[str],
    min_begin_class: int = 10,
    end_year: int = 2019,
    num_classes: int = 10,
) -> dict[int, int]:
    """Histogram of (class in entry year - class in end year) over the cohort.

    Journals lacking INO-P in either year are skipped.
    """
    hist: dict[int, int] = {}
    for j in sorted(set(cohort)):
        try:
            begin = ino_class(ino_p(corpus, j, entry_year(corpus, j)).value, num_classes)
            end = ino_class(ino_p(corpus, j, end_year).value, num_classes)
        except UndefinedValue:
            continue
        if begin < min_begin_class:
            continue
        hist[begin - end] = hist.get(begin - end, 0) + 1
    if not hist:
        raise UndefinedValue("no journal passes the begin-class filter")
    return dict(sorted(hist.items()))


@dataclass(frozen=True)
class Comparison:
    rows: tuple[tuple[int, float, float], ...]  # (net decline, model %, empirical %)
    n_empirical: int
    tv_distance: float
    chi2: float | None
    chi2_df: int | None
    chi2_p: float | None


def _chi_square(bins, n):
    groups = []
    e_acc = o_acc = 0.0
    for _, p, o in bins:
        e_acc += n * p
        o_acc += o
        if e_acc >= 5:
            groups.append([e_acc, o_acc])
            e_acc = o_acc = 0.0
    if e_acc or o_acc:
        if groups:
            groups[-1][0] += e_acc
            groups[-1][1] += o_acc
        else:
            groups.append([e_acc, o_acc])
    if len(groups) < 2:
        return None, None, None
    stat = sum((o - e) ** 2 / e for e, o in groups)
    df = len(groups) - 1
    return stat, df, float(_sps.chi2.sf(stat, df))


def compare_distributions(model: WalkDistribution, empirical: Mapping[int, int]) -> Comparison:
    """Side-by-side percentages, total variation distance and a chi-square statistic.

    Chi-square bins are merged from the low end upwards until each holds an
    expected count of at least 5; a short remainder joins the last bin.
    """
    n = sum(empirical.values())
    if n == 0 or model.total_paths == 0:
        raise UndefinedValue("empty distribution")
    probs = model.probabilities
    support = sorted(set(probs) | set(empirical))
    bins = [(d, probs.get(d, Fraction(0)), empirical.get(d, 0)) for d in support]
    tv = sum(abs(Fraction(o, n) - p) for _, p, o in bins) / 2
    rows = tuple((d, 100.0 * float(p), 100.0 * o / n) for d, p, o in bins)
    stat, df, pval = _chi_square([(d, float(p), o) for d, p, o in bins], n)
    return Comparison(rows, n, float(tv), stat, df, pval)
