"""Statistical primitives: median, OLS trend with slope t-test, streaming Pearson correlation."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import stats as _sps

from .errors import UndefinedValue


def median(values: Iterable[float]) -> float:
    """Median; an even-sized multiset gives the mean of the two central values."""
    v = sorted(values)
    n = len(v)
    if n == 0:
        raise UndefinedValue("median of an empty set")
    mid = n // 2
    if n % 2:
        return float(v[mid])
    return (v[mid - 1] + v[mid]) / 2.0


class Verdict(str, enum.Enum):
    SIG_INCREASE = "sig_increase"
    SIG_DECLINE = "sig_decline"
    NOT_SIGNIFICANT = "not_significant"


@dataclass(frozen=True)
class TrendResult:
    slope: float
    intercept: float
    growth_rate: float | None
    p_value: float
    verdict: Verdict
    n_points: int


def fit_trend(series: Sequence[tuple[float, float]], alpha: float = 0.01) -> TrendResult:
    """OLS of value on year with a two-sided t-test on the slope (n - 2 df).

    ``growth_rate`` is the slope divided by the mean value (``None`` when the mean is 0).
    """
    if len(series) < 3:
        raise UndefinedValue(f"trend needs at least 3 points, got {len(series)}")
    arr = np.asarray(series, dtype=float)
    x, y = arr[:, 0], arr[:, 1]
    if np.isnan(arr).any():
        raise UndefinedValue("trend series contains missing values")
    xm, ym = x.mean(), y.mean()
    dx = x - xm
    sxx = float(dx @ dx)
    if sxx == 0:
        raise UndefinedValue("trend needs at least two distinct years")
    slope = float(dx @ (y - ym)) / sxx
    intercept = float(ym - slope * xm)
    resid = y - ym - slope * dx
    sse = float(resid @ resid)
    df = len(series) - 2

    if slope == 0.0:
        p = 1.0
    elif sse == 0.0:
        p = 0.0
    else:
        t = slope / math.sqrt(sse / df / sxx)
        p = float(2.0 * _sps.t.sf(abs(t), df))

    if p < alpha:
        verdict = Verdict.SIG_INCREASE if slope > 0 else Verdict.SIG_DECLINE
    else:
        verdict = Verdict.NOT_SIGNIFICANT
    growth = slope / float(ym) if ym != 0 else None
    return TrendResult(slope, intercept, growth, p, verdict, len(series))


class CoMoments:
    """Running means and co-moment matrix, mergeable across chunks.

    Batches are combined with the pairwise update of Chan, Golub and LeVeque so
    large tables can be streamed without holding every row.
    """

    def __init__(self, dim: int):
        self.n = 0
        self.mean = np.zeros(dim)
        self.m2 = np.zeros((dim, dim))

    def update(self, block) -> "CoMoments":
        block = np.atleast_2d(np.asarray(block, dtype=float))
        if block.shape[0] == 0:
            return self
        other = CoMoments(block.shape[1])
        other.n = block.shape[0]
        other.mean = block.mean(axis=0)
        centered = block - other.mean
        other.m2 = centered.T @ centered
        return self.merge(other)

    def merge(self, other: "CoMoments") -> "CoMoments":
        if other.n == 0:
            return self
        n = self.n + other.n
        delta = other.mean - self.mean
        self.m2 = self.m2 + other.m2 + np.outer(delta, delta) * (self.n * other.n / n)
        self.mean = self.mean + delta * (other.n / n)
        self.n = n
        return self

    def correlation(self) -> np.ndarray:
        var = np.diag(self.m2).copy()
        if np.any(var <= 0):
            raise UndefinedValue("zero variance in a column")
        sd = np.sqrt(var)
        r = self.m2 / np.outer(sd, sd)
        r = np.clip((r + r.T) / 2.0, -1.0, 1.0)
        np.fill_diagonal(r, 1.0)
        return r


@dataclass(frozen=True)
class PearsonResult:
    matrix: np.ndarray
    n_rows: int
    n_dropped: int


def pearson_matrix(rows: Iterable[Sequence[float | None]], chunk: int = 4096) -> PearsonResult:
    """Sample Pearson correlations between columns; rows with any missing cell are dropped."""
    acc = None
    dropped = 0
    buf = []

    def flush():
        nonlocal acc
        if buf:
            if acc is None:
                acc = CoMoments(len(buf[0]))
            acc.update(buf)
            buf.clear()

    for row in rows:
        if any(v is None or (isinstance(v, float) and math.isnan(v)) for v in row):
            dropped += 1
            continue
        buf.append([float(v) for v in row])
        if len(buf) >= chunk:
            flush()
    flush()
    if acc is None or acc.n < 3:
        raise UndefinedValue(f"need at least 3 complete rows, got {0 if acc is None else acc.n}")
    return PearsonResult(acc.correlation(), acc.n, dropped)
