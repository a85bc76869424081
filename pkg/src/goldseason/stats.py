"""Per-calendar-month mean returns with t-tests, and correlation matrices.

Significance testing conventions used throughout:

* A month's mean return is tested against zero with a two-sided one-sample
  Student t-test: t = (mean - mu0) / (s / sqrt(n)) with s the sample
  standard deviation (n-1 denominator) and df = n - 1.
* A Pearson correlation r over n pairs is tested with the transform
  t = r * sqrt((n - 2) / (1 - r^2)) with df = n - 2; |r| = 1 is assigned
  p = 0 by convention.
* Two-sided tail probabilities come from the regularized incomplete beta
  function, p = I_{df/(df+t^2)}(df/2, 1/2), accurate to well below 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy import special

from .errors import DataError, NumericError
from .series import ReturnSeries, SeriesPanel, to_returns

PRICES = "prices"
RETURNS = "returns"


class TTestResult(NamedTuple):
    t_stat: float
    df: int
    p_value: float


class CorrelationTest(NamedTuple):
    t_stat: float
    p_value: float
    significant: bool


@dataclass(frozen=True)
class MeanReturnStat:
    """Mean of one return bucket plus its test against a zero mean."""

    mean: float
    n: int
    t_stat: float
    p_value: float
    significant: bool


@dataclass(frozen=True)
class MonthlyReturnSummary:
    """Twelve calendar-month mean-return records plus an overall record."""

    currency: str
    alpha: float
    per_month: tuple[MeanReturnStat, ...]  # element i is calendar month i+1
    overall: MeanReturnStat

    def __post_init__(self) -> None:
        if len(self.per_month) != 12:
            raise DataError(f"per_month must have 12 records, got {len(self.per_month)}")
        if sum(rec.n for rec in self.per_month) != self.overall.n:
            raise DataError("per-month counts do not sum to the overall count")


def _two_sided_p(t_stat: float, df: int) -> float:
    """Two-sided Student-t tail probability via the incomplete beta function."""
    if math.isinf(t_stat):
        return 0.0
    return float(special.betainc(df / 2.0, 0.5, df / (df + t_stat * t_stat)))


def one_sample_ttest(sample: Sequence[float], mu0: float = 0.0) -> TTestResult:
    """Two-sided one-sample Student t-test of the mean against mu0.

    Returns (t_stat, df, p_value). Raises NumericError for samples with
    fewer than two observations or with zero variance ("constant sample").
    """
    x = np.asarray(sample, dtype=float)
    n = x.size
    if n < 2:
        raise NumericError(f"t-test needs at least 2 observations, got {n}")
    s = float(x.std(ddof=1))
    if s == 0.0:
        raise NumericError("constant sample: zero variance, t-test undefined")
    t_stat = float((x.mean() - mu0) / (s / math.sqrt(n)))
    df = n - 1
    return TTestResult(t_stat, df, _two_sided_p(t_stat, df))


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Product-moment correlation of two equal-length sequences."""
    ax = np.asarray(x, dtype=float)
    ay = np.asarray(y, dtype=float)
    if ax.size != ay.size:
        raise DataError(f"length mismatch: {ax.size} vs {ay.size}")
    if ax.size < 3:
        raise DataError(f"correlation needs at least 3 pairs, got {ax.size}")
    dx = ax - ax.mean()
    dy = ay - ay.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise NumericError("constant input: correlation undefined")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def correlation_significance(r: float, n: int, alpha: float = 0.05) -> CorrelationTest:
    """Test a correlation against zero via the t transform with df = n - 2."""
    if abs(r) > 1.0 + 1e-12:
        raise DataError(f"correlation {r} outside [-1, 1]")
    if n < 3:
        raise DataError(f"significance test needs n >= 3, got {n}")
    r = min(1.0, max(-1.0, r))
    if abs(r) == 1.0:
        t_stat = math.copysign(math.inf, r)
        return CorrelationTest(t_stat, 0.0, 0.0 < alpha)
    df = n - 2
    t_stat = r * math.sqrt(df / (1.0 - r * r))
    p = _two_sided_p(t_stat, df)
    return CorrelationTest(t_stat, p, p < alpha)


def monthly_mean_returns(returns: ReturnSeries, alpha: float = 0.05) -> MonthlyReturnSummary:
    """Group a return series by calendar month and test each mean against zero.

    Every calendar month must appear at least twice (the t-test needs
    n >= 2); violations raise DataError naming the month. The overall
    record covers all observations.
    """
    if not 0.0 < alpha < 1.0:
        raise DataError(f"alpha must be in (0, 1), got {alpha}")
    buckets: dict[int, list[float]] = {m: [] for m in range(1, 13)}
    for point in returns.points:
        buckets[point.stamp.month].append(point.value)

    per_month = []
    for month in range(1, 13):
        vals = buckets[month]
        if len(vals) < 2:
            raise DataError(
                f"calendar month {month} has {len(vals)} observation(s); at least 2 required"
            )
        try:
            t_stat, _, p = one_sample_ttest(vals)
        except NumericError as exc:
            raise NumericError(f"calendar month {month}: {exc}") from None
        per_month.append(MeanReturnStat(float(np.mean(vals)), len(vals), t_stat, p, p < alpha))

    all_vals = returns.values()
    t_stat, _, p = one_sample_ttest(all_vals)
    overall = MeanReturnStat(float(all_vals.mean()), int(all_vals.size), t_stat, p, p < alpha)
    return MonthlyReturnSummary(returns.currency, alpha, tuple(per_month), overall)


@dataclass(frozen=True)
class CorrelationMatrix:
    """Symmetric pairwise Pearson matrix with per-cell significance flags."""

    labels: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]
    p_values: tuple[tuple[float, ...], ...]
    significant: tuple[tuple[bool, ...], ...]
    n: int
    basis: str
    alpha: float

    def __post_init__(self) -> None:
        k = len(self.labels)
        if any(len(row) != k for row in self.values) or len(self.values) != k:
            raise DataError("correlation matrix is not square")
        for i in range(k):
            if abs(self.values[i][i] - 1.0) > 1e-12:
                raise DataError(f"diagonal entry for {self.labels[i]} is not 1")
            for j in range(k):
                v = self.values[i][j]
                if abs(v) > 1.0 + 1e-12:
                    raise DataError(f"correlation {v} outside [-1, 1]")
                if abs(v - self.values[j][i]) > 1e-12:
                    raise DataError("correlation matrix is not symmetric")

    def value(self, a: str, b: str) -> float:
        return self.values[self.labels.index(a)][self.labels.index(b)]


def correlation_matrix(panel: SeriesPanel, basis: str = PRICES, alpha: float = 0.05) -> CorrelationMatrix:
    """Pairwise Pearson correlations of panel series on prices or returns.

    Prices are correlated as raw levels, without detrending. The returns
    basis correlates the month-over-month return series instead.
    """
    if basis not in (PRICES, RETURNS):
        raise DataError(f"basis must be {PRICES!r} or {RETURNS!r}, got {basis!r}")
    if not 0.0 < alpha < 1.0:
        raise DataError(f"alpha must be in (0, 1), got {alpha}")
    if len(panel) < 2:
        raise DataError("correlation matrix needs at least 2 series")
    if basis == PRICES:
        data = [s.prices() for s in panel.series]
    else:
        data = [to_returns(s).values() for s in panel.series]
    n = int(data[0].size)
    k = len(data)

    values = [[1.0] * k for _ in range(k)]
    p_values = [[0.0] * k for _ in range(k)]
    significant = [[True] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            r = pearson(data[i], data[j])
            test = correlation_significance(r, n, alpha)
            values[i][j] = values[j][i] = r
            p_values[i][j] = p_values[j][i] = test.p_value
            significant[i][j] = significant[j][i] = test.significant
    return CorrelationMatrix(
        labels=panel.currencies,
        values=tuple(tuple(row) for row in values),
        p_values=tuple(tuple(row) for row in p_values),
        significant=tuple(tuple(row) for row in significant),
        n=n,
        basis=basis,
        alpha=alpha,
    )
