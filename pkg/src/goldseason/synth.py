"""Deterministic synthetic series generation and a naive reference decomposition.

`generate_series` realizes trend * season * noise (or trend + season +
noise) forward from explicit parameters, so decomposition tests can treat
those parameters as ground truth. Randomness comes from numpy's PCG64
generator seeded from the spec, which makes every series a pure function
of its spec and reproducible across platforms.

`reference_decompose` re-implements the decomposition pipeline with plain
Python loops, exact summation (math.fsum) and an explicitly solved 2x2
normal-equation OLS. It shares no numeric code with
`goldseason.decompose.decompose` and exists so the two routes can be
checked against each other; it is not meant for production use.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

import numpy as np

from .decompose import (
    MEDIAN,
    MULTIPLICATIVE,
    AccuracyMetrics,
    DecompositionResult,
    SeasonalIndices,
    TrendLine,
    _check_aggregator,
    _check_model,
    _coerce,
)
from .errors import DataError
from .series import MonthStamp, PricePoint, PriceSeries


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of one synthetic monthly series.

    Indices are normalized at construction (mean 1 for multiplicative,
    sum 0 for additive). noise_sd is the standard deviation of the noise:
    lognormal with median 1 and log-sd noise_sd for multiplicative,
    Gaussian with mean 0 and sd noise_sd for additive.
    """

    model: str
    intercept: float
    slope: float
    indices: tuple[float, ...]
    noise_sd: float = 0.0
    length: int = 240
    seed: int = 0
    start: MonthStamp = field(default_factory=lambda: MonthStamp(2000, 1))
    currency: str = "SYN"

    def __post_init__(self) -> None:
        _check_model(self.model)
        if len(self.indices) != 12:
            raise DataError(f"need 12 seasonal indices, got {len(self.indices)}")
        if self.length < 24:
            raise DataError(f"length must be at least 24, got {self.length}")
        if self.noise_sd < 0.0:
            raise DataError(f"noise_sd must be >= 0, got {self.noise_sd}")
        if self.model == MULTIPLICATIVE and min(self.indices) <= 0.0:
            raise DataError("multiplicative indices must be positive")
        normalized = SeasonalIndices.from_values(self.model, self.indices).values
        object.__setattr__(self, "indices", normalized)


def generate_series(spec: GeneratorSpec) -> PriceSeries:
    """Generate the monthly series described by a GeneratorSpec.

    The same spec (including seed) always yields a bit-identical series.
    Raises DataError when the generated values are not strictly positive,
    since a PriceSeries cannot hold them.
    """
    t = np.arange(1, spec.length + 1, dtype=float)
    stamps = [spec.start.shift(i) for i in range(spec.length)]
    months = np.array([s.month for s in stamps])
    trend = spec.intercept + spec.slope * t
    season = np.asarray(spec.indices)[months - 1]

    if spec.model == MULTIPLICATIVE:
        values = trend * season
        if spec.noise_sd > 0.0:
            rng = np.random.Generator(np.random.PCG64(spec.seed))
            values = values * np.exp(rng.normal(0.0, spec.noise_sd, spec.length))
    else:
        values = trend + season
        if spec.noise_sd > 0.0:
            rng = np.random.Generator(np.random.PCG64(spec.seed))
            values = values + rng.normal(0.0, spec.noise_sd, spec.length)

    if (values <= 0.0).any():
        bad = int(np.argmax(values <= 0.0))
        raise DataError(
            f"generated non-positive value {values[bad]:.6g} at {stamps[bad]} "
            f"({spec.model} model); raise the intercept or reduce the noise"
        )
    points = tuple(PricePoint(s, float(v)) for s, v in zip(stamps, values))
    return PriceSeries(spec.currency, points)


def reference_decompose(
    data,
    stamps=None,
    model: str = MULTIPLICATIVE,
    period: int = 12,
    aggregator: str = MEDIAN,
) -> DecompositionResult:
    """Naive loop-based decomposition with the same contract as `decompose`."""
    _check_model(model)
    _check_aggregator(aggregator)
    values_arr, stamps = _coerce(data, stamps)
    values = [float(v) for v in values_arr]
    n = len(values)
    if n < 2 * period:
        raise DataError(f"need at least {2 * period} observations for period {period}, got {n}")
    if model == MULTIPLICATIVE and any(v <= 0.0 for v in values):
        raise DataError("multiplicative model requires positive values")
    if period == 12:
        if stamps is None:
            raise DataError("stamps are required to group by calendar month")
        positions = [s.month for s in stamps]
    else:
        positions = [(i % period) + 1 for i in range(n)]

    # centered moving average, endpoints half-weighted for even periods
    half = period // 2 if period % 2 == 0 else (period - 1) // 2
    ma: list[float | None] = [None] * n
    for i in range(half, n - half):
        if period % 2 == 0:
            window = [0.5 * values[i - half], 0.5 * values[i + half]]
            window.extend(values[i - half + 1:i + half])
        else:
            window = values[i - half:i + half + 1]
        ma[i] = math.fsum(window) / period

    buckets: dict[int, list[float]] = {p: [] for p in range(1, period + 1)}
    for i in range(n):
        m = ma[i]
        if m is None:
            continue
        raw = values[i] / m if model == MULTIPLICATIVE else values[i] - m
        buckets[positions[i]].append(raw)

    aggregates = []
    for pos in range(1, period + 1):
        bucket = buckets[pos]
        if not bucket:
            raise DataError(f"no detrended observations for seasonal position {pos}")
        if aggregator == MEDIAN:
            aggregates.append(statistics.median(bucket))
        else:
            aggregates.append(math.fsum(bucket) / len(bucket))

    center = math.fsum(aggregates) / period
    if model == MULTIPLICATIVE:
        index_values = [a / center for a in aggregates]
    else:
        index_values = [a - center for a in aggregates]
    indices = SeasonalIndices(model, tuple(index_values))

    if model == MULTIPLICATIVE:
        deseason = [values[i] / index_values[positions[i] - 1] for i in range(n)]
    else:
        deseason = [values[i] - index_values[positions[i] - 1] for i in range(n)]

    # OLS on t = 1..n by explicitly solved normal equations
    st = math.fsum(range(1, n + 1))
    stt = math.fsum(t * t for t in range(1, n + 1))
    sy = math.fsum(deseason)
    sty = math.fsum((i + 1) * deseason[i] for i in range(n))
    det = n * stt - st * st
    slope = (n * sty - st * sy) / det
    intercept = (sy * stt - st * sty) / det
    trend = TrendLine(intercept, slope)

    fitted = []
    irregular = []
    for i in range(n):
        tv = intercept + slope * (i + 1)
        f = tv * index_values[positions[i] - 1] if model == MULTIPLICATIVE else tv + index_values[positions[i] - 1]
        fitted.append(f)
        irregular.append(values[i] / f if model == MULTIPLICATIVE else values[i] - f)

    abs_err = [abs(values[i] - fitted[i]) for i in range(n)]
    if any(v == 0.0 for v in values):
        mape = math.nan
    else:
        mape = 100.0 * math.fsum(abs_err[i] / abs(values[i]) for i in range(n)) / n
    mad = math.fsum(abs_err) / n
    msd = math.fsum(e * e for e in abs_err) / n

    return DecompositionResult(
        model=model,
        indices=indices,
        trend=trend,
        fitted=tuple(fitted),
        irregular=tuple(irregular),
        accuracy=AccuracyMetrics(mape, mad, msd),
    )
