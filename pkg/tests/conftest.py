import numpy as np
import pytest

from goldseason import MonthStamp, PricePoint, PriceSeries, ReturnPoint, ReturnSeries


def make_stamps(start: str, n: int) -> list[MonthStamp]:
    first = MonthStamp.parse(start)
    return [first.shift(i) for i in range(n)]


def make_series(values, start="2000-01", currency="USD") -> PriceSeries:
    stamps = make_stamps(start, len(values))
    return PriceSeries(currency, tuple(PricePoint(s, float(v)) for s, v in zip(stamps, values)))


def make_returns(values, start="2000-02", currency="USD") -> ReturnSeries:
    stamps = make_stamps(start, len(values))
    return ReturnSeries(currency, tuple(ReturnPoint(s, float(v)) for s, v in zip(stamps, values)))


@pytest.fixture
def small_csv() -> str:
    return "date,USD,EUR\n2000-01,100.0,90.0\n2000-02,110.0,99.0\n2000-03,105.0,94.5\n"


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20160224)
