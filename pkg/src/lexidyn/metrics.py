"""Numeric statistics over a frequency store.

Average word length is the frequency-weighted mean of word lengths.
When one word's frequency moves by ``delta_p`` while the others keep
their relative proportions, the induced change of the mean is exactly

    delta_p / (1 - p_start) * (length - baseline_mean)

and for the small frequencies typical of almost every word this
linearizes to ``delta_p * (length - baseline_mean)``. Summed with the
start-year mean as baseline, the linear form reconstructs the total
change of the mean exactly (the deltas sum to zero), which is the key
identity the interval decomposition is built on.

All statistics are pure functions of an immutable store and use 64-bit
floats; means are computed from integer numerators where possible.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from math import fsum, nan
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DegenerateDistribution, EmptySelection
from .store import FrequencyStore

__all__ = [
    "WordFilter",
    "LengthSeries",
    "ContributionRecord",
    "BandContribution",
    "LengthBandSummary",
    "VocabSeries",
    "average_word_length",
    "length_series",
    "contribution_exact",
    "contribution_linear",
    "interval_contributions",
    "band_contributions",
    "vocabulary_series",
    "moving_average",
    "least_squares_fit",
]

WordFilter = Callable[[str], bool]


@dataclass(frozen=True)
class LengthSeries:
    """Mean-letters-per-word time series, optionally smoothed."""

    points: tuple[tuple[int, float], ...]
    window: int = 0
    filter_label: str = "all"

    def years(self) -> tuple[int, ...]:
        return tuple(y for y, _ in self.points)

    def values(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.points)


@dataclass(frozen=True)
class ContributionRecord:
    """One word's share of the change of mean word length over an interval.

    ``dl_exact`` is the change of the mean if this word's frequency
    moves by ``delta_p`` while all other words rescale proportionally;
    ``dl_linear`` drops the 1/(1 - p_start) factor. When a word carries
    the entire start-year mass (p_start == 1) the exact form is
    undefined and stored as NaN.
    """

    token: str
    length: int
    p_start: float
    p_end: float
    delta_p: float
    baseline_mean: float
    dl_linear: float
    dl_exact: float

    @property
    def mean_excluding(self) -> float:
        """Mean word length of everything but this word, at the start year."""
        if self.p_start >= 1.0:
            return nan
        return (self.baseline_mean - self.p_start * self.length) / (1.0 - self.p_start)


class BandContribution(tuple):
    """(signed_sum, share) for one word-length band."""

    __slots__ = ()

    def __new__(cls, signed_sum: float, share: float):
        return super().__new__(cls, (signed_sum, share))

    @property
    def signed_sum(self) -> float:
        return self[0]

    @property
    def share(self) -> float:
        return self[1]


@dataclass(frozen=True)
class LengthBandSummary:
    """Per-length aggregation of linear contributions."""

    bands: Mapping[int, BandContribution]

    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted(self.bands))


@dataclass(frozen=True)
class VocabSeries:
    """Distinct-word counts over years with a least-squares trend.

    ``slope``/``intercept`` are None when fewer than two points exist.
    """

    points: tuple[tuple[int, int], ...]
    threshold: float
    slope: float | None
    intercept: float | None


def _filtered_counts(store: FrequencyStore, year: int, word_filter: WordFilter | None):
    counts = store.slice(year).counts
    if word_filter is None:
        return counts
    return {t: c for t, c in counts.items() if word_filter(t)}


def average_word_length(
    store: FrequencyStore, year: int, word_filter: WordFilter | None = None
) -> float:
    """Frequency-weighted mean word length for one year.

    Frequencies are renormalized over the filtered subset so the result
    stays a mean. Integer numerator and denominator, one float division.
    """
    counts = _filtered_counts(store, year, word_filter)
    total = sum(counts.values())
    if total == 0:
        raise EmptySelection(f"no word tokens in year {year} under the active filter")
    weighted = 0
    for token, count in counts.items():
        weighted += count * len(token)
    return weighted / total


def moving_average(
    points: Sequence[tuple[int, float]], window: int
) -> list[tuple[int, float]]:
    """Centered moving average over year values, truncated at the edges.

    The value at year t becomes the mean of the raw values whose years
    fall in [t - window, t + window]; only years present in ``points``
    participate. ``window=0`` returns the points unchanged.
    """
    if window <= 0:
        return list(points)
    years = [y for y, _ in points]
    values = [v for _, v in points]
    out = []
    for year in years:
        lo = bisect_left(years, year - window)
        hi = bisect_right(years, year + window)
        out.append((year, fsum(values[lo:hi]) / (hi - lo)))
    return out


def _resolve_years(store: FrequencyStore, years: Iterable[int] | None) -> list[int]:
    if years is None:
        return list(store.years)
    resolved = sorted(set(years))
    for year in resolved:
        store.slice(year)  # raises YearAbsent
    return resolved


def length_series(
    store: FrequencyStore,
    years: Iterable[int] | None = None,
    window: int = 0,
    word_filter: WordFilter | None = None,
    filter_label: str = "all",
) -> LengthSeries:
    """Average-word-length series over the given years (default: all)."""
    resolved = _resolve_years(store, years)
    raw = [(y, average_word_length(store, y, word_filter)) for y in resolved]
    return LengthSeries(tuple(moving_average(raw, window)), window, filter_label)


def contribution_linear(delta_p: float, length: float, baseline_mean: float) -> float:
    """Linearized change of the mean: delta_p * (length - baseline_mean)."""
    return delta_p * (length - baseline_mean)


def contribution_exact(
    p_start: float, delta_p: float, length: float, baseline_mean: float
) -> float:
    """Exact change of the mean under proportional rescaling of other words.

    Equals ``delta_p / (1 - p_start) * (length - baseline_mean)``:
    precisely the difference of the frequency-weighted mean after moving
    this word's frequency by ``delta_p`` and scaling every other word by
    the factor that restores normalization.
    """
    if not 0.0 <= p_start <= 1.0:
        raise ValueError(f"p_start {p_start!r} outside [0, 1]")
    if p_start == 1.0:
        raise DegenerateDistribution("word carries the whole distribution")
    return delta_p / (1.0 - p_start) * (length - baseline_mean)


def _windowed_distribution(
    store: FrequencyStore,
    year: int,
    window: int,
    word_filter: WordFilter | None,
) -> tuple[dict[str, float], float]:
    """Filtered frequencies and their mean length at a year snapshot.

    With ``window > 0`` the per-word frequencies (and hence the mean)
    are averaged over the store years within [year - window, year +
    window]; years whose filtered total is zero are skipped.
    """
    if window <= 0:
        span = [year]
    else:
        span = [y for y in store.years if year - window <= y <= year + window]
    per_year: list[dict[str, int]] = []
    totals: list[int] = []
    for y in span:
        counts = _filtered_counts(store, y, word_filter)
        total = sum(counts.values())
        if total:
            per_year.append(counts)
            totals.append(total)
    if not per_year:
        raise EmptySelection(f"no word tokens around year {year} under the active filter")
    n = len(per_year)
    freqs: dict[str, float] = {}
    for counts, total in zip(per_year, totals):
        for token, count in counts.items():
            freqs[token] = freqs.get(token, 0.0) + count / total
    if n > 1:
        for token in freqs:
            freqs[token] /= n
    mean = fsum(p * len(t) for t, p in freqs.items())
    return freqs, mean


def interval_contributions(
    store: FrequencyStore,
    start_year: int,
    end_year: int,
    word_filter: WordFilter | None = None,
    window: int = 0,
) -> list[ContributionRecord]:
    """Per-word decomposition of the mean-length change over an interval.

    One record per word in the union of the two endpoint vocabularies
    (a word absent at an endpoint has frequency 0 there). The baseline
    mean is taken at the interval start, which makes the linear
    contributions sum exactly to the total change of the mean. Records
    are sorted by token.
    """
    if start_year >= end_year:
        raise ValueError(f"need start_year < end_year, got {start_year} >= {end_year}")
    store.slice(start_year)
    store.slice(end_year)
    p_start, baseline = _windowed_distribution(store, start_year, window, word_filter)
    p_end, _ = _windowed_distribution(store, end_year, window, word_filter)

    records = []
    for token in sorted(set(p_start) | set(p_end)):
        ps = p_start.get(token, 0.0)
        pe = p_end.get(token, 0.0)
        delta = pe - ps
        length = len(token)
        linear = delta * (length - baseline)
        if ps < 1.0:
            exact = delta / (1.0 - ps) * (length - baseline)
        else:
            exact = nan
        records.append(
            ContributionRecord(token, length, ps, pe, delta, baseline, linear, exact)
        )
    return records


def band_contributions(
    records: Sequence[ContributionRecord], normalize: bool = True
) -> LengthBandSummary:
    """Group linear contributions by word length.

    Shares divide each band's |signed sum| by the sum of those absolute
    values; when every band sums to zero all shares are 0.0 rather than
    an error.
    """
    if not records:
        raise EmptySelection("no contribution records to aggregate")
    sums: dict[int, list[float]] = {}
    for rec in records:
        sums.setdefault(rec.length, []).append(rec.dl_linear)
    signed = {length: fsum(parts) for length, parts in sums.items()}
    denom = fsum(abs(v) for v in signed.values()) if normalize else 0.0
    bands = {
        length: BandContribution(value, abs(value) / denom if denom > 0.0 else 0.0)
        for length, value in signed.items()
    }
    return LengthBandSummary(bands)


def least_squares_fit(
    points: Sequence[tuple[float, float]]
) -> tuple[float | None, float | None]:
    """Ordinary least squares line through (x, y) points.

    Returns (slope, intercept), or (None, None) when fewer than two
    distinct x values exist.
    """
    n = len(points)
    if n < 2:
        return None, None
    xs = [float(x) for x, _ in points]
    ys = [float(y) for _, y in points]
    x_mean = fsum(xs) / n
    y_mean = fsum(ys) / n
    sxx = fsum((x - x_mean) ** 2 for x in xs)
    if sxx == 0.0:
        return None, None
    sxy = fsum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    slope = sxy / sxx
    return slope, y_mean - slope * x_mean


def vocabulary_series(
    store: FrequencyStore,
    years: Iterable[int] | None = None,
    min_rel_freq: float = 1e-9,
) -> VocabSeries:
    """Distinct words at or above a relative-frequency threshold, per year.

    The default threshold keeps words that clear one-in-a-billion
    tokens, cutting hapax noise without hiding ordinary vocabulary. The
    fitted slope estimates vocabulary growth in words per year.
    """
    resolved = _resolve_years(store, years)
    points = []
    for year in resolved:
        sl = store.slice(year)
        total = sl.total
        count = sum(1 for c in sl.counts.values() if c / total >= min_rel_freq)
        points.append((year, count))
    slope, intercept = least_squares_fit(points)
    return VocabSeries(tuple(points), min_rel_freq, slope, intercept)
