"""Period segmentation and ranked-contributor tables.

Slices the year range into labelled intervals, ranks the words that
moved the mean word length most within each interval, tracks which
words stay influential across consecutive intervals, and extracts
per-word frequency series for hand-picked word sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import InvalidBreakpoints, SettingsMismatch
from .metrics import (
    ContributionRecord,
    _resolve_years,
    interval_contributions,
    moving_average,
)
from .store import FrequencyStore

__all__ = [
    "DEFAULT_BREAKPOINTS",
    "METRIC_LINEAR",
    "METRIC_EXACT",
    "PeriodSpec",
    "TopKRow",
    "TopKTable",
    "PresenceMatrix",
    "segment",
    "top_contributors",
    "presence_matrix",
    "word_set_series",
]

DEFAULT_BREAKPOINTS = (1800, 1825, 1850, 1875, 1900, 1925, 1950, 1975, 2000, 2008)

METRIC_LINEAR = "dl_linear"
METRIC_EXACT = "dl_exact"
_METRICS = (METRIC_LINEAR, METRIC_EXACT)
_SIGNS = ("increase", "decrease", "both")


@dataclass(frozen=True)
class PeriodSpec:
    """A year interval, endpoints inclusive, labelled "start-end"."""

    start: int
    end: int
    label: str = ""

    def __post_init__(self):
        if self.start >= self.end:
            raise ValueError(f"period start {self.start} must precede end {self.end}")
        if not self.label:
            object.__setattr__(self, "label", f"{self.start}-{self.end}")


@dataclass(frozen=True)
class TopKRow:
    rank: int
    token: str
    dl_linear: float
    dl_exact: float


@dataclass(frozen=True)
class TopKTable:
    """Ranked contributors for one period under fixed settings.

    Rows are sorted by |metric| descending with lexicographic token
    tie-breaks; fewer than k rows means fewer than k words qualified.
    """

    period: PeriodSpec
    k: int
    sign: str
    class_label: str
    metric: str
    rows: tuple[TopKRow, ...]


@dataclass(frozen=True)
class PresenceMatrix:
    """Token-by-period grid marking membership in each period's table."""

    periods: tuple[PeriodSpec, ...]
    tokens: tuple[str, ...]
    cells: tuple[tuple[bool, ...], ...]  # cells[i][j]: tokens[i] in periods[j]

    def present(self, token: str, period_label: str) -> bool:
        i = self.tokens.index(token)
        j = next(n for n, p in enumerate(self.periods) if p.label == period_label)
        return self.cells[i][j]


def segment(
    year_min: int = 1800,
    year_max: int = 2008,
    breakpoints: Sequence[int] | None = None,
) -> list[PeriodSpec]:
    """Consecutive periods between breakpoints (default: 25-year grid).

    Each adjacent breakpoint pair [b, b'] becomes one period; the
    default grid runs 1800-1825 ... 2000-2008.
    """
    points = tuple(breakpoints) if breakpoints is not None else DEFAULT_BREAKPOINTS
    if len(points) < 2:
        raise InvalidBreakpoints("need at least two breakpoints")
    if any(nxt <= cur for cur, nxt in zip(points, points[1:])):
        raise InvalidBreakpoints(f"breakpoints not strictly increasing: {points}")
    if points[0] < year_min or points[-1] > year_max:
        raise InvalidBreakpoints(
            f"breakpoints {points[0]}..{points[-1]} outside range {year_min}..{year_max}"
        )
    return [PeriodSpec(a, b) for a, b in zip(points, points[1:])]


def top_contributors(
    store: FrequencyStore,
    period: PeriodSpec,
    k: int,
    sign: str = "both",
    class_pred: Callable[[str], bool] | None = None,
    class_label: str = "all",
    metric: str = METRIC_LINEAR,
    window: int = 0,
) -> TopKTable:
    """Rank the words that moved the mean most over one period.

    The decomposition itself runs over the full vocabulary (so the
    baseline is the plain corpus mean); the class predicate and sign
    then select which records may appear in the table. ``sign`` is
    "increase", "decrease" or "both".
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if sign not in _SIGNS:
        raise ValueError(f"sign must be one of {_SIGNS}, got {sign!r}")
    if metric not in _METRICS:
        raise ValueError(f"metric must be one of {_METRICS}, got {metric!r}")
    records = interval_contributions(store, period.start, period.end, window=window)
    chosen: list[tuple[float, ContributionRecord]] = []
    for rec in records:
        if class_pred is not None and not class_pred(rec.token):
            continue
        value = getattr(rec, metric)
        if sign == "increase" and not value > 0.0:
            continue
        if sign == "decrease" and not value < 0.0:
            continue
        chosen.append((value, rec))
    chosen.sort(key=lambda pair: (-abs(pair[0]), pair[1].token))
    rows = tuple(
        TopKRow(rank, rec.token, rec.dl_linear, rec.dl_exact)
        for rank, (_, rec) in enumerate(chosen[:k], 1)
    )
    return TopKTable(period, k, sign, class_label, metric, rows)


def presence_matrix(tables: Sequence[TopKTable]) -> PresenceMatrix:
    """Mark which tokens appear in which consecutive period tables.

    Tables must share k, sign, class and metric settings and cover
    non-overlapping periods in chronological order (adjacent periods may
    touch at a boundary year). Rows are ordered by first period of
    appearance, then token.
    """
    if not tables:
        return PresenceMatrix((), (), ())
    head = tables[0]
    for t in tables[1:]:
        if (t.k, t.sign, t.class_label, t.metric) != (
            head.k,
            head.sign,
            head.class_label,
            head.metric,
        ):
            raise SettingsMismatch(
                f"table settings differ: {t.period.label} vs {head.period.label}"
            )
    for prev, cur in zip(tables, tables[1:]):
        if cur.period.start < prev.period.end:
            raise SettingsMismatch(
                f"periods overlap: {prev.period.label} then {cur.period.label}"
            )
    membership = [frozenset(row.token for row in t.rows) for t in tables]
    first_seen: dict[str, int] = {}
    for j, tokens in enumerate(membership):
        for token in tokens:
            first_seen.setdefault(token, j)
    ordered = sorted(first_seen, key=lambda tok: (first_seen[tok], tok))
    cells = tuple(
        tuple(token in tokens for tokens in membership) for token in ordered
    )
    return PresenceMatrix(tuple(t.period for t in tables), tuple(ordered), cells)


def word_set_series(
    store: FrequencyStore,
    tokens: Sequence[str],
    years: Iterable[int] | None = None,
    window: int = 0,
) -> dict[str, list[tuple[int, float]]]:
    """Per-token relative-frequency series, smoothed like length series.

    Token order is preserved from the input (duplicates collapse to the
    first occurrence); a token never seen in the store yields an
    all-zero series. Absent token-years are 0, not missing points.
    """
    resolved = _resolve_years(store, years)
    out: dict[str, list[tuple[int, float]]] = {}
    for token in tokens:
        if token in out:
            continue
        raw = [(year, store.frequency(token, year)) for year in resolved]
        out[token] = moving_average(raw, window)
    return out
