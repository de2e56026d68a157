"""Period segmentation, top-k tables, presence grids, word-set series."""

from __future__ import annotations

import pytest

from conftest import close
from lexidyn import (
    FrequencyStore,
    InvalidBreakpoints,
    PeriodSpec,
    SettingsMismatch,
    YearAbsent,
    interval_contributions,
    presence_matrix,
    segment,
    top_contributors,
    word_set_series,
)
from lexidyn.periods import METRIC_EXACT, TopKRow, TopKTable


class TestSegment:
    def test_default_grid(self):
        periods = segment()
        assert len(periods) == 9
        assert periods[0].label == "1800-1825"
        assert periods[-1].label == "2000-2008"

    def test_custom_breakpoints(self):
        periods = segment(1800, 2008, [1939, 1976, 2008])
        assert [p.label for p in periods] == ["1939-1976", "1976-2008"]

    def test_single_interval(self):
        periods = segment(1800, 2008, [1850, 1900])
        assert len(periods) == 1

    @pytest.mark.parametrize(
        "breakpoints",
        [[1900], [1900, 1900], [1950, 1900], [1700, 1900], [1900, 2100]],
    )
    def test_invalid_breakpoints(self, breakpoints):
        with pytest.raises(InvalidBreakpoints):
            segment(1800, 2008, breakpoints)

    def test_period_label_autofilled(self):
        assert PeriodSpec(1900, 1925).label == "1900-1925"
        with pytest.raises(ValueError):
            PeriodSpec(1925, 1900)


@pytest.fixture
def shifting_store():
    return FrequencyStore.from_counts(
        {
            1900: {"a": 4, "bb": 2, "ccccc": 2},
            1950: {"a": 1, "bb": 4, "ccccc": 3},
            2000: {"a": 1, "bb": 1, "ccccc": 6},
        }
    )


class TestTopContributors:
    def test_tie_breaks_lexicographically(self, two_word_store):
        table = top_contributors(two_word_store, PeriodSpec(1900, 1950), 1, sign="increase")
        assert len(table.rows) == 1
        assert table.rows[0] == TopKRow(1, "a", 0.375, 0.75)

    def test_no_decliners_yields_empty_table(self):
        store = FrequencyStore.from_counts(
            {1900: {"aa": 1, "bb": 1}, 1950: {"aa": 1, "bb": 1}}
        )
        table = top_contributors(store, PeriodSpec(1900, 1950), 5, sign="decrease")
        assert table.rows == ()

    def test_rows_subset_of_records(self, shifting_store):
        period = PeriodSpec(1900, 2000)
        table = top_contributors(shifting_store, period, 10)
        records = {r.token for r in interval_contributions(shifting_store, 1900, 2000)}
        assert {row.token for row in table.rows} <= records

    def test_rank_order_by_absolute_metric(self, shifting_store):
        table = top_contributors(shifting_store, PeriodSpec(1900, 2000), 10)
        magnitudes = [abs(row.dl_linear) for row in table.rows]
        assert magnitudes == sorted(magnitudes, reverse=True)
        assert [row.rank for row in table.rows] == list(range(1, len(table.rows) + 1))

    def test_sign_split_consistent_with_both(self, shifting_store):
        period = PeriodSpec(1900, 2000)
        both = top_contributors(shifting_store, period, 3)
        inc = top_contributors(shifting_store, period, 3, sign="increase")
        dec = top_contributors(shifting_store, period, 3, sign="decrease")
        merged = sorted(
            list(inc.rows) + list(dec.rows),
            key=lambda row: (-abs(row.dl_linear), row.token),
        )[:3]
        assert [r.token for r in merged] == [r.token for r in both.rows]

    def test_class_filter(self, shifting_store):
        table = top_contributors(
            shifting_store,
            PeriodSpec(1900, 2000),
            5,
            class_pred=lambda t: len(t) >= 5,
            class_label="long-only",
        )
        assert {row.token for row in table.rows} == {"ccccc"}
        assert table.class_label == "long-only"

    def test_exact_metric_ranking(self, shifting_store):
        table = top_contributors(shifting_store, PeriodSpec(1900, 2000), 5, metric=METRIC_EXACT)
        magnitudes = [abs(row.dl_exact) for row in table.rows]
        assert magnitudes == sorted(magnitudes, reverse=True)

    def test_validation(self, shifting_store):
        period = PeriodSpec(1900, 2000)
        with pytest.raises(ValueError):
            top_contributors(shifting_store, period, 0)
        with pytest.raises(ValueError):
            top_contributors(shifting_store, period, 3, sign="sideways")
        with pytest.raises(ValueError):
            top_contributors(shifting_store, period, 3, metric="dl_squared")
        with pytest.raises(YearAbsent):
            top_contributors(shifting_store, PeriodSpec(1900, 1990), 3)


def _table(period, tokens, k=3, sign="both", class_label="all", metric="dl_linear"):
    rows = tuple(
        TopKRow(i + 1, token, 0.1 / (i + 1), 0.1 / (i + 1))
        for i, token in enumerate(tokens)
    )
    return TopKTable(period, k, sign, class_label, metric, rows)


class TestPresenceMatrix:
    def test_persistent_token_marked_everywhere(self):
        periods = segment(1850, 2000, [1850, 1875, 1900, 1925, 1950, 1975, 2000])
        tables = [_table(p, ["character", f"only{i}"]) for i, p in enumerate(periods)]
        matrix = presence_matrix(tables)
        row = matrix.cells[matrix.tokens.index("character")]
        assert all(row) and len(row) == 6

    def test_disjoint_tokens_give_diagonal(self):
        periods = segment(1900, 1990, [1900, 1930, 1960, 1990])
        tables = [_table(p, [f"w{i}"]) for i, p in enumerate(periods)]
        matrix = presence_matrix(tables)
        assert matrix.tokens == ("w0", "w1", "w2")
        for i, row in enumerate(matrix.cells):
            assert [j for j, mark in enumerate(row) if mark] == [i]

    def test_empty_input(self):
        matrix = presence_matrix([])
        assert matrix.tokens == () and matrix.periods == ()

    def test_row_order_first_appearance_then_token(self):
        p1, p2 = segment(1900, 1950, [1900, 1925, 1950])
        matrix = presence_matrix([_table(p1, ["zz", "mm"]), _table(p2, ["aa"])])
        assert matrix.tokens == ("mm", "zz", "aa")

    def test_settings_mismatch(self):
        p1, p2 = segment(1900, 1950, [1900, 1925, 1950])
        with pytest.raises(SettingsMismatch):
            presence_matrix([_table(p1, ["a"], k=3), _table(p2, ["a"], k=5)])

    def test_overlapping_periods_rejected(self):
        with pytest.raises(SettingsMismatch):
            presence_matrix(
                [_table(PeriodSpec(1900, 1950), ["a"]), _table(PeriodSpec(1940, 1990), ["a"])]
            )

    def test_touching_periods_allowed(self):
        matrix = presence_matrix(
            [_table(PeriodSpec(1900, 1925), ["a"]), _table(PeriodSpec(1925, 1950), ["b"])]
        )
        assert matrix.tokens == ("a", "b")

    def test_present_lookup(self):
        p1, p2 = segment(1900, 1950, [1900, 1925, 1950])
        matrix = presence_matrix([_table(p1, ["a"]), _table(p2, ["a", "b"])])
        assert matrix.present("a", "1900-1925")
        assert matrix.present("a", "1925-1950")
        assert not matrix.present("b", "1900-1925")


class TestWordSetSeries:
    def test_fixture_series(self, two_word_store):
        series = word_set_series(two_word_store, ["a"])
        assert series == {"a": [(1900, 0.5), (1950, 0.25)]}

    def test_unknown_token_is_all_zero(self, two_word_store):
        series = word_set_series(two_word_store, ["nope"])
        assert series["nope"] == [(1900, 0.0), (1950, 0.0)]

    def test_saturated_window_gives_overall_mean(self, two_word_store):
        series = word_set_series(two_word_store, ["a"], window=1000)
        for _, value in series["a"]:
            close(value, 0.375)

    def test_token_order_preserved(self, two_word_store):
        series = word_set_series(two_word_store, ["abcd", "a", "abcd"])
        assert list(series) == ["abcd", "a"]

    def test_missing_year_requested(self, two_word_store):
        with pytest.raises(YearAbsent):
            word_set_series(two_word_store, ["a"], years=[1900, 1901])
