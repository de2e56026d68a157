"""Parsing, wordhood, normalization, and stream accumulation."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexidyn import (
    EMPTY_RULESET,
    R1918,
    MalformedLine,
    NormalizationRuleset,
    TokenFilterConfig,
    YearAbsent,
    ingest_stream,
    is_word,
    merge,
    normalize_token,
    parse_ngram_line,
    parse_totals_line,
    word_length,
)

EN = TokenFilterConfig()
RU = TokenFilterConfig(allowed_scripts=frozenset({"Cyrillic"}))


class TestParseNgramLine:
    def test_four_fields(self):
        rec = parse_ngram_line("analysis\t1905\t54\t12")
        assert (rec.token, rec.year, rec.match_count, rec.volume_count) == (
            "analysis", 1905, 54, 12,
        )

    def test_zero_counts_are_legal(self):
        rec = parse_ngram_line("the\t2000\t0\t0")
        assert rec.match_count == 0 and rec.volume_count == 0

    def test_no_tabs_is_malformed(self):
        with pytest.raises(MalformedLine):
            parse_ngram_line("bad line with no tabs")

    def test_three_column_simplified_format(self):
        rec = parse_ngram_line("word\t1900\t7")
        assert rec.volume_count == 0 and rec.match_count == 7

    def test_crlf_and_bytes_input(self):
        assert parse_ngram_line(b"a\t1900\t5\t1\r\n").match_count == 5
        assert parse_ngram_line("a\t1900\t5\t1\n").year == 1900

    @pytest.mark.parametrize(
        "line",
        [
            "a\t1900\tx\t1",
            "a\t19_00\t5\t1",
            "a\t1900\t-5\t1",
            "a\t1900\t+5\t1",
            "a\t1900\t5\t1\textra",
            "a\t1900\t5.0\t1",
            "a\t1900\t5\t",
        ],
    )
    def test_malformed_numeric_fields(self, line):
        with pytest.raises(MalformedLine):
            parse_ngram_line(line)

    def test_invalid_utf8_bytes(self):
        with pytest.raises(MalformedLine):
            parse_ngram_line(b"\xff\xfe\t1900\t5\t1")

    def test_token_kept_verbatim(self):
        assert parse_ngram_line("burnt_NOUN\t1900\t5\t1").token == "burnt_NOUN"


class TestParseTotalsLine:
    def test_two_entries(self):
        assert parse_totals_line("1800,100,10,1\t1801,200,20,2") == [
            (1800, 100),
            (1801, 200),
        ]

    def test_empty_line(self):
        assert parse_totals_line("") == []

    def test_non_integer_field(self):
        with pytest.raises(MalformedLine):
            parse_totals_line("1800,x,10,1")

    def test_surrounding_tabs_ignored(self):
        assert parse_totals_line("\t1800,1,1,1\t\n") == [(1800, 1)]


class TestIsWord:
    def test_apostrophe_word(self):
        assert is_word("don't", EN)

    def test_typographic_apostrophe(self):
        assert is_word("don’t", EN)

    def test_number_is_not_a_word(self):
        assert not is_word("3.14", EN)

    def test_pos_tagged_token_rejected(self):
        assert not is_word("burnt_NOUN", EN)

    def test_apostrophes_alone_are_not_a_word(self):
        assert not is_word("'''", EN)

    def test_empty_token(self):
        assert not is_word("", EN)

    def test_apostrophe_can_be_disallowed(self):
        strict = TokenFilterConfig(allow_apostrophe=False)
        assert not is_word("don't", strict)
        assert is_word("dont", strict)

    def test_script_restriction(self):
        assert is_word("мир", RU)
        assert not is_word("мир", EN)
        assert not is_word("word", RU)
        assert not is_word("miръ", EN)

    def test_accented_latin(self):
        assert is_word("café", EN)

    def test_requires_some_script(self):
        with pytest.raises(ValueError):
            TokenFilterConfig(allowed_scripts=frozenset())
        with pytest.raises(ValueError):
            TokenFilterConfig(allowed_scripts=frozenset({"Klingon"}))


class TestWordLength:
    @pytest.mark.parametrize(
        "token,length", [("the", 3), ("don't", 5), ("мир", 3), ("I", 1)]
    )
    def test_scalar_count(self, token, length):
        assert word_length(token) == length


class TestNormalizeToken:
    def test_reform_strips_final_hard_sign(self):
        assert normalize_token("миръ", R1918) == "мир"

    def test_reform_strip_then_map(self):
        assert normalize_token("хлѣбъ", R1918) == "хлеб"

    def test_map_applies_everywhere(self):
        assert normalize_token("ѣдѣть", R1918) == "едеть"

    def test_empty_ruleset_is_identity(self):
        for token in ("миръ", "the", "don't"):
            assert normalize_token(token, EMPTY_RULESET) == token

    def test_trailing_run_fully_stripped(self):
        assert normalize_token("къъ", R1918) == "к"

    def test_parse_ruleset_text(self):
        rs = NormalizationRuleset.parse("# comment\nstrip_final ъ\nmap ѣ е\n", "custom")
        assert rs.apply("хлѣбъ") == "хлеб"
        with pytest.raises(ValueError):
            NormalizationRuleset.parse("nonsense rule here extra", "bad")

    @given(
        st.text(
            alphabet="абвгдежзиклмнопрстуфхъыьѣіѳя",
            min_size=1,
            max_size=12,
        )
    )
    def test_reform_idempotent(self, token):
        once = normalize_token(token, R1918)
        assert normalize_token(once, R1918) == once


class TestIngestStream:
    def test_hand_accumulation(self):
        store, stats = ingest_stream(["a\t1900\t3\t1", "bb\t1900\t1\t1"], EN)
        assert store.slice(1900).total == 4
        assert store.frequency("a", 1900) == 0.75
        assert store.frequency("bb", 1900) == 0.25
        assert stats.accepted == 2 and stats.malformed == 0

    def test_rejected_token_leaves_year_empty(self):
        store, stats = ingest_stream(["7\t1900\t99\t1"], EN)
        assert store.years == ()
        assert stats.rejected == 1
        with pytest.raises(YearAbsent):
            store.frequency("7", 1900)

    def test_order_independence(self):
        lines = [
            "a\t1900\t3\t1",
            "bb\t1900\t1\t1",
            "a\t1901\t2\t1",
            "a\t1900\t4\t2",
        ]
        forward, _ = ingest_stream(lines, EN)
        backward, _ = ingest_stream(list(reversed(lines)), EN)
        assert forward == backward

    def test_malformed_lines_never_abort(self):
        lines = ["garbage", "a\t1900\t3\t1", "x\ty\tz\tw", ""]
        store, stats = ingest_stream(lines, EN)
        assert stats.malformed == 3
        assert store.frequency("a", 1900) == 1.0

    def test_year_range_filter(self):
        store, stats = ingest_stream(
            ["a\t1700\t5\t1", "a\t1900\t5\t1"], EN, years=(1800, 2008)
        )
        assert store.years == (1900,)
        assert stats.rejected == 1

    def test_zero_count_accepted_but_not_materialized(self):
        store, stats = ingest_stream(["the\t2000\t0\t0"], EN)
        assert stats.accepted == 1
        assert store.years == ()

    def test_typographic_apostrophe_merges(self):
        store, _ = ingest_stream(["don’t\t1900\t2\t1", "don't\t1900\t3\t1"], EN)
        assert store.slice(1900).counts["don't"] == 5

    def test_case_fold_option(self):
        folding = TokenFilterConfig(case_fold=True)
        store, _ = ingest_stream(["The\t1900\t2\t1", "the\t1900\t3\t1"], folding)
        assert store.slice(1900).counts["the"] == 5

    def test_case_sensitive_by_default(self):
        store, _ = ingest_stream(["The\t1900\t2\t1", "the\t1900\t3\t1"], EN)
        assert store.slice(1900).counts["The"] == 2
        assert store.slice(1900).counts["the"] == 3

    def test_normalization_applied_before_accumulation(self):
        store, _ = ingest_stream(
            ["миръ\t1900\t2\t1", "мир\t1900\t3\t1"], RU, rules=R1918
        )
        assert store.slice(1900).counts["мир"] == 5

    def test_normalized_to_nothing_is_rejected(self):
        store, stats = ingest_stream(["ъъ\t1900\t5\t1"], RU, rules=R1918)
        assert store.years == ()
        assert stats.rejected == 1

    def test_bytes_and_str_lines_agree(self):
        text = ["a\t1900\t3\t1", "don't\t1900\t2\t1", "7\t1900\t9\t1"]
        raw = [line.encode() + b"\n" for line in text]
        assert ingest_stream(text, EN).store == ingest_stream(raw, EN).store

    def test_invalid_utf8_line_counts_malformed(self):
        store, stats = ingest_stream([b"\xff\xfe\t1900\t5\t1", b"a\t1900\t1\t1"], EN)
        assert stats.malformed == 1
        assert store.frequency("a", 1900) == 1.0

    def test_three_column_lines(self):
        store, _ = ingest_stream(["a\t1900\t3", "b\t1900\t1"], EN)
        assert store.slice(1900).total == 4

    def test_provenance_recorded(self):
        store, _ = ingest_stream(["a\t1900\t1\t1"], EN, rules=R1918)
        assert store.provenance.ruleset_id == "r1918"
        assert "latin" in store.provenance.filter_id

    def test_empty_year_range_rejected(self):
        with pytest.raises(ValueError):
            ingest_stream([], EN, years=(2000, 1800))


def _random_lines(rng: random.Random, n: int) -> list[str]:
    words = ["a", "bb", "ccc", "don't", "Zed", "7seven", "x_y", "longword"]
    lines = []
    for _ in range(n):
        w = rng.choice(words)
        year = rng.randint(1795, 2010)
        count = rng.randint(0, 50)
        lines.append(f"{w}\t{year}\t{count}\t1")
    return lines


class TestIngestProperties:
    @given(st.integers(min_value=0, max_value=2**32), st.integers(2, 5))
    @settings(max_examples=25, deadline=None)
    def test_shard_equivalence(self, seed, shards):
        rng = random.Random(seed)
        lines = _random_lines(rng, 120)
        single = ingest_stream(lines, EN).store
        parts = [lines[i::shards] for i in range(shards)]
        merged = merge([ingest_stream(part, EN).store for part in parts])
        assert merged == single

    @given(st.integers(min_value=0, max_value=2**32))
    @settings(max_examples=25, deadline=None)
    def test_permutation_invariance(self, seed):
        rng = random.Random(seed)
        lines = _random_lines(rng, 80)
        shuffled = lines[:]
        rng.shuffle(shuffled)
        assert ingest_stream(lines, EN).store == ingest_stream(shuffled, EN).store

    @given(st.integers(min_value=0, max_value=2**32))
    @settings(max_examples=20, deadline=None)
    def test_filter_soundness_and_conservation(self, seed):
        rng = random.Random(seed)
        store, _ = ingest_stream(_random_lines(rng, 150), EN)
        for year in store.years:
            sl = store.slice(year)
            assert sl.total == sum(sl.counts.values())
            for token in sl.counts:
                assert is_word(token, EN)
