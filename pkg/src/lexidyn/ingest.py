"""Ingestion of year-stamped 1-gram streams into a frequency store.

Handles the tab-separated export grammar (``token TAB year TAB
match_count TAB volume_count``, or the simplified three-column variant),
decides which tokens count as words, applies orthographic normalization
rules, and accumulates counts per (token, year). The accumulation loop
is written for multi-GB inputs: malformed lines are counted and skipped,
never fatal, and repeated tokens hit a verdict cache instead of being
re-checked.
"""

from __future__ import annotations

import json
import sys
import unicodedata
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import MalformedLine
from .store import FrequencyStore, Provenance

__all__ = [
    "RawNgramRecord",
    "TokenFilterConfig",
    "NormalizationRuleset",
    "IngestStats",
    "IngestResult",
    "EMPTY_RULESET",
    "R1918",
    "RULESETS",
    "DEFAULT_YEAR_RANGE",
    "parse_ngram_line",
    "parse_totals_line",
    "is_word",
    "word_length",
    "normalize_token",
    "ingest_stream",
]

# Reliable statistics start around 1800; the corpus snapshot ends at 2008.
DEFAULT_YEAR_RANGE = (1800, 2008)

_ASCII_APOSTROPHE = "'"
_TYPOGRAPHIC_APOSTROPHE = "’"

# Script tag -> prefix of unicodedata.name() for letters of that script.
_SCRIPT_NAME_PREFIXES = {
    "latin": "LATIN",
    "cyrillic": "CYRILLIC",
    "greek": "GREEK",
    "hebrew": "HEBREW",
    "arabic": "ARABIC",
    "armenian": "ARMENIAN",
    "georgian": "GEORGIAN",
    "han": "CJK",
    "hangul": "HANGUL",
    "hiragana": "HIRAGANA",
    "katakana": "KATAKANA",
}

# char -> script name prefix ("LATIN", ...) or None for non-letters.
# Shared across configs; a char's script never depends on the config.
_char_script_cache: dict[str, str | None] = {}


def _char_script(ch: str) -> str | None:
    try:
        return _char_script_cache[ch]
    except KeyError:
        pass
    script = None
    if ch.isalpha():
        name = unicodedata.name(ch, "")
        script = name.split(" ", 1)[0] or None
    _char_script_cache[ch] = script
    return script


@dataclass(frozen=True)
class RawNgramRecord:
    """One line of a 1-gram export, verbatim: not yet filtered."""

    token: str
    year: int
    match_count: int
    volume_count: int


@dataclass(frozen=True)
class TokenFilterConfig:
    """Decides which 1-grams count as words.

    A token is a word when every character is a letter of an allowed
    script, or an apostrophe (ASCII or typographic) when
    ``allow_apostrophe`` is set, and at least one letter is present.
    Tokens containing any of ``reject_substrings`` are never words; the
    default drops POS-tagged corpus entries like ``burnt_NOUN``.
    """

    allowed_scripts: frozenset[str] = frozenset({"Latin"})
    allow_apostrophe: bool = True
    case_fold: bool = False
    reject_substrings: tuple[str, ...] = ("_",)

    def __post_init__(self):
        if not self.allowed_scripts:
            raise ValueError("at least one script must be enabled")
        unknown = {s for s in self.allowed_scripts if s.lower() not in _SCRIPT_NAME_PREFIXES}
        if unknown:
            raise ValueError(f"unsupported script tags: {sorted(unknown)}")

    @classmethod
    def for_language(cls, tag: str, **overrides) -> "TokenFilterConfig":
        """Config with the conventional script for a language tag."""
        scripts = {"en": {"Latin"}, "ru": {"Cyrillic"}}.get(tag.lower(), {"Latin"})
        return cls(allowed_scripts=frozenset(scripts), **overrides)

    @cached_property
    def _name_prefixes(self) -> frozenset[str]:
        return frozenset(_SCRIPT_NAME_PREFIXES[s.lower()] for s in self.allowed_scripts)

    @cached_property
    def config_id(self) -> str:
        """Canonical identity string, stored as cache provenance."""
        return json.dumps(
            {
                "scripts": sorted(s.lower() for s in self.allowed_scripts),
                "apostrophe": self.allow_apostrophe,
                "case_fold": self.case_fold,
                "reject": list(self.reject_substrings),
            },
            sort_keys=True,
            separators=(",", ":"),
        )


_RULE_OPS = ("strip_final", "map_char")


@dataclass(frozen=True)
class NormalizationRuleset:
    """Ordered orthography rules, applied once each in listed order.

    Rules are plain data tuples so that rulesets can live in config
    rather than code: ``("strip_final", ch)`` removes the trailing run
    of ``ch``, ``("map_char", old, new)`` replaces every occurrence.
    ``strip_final`` takes the whole trailing run (not a single char) so
    that the shipped rulesets are idempotent on any input.
    """

    ruleset_id: str
    rules: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        for rule in self.rules:
            if rule[0] == "strip_final" and len(rule) == 2:
                continue
            if rule[0] == "map_char" and len(rule) == 3:
                continue
            raise ValueError(f"bad normalization rule: {rule!r}")

    def apply(self, token: str) -> str:
        for rule in self.rules:
            if rule[0] == "strip_final":
                ch = rule[1]
                while token.endswith(ch):
                    token = token[: -len(ch)]
            else:
                token = token.replace(rule[1], rule[2])
        return token

    @classmethod
    def parse(cls, text: str, ruleset_id: str) -> "NormalizationRuleset":
        """Parse a ruleset file: one rule per line, ``#`` comments.

        Lines are ``strip_final X`` or ``map X Y``.
        """
        rules: list[tuple[str, ...]] = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "strip_final" and len(parts) == 2:
                rules.append(("strip_final", parts[1]))
            elif parts[0] == "map" and len(parts) == 3:
                rules.append(("map_char", parts[1], parts[2]))
            else:
                raise ValueError(f"line {lineno}: bad rule {line!r}")
        return cls(ruleset_id, tuple(rules))


EMPTY_RULESET = NormalizationRuleset("empty")

# Approximation of the 1918 Russian orthography reform: drop terminal
# hard signs, replace the retired letters everywhere. The historical
# record is messier than any mechanical rule; override with your own
# ruleset if you need a different transform.
R1918 = NormalizationRuleset(
    "r1918",
    (
        ("strip_final", "ъ"),
        ("map_char", "ѣ", "е"),
        ("map_char", "і", "и"),
        ("map_char", "ѳ", "ф"),
    ),
)

RULESETS = {"empty": EMPTY_RULESET, "r1918": R1918}


def _decimal_field(f: str) -> bool:
    return f.isdigit() and f.isascii()


def parse_ngram_line(line: str | bytes) -> RawNgramRecord:
    """Parse one export line into its four fields, verbatim.

    Accepts the standard four-column grammar and the simplified
    three-column one (``volume_count`` defaults to 0). The token is not
    filtered or normalized here. Raises :class:`MalformedLine` on wrong
    field count, a numeric field that is not a plain decimal integer,
    or invalid UTF-8.
    """
    if isinstance(line, bytes):
        try:
            line = line.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedLine(f"invalid UTF-8: {exc}") from None
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) == 4:
        token, year, match_count, volume_count = fields
    elif len(fields) == 3:
        token, year, match_count = fields
        volume_count = "0"
    else:
        raise MalformedLine(f"expected 3 or 4 tab-separated fields, got {len(fields)}")
    for f in (year, match_count, volume_count):
        if not _decimal_field(f):
            raise MalformedLine(f"non-integer field {f!r}")
    return RawNgramRecord(token, int(year), int(match_count), int(volume_count))


def parse_totals_line(line: str | bytes) -> list[tuple[int, int]]:
    """Parse a totals file line into (year, match_count) pairs.

    Entries are tab-separated, each ``year,match_count,page_count,
    volume_count``; page and volume counts are discarded. These raw
    totals cover all 1-grams including non-words, so they are
    informational only: the store renormalizes to accepted word tokens.
    """
    if isinstance(line, bytes):
        try:
            line = line.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedLine(f"invalid UTF-8: {exc}") from None
    out: list[tuple[int, int]] = []
    for entry in line.strip().split("\t"):
        if not entry:
            continue
        parts = entry.split(",")
        if len(parts) != 4 or not all(_decimal_field(p) for p in parts):
            raise MalformedLine(f"bad totals entry {entry!r}")
        out.append((int(parts[0]), int(parts[1])))
    return out


def is_word(token: str, config: TokenFilterConfig) -> bool:
    """True iff the token counts as a word under the filter config.

    Total function: any string is acceptable input. Apostrophe-only
    tokens are not words (at least one letter is required).
    """
    if not token:
        return False
    for sub in config.reject_substrings:
        if sub in token:
            return False
    prefixes = config._name_prefixes
    allow_apostrophe = config.allow_apostrophe
    has_letter = False
    for ch in token:
        if ch == _ASCII_APOSTROPHE or ch == _TYPOGRAPHIC_APOSTROPHE:
            if not allow_apostrophe:
                return False
            continue
        script = _char_script(ch)
        if script is None or script not in prefixes:
            return False
        has_letter = True
    return has_letter


def word_length(token: str) -> int:
    """Length in Unicode scalar values; letters and apostrophes count."""
    return len(token)


def normalize_token(token: str, rules: NormalizationRuleset) -> str:
    """Apply an orthography ruleset; may return the token unchanged.

    The output can fail wordhood (or become empty) after stripping, so
    callers re-check ``is_word`` before accumulating.
    """
    return rules.apply(token)


@dataclass
class IngestStats:
    """Counters for one ingest run; shards add together."""

    lines_read: int = 0
    accepted: int = 0
    rejected: int = 0
    malformed: int = 0

    def __add__(self, other: "IngestStats") -> "IngestStats":
        return IngestStats(
            self.lines_read + other.lines_read,
            self.accepted + other.accepted,
            self.rejected + other.rejected,
            self.malformed + other.malformed,
        )


class IngestResult(NamedTuple):
    store: FrequencyStore
    stats: IngestStats


class _TokenDecider:
    """Maps a raw token to its stored form (or None when rejected).

    Verdicts are cached per distinct raw token; year-major exports
    repeat each token once per year, so nearly every line is a hit.
    str and bytes keys coexist in one cache (they never compare equal).
    """

    def __init__(self, config: TokenFilterConfig, rules: NormalizationRuleset):
        self.config = config
        self.rules = rules
        self.cache: dict[str | bytes, str | None] = {}

    def decide(self, raw: str) -> str | None:
        token = raw.casefold() if self.config.case_fold else raw
        if _TYPOGRAPHIC_APOSTROPHE in token:
            token = token.replace(_TYPOGRAPHIC_APOSTROPHE, _ASCII_APOSTROPHE)
        if not is_word(token, self.config):
            self.cache[raw] = None
            return None
        normalized = self.rules.apply(token)
        if normalized != token:
            if not normalized or not is_word(normalized, self.config):
                self.cache[raw] = None
                return None
            token = normalized
        token = sys.intern(token)
        self.cache[raw] = token
        return token


def ingest_stream(
    lines: Iterable[str | bytes],
    filter_config: TokenFilterConfig | None = None,
    rules: NormalizationRuleset = EMPTY_RULESET,
    years: tuple[int, int] = DEFAULT_YEAR_RANGE,
) -> IngestResult:
    """Accumulate an export stream into a sealed frequency store.

    Tolerates arbitrary dirty lines: grammar violations count as
    malformed, non-words and out-of-range years as rejected; neither
    aborts. Per-year totals are the sum of accepted match counts, which
    renormalizes frequencies to word tokens only. Feeding the same
    multiset of lines in any order, or in any sharding later combined
    with :func:`lexidyn.store.merge`, produces an identical store.

    ``lines`` may yield ``str`` or UTF-8 ``bytes``; bytes are the fast
    path for file ingestion (tokens are only decoded on cache miss).
    """
    if filter_config is None:
        filter_config = TokenFilterConfig()
    year_min, year_max = years
    if year_min > year_max:
        raise ValueError(f"empty year range {years!r}")

    decider = _TokenDecider(filter_config, rules)
    cache = decider.cache
    decide = decider.decide
    counts: dict[int, dict[str, int]] = {}
    lines_read = accepted = rejected = malformed = 0
    miss = object()

    for line in lines:
        lines_read += 1
        if isinstance(line, bytes):
            parts = line.split(b"\t")
            nf = len(parts)
            if nf == 4:
                yf, mf, vf = parts[1], parts[2], parts[3].rstrip(b"\r\n")
            elif nf == 3:
                yf, mf, vf = parts[1], parts[2].rstrip(b"\r\n"), b"0"
            else:
                malformed += 1
                continue
            if not (yf.isdigit() and mf.isdigit() and vf.isdigit()):
                malformed += 1
                continue
            year = int(yf)
            if year < year_min or year > year_max:
                rejected += 1
                continue
            raw = parts[0]
            stored = cache.get(raw, miss)
            if stored is miss:
                try:
                    raw_text = raw.decode("utf-8")
                except UnicodeDecodeError:
                    cache[raw] = None
                    malformed += 1
                    continue
                stored = decide(raw_text)
                cache[raw] = stored
            if stored is None:
                rejected += 1
                continue
            mc = int(mf)
        else:
            parts = line.rstrip("\r\n").split("\t")
            nf = len(parts)
            if nf == 4:
                yf, mf, vf = parts[1], parts[2], parts[3]
            elif nf == 3:
                yf, mf, vf = parts[1], parts[2], "0"
            else:
                malformed += 1
                continue
            if not (
                yf.isdigit() and yf.isascii()
                and mf.isdigit() and mf.isascii()
                and vf.isdigit() and vf.isascii()
            ):
                malformed += 1
                continue
            year = int(yf)
            if year < year_min or year > year_max:
                rejected += 1
                continue
            raw = parts[0]
            stored = cache.get(raw, miss)
            if stored is miss:
                stored = decide(raw)
            if stored is None:
                rejected += 1
                continue
            mc = int(mf)

        accepted += 1
        if mc:
            per_year = counts.get(year)
            if per_year is None:
                per_year = counts[year] = {}
            per_year[stored] = per_year.get(stored, 0) + mc

    store = FrequencyStore.from_counts(
        counts,
        provenance=Provenance(filter_config.config_id, rules.ruleset_id),
        year_bounds=(year_min, year_max),
    )
    stats = IngestStats(lines_read, accepted, rejected, malformed)
    return IngestResult(store, stats)
