"""Streaming diachronic corpus statistics from year-stamped 1-gram data.

Ingest Google-Books-style 1-gram exports into a compact frequency
store, then compute average-word-length series, exact and linearized
per-word contribution decompositions of mean-length change, word-class
and length-band breakdowns, vocabulary growth, and period-segmented
top-contributor tables. See the ``lexidyn`` command-line tool for the
end-to-end workflow.
"""

from .errors import (
    CacheVersionMismatch,
    CorruptCache,
    DegenerateDistribution,
    EmptyList,
    EmptySelection,
    InvalidBreakpoints,
    IoFailure,
    LexidynError,
    MalformedLine,
    ProvenanceMismatch,
    SettingsMismatch,
    YearAbsent,
)
from .ingest import (
    EMPTY_RULESET,
    R1918,
    RULESETS,
    IngestResult,
    IngestStats,
    NormalizationRuleset,
    RawNgramRecord,
    TokenFilterConfig,
    ingest_stream,
    is_word,
    normalize_token,
    parse_ngram_line,
    parse_totals_line,
    word_length,
)
from .lexicon import (
    WordClassList,
    classify,
    load_list,
    shipped_lists,
    split_by_length,
)
from .metrics import (
    ContributionRecord,
    LengthBandSummary,
    LengthSeries,
    VocabSeries,
    average_word_length,
    band_contributions,
    contribution_exact,
    contribution_linear,
    interval_contributions,
    length_series,
    vocabulary_series,
)
from .periods import (
    PeriodSpec,
    PresenceMatrix,
    TopKTable,
    presence_matrix,
    segment,
    top_contributors,
    word_set_series,
)
from .store import (
    FrequencyStore,
    Provenance,
    WordEntry,
    YearSlice,
    frequency,
    load_cache,
    merge,
    save_cache,
)

__version__ = "0.1.0"
