"""Exception types shared across the toolkit."""


class LexidynError(Exception):
    """Base class for every error raised by this package."""


class MalformedLine(LexidynError):
    """An input line does not match the 1-gram or totals grammar.

    Callers that stream large exports count these and keep going; a
    malformed line must never abort an ingest run.
    """


class IoFailure(LexidynError):
    """An input or output stream failed. Aborts the current operation."""


class YearAbsent(LexidynError):
    """A queried year is not present in the store (absent, not zero)."""

    def __init__(self, year: int):
        super().__init__(f"year {year} is not present in the store")
        self.year = year


class EmptySelection(LexidynError):
    """A filter or year selection matched no word tokens."""


class ProvenanceMismatch(LexidynError):
    """Stores built under different filter/ruleset configs cannot merge."""


class CacheVersionMismatch(LexidynError):
    """Cache file was written by an incompatible format version."""

    def __init__(self, found: int, expected: int):
        super().__init__(f"cache format version {found}, expected {expected}")
        self.found = found
        self.expected = expected


class CorruptCache(LexidynError):
    """Cache file is truncated, mangled, or fails its checksum."""


class DegenerateDistribution(LexidynError):
    """Contribution is undefined when one word carries all the mass."""


class InvalidBreakpoints(LexidynError):
    """Period breakpoints must be strictly increasing and in range."""


class SettingsMismatch(LexidynError):
    """Top-k tables combined into a matrix must share their settings."""


class EmptyList(LexidynError):
    """A word-class list file contained no usable entries."""
