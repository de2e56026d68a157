"""Immutable multi-year frequency table with binary cache persistence.

A :class:`FrequencyStore` maps (token, year) to integer counts, sealed
at construction. Counts are plain Python integers (year totals for a
large corpus exceed 32 bits); relative frequencies are computed on
demand and never stored, so the cache is exact.

Cache layout (format version 1, little-endian throughout)::

    magic "LXDN"
    header: format_version u32, year_min i32, year_max i32,
            token_count u64, provenance (u32 length + UTF-8)
    token table: token_count entries of (u32 length + UTF-8),
                 sorted lexicographically by code point
    postings, one block per token in table order:
        varint pair count, then (varint year delta, varint count) pairs;
        the first delta is from year_min, later ones from the prior year
    trailer: CRC-32 (u32) of everything between the magic and itself

Sequential to write during a merge, cheap to scan on load, and
canonical: equal stores always serialize to identical bytes.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import CacheVersionMismatch, CorruptCache, ProvenanceMismatch, YearAbsent

__all__ = [
    "CACHE_MAGIC",
    "CACHE_VERSION",
    "WordEntry",
    "Provenance",
    "YearSlice",
    "FrequencyStore",
    "frequency",
    "merge",
    "save_cache",
    "load_cache",
    "dump_bytes",
    "load_bytes",
]

CACHE_MAGIC = b"LXDN"
CACHE_VERSION = 1

# year_min > year_max marks a store with no configured range (e.g. the
# merge of nothing); such bounds never constrain anything.
_NO_BOUNDS = (0, -1)

_PROVENANCE_SEP = "\x1f"


@dataclass(frozen=True)
class WordEntry:
    """An interned token together with its length in letters."""

    token: str
    length: int

    @classmethod
    def from_token(cls, token: str) -> "WordEntry":
        return cls(token, len(token))


@dataclass(frozen=True)
class Provenance:
    """Identifies the filter config and ruleset a store was built under."""

    filter_id: str = ""
    ruleset_id: str = ""

    def to_string(self) -> str:
        return self.filter_id + _PROVENANCE_SEP + self.ruleset_id

    @classmethod
    def from_string(cls, s: str) -> "Provenance":
        filter_id, _, ruleset_id = s.partition(_PROVENANCE_SEP)
        return cls(filter_id, ruleset_id)


class YearSlice:
    """One year's word counts; ``total`` is exactly their sum."""

    __slots__ = ("year", "counts", "total")

    def __init__(self, year: int, counts: dict[str, int]):
        self.year = year
        self.counts: Mapping[str, int] = MappingProxyType(counts)
        self.total = sum(counts.values())

    def frequency(self, token: str) -> float:
        """Relative frequency in [0, 1]; 0.0 for absent tokens."""
        count = self.counts.get(token)
        if not count:
            return 0.0
        return count / self.total

    def __eq__(self, other) -> bool:
        if not isinstance(other, YearSlice):
            return NotImplemented
        return self.year == other.year and dict(self.counts) == dict(other.counts)

    def __repr__(self) -> str:
        return f"YearSlice(year={self.year}, words={len(self.counts)}, total={self.total})"


class FrequencyStore:
    """Sealed mapping of (token, year) to counts across many years.

    Years are sparse: a year is present only when at least one positive
    count landed in it, and queries on absent years raise
    :class:`YearAbsent` rather than pretending zero. Safe for unlimited
    concurrent readers.
    """

    __slots__ = ("_slices", "_years", "_year_min", "_year_max", "_provenance", "_tokens")

    def __init__(self, slices, year_bounds, provenance):
        # Internal; use from_counts() or load_cache().
        self._slices: dict[int, YearSlice] = slices
        self._years: tuple[int, ...] = tuple(sorted(slices))
        self._year_min, self._year_max = year_bounds
        self._provenance: Provenance = provenance
        self._tokens: tuple[str, ...] | None = None

    @classmethod
    def from_counts(
        cls,
        counts: Mapping[int, Mapping[str, int]],
        provenance: Provenance = Provenance(),
        year_bounds: tuple[int, int] | None = None,
    ) -> "FrequencyStore":
        """Seal nested ``{year: {token: count}}`` data into a store.

        Zero counts are dropped and years with nothing left do not
        materialize; negative counts are rejected. When ``year_bounds``
        is omitted it becomes the observed min/max year.
        """
        slices: dict[int, YearSlice] = {}
        for year, per_year in counts.items():
            kept: dict[str, int] = {}
            for token, count in per_year.items():
                if count < 0:
                    raise ValueError(f"negative count for {token!r} in {year}")
                if count:
                    kept[token] = count
            if kept:
                slices[int(year)] = YearSlice(int(year), kept)
        if year_bounds is None:
            year_bounds = (min(slices), max(slices)) if slices else _NO_BOUNDS
        else:
            bad = [y for y in slices if not year_bounds[0] <= y <= year_bounds[1]]
            if bad:
                raise ValueError(f"years {sorted(bad)} outside bounds {year_bounds}")
        return cls(slices, year_bounds, provenance)

    @classmethod
    def empty(cls, provenance: Provenance = Provenance()) -> "FrequencyStore":
        return cls({}, _NO_BOUNDS, provenance)

    @property
    def years(self) -> tuple[int, ...]:
        return self._years

    @property
    def year_min(self) -> int:
        return self._year_min

    @property
    def year_max(self) -> int:
        return self._year_max

    @property
    def provenance(self) -> Provenance:
        return self._provenance

    @property
    def tokens(self) -> tuple[str, ...]:
        """The interned token table, sorted lexicographically."""
        if self._tokens is None:
            seen: set[str] = set()
            for sl in self._slices.values():
                seen.update(sl.counts)
            self._tokens = tuple(sorted(seen))
        return self._tokens

    def word_entries(self) -> Iterable[WordEntry]:
        return (WordEntry.from_token(t) for t in self.tokens)

    def has_year(self, year: int) -> bool:
        return year in self._slices

    def slice(self, year: int) -> YearSlice:
        try:
            return self._slices[year]
        except KeyError:
            raise YearAbsent(year) from None

    def frequency(self, token: str, year: int) -> float:
        """counts[token] / total for the year; 0.0 for absent tokens."""
        return self.slice(year).frequency(token)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FrequencyStore):
            return NotImplemented
        return (
            self._provenance == other._provenance
            and (self._year_min, self._year_max) == (other._year_min, other._year_max)
            and self._slices == other._slices
        )

    def __repr__(self) -> str:
        span = f"{self._years[0]}..{self._years[-1]}" if self._years else "none"
        return f"FrequencyStore(years={span}, provenance={self._provenance.ruleset_id!r})"


def frequency(store: FrequencyStore, token: str, year: int) -> float:
    """Module-level alias for :meth:`FrequencyStore.frequency`."""
    return store.frequency(token, year)


def merge(stores: Iterable[FrequencyStore]) -> FrequencyStore:
    """Sum per-(token, year) counts across stores.

    All inputs must share filter/ruleset provenance; the result is
    independent of argument order. Merging nothing yields an empty
    store.
    """
    stores = list(stores)
    if not stores:
        return FrequencyStore.empty()
    provenance = stores[0].provenance
    for s in stores[1:]:
        if s.provenance != provenance:
            raise ProvenanceMismatch(
                f"cannot merge stores built under different configs: "
                f"{provenance} != {s.provenance}"
            )
    counts: dict[int, dict[str, int]] = {}
    for s in stores:
        for year in s.years:
            per_year = counts.setdefault(year, {})
            for token, count in s.slice(year).counts.items():
                per_year[token] = per_year.get(token, 0) + count
    bounded = [s for s in stores if s.year_min <= s.year_max]
    if bounded:
        bounds = (min(s.year_min for s in bounded), max(s.year_max for s in bounded))
    else:
        bounds = None
    return FrequencyStore.from_counts(counts, provenance=provenance, year_bounds=bounds)


def dump_bytes(store: FrequencyStore) -> bytes:
    """Serialize a store to cache bytes (canonical: equal stores, equal bytes)."""
    payload = bytearray()
    payload += struct.pack(
        "<Iii Q",
        CACHE_VERSION,
        store.year_min,
        store.year_max,
        len(store.tokens),
    )
    prov = store.provenance.to_string().encode("utf-8")
    payload += struct.pack("<I", len(prov))
    payload += prov

    tokens = store.tokens
    for token in tokens:
        raw = token.encode("utf-8")
        payload += struct.pack("<I", len(raw))
        payload += raw

    # Invert year-major slices to token-major postings.
    postings: dict[str, list[tuple[int, int]]] = {t: [] for t in tokens}
    for year in store.years:
        for token, count in store.slice(year).counts.items():
            postings[token].append((year, count))

    base_year = store.year_min
    append = payload.append
    for token in tokens:
        pairs = postings[token]
        # Inlined varint encode; this loop dominates save time.
        value = len(pairs)
        while value > 0x7F:
            append((value & 0x7F) | 0x80)
            value >>= 7
        append(value)
        prev = base_year
        for year, count in pairs:
            value = year - prev
            while value > 0x7F:
                append((value & 0x7F) | 0x80)
                value >>= 7
            append(value)
            value = count
            while value > 0x7F:
                append((value & 0x7F) | 0x80)
                value >>= 7
            append(value)
            prev = year
    return CACHE_MAGIC + bytes(payload) + struct.pack("<I", zlib.crc32(payload))


def load_bytes(data: bytes) -> FrequencyStore:
    """Rebuild a store from cache bytes; inverse of :func:`dump_bytes`."""
    if len(data) < 8 or data[:4] != CACHE_MAGIC:
        raise CorruptCache("not a frequency cache (bad magic)")
    (version,) = struct.unpack_from("<I", data, 4)
    if version != CACHE_VERSION:
        raise CacheVersionMismatch(version, CACHE_VERSION)
    if len(data) < 4 + 20 + 4 + 4:
        raise CorruptCache("truncated header")
    payload = data[4:-4]
    (stored_crc,) = struct.unpack_from("<I", data, len(data) - 4)
    if zlib.crc32(payload) != stored_crc:
        raise CorruptCache("checksum mismatch")
    try:
        return _parse_payload(payload)
    except (struct.error, IndexError, OverflowError, UnicodeDecodeError) as exc:
        raise CorruptCache(f"malformed cache payload: {exc}") from None


def _parse_payload(payload: bytes) -> FrequencyStore:
    pos = 0
    _version, year_min, year_max, token_count = struct.unpack_from("<IiiQ", payload, pos)
    pos += 20
    (prov_len,) = struct.unpack_from("<I", payload, pos)
    pos += 4
    provenance = Provenance.from_string(payload[pos : pos + prov_len].decode("utf-8"))
    pos += prov_len

    tokens: list[str] = []
    for _ in range(token_count):
        (tok_len,) = struct.unpack_from("<I", payload, pos)
        pos += 4
        tokens.append(payload[pos : pos + tok_len].decode("utf-8"))
        pos += tok_len

    counts: dict[int, dict[str, int]] = {}
    end = len(payload)
    for token in tokens:
        # Inlined varint decode; this loop dominates load time.
        b = payload[pos]
        pos += 1
        if b < 0x80:
            n_pairs = b
        else:
            n_pairs = b & 0x7F
            shift = 7
            while True:
                b = payload[pos]
                pos += 1
                n_pairs |= (b & 0x7F) << shift
                if b < 0x80:
                    break
                shift += 7
        year = year_min
        for _ in range(n_pairs):
            b = payload[pos]
            pos += 1
            if b < 0x80:
                delta = b
            else:
                delta = b & 0x7F
                shift = 7
                while True:
                    b = payload[pos]
                    pos += 1
                    delta |= (b & 0x7F) << shift
                    if b < 0x80:
                        break
                    shift += 7
            year += delta
            b = payload[pos]
            pos += 1
            if b < 0x80:
                count = b
            else:
                count = b & 0x7F
                shift = 7
                while True:
                    b = payload[pos]
                    pos += 1
                    count |= (b & 0x7F) << shift
                    if b < 0x80:
                        break
                    shift += 7
            per_year = counts.get(year)
            if per_year is None:
                per_year = counts[year] = {}
            per_year[token] = count
    if pos != end:
        raise CorruptCache(f"{end - pos} trailing bytes after postings")
    return FrequencyStore.from_counts(
        counts, provenance=provenance, year_bounds=(year_min, year_max)
    )


def save_cache(store: FrequencyStore, path) -> None:
    """Write the store to a cache file (atomic: temp file then rename)."""
    import os

    data = dump_bytes(store)
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def load_cache(path) -> FrequencyStore:
    """Read a cache file written by :func:`save_cache`."""
    with open(path, "rb") as fh:
        return load_bytes(fh.read())
