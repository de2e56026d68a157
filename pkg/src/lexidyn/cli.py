"""Command-line surface: build a cache, then query it as CSV.

``lexidyn build`` ingests 1-gram exports (plain or gzip, or stdin via
``-i -``) into a cache file; the analysis subcommands load that cache
and print RFC-4180 CSV (UTF-8, LF, one header row) to stdout or
``--out``. Output is byte-identical across runs and thread settings.

Exit codes: 0 ok, 1 I/O or cache failure, 2 empty build, 3 bad
year/filter selection, 4 bad flags.
"""

from __future__ import annotations

import argparse
import csv
import gzip
import io
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, Sequence

from . import lexicon, metrics, periods, store
from .errors import (
    CacheVersionMismatch,
    CorruptCache,
    EmptySelection,
    InvalidBreakpoints,
    IoFailure,
    LexidynError,
    MalformedLine,
    ProvenanceMismatch,
    YearAbsent,
)
from .ingest import (
    DEFAULT_YEAR_RANGE,
    RULESETS,
    IngestStats,
    NormalizationRuleset,
    TokenFilterConfig,
    ingest_stream,
    parse_totals_line,
)

__all__ = ["main", "entry", "build_parser"]

EXIT_OK = 0
EXIT_IO = 1
EXIT_EMPTY_BUILD = 2
EXIT_BAD_SELECTION = 3
EXIT_BAD_FLAGS = 4

CACHE_ENV_VAR = "LEXIDYN_CACHE"
_GZIP_MAGIC = b"\x1f\x8b"

_FILTER_CHOICES = ("all", "short", "long", "function", "content", "pronoun-personal")
_CLASS_CHOICES = ("all", "function", "content", "pronoun-personal")


def _fmt(value) -> str:
    """CSV cell for one value; floats carry 12 significant digits."""
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


class _Parser(argparse.ArgumentParser):
    """argparse, but flag errors exit with the documented code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_FLAGS, f"{self.prog}: error: {message}\n")


def _year_span(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition(":")
        span = (int(lo), int(hi))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX, got {text!r}") from None
    if span[0] > span[1]:
        raise argparse.ArgumentTypeError(f"empty year span {text!r}")
    return span


def _year_selection(text: str):
    """--years accepts a MIN:MAX span or an explicit comma list.

    A span is intersected with the years present in the cache; an
    explicit list demands every listed year be present.
    """
    if ":" in text:
        return ("span", _year_span(text))
    try:
        years = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX or Y1,Y2,..., got {text!r}") from None
    return ("list", years)


def _default_cache() -> str:
    return os.environ.get(CACHE_ENV_VAR, "corpus.lxdn")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lexidyn",
        description="Diachronic word-frequency statistics over 1-gram corpora.",
    )
    parser.add_argument(
        "--config",
        metavar="FILE",
        help="flat key=value config file; command-line flags override it",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(
            name,
            help=help_text,
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        )
        p.add_argument("--config", metavar="FILE", help="key=value config file")
        p.add_argument(
            "--threads",
            type=int,
            default=1,
            help="worker threads (build fans out per input file; output is unaffected)",
        )
        return p

    p = add("build", "ingest 1-gram exports into a cache file")
    p.add_argument(
        "-i",
        "--input",
        action="extend",
        nargs="+",
        default=[],
        metavar="PATH",
        help="input files (plain or gzip TSV); repeatable; '-' reads stdin",
    )
    p.add_argument("-o", "--cache", default=_default_cache(), help="cache file to write")
    p.add_argument("--lang", default="en", help="language tag (picks the script filter)")
    p.add_argument(
        "--years", type=_year_span, default=DEFAULT_YEAR_RANGE, metavar="MIN:MAX",
        help="accepted year range",
    )
    p.add_argument(
        "--ruleset",
        default="empty",
        help=f"normalization ruleset: {', '.join(sorted(RULESETS))}, or a rule file path",
    )
    p.add_argument("--case-fold", action="store_true", help="fold token case before storing")
    p.add_argument(
        "--no-apostrophe",
        action="store_true",
        help="reject tokens containing apostrophes",
    )
    p.add_argument(
        "--totals",
        metavar="PATH",
        help="optional raw totals file; reported for comparison only",
    )

    def add_analysis(name: str, help_text: str) -> argparse.ArgumentParser:
        q = add(name, help_text)
        q.add_argument("-c", "--cache", default=_default_cache(), help="cache file to read")
        q.add_argument("--out", metavar="PATH", help="write CSV here instead of stdout")
        return q

    p = add_analysis("series", "average word length per year")
    p.add_argument(
        "--years", type=_year_selection, default=None, metavar="MIN:MAX|Y1,Y2,...",
        help="years to cover (default: all cached years)",
    )
    p.add_argument("--smooth", type=int, default=0, help="centered smoothing half-window, years")
    p.add_argument("--filter", choices=_FILTER_CHOICES, default="all", help="word subset")
    p.add_argument("--cutoff", type=int, default=3, help="letter cutoff for short/long")
    p.add_argument("--lang", default="en", help="language tag for shipped class lists")

    p = add_analysis("vocab", "distinct-word counts per year with a linear fit")
    p.add_argument(
        "--years", type=_year_selection, default=None, metavar="MIN:MAX|Y1,Y2,...",
        help="years to cover (default: all cached years)",
    )
    p.add_argument(
        "--threshold", type=float, default=1e-9,
        help="minimum relative frequency for a word to count",
    )

    p = add_analysis("contrib", "per-word contributions to mean-length change")
    p.add_argument(
        "--period", type=_year_span, required=True, metavar="START:END",
        help="interval endpoints (years in the cache)",
    )
    p.add_argument("--smooth", type=int, default=0, help="endpoint smoothing half-window, years")
    p.add_argument("--filter", choices=_FILTER_CHOICES, default="all", help="word subset")
    p.add_argument("--cutoff", type=int, default=3, help="letter cutoff for short/long")
    p.add_argument("--lang", default="en", help="language tag for shipped class lists")

    p = add_analysis("topk", "top contributing words for a period")
    p.add_argument(
        "--period", type=_year_span, required=True, metavar="START:END",
        help="interval endpoints (years in the cache)",
    )
    p.add_argument("-k", type=int, default=10, help="rows to keep")
    p.add_argument(
        "--sign", choices=("increase", "decrease", "both"), default="both",
        help="keep words pushing the mean this way",
    )
    p.add_argument("--class", dest="word_class", choices=_CLASS_CHOICES, default="all",
                   help="word class to rank")
    p.add_argument("--metric", choices=("linear", "exact"), default="linear",
                   help="ranking metric")
    p.add_argument("--smooth", type=int, default=0, help="endpoint smoothing half-window, years")
    p.add_argument("--lang", default="en", help="language tag for shipped class lists")

    p = add_analysis("bands", "mean-length change grouped by word length")
    p.add_argument(
        "--period", type=_year_span, required=True, metavar="START:END",
        help="interval endpoints (years in the cache)",
    )
    p.add_argument("--smooth", type=int, default=0, help="endpoint smoothing half-window, years")
    p.add_argument(
        "--raw-sums", action="store_true",
        help="skip share normalization (share column becomes 0)",
    )

    p = add_analysis("words", "relative-frequency series for chosen words")
    p.add_argument(
        "-t", "--tokens", required=True, metavar="W1,W2,...",
        help="comma-separated tokens to trace",
    )
    p.add_argument(
        "--years", type=_year_selection, default=None, metavar="MIN:MAX|Y1,Y2,...",
        help="years to cover (default: all cached years)",
    )
    p.add_argument("--smooth", type=int, default=0, help="centered smoothing half-window, years")

    return parser


def _load_config_file(path: str) -> dict[str, str]:
    """Flat key=value file; '#' comments and blank lines ignored."""
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise ValueError(f"{path}: line {lineno}: expected key=value")
                values[key.strip()] = value.strip()
    except OSError as exc:
        raise IoFailure(f"cannot read config {path}: {exc}") from exc
    return values


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> None:
    """Set config-file values as subcommand defaults before parsing.

    Flags given on the command line still win because defaults only
    fill in unset options. Config keys use option names with dashes or
    underscores (e.g. ``smooth=5``, ``case-fold=true``).
    """
    path = None
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif arg.startswith("--config="):
            path = arg.split("=", 1)[1]
    if path is None:
        return
    values = _load_config_file(path)

    # Reach into the subparsers to set defaults wherever the dest exists.
    subparsers = [parser]
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            subparsers.extend(action.choices.values())
    recognized = set()
    for key, value in values.items():
        dest = key.replace("-", "_")
        for p in subparsers:
            for action in p._actions:
                if action.dest != dest or action.dest == "config":
                    continue
                recognized.add(key)
                if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
                    parsed = value.lower() in ("1", "true", "yes", "on")
                elif action.dest == "input":
                    parsed = [part for part in value.split(",") if part]
                elif action.type is not None:
                    parsed = action.type(value)
                else:
                    parsed = value
                p.set_defaults(**{dest: parsed})
    unknown = set(values) - recognized
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")


def _open_lines(path: str) -> Iterator[bytes]:
    """Binary line iterator over a plain or gzip file, or '-' for stdin."""
    if path == "-":
        yield from sys.stdin.buffer
        return
    try:
        fh = open(path, "rb")
    except OSError as exc:
        raise IoFailure(f"cannot open {path}: {exc}") from exc
    with fh:
        head = fh.read(2)
        fh.seek(0)
        if head == _GZIP_MAGIC:
            with gzip.open(fh, "rb") as gz:
                # GzipFile.readline is slow; a buffer in front roughly
                # halves line-iteration cost on large exports.
                yield from io.BufferedReader(gz, 1 << 17)
        else:
            yield from fh


def _ruleset_from_flag(value: str) -> NormalizationRuleset:
    if value in RULESETS:
        return RULESETS[value]
    if os.path.exists(value):
        try:
            with open(value, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise IoFailure(f"cannot read ruleset {value}: {exc}") from exc
        return NormalizationRuleset.parse(text, os.path.basename(value))
    raise ValueError(
        f"unknown ruleset {value!r} (shipped: {', '.join(sorted(RULESETS))})"
    )


def _word_filter_from_flags(args) -> tuple[Callable[[str], bool] | None, str]:
    name = getattr(args, "filter", "all")
    if name == "all":
        return None, "all"
    if name in ("short", "long"):
        split = lexicon.split_by_length(args.cutoff)
        pred = split.short if name == "short" else split.long
        return pred, f"{name}<={args.cutoff}" if name == "short" else f"{name}>{args.cutoff}"
    lists = lexicon.shipped_lists(args.lang)

    def class_pred(token: str) -> bool:
        return lexicon.classify(token, lists) == name

    return class_pred, f"class={name}"


def _resolve_year_selection(selection, cached_years) -> list[int] | None:
    if selection is None:
        return None
    kind, value = selection
    if kind == "span":
        lo, hi = value
        chosen = [y for y in cached_years if lo <= y <= hi]
        if not chosen:
            raise EmptySelection(f"no cached years inside {lo}:{hi}")
        return chosen
    return list(value)  # explicit list: presence enforced downstream


def _open_out(args):
    if getattr(args, "out", None):
        try:
            return open(args.out, "w", encoding="utf-8", newline="")
        except OSError as exc:
            raise IoFailure(f"cannot write {args.out}: {exc}") from exc
    return None


def _emit(args, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    out = _open_out(args)
    target = out if out is not None else sys.stdout
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(cell) for cell in row])
    if out is not None:
        out.close()


def _load_store(args) -> store.FrequencyStore:
    return store.load_cache(args.cache)


def _cmd_build(args) -> int:
    filter_config = TokenFilterConfig.for_language(
        args.lang,
        allow_apostrophe=not args.no_apostrophe,
        case_fold=args.case_fold,
    )
    ruleset = _ruleset_from_flag(args.ruleset)
    inputs: list[str] = args.input
    if not inputs:
        raise ValueError("no input files given (use -i PATH, or -i - for stdin)")

    def ingest_one(path: str):
        return ingest_stream(_open_lines(path), filter_config, ruleset, args.years)

    if args.threads > 1 and len(inputs) > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(ingest_one, inputs))
    else:
        results = [ingest_one(path) for path in inputs]

    merged = store.merge([r.store for r in results])
    stats = sum((r.stats for r in results), IngestStats())
    print(
        f"lines read {stats.lines_read}, accepted {stats.accepted}, "
        f"rejected {stats.rejected}, malformed {stats.malformed}"
    )
    if args.totals:
        raw_total = 0
        for line in _open_lines(args.totals):
            for _year, match_count in parse_totals_line(line):
                raw_total += match_count
        word_total = sum(merged.slice(y).total for y in merged.years)
        print(f"raw 1-gram total {raw_total}, accepted word total {word_total}")
    if not merged.years:
        print("no word tokens accepted; cache not written", file=sys.stderr)
        return EXIT_EMPTY_BUILD
    store.save_cache(merged, args.cache)
    print(f"cache written to {args.cache} ({len(merged.years)} years, "
          f"{len(merged.tokens)} words)")
    return EXIT_OK


def _cmd_series(args) -> int:
    st = _load_store(args)
    word_filter, label = _word_filter_from_flags(args)
    years = _resolve_year_selection(args.years, st.years)
    series = metrics.length_series(st, years, args.smooth, word_filter, label)
    _emit(args, ["year", "avg_length"], series.points)
    return EXIT_OK


def _cmd_vocab(args) -> int:
    st = _load_store(args)
    years = _resolve_year_selection(args.years, st.years)
    series = metrics.vocabulary_series(st, years, args.threshold)
    rows = [
        (year, count, series.slope, series.intercept)
        for year, count in series.points
    ]
    _emit(args, ["year", "count", "fit_slope", "fit_intercept"], rows)
    return EXIT_OK


def _cmd_contrib(args) -> int:
    st = _load_store(args)
    word_filter, _ = _word_filter_from_flags(args)
    start, end = args.period
    records = metrics.interval_contributions(st, start, end, word_filter, args.smooth)
    rows = [
        (
            rec.token,
            rec.length,
            rec.p_start,
            rec.p_end,
            rec.delta_p,
            rec.baseline_mean,
            rec.dl_linear,
            rec.dl_exact,
        )
        for rec in records
    ]
    _emit(
        args,
        ["token", "length", "p_start", "p_end", "delta_p", "baseline_mean",
         "dl_linear", "dl_exact"],
        rows,
    )
    return EXIT_OK


def _cmd_topk(args) -> int:
    st = _load_store(args)
    start, end = args.period
    if args.word_class == "all":
        class_pred = None
    else:
        lists = lexicon.shipped_lists(args.lang)

        def class_pred(token: str) -> bool:
            return lexicon.classify(token, lists) == args.word_class

    table = periods.top_contributors(
        st,
        periods.PeriodSpec(start, end),
        args.k,
        sign=args.sign,
        class_pred=class_pred,
        class_label=args.word_class,
        metric=periods.METRIC_EXACT if args.metric == "exact" else periods.METRIC_LINEAR,
        window=args.smooth,
    )
    rows = [(row.rank, row.token, row.dl_linear, row.dl_exact) for row in table.rows]
    _emit(args, ["rank", "token", "dl_linear", "dl_exact"], rows)
    return EXIT_OK


def _cmd_bands(args) -> int:
    st = _load_store(args)
    start, end = args.period
    records = metrics.interval_contributions(st, start, end, window=args.smooth)
    summary = metrics.band_contributions(records, normalize=not args.raw_sums)
    rows = [
        (length, summary.bands[length].signed_sum, summary.bands[length].share)
        for length in summary.lengths()
    ]
    _emit(args, ["length", "signed_sum", "share"], rows)
    return EXIT_OK


def _cmd_words(args) -> int:
    st = _load_store(args)
    tokens = [t for t in args.tokens.split(",") if t]
    if not tokens:
        raise EmptySelection("no tokens requested")
    years = _resolve_year_selection(args.years, st.years)
    series = periods.word_set_series(st, tokens, years, args.smooth)
    rows = [
        (token, year, freq)
        for token in series
        for year, freq in series[token]
    ]
    _emit(args, ["token", "year", "freq"], rows)
    return EXIT_OK


_COMMANDS = {
    "build": _cmd_build,
    "series": _cmd_series,
    "vocab": _cmd_vocab,
    "contrib": _cmd_contrib,
    "topk": _cmd_topk,
    "bands": _cmd_bands,
    "words": _cmd_words,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"lexidyn: config error: {exc}", file=sys.stderr)
        return EXIT_BAD_FLAGS
    except IoFailure as exc:
        print(f"lexidyn: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_BAD_FLAGS
    try:
        return _COMMANDS[args.command](args)
    except (YearAbsent, EmptySelection) as exc:
        print(f"lexidyn: {exc}", file=sys.stderr)
        return EXIT_BAD_SELECTION
    except (CorruptCache, CacheVersionMismatch, ProvenanceMismatch, IoFailure) as exc:
        print(f"lexidyn: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"lexidyn: {exc}", file=sys.stderr)
        return EXIT_IO
    except MalformedLine as exc:
        print(f"lexidyn: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, InvalidBreakpoints, LexidynError) as exc:
        print(f"lexidyn: {exc}", file=sys.stderr)
        return EXIT_BAD_FLAGS


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
