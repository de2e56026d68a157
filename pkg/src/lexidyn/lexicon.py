"""Word-class machinery: list-file classification and length splits.

Word classes are plain token sets loaded from text files (one token per
line, ``#`` comments). Classification walks the lists in precedence
order and falls back to "content": content classes are open, function
classes closed. The shipped English and Russian lists cover articles,
prepositions, conjunctions, pronouns, auxiliaries and particles; they
are editable data, not code.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Callable, Iterable, NamedTuple

from .errors import EmptyList, IoFailure
from .ingest import NormalizationRuleset, TokenFilterConfig, is_word

__all__ = [
    "CLASS_FUNCTION",
    "CLASS_CONTENT",
    "CLASS_PRONOUN_PERSONAL",
    "WordClassList",
    "LengthSplit",
    "load_list",
    "parse_list",
    "classify",
    "split_by_length",
    "shipped_list",
    "shipped_lists",
    "shipped_languages",
]

CLASS_FUNCTION = "function"
CLASS_CONTENT = "content"
CLASS_PRONOUN_PERSONAL = "pronoun-personal"

_TYPOGRAPHIC_APOSTROPHE = "’"

_SHIPPED_FILES = {
    ("en", CLASS_PRONOUN_PERSONAL): "en_pronouns_personal.txt",
    ("en", CLASS_FUNCTION): "en_function.txt",
    ("ru", CLASS_PRONOUN_PERSONAL): "ru_pronouns_personal.txt",
    ("ru", CLASS_FUNCTION): "ru_function.txt",
}


@dataclass(frozen=True)
class WordClassList:
    """A named, case-sensitive set of tokens for one word class."""

    language: str
    label: str
    members: frozenset[str]
    source: str = ""

    def __contains__(self, token: str) -> bool:
        return token in self.members


class LengthSplit(NamedTuple):
    short: Callable[[str], bool]
    long: Callable[[str], bool]


def parse_list(
    text: str,
    label: str,
    *,
    language: str = "",
    source: str = "",
    ruleset: NormalizationRuleset | None = None,
    filter_config: TokenFilterConfig | None = None,
) -> WordClassList:
    """Parse list-file text: one token per line, ``#`` comments, blanks skipped.

    Tokens are deduplicated; typographic apostrophes fold to ASCII so
    the lists match stored tokens. When a ruleset is given it is applied
    to each member; when a filter config is given, members that are not
    words under it are an error.
    """
    members = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        token = line.strip()
        if not token or token.startswith("#"):
            continue
        token = token.replace(_TYPOGRAPHIC_APOSTROPHE, "'")
        if ruleset is not None:
            token = ruleset.apply(token)
        if filter_config is not None and not is_word(token, filter_config):
            raise ValueError(f"{source or label}: line {lineno}: {token!r} is not a word")
        if token:
            members.add(token)
    if not members:
        raise EmptyList(f"{source or label}: no usable entries")
    return WordClassList(language, label, frozenset(members), source)


def load_list(
    path,
    label: str,
    *,
    language: str = "",
    ruleset: NormalizationRuleset | None = None,
    filter_config: TokenFilterConfig | None = None,
) -> WordClassList:
    """Load a word-class list file. See :func:`parse_list` for the format."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IoFailure(f"cannot read word list {path}: {exc}") from exc
    return parse_list(
        text,
        label,
        language=language,
        source=str(path),
        ruleset=ruleset,
        filter_config=filter_config,
    )


def shipped_list(
    language: str, label: str, ruleset: NormalizationRuleset | None = None
) -> WordClassList:
    """One of the bundled lists, by language tag and class label."""
    try:
        filename = _SHIPPED_FILES[(language.lower(), label)]
    except KeyError:
        raise KeyError(f"no shipped {label!r} list for language {language!r}") from None
    text = resources.files("lexidyn.data").joinpath(filename).read_text("utf-8")
    return parse_list(
        text, label, language=language.lower(), source=f"shipped:{filename}", ruleset=ruleset
    )


def shipped_lists(
    language: str, ruleset: NormalizationRuleset | None = None
) -> list[WordClassList]:
    """All bundled lists for a language, in classification precedence order.

    Personal pronouns come before the general function list, so pronoun
    membership wins for tokens present in both.
    """
    return [
        shipped_list(language, CLASS_PRONOUN_PERSONAL, ruleset),
        shipped_list(language, CLASS_FUNCTION, ruleset),
    ]


def shipped_languages() -> tuple[str, ...]:
    return tuple(sorted({lang for lang, _ in _SHIPPED_FILES}))


def classify(token: str, lists: Iterable[WordClassList]) -> str:
    """Label of the first list containing the token, else "content"."""
    for lst in lists:
        if token in lst.members:
            return lst.label
    return CLASS_CONTENT


def split_by_length(cutoff: int) -> LengthSplit:
    """(short, long) predicates partitioning words at a letter cutoff.

    ``short(w)`` holds iff the word has at most ``cutoff`` letters;
    ``long`` is its complement, so every word satisfies exactly one.
    """
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")

    def short(token: str) -> bool:
        return len(token) <= cutoff

    def long(token: str) -> bool:
        return len(token) > cutoff

    return LengthSplit(short, long)
