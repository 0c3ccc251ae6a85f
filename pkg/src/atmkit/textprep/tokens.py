from __future__ import annotations

import re
from importlib import resources
from typing import Iterable

_WS = re.compile(r"\s+")
_PUNCT = re.compile(r"[^\w\s]|_")
_DIGIT = re.compile(r"\d")


def tokenize(text: str, min_token_len: int = 2) -> list[str]:
    """Lowercase, strip punctuation, split on whitespace.

    Punctuation is replaced by a space, so ``"state-of-the-art"`` yields four
    tokens. Any token containing a digit is dropped whole, as is any token
    shorter than ``min_token_len``.
    """
    text = _WS.sub(" ", text.lower())
    text = _PUNCT.sub(" ", text)
    return [t for t in text.split() if len(t) >= min_token_len and not _DIGIT.search(t)]


def _read_term_lines(lines: Iterable[str]) -> frozenset[str]:
    terms = set()
    for line in lines:
        term = line.split("#", 1)[0].strip().lower()
        if term:
            terms.add(term)
    return frozenset(terms)


def load_stopword_file(path) -> frozenset[str]:
    """One term per line, ``#`` starts a comment."""
    with open(path, encoding="utf-8") as fh:
        return _read_term_lines(fh)


def _load_smart() -> frozenset[str]:
    text = resources.files("atmkit.data").joinpath("smart_stopwords.txt").read_text("utf-8")
    return _read_term_lines(text.splitlines())


#: The SMART system English stoplist; 570 unique terms.
SMART_STOPWORDS: frozenset[str] = _load_smart()


def remove_stopwords(
    tokens: Iterable[str],
    smart_list: frozenset[str] = SMART_STOPWORDS,
    custom: frozenset[str] = frozenset(),
) -> list[str]:
    return [t for t in tokens if t not in smart_list and t not in custom]
