"""Multi-word token promotion: frequent bigrams and user-supplied phrases.

Promoted tokens are *appended* to the document, once per occurrence, with the
original unigrams left in place.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence

JOINER = "_"


def bigram_counts(token_docs: Sequence[Sequence[str]]) -> tuple[Counter, Counter, int]:
    unigrams: Counter = Counter()
    pairs: Counter = Counter()
    for doc in token_docs:
        unigrams.update(doc)
        pairs.update(zip(doc, doc[1:]))
    return unigrams, pairs, sum(unigrams.values())


def bigram_score(pair_count: int, count_a: int, count_b: int, min_count: int, n_tokens: int) -> float:
    return (pair_count - min_count) * n_tokens / (count_a * count_b)


def frequent_bigrams(token_docs, min_count: int, threshold: float) -> frozenset[tuple[str, str]]:
    unigrams, pairs, n_tok = bigram_counts(token_docs)
    keep = set()
    for (a, b), c in pairs.items():
        if c >= min_count and bigram_score(c, unigrams[a], unigrams[b], min_count, n_tok) >= threshold:
            keep.add((a, b))
    return frozenset(keep)


def promote_bigrams(token_docs, config) -> list[list[str]]:
    """Append ``a_b`` for every adjacent occurrence of a frequent pair."""
    chosen = frequent_bigrams(token_docs, config.bigram_min_count, config.bigram_score_threshold)
    out = []
    for doc in token_docs:
        extra = [a + JOINER + b for a, b in zip(doc, doc[1:]) if (a, b) in chosen]
        out.append(list(doc) + extra)
    return out


def merge_phrases(token_docs, phrases: Sequence[Sequence[str]]) -> list[list[str]]:
    """Append the joined phrase token for each occurrence of a known phrase.

    ``phrases`` are already-normalised token sequences of length >= 2 (pass
    them through the same tokenise/stem steps as the documents).
    """
    phrases = [tuple(p) for p in phrases if len(p) >= 2]
    out = []
    for doc in token_docs:
        doc = list(doc)
        extra = []
        for i in range(len(doc)):
            for p in phrases:
                if tuple(doc[i : i + len(p)]) == p:
                    extra.append(JOINER.join(p))
        out.append(doc + extra)
    return out
