"""Vocabulary construction and integer-coded bag-of-words corpora."""

from __future__ import annotations

import hashlib
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from ..errors import EmptyVocabularyError, PrepError

log = logging.getLogger(__name__)

BAG_FORMAT = "atmkit-bag"
BAG_VERSION = 1


def digest_strings(items: Sequence[str]) -> str:
    h = hashlib.sha256()
    for s in items:
        h.update(s.encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()[:16]


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    doc_freq: tuple[int, ...]
    term_to_id: dict[str, int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "term_to_id", {t: i for i, t in enumerate(self.terms)})
        if len(self.term_to_id) != len(self.terms):
            raise PrepError("vocabulary terms are not unique")
        if len(self.doc_freq) != len(self.terms):
            raise PrepError("doc_freq length differs from terms")

    def __len__(self) -> int:
        return len(self.terms)

    def write(self, path) -> None:
        """``id<TAB>term<TAB>doc_freq`` per line."""
        lines = [f"{i}\t{t}\t{df}\n" for i, (t, df) in enumerate(zip(self.terms, self.doc_freq))]
        Path(path).write_text("".join(lines), encoding="utf-8")

    @classmethod
    def read(cls, path) -> "Vocabulary":
        terms, dfs = [], []
        for lineno, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
            parts = line.split("\t")
            if len(parts) != 3 or int(parts[0]) != lineno - 1:
                raise PrepError(f"{path}: bad vocabulary line {lineno}")
            terms.append(parts[1])
            dfs.append(int(parts[2]))
        return cls(tuple(terms), tuple(dfs))


def build_vocabulary(token_docs: Sequence[Sequence[str]], config) -> Vocabulary:
    """Keep terms with ``vocab_min_docs <= df <= vocab_max_doc_frac * D``, sorted."""
    n_docs = len(token_docs)
    df: Counter = Counter()
    for doc in token_docs:
        df.update(set(doc))
    max_df = config.vocab_max_doc_frac * n_docs
    kept = sorted(t for t, c in df.items() if config.vocab_min_docs <= c <= max_df)
    if not kept:
        raise EmptyVocabularyError(
            f"vocabulary is empty after pruning {len(df)} terms over {n_docs} documents; "
            f"lower vocab_min_docs (now {config.vocab_min_docs}) or raise "
            f"vocab_max_doc_frac (now {config.vocab_max_doc_frac})"
        )
    return Vocabulary(tuple(kept), tuple(df[t] for t in kept))


@dataclass(frozen=True)
class BagCorpus:
    """Documents as sorted ``(term_id, count)`` pairs, with their author indices.

    ``terms`` and ``authors`` are the vocabulary and (compacted) author list the
    indices refer to.
    """

    docs: tuple[tuple[tuple[int, int], ...], ...]
    doc_authors: tuple[tuple[int, ...], ...]
    terms: tuple[str, ...]
    authors: tuple[str, ...]
    doc_ids: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.doc_ids:
            object.__setattr__(self, "doc_ids", tuple(str(i) for i in range(len(self.docs))))
        if not (len(self.docs) == len(self.doc_authors) == len(self.doc_ids)):
            raise PrepError("docs, doc_authors and doc_ids differ in length")
        V, A = len(self.terms), len(self.authors)
        for d, (pairs, auth) in enumerate(zip(self.docs, self.doc_authors)):
            if not pairs:
                raise PrepError(f"document {self.doc_ids[d]!r} has no tokens")
            if not auth or len(set(auth)) != len(auth):
                raise PrepError(f"document {self.doc_ids[d]!r}: author list empty or repeated")
            if any(not 0 <= a < A for a in auth):
                raise PrepError(f"document {self.doc_ids[d]!r}: author index out of range")
            prev = -1
            for t, c in pairs:
                if not prev < t < V or c < 1:
                    raise PrepError(f"document {self.doc_ids[d]!r}: bad (term, count) pair")
                prev = t

    @property
    def n_docs(self) -> int:
        return len(self.docs)

    @property
    def vocab_size(self) -> int:
        return len(self.terms)

    @property
    def n_authors(self) -> int:
        return len(self.authors)

    @cached_property
    def n_tokens(self) -> int:
        return sum(c for pairs in self.docs for _, c in pairs)

    @cached_property
    def vocab_digest(self) -> str:
        return digest_strings(self.terms)

    @cached_property
    def author_digest(self) -> str:
        return digest_strings(self.authors)

    def author_doc_counts(self) -> np.ndarray:
        counts = np.zeros(self.n_authors, dtype=np.int64)
        for auth in self.doc_authors:
            counts[list(auth)] += 1
        return counts

    def term_counts(self) -> np.ndarray:
        counts = np.zeros(self.vocab_size, dtype=np.int64)
        for pairs in self.docs:
            for t, c in pairs:
                counts[t] += c
        return counts

    def doc_tokens(self, d: int) -> list[int]:
        """Token sequence of document ``d`` (term ids expanded by count)."""
        return [t for t, c in self.docs[d] for _ in range(c)]

    def to_json(self) -> str:
        obj = {
            "format": BAG_FORMAT,
            "version": BAG_VERSION,
            "terms": list(self.terms),
            "authors": list(self.authors),
            "docs": [
                {"id": i, "authors": list(a), "terms": [list(p) for p in pairs]}
                for i, a, pairs in zip(self.doc_ids, self.doc_authors, self.docs)
            ],
        }
        return json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def read(cls, path) -> "BagCorpus":
        try:
            obj = json.loads(Path(path).read_text("utf-8"))
        except json.JSONDecodeError as exc:
            raise PrepError(f"{path}: not a bag-corpus file ({exc.msg})") from None
        if obj.get("format") != BAG_FORMAT or obj.get("version") != BAG_VERSION:
            raise PrepError(f"{path}: not a version-{BAG_VERSION} {BAG_FORMAT} file")
        docs = obj["docs"]
        return cls(
            docs=tuple(tuple((int(t), int(c)) for t, c in d["terms"]) for d in docs),
            doc_authors=tuple(tuple(int(a) for a in d["authors"]) for d in docs),
            terms=tuple(obj["terms"]),
            authors=tuple(obj["authors"]),
            doc_ids=tuple(str(d["id"]) for d in docs),
        )


def vectorize(token_docs, vocab: Vocabulary, author_map, doc_ids: Sequence[str] | None = None) -> BagCorpus:
    """Count in-vocabulary tokens per document.

    Documents left empty are dropped (and logged); authors who lose every
    document are dropped from the author list, and indices are compacted.
    """
    if not token_docs:
        raise PrepError("no documents to vectorize")
    if len(author_map.doc_authors) != len(token_docs):
        raise PrepError("author map is not aligned with the token documents")
    if doc_ids is None:
        doc_ids = [str(i) for i in range(len(token_docs))]
    index = vocab.term_to_id
    kept_docs, kept_auth, kept_ids, dropped = [], [], [], []
    for did, doc, auth in zip(doc_ids, token_docs, author_map.doc_authors):
        counts = Counter(index[t] for t in doc if t in index)
        if not counts:
            dropped.append(did)
            continue
        kept_docs.append(tuple(sorted(counts.items())))
        kept_auth.append(auth)
        kept_ids.append(did)
    if dropped:
        log.info("dropped %d empty documents: %s", len(dropped), ", ".join(dropped))
    if not kept_docs:
        raise PrepError("every document is empty after vocabulary filtering")
    used = sorted({a for auth in kept_auth for a in auth})
    remap = {a: i for i, a in enumerate(used)}
    return BagCorpus(
        docs=tuple(kept_docs),
        doc_authors=tuple(tuple(sorted(remap[a] for a in auth)) for auth in kept_auth),
        terms=vocab.terms,
        authors=tuple(author_map.authors[a] for a in used),
        doc_ids=tuple(kept_ids),
    )
