from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import NamedTuple

from ..corpus import AuthorMap, Corpus, build_author_map
from ..errors import PrepError
from .bag import BagCorpus, Vocabulary, build_vocabulary, vectorize
from .phrases import merge_phrases, promote_bigrams
from .porter import stem
from .tokens import SMART_STOPWORDS, remove_stopwords, tokenize


@dataclass(frozen=True)
class PrepConfig:
    custom_stopwords: frozenset[str] = frozenset()
    min_token_len: int = 2
    bigram_min_count: int = 20
    bigram_score_threshold: float = 10.0
    vocab_min_docs: int = 5
    vocab_max_doc_frac: float = 0.5
    # multi-word entities, raw text; normalised like document text
    phrases: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "custom_stopwords", frozenset(self.custom_stopwords))
        object.__setattr__(self, "phrases", tuple(self.phrases))
        if self.min_token_len < 1:
            raise PrepError("min_token_len must be >= 1")
        if self.bigram_min_count < 1:
            raise PrepError("bigram_min_count must be >= 1")
        if self.vocab_min_docs < 1:
            raise PrepError("vocab_min_docs must be >= 1")
        if not 0.0 < self.vocab_max_doc_frac <= 1.0:
            raise PrepError("vocab_max_doc_frac must lie in (0, 1]")

    def snapshot(self) -> dict:
        d = asdict(self)
        d["custom_stopwords"] = sorted(self.custom_stopwords)
        d["phrases"] = list(self.phrases)
        return d


class PrepResult(NamedTuple):
    vocab: Vocabulary
    bag: BagCorpus
    author_map: AuthorMap
    dropped_ids: tuple[str, ...]


def normalize_text(text: str, config: PrepConfig) -> list[str]:
    """tokenize -> stopwords -> stem for one piece of text."""
    tokens = tokenize(text, config.min_token_len)
    tokens = remove_stopwords(tokens, SMART_STOPWORDS, config.custom_stopwords)
    return [stem(t) for t in tokens]


def preprocess(corpus: Corpus, config: PrepConfig | None = None) -> PrepResult:
    """Run the whole text pipeline over a corpus.

    Order: tokenize, stopword removal, stemming, phrase and bigram promotion,
    vocabulary pruning, vectorization.
    """
    config = config or PrepConfig()
    token_docs = [normalize_text(rec.text, config) for rec in corpus.records]
    if config.phrases:
        phrase_tokens = [normalize_text(p, config) for p in config.phrases]
        token_docs = merge_phrases(token_docs, phrase_tokens)
    token_docs = promote_bigrams(token_docs, config)
    vocab = build_vocabulary(token_docs, config)
    author_map = build_author_map(corpus)
    ids = [rec.id for rec in corpus.records]
    bag = vectorize(token_docs, vocab, author_map, ids)
    kept = set(bag.doc_ids)
    return PrepResult(vocab, bag, author_map, tuple(i for i in ids if i not in kept))
