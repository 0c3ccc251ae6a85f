"""Text preprocessing: tokens, stopwords, stemming, phrases, vocabulary, bags."""

from .bag import BagCorpus, Vocabulary, build_vocabulary, digest_strings, vectorize
from .phrases import merge_phrases, promote_bigrams
from .pipeline import PrepConfig, PrepResult, normalize_text, preprocess
from .porter import stem
from .tokens import SMART_STOPWORDS, load_stopword_file, remove_stopwords, tokenize

__all__ = [
    "BagCorpus",
    "PrepConfig",
    "PrepResult",
    "SMART_STOPWORDS",
    "Vocabulary",
    "build_vocabulary",
    "digest_strings",
    "load_stopword_file",
    "merge_phrases",
    "normalize_text",
    "preprocess",
    "promote_bigrams",
    "remove_stopwords",
    "stem",
    "tokenize",
    "vectorize",
]
