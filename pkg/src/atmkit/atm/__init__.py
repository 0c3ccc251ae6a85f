"""The author-topic model: generative sampler, Gibbs inference, queries, I/O."""

from .generative import SyntheticCorpus, sample_corpus
from .gibbs import AssignmentState, FlatCorpus, fit
from .io import load_model, save_model
from .kernels import BACKEND
from .model import (
    AtmHyperParams,
    AtmModel,
    per_word_log_likelihood,
    top_authors_for_topic,
    top_term_ids,
    top_terms,
)
from .restarts import RestartResult, fit_restarts

__all__ = [
    "AssignmentState",
    "AtmHyperParams",
    "AtmModel",
    "BACKEND",
    "FlatCorpus",
    "RestartResult",
    "SyntheticCorpus",
    "fit",
    "fit_restarts",
    "load_model",
    "per_word_log_likelihood",
    "sample_corpus",
    "save_model",
    "top_authors_for_topic",
    "top_term_ids",
    "top_terms",
]
