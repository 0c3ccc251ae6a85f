"""Hyperparameters, the fitted model, and read-only queries over it."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from ..errors import HyperParamError, MismatchError
from ..rng import SEED_MAX
from ..textprep.bag import BagCorpus, digest_strings


@dataclass(frozen=True)
class AtmHyperParams:
    """Symmetric Dirichlet priors and sampler schedule.

    ``eta`` is the topic-word prior. Retained sweeps are those after
    ``burn_in`` that lie a multiple of ``thin`` before the last sweep, so the
    final sweep is always retained.
    """

    K: int = 5
    alpha: float = 0.5
    eta: float = 0.1
    iterations: int = 2000
    burn_in: int = 200
    thin: int = 10
    seed: int = 0

    def __post_init__(self):
        if int(self.K) != self.K or self.K < 1:
            raise HyperParamError(f"K must be a positive integer, got {self.K}")
        if not self.alpha > 0:
            raise HyperParamError(f"alpha must be > 0, got {self.alpha}")
        if not self.eta > 0:
            raise HyperParamError(f"eta must be > 0, got {self.eta}")
        if self.burn_in < 0 or not self.iterations > self.burn_in:
            raise HyperParamError(
                f"need iterations > burn_in >= 0, got {self.iterations}, {self.burn_in}"
            )
        if self.thin < 1:
            raise HyperParamError(f"thin must be >= 1, got {self.thin}")
        if not 0 <= self.seed <= SEED_MAX:
            raise HyperParamError(f"seed must fit in 64 unsigned bits, got {self.seed}")

    def retained(self, sweep: int) -> bool:
        return sweep > self.burn_in and (self.iterations - sweep) % self.thin == 0

    @property
    def n_retained(self) -> int:
        return sum(1 for s in range(1, self.iterations + 1) if self.retained(s))

    def to_dict(self) -> dict:
        return asdict(self)


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.float64, order="C")
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AtmModel:
    theta: np.ndarray  # (A, K) author-topic
    beta: np.ndarray  # (K, V) topic-word
    hyper: AtmHyperParams
    terms: tuple[str, ...]
    authors: tuple[str, ...]
    n_retained: int = 0
    vocab_ref: str = field(init=False)
    author_ref: str = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "theta", _frozen(self.theta))
        object.__setattr__(self, "beta", _frozen(self.beta))
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "authors", tuple(self.authors))
        object.__setattr__(self, "vocab_ref", digest_strings(self.terms))
        object.__setattr__(self, "author_ref", digest_strings(self.authors))
        A, K = self.theta.shape
        if self.beta.shape != (K, len(self.terms)) or A != len(self.authors) or K != self.hyper.K:
            raise MismatchError("theta/beta shapes disagree with terms, authors or K")

    @property
    def K(self) -> int:
        return self.hyper.K

    def check_stochastic(self, tol: float = 1e-9) -> None:
        for name, m in (("theta", self.theta), ("beta", self.beta)):
            if not np.all(m > 0) or np.max(np.abs(m.sum(axis=1) - 1.0)) > tol:
                raise MismatchError(f"{name} is not strictly positive and row-stochastic")

    def check_aligned(self, bag: BagCorpus) -> None:
        if bag.vocab_digest != self.vocab_ref:
            raise MismatchError("corpus vocabulary differs from the model's")
        if bag.author_digest != self.author_ref:
            raise MismatchError("corpus author list differs from the model's")

    def author_index(self, name: str) -> int:
        try:
            return self.authors.index(name)
        except ValueError:
            raise KeyError(name) from None


def _ranked(values: np.ndarray, n: int) -> np.ndarray:
    # descending value, ascending index on ties
    order = np.lexsort((np.arange(values.size), -values))
    return order[: max(0, min(n, values.size))]


def _check_topic(model: AtmModel, topic: int, n: int) -> None:
    if not 0 <= topic < model.K:
        raise IndexError(f"topic {topic} out of range [0, {model.K})")
    if n < 1:
        raise ValueError("n must be >= 1")


def top_terms(model: AtmModel, topic: int, n: int = 10) -> list[tuple[str, float]]:
    _check_topic(model, topic, n)
    row = model.beta[topic]
    return [(model.terms[v], float(row[v])) for v in _ranked(row, n)]


def top_term_ids(model: AtmModel, topic: int, n: int = 10) -> list[int]:
    _check_topic(model, topic, n)
    return [int(v) for v in _ranked(model.beta[topic], n)]


def top_authors_for_topic(model: AtmModel, topic: int, n: int = 1) -> list[tuple[str, float]]:
    _check_topic(model, topic, n)
    col = model.theta[:, topic]
    return [(model.authors[a], float(col[a])) for a in _ranked(col, n)]


def per_word_log_likelihood(model: AtmModel, bag: BagCorpus) -> float:
    """Average log probability per token under the point-estimate model.

    Each token's probability mixes the doc's authors uniformly:
    ``mean_a sum_k theta[a, k] * beta[k, w]``.
    """
    model.check_aligned(bag)
    total = 0.0
    for pairs, auth in zip(bag.docs, bag.doc_authors):
        ids = np.fromiter((t for t, _ in pairs), dtype=np.int64, count=len(pairs))
        counts = np.fromiter((c for _, c in pairs), dtype=np.float64, count=len(pairs))
        mix = model.theta[list(auth)].mean(axis=0)
        probs = np.minimum(mix @ model.beta[:, ids], 1.0)
        total += float(counts @ np.log(probs))
    return total / bag.n_tokens
