"""Forward sampler for the author-topic generative process."""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from ..corpus import AuthorMap
from ..errors import HyperParamError
from ..rng import make_rng
from ..textprep.bag import BagCorpus
from .model import AtmHyperParams


class SyntheticCorpus(NamedTuple):
    bag: BagCorpus
    theta: np.ndarray
    beta: np.ndarray
    x: list[np.ndarray]  # per-doc token authors, in generation order
    z: list[np.ndarray]  # per-doc token topics


def _inverse_cdf(rows: np.ndarray, u: np.ndarray) -> np.ndarray:
    cum = np.cumsum(rows, axis=1)
    target = u * cum[:, -1]
    return np.minimum((cum <= target[:, None]).sum(axis=1), rows.shape[1] - 1)


def _dirichlet_rows(rng, conc: float, n: int, width: int) -> np.ndarray:
    rows = rng.dirichlet(np.full(width, conc), size=n)
    # numpy's own normalisation can leave a one-component row at 1 - 2**-53
    return rows / rows.sum(axis=1, keepdims=True)


def _check_stochastic(m: np.ndarray, shape: tuple[int, int], name: str) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.shape != shape:
        raise HyperParamError(f"{name} override has shape {m.shape}, expected {shape}")
    if np.any(m < 0) or np.max(np.abs(m.sum(axis=1) - 1.0)) > 1e-9:
        raise HyperParamError(f"{name} override rows must be probability vectors")
    return m


def sample_corpus(
    hyper: AtmHyperParams,
    author_map: AuthorMap,
    doc_lengths: Sequence[int],
    vocab_size: int,
    theta: np.ndarray | None = None,
    beta: np.ndarray | None = None,
) -> SyntheticCorpus:
    """Draw a corpus from the generative process.

    theta rows ~ Dir(alpha), beta rows ~ Dir(eta) unless given; for every token
    an author is chosen uniformly from the document's authors, a topic from
    that author's theta row, and a word from that topic's beta row.
    """
    K, A, V = hyper.K, author_map.n_authors, int(vocab_size)
    if len(doc_lengths) != len(author_map.doc_authors):
        raise HyperParamError("doc_lengths and author_map disagree on the number of documents")
    if any(n < 1 for n in doc_lengths) or any(not a for a in author_map.doc_authors):
        raise HyperParamError("every document needs >= 1 token and >= 1 author")
    if V < 1:
        raise HyperParamError("vocab_size must be >= 1")
    rng = make_rng(hyper.seed)
    if theta is None:
        theta = _dirichlet_rows(rng, hyper.alpha, A, K)
    theta = _check_stochastic(theta, (A, K), "theta")
    if beta is None:
        beta = _dirichlet_rows(rng, hyper.eta, K, V)
    beta = _check_stochastic(beta, (K, V), "beta")

    docs, xs, zs = [], [], []
    for n_d, auth in zip(doc_lengths, author_map.doc_authors):
        auth = np.asarray(auth, dtype=np.int64)
        x = auth[rng.integers(0, auth.size, size=n_d)]
        z = _inverse_cdf(theta[x], rng.random(n_d))
        w = _inverse_cdf(beta[z], rng.random(n_d))
        ids, counts = np.unique(w, return_counts=True)
        docs.append(tuple(zip(ids.tolist(), counts.tolist())))
        xs.append(x)
        zs.append(z)
    width = len(str(V - 1))
    bag = BagCorpus(
        docs=tuple(docs),
        doc_authors=tuple(tuple(sorted(a)) for a in author_map.doc_authors),
        terms=tuple(f"w{v:0{width}d}" for v in range(V)),
        authors=author_map.authors,
    )
    return SyntheticCorpus(bag, theta, beta, xs, zs)
