"""Collapsed Gibbs inference for the author-topic model.

Each token's author and topic are resampled jointly from

    p(x=a, z=k | rest) ∝ (n_ak + alpha) / (n_a + K alpha) * (n_kw + eta) / (n_k + V eta)

over ``a`` in the document's authors, with the token's own counts removed.
The theta/beta estimates are averaged over retained sweeps.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import HyperParamError
from ..rng import make_rng
from ..textprep.bag import BagCorpus
from . import kernels
from .model import AtmHyperParams, AtmModel

log = logging.getLogger(__name__)


@dataclass
class FlatCorpus:
    """Token-level arrays consumed by the sweep kernels."""

    words: np.ndarray  # (N,)
    doc_ptr: np.ndarray  # (D+1,) token offsets
    auth_idx: np.ndarray  # concatenated per-doc author lists
    auth_ptr: np.ndarray  # (D+1,) offsets into auth_idx
    n_authors: int
    vocab_size: int

    @classmethod
    def from_bag(cls, bag: BagCorpus) -> "FlatCorpus":
        words = [t for d in range(bag.n_docs) for t in bag.doc_tokens(d)]
        lengths = [sum(c for _, c in pairs) for pairs in bag.docs]
        return cls(
            words=np.asarray(words, dtype=np.int64),
            doc_ptr=np.concatenate([[0], np.cumsum(lengths)]).astype(np.int64),
            auth_idx=np.asarray([a for auth in bag.doc_authors for a in auth], dtype=np.int64),
            auth_ptr=np.concatenate([[0], np.cumsum([len(a) for a in bag.doc_authors])]).astype(np.int64),
            n_authors=bag.n_authors,
            vocab_size=bag.vocab_size,
        )

    @property
    def n_tokens(self) -> int:
        return int(self.words.size)

    def token_docs(self) -> np.ndarray:
        return np.repeat(np.arange(self.doc_ptr.size - 1), np.diff(self.doc_ptr))


@dataclass
class AssignmentState:
    x: np.ndarray  # per-token author
    z: np.ndarray  # per-token topic
    count_ak: np.ndarray
    count_kv: np.ndarray
    count_k: np.ndarray
    count_a: np.ndarray

    @classmethod
    def tally(cls, flat: FlatCorpus, x: np.ndarray, z: np.ndarray, K: int) -> "AssignmentState":
        count_ak = np.zeros((flat.n_authors, K), dtype=np.int64)
        count_kv = np.zeros((K, flat.vocab_size), dtype=np.int64)
        np.add.at(count_ak, (x, z), 1)
        np.add.at(count_kv, (z, flat.words), 1)
        return cls(
            x=np.ascontiguousarray(x, dtype=np.int64),
            z=np.ascontiguousarray(z, dtype=np.int64),
            count_ak=count_ak,
            count_kv=count_kv,
            count_k=count_kv.sum(axis=1),
            count_a=count_ak.sum(axis=1),
        )

    def consistent_with(self, flat: FlatCorpus) -> bool:
        """Recount from (x, z) and compare with the incremental tables."""
        fresh = AssignmentState.tally(flat, self.x, self.z, self.count_kv.shape[0])
        if not all(
            np.array_equal(getattr(self, f), getattr(fresh, f))
            for f in ("count_ak", "count_kv", "count_k", "count_a")
        ):
            return False
        docs = flat.token_docs()
        lo, hi = flat.auth_ptr[docs], flat.auth_ptr[docs + 1]
        return all(self.x[n] in flat.auth_idx[lo[n] : hi[n]] for n in range(self.x.size))

    def theta_hat(self, alpha: float) -> np.ndarray:
        K = self.count_kv.shape[0]
        return (self.count_ak + alpha) / (self.count_a[:, None] + K * alpha)

    def beta_hat(self, eta: float) -> np.ndarray:
        V = self.count_kv.shape[1]
        return (self.count_kv + eta) / (self.count_k[:, None] + V * eta)


def initial_state(flat: FlatCorpus, K: int, rng: np.random.Generator) -> AssignmentState:
    docs = flat.token_docs()
    n_auth = np.diff(flat.auth_ptr)[docs]
    slot = rng.integers(0, n_auth)
    x = flat.auth_idx[flat.auth_ptr[docs] + slot]
    z = rng.integers(0, K, size=flat.n_tokens)
    return AssignmentState.tally(flat, x, z, K)


def fit(
    bag: BagCorpus,
    hyper: AtmHyperParams | None = None,
    *,
    sweep: Callable | None = None,
    callback: Callable[[int, AssignmentState], None] | None = None,
) -> AtmModel:
    """Fit the author-topic model to ``bag`` by collapsed Gibbs sampling.

    Parameters
    ----------
    bag
        Training corpus.
    hyper
        Priors, schedule and seed; defaults to ``AtmHyperParams()``.
    sweep
        Override the sweep kernel (``kernels.python_sweep`` or
        ``kernels.compiled_sweep``); defaults to the selected backend.
    callback
        Called as ``callback(sweep_number, state)`` after every sweep.

    Returns
    -------
    AtmModel
        Averaged smoothed estimates of theta and beta. Runs are deterministic
        given ``hyper.seed``.
    """
    hyper = hyper or AtmHyperParams()
    if bag.n_docs == 0 or bag.n_tokens == 0:
        raise HyperParamError("cannot fit an empty corpus")
    K = hyper.K
    if K > bag.n_tokens:
        warnings.warn(f"K={K} exceeds the number of tokens ({bag.n_tokens})", stacklevel=2)
    sweep = sweep or kernels.gibbs_sweep
    flat = FlatCorpus.from_bag(bag)
    rng = make_rng(hyper.seed)
    state = initial_state(flat, K, rng)
    buf = np.empty(K + (int(np.diff(flat.auth_ptr).max()) * K), dtype=np.float64)

    theta_sum = np.zeros((flat.n_authors, K))
    beta_sum = np.zeros((K, flat.vocab_size))
    kept = 0
    for s in range(1, hyper.iterations + 1):
        uniforms = rng.random(flat.n_tokens)
        sweep(
            flat.words, flat.doc_ptr, flat.auth_idx, flat.auth_ptr,
            state.x, state.z, state.count_ak, state.count_kv, state.count_k, state.count_a,
            float(hyper.alpha), float(hyper.eta), uniforms, buf,
        )
        if callback is not None:
            callback(s, state)
        if hyper.retained(s):
            theta_sum += state.theta_hat(hyper.alpha)
            beta_sum += state.beta_hat(hyper.eta)
            kept += 1
    log.debug("fit: %d sweeps, %d retained, backend=%s", hyper.iterations, kept, kernels.BACKEND)
    return AtmModel(
        theta=theta_sum / kept,
        beta=beta_sum / kept,
        hyper=hyper,
        terms=bag.terms,
        authors=bag.authors,
        n_retained=kept,
    )
