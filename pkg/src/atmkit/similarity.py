"""Hellinger distance between author-topic rows and similar-author search."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .atm.model import AtmModel
from .errors import SimilarityError

_SQRT2 = math.sqrt(2.0)
NORM_TOL = 1e-9


def _as_distribution(p, name: str) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise SimilarityError(f"{name} must be a non-empty vector")
    if np.any(p < 0) or not np.all(np.isfinite(p)):
        raise SimilarityError(f"{name} has negative or non-finite entries")
    s = p.sum()
    if abs(s - 1.0) > NORM_TOL:
        raise SimilarityError(f"{name} sums to {s!r}, not 1")
    return p / s


def _rows_distance(sqrt_query: np.ndarray, sqrt_rows: np.ndarray) -> np.ndarray:
    diff = sqrt_rows - sqrt_query
    return np.minimum(np.sqrt(np.einsum("ij,ij->i", diff, diff)) / _SQRT2, 1.0)


def hellinger(p, q) -> float:
    """``sqrt(sum_i (sqrt(p_i) - sqrt(q_i))**2) / sqrt(2)``, in [0, 1]."""
    p = _as_distribution(p, "p")
    q = _as_distribution(q, "q")
    if p.shape != q.shape:
        raise SimilarityError(f"length mismatch: {p.size} vs {q.size}")
    d = math.sqrt(math.fsum((a - b) ** 2 for a, b in zip(np.sqrt(p), np.sqrt(q)))) / _SQRT2
    return min(d, 1.0)


def similarity(p, q) -> float:
    """``1 / (1 + H(p, q))``, in [0.5, 1]."""
    return 1.0 / (1.0 + hellinger(p, q))


@dataclass(frozen=True)
class SimilarityResult:
    query_author: int
    ranked: tuple[tuple[int, float], ...]

    def to_tsv(self, names: Sequence[str]) -> str:
        rows = [f"{r}\t{names[a]}\t{s:.6f}\n" for r, (a, s) in enumerate(self.ranked, 1)]
        return "rank\tauthor_name\tsimilarity\n" + "".join(rows)


def _normalized_theta(model: AtmModel) -> np.ndarray:
    theta = np.asarray(model.theta, dtype=np.float64)
    sums = theta.sum(axis=1, keepdims=True)
    if np.any(theta < 0) or np.max(np.abs(sums - 1.0)) > NORM_TOL:
        raise SimilarityError("theta rows are not probability vectors")
    return theta / sums


def top_k_similar(
    model: AtmModel,
    author: int,
    k: int = 5,
    candidates: Sequence[int] | None = None,
) -> SimilarityResult:
    """Rank other authors by ``1 / (1 + H)`` against ``author``.

    Ties are broken by ascending author index. ``candidates`` restricts the
    pool (e.g. to authors with a minimum document count).
    """
    A = model.theta.shape[0]
    if not 0 <= author < A:
        raise SimilarityError(f"author index {author} out of range [0, {A})")
    if k < 1:
        raise SimilarityError("k must be >= 1")
    roots = np.sqrt(_normalized_theta(model))
    pool = np.arange(A) if candidates is None else np.unique(np.asarray(candidates, dtype=np.int64))
    pool = pool[pool != author]
    dist = _rows_distance(roots[author], roots[pool])
    order = np.lexsort((pool, dist))[:k]
    ranked = tuple((int(pool[i]), 1.0 / (1.0 + float(dist[i]))) for i in order)
    return SimilarityResult(author, ranked)


def pairwise_hellinger(model_or_theta) -> np.ndarray:
    """Symmetric ``A x A`` Hellinger matrix with zero diagonal."""
    if isinstance(model_or_theta, AtmModel):
        theta = _normalized_theta(model_or_theta)
    else:
        theta = np.asarray(model_or_theta, dtype=np.float64)
        theta = theta / theta.sum(axis=1, keepdims=True)
    roots = np.sqrt(theta)
    A = roots.shape[0]
    out = np.zeros((A, A))
    for i in range(A - 1):
        row = _rows_distance(roots[i], roots[i + 1 :])
        out[i, i + 1 :] = row
        out[i + 1 :, i] = row
    return out


def pairwise_csv(matrix: np.ndarray, names: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["author", *names])
    for name, row in zip(names, matrix):
        w.writerow([name, *(f"{v:.6f}" for v in row)])
    return buf.getvalue()
