"""Exact t-SNE over author-topic rows, with CSV and SVG output.

Input affinities use Gaussian kernels on squared distances, calibrated per row
by bisection on log-precision to a target perplexity, then symmetrised. The
output kernel is Student-t with one degree of freedom and the objective
KL(P || Q) is minimised by gradient descent with momentum, per-parameter gains
and early exaggeration.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import warnings
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .atm.model import AtmModel
from .errors import EmbedError
from .rng import make_rng
from .similarity import pairwise_hellinger
from .textprep.bag import BagCorpus

log = logging.getLogger(__name__)

PERPLEXITY_TOL = 1e-5
MAX_BISECTION = 50
FLOOR = 1e-12


@dataclass(frozen=True)
class TsneConfig:
    perplexity: float = 30.0
    iterations: int = 1000
    learning_rate: float = 200.0
    early_exaggeration: float = 12.0
    exaggeration_iters: int = 250
    momentum_early: float = 0.5
    momentum_late: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if not self.perplexity > 1:
            raise EmbedError("perplexity must be > 1")
        if not self.learning_rate > 0:
            raise EmbedError("learning_rate must be > 0")
        if not self.early_exaggeration >= 1:
            raise EmbedError("early_exaggeration must be >= 1")
        if self.exaggeration_iters < 0 or self.iterations < self.exaggeration_iters:
            raise EmbedError("need iterations >= exaggeration_iters >= 0")
        for m in (self.momentum_early, self.momentum_late):
            if not 0 <= m < 1:
                raise EmbedError("momentum must lie in [0, 1)")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Embedding:
    coords: np.ndarray
    point_sizes: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise EmbedError("embedding has no points")
        if self.coords.shape != (n, 2) or len(self.point_sizes) != n:
            raise EmbedError("coords, sizes and labels disagree in length")
        if not np.all(np.isfinite(self.coords)):
            raise EmbedError("non-finite coordinates")
        if any(s < 1 for s in self.point_sizes):
            raise EmbedError("point sizes must be >= 1")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["author_name", "x", "y", "doc_count"])
        for name, (x, y), c in zip(self.labels, self.coords, self.point_sizes):
            w.writerow([name, f"{x:.6f}", f"{y:.6f}", c])
        return buf.getvalue()


def _check_distances(distances) -> np.ndarray:
    D = np.asarray(distances, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise EmbedError("distance matrix must be square")
    if D.shape[0] < 3:
        raise EmbedError(f"need at least 3 points, got {D.shape[0]}")
    if not np.all(np.isfinite(D)) or np.any(D < 0):
        raise EmbedError("distances must be finite and non-negative")
    if not np.allclose(D, D.T, rtol=0, atol=1e-12):
        raise EmbedError("distance matrix is not symmetric")
    if np.any(np.diag(D) != 0):
        raise EmbedError("distance matrix must have a zero diagonal")
    return D


def _row_conditional(sq: np.ndarray, log_prec: float) -> tuple[np.ndarray, float]:
    """Conditional row for one point (``sq`` excludes self) and its perplexity."""
    shifted = sq - sq.min()
    w = np.exp(-math.exp(log_prec) * shifted)
    p = w / w.sum()
    nz = p[p > 0]
    entropy_bits = -float(np.sum(nz * np.log2(nz)))
    return p, 2.0**entropy_bits


def conditional_affinities(distances, perplexity: float) -> np.ndarray:
    """Row-stochastic P(j|i) with each row's perplexity matched to the target."""
    D = _check_distances(distances)
    n = D.shape[0]
    sq = D**2
    P = np.zeros((n, n))
    for i in range(n):
        others = np.r_[0:i, i + 1 : n]
        row_sq = sq[i, others]
        lo, hi = -50.0, 50.0
        best = None
        for _ in range(MAX_BISECTION):
            mid = 0.5 * (lo + hi)
            p, perp = _row_conditional(row_sq, mid)
            if best is None or abs(perp - perplexity) < best[0]:
                best = (abs(perp - perplexity), p)
            if abs(perp - perplexity) <= PERPLEXITY_TOL:
                break
            # larger precision, narrower kernel, lower perplexity
            if perp > perplexity:
                lo = mid
            else:
                hi = mid
        P[i, others] = best[1]
    return P


def input_affinities(distances, perplexity: float) -> np.ndarray:
    """Joint P = (P_cond + P_cond^T) / (2n): symmetric, zero diagonal, sums to 1."""
    Pc = conditional_affinities(distances, perplexity)
    n = Pc.shape[0]
    return (Pc + Pc.T) / (2.0 * n)


def student_t_affinities(Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(Q, num)`` where ``num[i, j] = 1 / (1 + |y_i - y_j|^2)``."""
    sum_y = np.sum(Y * Y, axis=1)
    sq = np.maximum(sum_y[:, None] + sum_y[None, :] - 2.0 * (Y @ Y.T), 0.0)
    num = 1.0 / (1.0 + sq)
    np.fill_diagonal(num, 0.0)
    return num / num.sum(), num


def kl_divergence(P: np.ndarray, Y: np.ndarray) -> float:
    Q, _ = student_t_affinities(Y)
    mask = ~np.eye(P.shape[0], dtype=bool)
    p = np.maximum(P[mask], FLOOR)
    q = np.maximum(Q[mask], FLOOR)
    return float(np.sum(P[mask] * np.log(p / q)))


def kl_gradient(P: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """``dKL/dy_i = 4 sum_j (p_ij - q_ij)(y_i - y_j) / (1 + |y_i - y_j|^2)``."""
    Q, num = student_t_affinities(Y)
    W = (P - Q) * num
    return 4.0 * (np.diag(W.sum(axis=1)) - W) @ Y


def _clamp_perplexity(perplexity: float, n: int) -> float:
    limit = max((n - 1) / 3.0, 1.0)
    if perplexity > limit:
        warnings.warn(f"perplexity {perplexity} too large for {n} points; using {limit:.4g}", stacklevel=3)
        return limit
    return perplexity


def tsne_with_history(distances, config: TsneConfig | None = None) -> tuple[np.ndarray, list[float]]:
    """Run t-SNE and return ``(coords, kl_per_iteration)``.

    The KL trace is measured against the un-exaggerated P.
    """
    config = config or TsneConfig()
    D = _check_distances(distances)
    n = D.shape[0]
    P = input_affinities(D, _clamp_perplexity(config.perplexity, n))
    rng = make_rng(config.seed)
    Y = rng.normal(0.0, 1e-4, size=(n, 2))
    update = np.zeros_like(Y)
    gains = np.ones_like(Y)
    history = []
    for it in range(config.iterations):
        exaggerate = it < config.exaggeration_iters
        P_eff = P * config.early_exaggeration if exaggerate else P
        momentum = config.momentum_early if it < config.exaggeration_iters else config.momentum_late
        grad = kl_gradient(P_eff, Y)
        same_sign = (grad > 0) == (update > 0)
        gains = np.where(same_sign, gains * 0.8, gains + 0.2)
        np.maximum(gains, 0.01, out=gains)
        update = momentum * update - config.learning_rate * gains * grad
        Y = Y + update
        Y = Y - Y.mean(axis=0)
        history.append(kl_divergence(P, Y))
    return Y, history


def tsne(distances, config: TsneConfig | None = None) -> np.ndarray:
    return tsne_with_history(distances, config)[0]


def embed_authors(
    model: AtmModel,
    bag: BagCorpus,
    config: TsneConfig | None = None,
    min_docs: int = 1,
) -> Embedding:
    """Embed every author with at least ``min_docs`` documents."""
    model.check_aligned(bag)
    counts = bag.author_doc_counts()
    keep = np.flatnonzero(counts >= min_docs)
    if keep.size < 3:
        raise EmbedError(f"need at least 3 authors to embed, have {keep.size}")
    dist = pairwise_hellinger(model.theta[keep])
    coords = tsne(dist, config)
    return Embedding(
        coords=coords,
        point_sizes=tuple(int(c) for c in counts[keep]),
        labels=tuple(model.authors[a] for a in keep),
    )


def _xml_escape(s: str) -> str:
    return (
        s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )


def svg_document(embedding: Embedding, size: int = 800, margin: int = 40, unit_radius: float = 3.0) -> str:
    """Standalone SVG: one circle per author, radius ``unit_radius * sqrt(doc_count)``."""
    xy = embedding.coords
    lo = xy.min(axis=0)
    span = xy.max(axis=0) - lo
    scale = (size - 2 * margin) / max(float(span.max()), 1e-12)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for name, (x, y), c in zip(embedding.labels, xy, embedding.point_sizes):
        cx = margin + (x - lo[0]) * scale
        cy = size - (margin + (y - lo[1]) * scale)
        r = unit_radius * math.sqrt(c)
        lines.append(
            f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{r:.3f}" fill="steelblue" '
            f'fill-opacity="0.6" stroke="black" stroke-width="0.5">'
            f"<title>{_xml_escape(name)} ({c})</title></circle>"
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(embedding: Embedding, out, **kwargs) -> None:
    Path(out).write_text(svg_document(embedding, **kwargs), encoding="utf-8")


def write_coords_csv(embedding: Embedding, out) -> None:
    Path(out).write_text(embedding.to_csv(), encoding="utf-8")

