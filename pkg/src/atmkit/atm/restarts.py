from __future__ import annotations

import dataclasses
from concurrent.futures import ProcessPoolExecutor
from typing import NamedTuple

from ..textprep.bag import BagCorpus
from .gibbs import fit
from .model import AtmHyperParams, AtmModel, per_word_log_likelihood


class RestartResult(NamedTuple):
    restart: int
    seed: int
    mean_coherence: float
    sum_coherence: float
    per_word_ll: float


def _run(bag: BagCorpus, hyper: AtmHyperParams, top_m: int):
    from ..eval import coherence_report

    model = fit(bag, hyper)
    rep = coherence_report(model, bag, top_m)
    return model, rep.mean, rep.sum, per_word_log_likelihood(model, bag)


def fit_restarts(
    bag: BagCorpus,
    hyper: AtmHyperParams,
    restarts: int = 5,
    top_m: int = 10,
    workers: int = 1,
) -> tuple[AtmModel, list[RestartResult], int]:
    """Train ``restarts`` chains with seeds ``seed, seed+1, ...``; keep the best.

    Best means highest mean UMass coherence over topics; ties go to the earlier
    restart. Returns ``(best_model, results, best_restart_index)``.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    hypers = [dataclasses.replace(hyper, seed=hyper.seed + i) for i in range(restarts)]
    if workers > 1 and restarts > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outs = list(pool.map(_run, [bag] * restarts, hypers, [top_m] * restarts))
    else:
        outs = [_run(bag, h, top_m) for h in hypers]
    results = [
        RestartResult(i, h.seed, mean, total, ll)
        for i, (h, (_, mean, total, ll)) in enumerate(zip(hypers, outs))
    ]
    best = max(range(restarts), key=lambda i: (results[i].mean_coherence, -i))
    return outs[best][0], results, best
