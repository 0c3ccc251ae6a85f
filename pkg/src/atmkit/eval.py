"""UMass topic coherence over the training bag-of-words."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

from .atm.model import AtmModel, top_term_ids
from .errors import EvalError
from .textprep.bag import BagCorpus


@dataclass(frozen=True)
class CoherenceReport:
    per_topic: tuple[float, ...]
    mean: float
    sum: float
    top_m: int
    top_words: tuple[tuple[str, ...], ...] = ()

    def to_tsv(self) -> str:
        lines = ["topic\tcoherence\ttop_words\n"]
        for k, (c, words) in enumerate(zip(self.per_topic, self.top_words)):
            lines.append(f"{k}\t{c:.6f}\t{' '.join(words)}\n")
        lines.append(f"mean\t{self.mean:.6f}\t\n")
        lines.append(f"sum\t{self.sum:.6f}\t\n")
        return "".join(lines)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    def write(self, tsv_path=None, json_path=None) -> None:
        if tsv_path:
            Path(tsv_path).write_text(self.to_tsv(), encoding="utf-8")
        if json_path:
            Path(json_path).write_text(self.to_json(), encoding="utf-8")


def document_sets(bag: BagCorpus, term_ids: Sequence[int]) -> dict[int, set[int]]:
    wanted = set(term_ids)
    sets: dict[int, set[int]] = {t: set() for t in wanted}
    for d, pairs in enumerate(bag.docs):
        for t, _ in pairs:
            if t in wanted:
                sets[t].add(d)
    return sets


def umass_coherence(bag: BagCorpus, top_words: Sequence[int]) -> float:
    """Sum over ordered word pairs of ``log((D(w_m, w_l) + 1) / D(w_l))``, l < m.

    ``top_words`` are term ids ordered by decreasing topic probability.
    """
    top_words = [int(t) for t in top_words]
    if not top_words:
        raise EvalError("need at least one top word")
    if any(not 0 <= t < bag.vocab_size for t in top_words):
        raise EvalError("top word id outside the vocabulary")
    docs = document_sets(bag, top_words)
    score = 0.0
    for m in range(1, len(top_words)):
        dm = docs[top_words[m]]
        for l in range(m):
            dl = docs[top_words[l]]
            if not dl:
                raise EvalError(f"term {top_words[l]} occurs in no document (vocabulary mismatch?)")
            score += math.log((len(dm & dl) + 1) / len(dl))
    return score


def coherence_report(model: AtmModel, bag: BagCorpus, top_m: int = 10) -> CoherenceReport:
    if top_m < 1:
        raise EvalError("top_m must be >= 1")
    model.check_aligned(bag)
    per_topic, words = [], []
    for k in range(model.K):
        ids = top_term_ids(model, k, top_m)
        per_topic.append(umass_coherence(bag, ids))
        words.append(tuple(model.terms[t] for t in ids))
    return CoherenceReport(
        per_topic=tuple(per_topic),
        mean=math.fsum(per_topic) / len(per_topic),
        sum=math.fsum(per_topic),
        top_m=top_m,
        top_words=tuple(words),
    )
