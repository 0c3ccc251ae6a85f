import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atmkit.atm import AtmHyperParams, AtmModel, fit, top_term_ids
from atmkit.errors import EvalError, MismatchError
from atmkit.eval import coherence_report, umass_coherence
from atmkit.textprep import BagCorpus

from oracles import umass_direct

# five documents as sets of word ids, tallied by hand:
#   D(0)=4 D(1)=3 D(2)=2 D(3)=1 ; D(0,1)=3 D(0,2)=1 D(1,2)=1 D(0,3)=1
FIVE = [{0, 1, 4}, {0, 1, 2}, {0, 1}, {0, 3}, {2, 4}]


def _bag(doc_sets, V=5):
    return BagCorpus(
        docs=tuple(tuple((w, 1) for w in sorted(s)) for s in doc_sets),
        doc_authors=tuple((0,) for _ in doc_sets),
        terms=tuple(f"w{v}" for v in range(V)),
        authors=("a",),
    )


def test_single_word_is_zero():
    assert umass_coherence(_bag(FIVE), [2]) == 0.0


def test_two_word_example():
    # co-doc count 3, D(v1)=4: log((3+1)/4)
    assert umass_coherence(_bag(FIVE), [0, 1]) == 0.0


def test_hand_tallied_three_words():
    hand = math.log((3 + 1) / 4) + math.log((1 + 1) / 4) + math.log((1 + 1) / 3)
    assert umass_direct(FIVE, [0, 1, 2]) == pytest.approx(hand, abs=1e-15)
    assert abs(umass_coherence(_bag(FIVE), [0, 1, 2]) - hand) <= 1e-12


def test_order_matters():
    bag = _bag(FIVE)
    assert umass_coherence(bag, [2, 1, 0]) == pytest.approx(umass_direct(FIVE, [2, 1, 0]), abs=1e-12)
    assert umass_coherence(bag, [2, 1, 0]) != umass_coherence(bag, [0, 1, 2])


def test_errors():
    bag = BagCorpus(docs=(((0, 1),),), doc_authors=((0,),), terms=("x", "y"), authors=("a",))
    with pytest.raises(EvalError):
        umass_coherence(bag, [])
    with pytest.raises(EvalError):
        umass_coherence(bag, [5])
    with pytest.raises(EvalError):
        umass_coherence(bag, [1, 0])


doc_sets = st.lists(st.sets(st.integers(0, 5), min_size=1), min_size=1, max_size=12)


@settings(max_examples=60, deadline=None)
@given(doc_sets, st.randoms(use_true_random=False))
def test_matches_oracle_and_doc_relabelling(sets, rnd):
    present = sorted(set().union(*sets))
    words = present[:4]
    rnd.shuffle(words)
    bag = _bag(sets, V=6)
    value = umass_coherence(bag, words)
    assert abs(value - umass_direct(sets, words)) <= 1e-12
    shuffled = list(sets)
    rnd.shuffle(shuffled)
    assert umass_coherence(_bag(shuffled, V=6), words) == value
    unrelated = sets + [{5}] if 5 not in words else sets
    assert umass_coherence(_bag(unrelated, V=6), words) == value


def test_adding_shared_doc_matches_recomputation():
    words = [0, 1, 2]
    grown = FIVE + [{1, 2}]
    assert umass_coherence(_bag(grown), words) == pytest.approx(umass_direct(grown, words), abs=1e-12)


def _model_from_beta(beta, terms):
    beta = np.asarray(beta, float)
    return AtmModel(
        theta=np.full((1, beta.shape[0]), 1.0 / beta.shape[0]),
        beta=beta,
        hyper=AtmHyperParams(K=beta.shape[0]),
        terms=terms,
        authors=("a",),
    )


def test_report_k1_m1():
    bag = _bag(FIVE)
    rep = coherence_report(_model_from_beta([[0.2] * 5], bag.terms), bag, top_m=1)
    assert rep.per_topic == (0.0,) and rep.mean == 0.0 and rep.sum == 0.0


def test_report_identical_topics():
    bag = _bag(FIVE)
    row = [0.4, 0.3, 0.2, 0.05, 0.05]
    rep = coherence_report(_model_from_beta([row, row], bag.terms), bag, top_m=3)
    assert rep.per_topic[0] == rep.per_topic[1]
    assert rep.top_words == (("w0", "w1", "w2"), ("w0", "w1", "w2"))


def test_report_on_fitted_model_matches_tally():
    bag = _bag(FIVE)
    model = fit(bag, AtmHyperParams(K=2, iterations=50, burn_in=10, thin=5, seed=2))
    rep = coherence_report(model, bag, top_m=4)
    for k in range(2):
        assert abs(rep.per_topic[k] - umass_direct(FIVE, top_term_ids(model, k, 4))) <= 1e-12
    assert abs(rep.mean - sum(rep.per_topic) / 2) <= 1e-12


def test_report_outputs(tmp_path):
    bag = _bag(FIVE)
    rep = coherence_report(_model_from_beta([[0.4, 0.3, 0.2, 0.05, 0.05]], bag.terms), bag, top_m=3)
    rep.write(tmp_path / "c.tsv", tmp_path / "c.json")
    lines = (tmp_path / "c.tsv").read_text().splitlines()
    assert lines[0] == "topic\tcoherence\ttop_words"
    assert lines[1].startswith("0\t") and lines[1].endswith("w0 w1 w2")
    doc = json.loads((tmp_path / "c.json").read_text())
    assert doc["top_m"] == 3 and doc["per_topic"] == list(rep.per_topic)


def test_report_rejects_misaligned():
    bag = _bag(FIVE)
    with pytest.raises(MismatchError):
        coherence_report(_model_from_beta([[0.5, 0.5]], ("p", "q")), bag)
