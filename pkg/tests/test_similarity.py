import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atmkit.atm import AtmHyperParams, AtmModel
from atmkit.errors import SimilarityError
from atmkit.similarity import hellinger, pairwise_csv, pairwise_hellinger, similarity, top_k_similar

from oracles import hellinger_ref


def _model(theta):
    theta = np.asarray(theta, float)
    K = theta.shape[1]
    return AtmModel(
        theta=theta,
        beta=np.full((K, 2), 0.5),
        hyper=AtmHyperParams(K=K),
        terms=("x", "y"),
        authors=tuple(f"a{i}" for i in range(theta.shape[0])),
    )


def test_closed_forms():
    h = hellinger([0.5, 0.5], [1.0, 0.0])
    exact = math.sqrt(1 - math.sqrt(0.5))
    assert h == pytest.approx(exact, abs=1e-15)
    assert abs(h - 0.5411961) <= 1e-6
    assert abs(similarity([0.5, 0.5], [1.0, 0.0]) - 0.6488463) <= 1e-6
    assert hellinger([0.3, 0.7], [0.3, 0.7]) == 0.0
    assert hellinger([1, 0], [0, 1]) == 1.0
    assert similarity([0.3, 0.7], [0.3, 0.7]) == 1.0
    assert similarity([1, 0], [0, 1]) == 0.5


@pytest.mark.parametrize("p, q", [([0.5, 0.5], [1.0]), ([0.5, 0.6], [0.5, 0.5]), ([-0.1, 1.1], [0.5, 0.5]), ([], [])])
def test_invalid_inputs(p, q):
    with pytest.raises(SimilarityError):
        hellinger(p, q)


def test_normalisation_tolerance():
    assert hellinger([0.5, 0.5 + 5e-10], [0.5, 0.5]) <= 1e-9


dist = st.lists(st.floats(0, 1, allow_nan=False), min_size=4, max_size=4).filter(lambda v: sum(v) > 1e-3).map(
    lambda v: [x / sum(v) for x in v]
)


@settings(max_examples=200, deadline=None)
@given(dist, dist, dist)
def test_metric_properties(p, q, r):
    pq, qp = hellinger(p, q), hellinger(q, p)
    assert pq == qp
    assert hellinger(p, p) == 0.0
    assert pq <= hellinger(p, r) + hellinger(r, q) + 1e-9
    assert 0.0 <= pq <= 1.0
    assert 0.5 <= similarity(p, q) <= 1.0
    assert abs(pq - hellinger_ref(p, q)) <= 1e-12


def test_duplicate_row_ranks_first():
    res = top_k_similar(_model([[0.7, 0.3], [0.7, 0.3], [0.1, 0.9]]), 0, k=2)
    assert [a for a, _ in res.ranked] == [1, 2]
    assert res.ranked[0][1] == 1.0


def test_k_clamped():
    rows = np.random.default_rng(0).dirichlet([1, 1, 1], size=4)
    assert len(top_k_similar(_model(rows), 2, k=100).ranked) == 3


def test_ties_by_index():
    res = top_k_similar(_model([[0.5, 0.5], [1.0, 0.0], [0.0, 1.0], [1.0, 0.0]]), 0, k=3)
    assert [a for a, _ in res.ranked] == [1, 2, 3]


def test_brute_force_ranking():
    rows = np.random.default_rng(1).dirichlet([0.5] * 5, size=10)
    model = _model(rows)
    for q in range(10):
        scored = sorted(
            ((1 / (1 + hellinger_ref(model.theta[q], model.theta[a])), a) for a in range(10) if a != q),
            key=lambda t: (-t[0], t[1]),
        )
        res = top_k_similar(model, q, k=9)
        assert [a for a, _ in res.ranked] == [a for _, a in scored]
        assert np.allclose([s for _, s in res.ranked], [s for s, _ in scored], rtol=0, atol=1e-12)
        scores = [s for _, s in res.ranked]
        assert scores == sorted(scores, reverse=True) and q not in [a for a, _ in res.ranked]


def test_candidates_and_errors():
    rows = np.random.default_rng(2).dirichlet([1, 1], size=5)
    res = top_k_similar(_model(rows), 0, k=5, candidates=[3, 1, 0])
    assert sorted(a for a, _ in res.ranked) == [1, 3]
    with pytest.raises(SimilarityError):
        top_k_similar(_model(rows), 5)
    with pytest.raises(SimilarityError):
        top_k_similar(_model(rows), 0, k=0)


def test_tsv_format():
    res = top_k_similar(_model([[0.7, 0.3], [0.7, 0.3], [0.1, 0.9]]), 0, k=2)
    lines = res.to_tsv(["a0", "a1", "a2"]).splitlines()
    assert lines[0] == "rank\tauthor_name\tsimilarity"
    assert lines[1] == "1\ta1\t1.000000"


def test_pairwise():
    assert pairwise_hellinger(_model([[0.4, 0.6]])).tolist() == [[0.0]]
    rows = np.random.default_rng(3).dirichlet([1, 1, 1], size=5)
    M = pairwise_hellinger(_model(rows))
    assert np.array_equal(M, M.T) and np.all(np.diag(M) == 0)
    for i in range(5):
        for j in range(5):
            if i != j:
                assert abs(M[i, j] - hellinger_ref(rows[i], rows[j])) <= 1e-12
    full = top_k_similar(_model(rows), 0, k=4)
    assert [a for a, _ in full.ranked] == sorted(range(1, 5), key=lambda a: (M[0, a], a))


def test_pairwise_csv():
    text = pairwise_csv(np.array([[0.0, 0.25], [0.25, 0.0]]), ["x", "y,z"])
    assert text == 'author,x,"y,z"\nx,0.000000,0.250000\n"y,z",0.250000,0.000000\n'
