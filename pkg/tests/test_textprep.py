import re
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from atmkit.corpus import AuthorMap, window_slice
from atmkit.errors import EmptyVocabularyError, PrepError
from atmkit.textprep import (
    SMART_STOPWORDS,
    PrepConfig,
    build_vocabulary,
    load_stopword_file,
    merge_phrases,
    preprocess,
    promote_bigrams,
    remove_stopwords,
    stem,
    tokenize,
    vectorize,
)
from atmkit.textprep.bag import Vocabulary
from atmkit.textprep.phrases import bigram_score

ROOT = Path(__file__).resolve().parents[1]


# ---------------------------------------------------------------- tokenize


def test_tokenize_examples():
    assert tokenize("Support Vector Machines, 2nd Edition!", 2) == ["support", "vector", "machines", "edition"]
    assert tokenize("") == []
    assert tokenize("A  B\t\nC", 1) == ["a", "b", "c"]


def test_tokenize_drops_digit_tokens_whole():
    assert tokenize("mp3 layer 42 x2y ok", 1) == ["layer", "ok"]


def test_tokenize_punctuation_splits():
    assert tokenize("state-of-the-art k_means", 1) == ["state", "of", "the", "art", "k", "means"]


@given(st.text())
def test_tokenize_idempotent(text):
    once = tokenize(text)
    assert tokenize(" ".join(once)) == once


# ---------------------------------------------------------------- stopwords


def test_smart_list_size_and_members():
    assert len(SMART_STOPWORDS) == 570
    assert {"the", "is", "a", "zero", "yourselves"} <= SMART_STOPWORDS


def test_remove_stopwords_examples():
    assert remove_stopwords(["the", "neural", "network", "is"]) == ["neural", "network"]
    assert remove_stopwords([]) == []
    assert remove_stopwords(["neural", "net"], custom=frozenset({"neural"})) == ["net"]


@given(st.lists(st.sampled_from(sorted(SMART_STOPWORDS)[:40] + ["graph", "kernel", "learn"])))
def test_remove_stopwords_idempotent(tokens):
    once = remove_stopwords(tokens)
    assert remove_stopwords(once) == once


def test_stopword_file(tmp_path):
    p = tmp_path / "stop.txt"
    p.write_text("# custom\nFoo\n\nbar  # trailing\n", encoding="utf-8")
    assert load_stopword_file(p) == frozenset({"foo", "bar"})


# ---------------------------------------------------------------- stemming


def _reference_stemmer():
    porter = pytest.importorskip("nltk.stem.porter")
    return porter.PorterStemmer(mode=porter.PorterStemmer.ORIGINAL_ALGORITHM)


@pytest.mark.parametrize("word, expected", [("learning", "learn"), ("caresses", "caress"), ("sky", "sky")])
def test_stem_examples(word, expected):
    assert stem(word) == _reference_stemmer().stem(word) == expected


def _wordlist():
    text = (ROOT / "README.md").read_text("utf-8") if (ROOT / "README.md").exists() else ""
    for p in sorted((ROOT / "src").rglob("*.py")) + sorted((ROOT / "tests").rglob("*.py")):
        text += p.read_text("utf-8")
    text += (ROOT / "src/atmkit/data/toy_corpus.jsonl").read_text("utf-8")
    classic = (
        "caresses ponies ties caress cats feed agreed plastered bled motoring sing conflated "
        "troubled sized hopping tanned falling hissing fizzed failing filing happy sky "
        "relational conditional rational valenci hesitanci digitizer conformabli radicalli "
        "differentli vileli analogousli vietnamization predication operator feudalism "
        "decisiveness hopefulness callousness formaliti sensitiviti sensibiliti triplicate "
        "formative formalize electriciti electrical hopeful goodness revival allowance "
        "inference airliner gyroscopic adjustable defensible irritant replacement adjustment "
        "dependent adoption homologou communism activate angulariti homologous effective "
        "bowdlerize probate rate cease controll roll generalizations oscillators"
    )
    return sorted(set(re.findall(r"[a-z]+", (text + " " + classic).lower())))


def test_stem_matches_reference_porter():
    ref = _reference_stemmer()
    words = _wordlist()
    assert len(words) > 500
    mismatches = [(w, stem(w), ref.stem(w)) for w in words if stem(w) != ref.stem(w)]
    assert mismatches == []


def test_stem_fixed_points_on_toy_vocabulary(toy_corpus):
    # Porter is not idempotent in general (propos -> propo); the toy vocabulary's
    # non-fixed-points must be exactly those of the reference stemmer.
    ref = _reference_stemmer()
    terms = set()
    for w in toy_corpus.windows:
        res = preprocess(window_slice(toy_corpus, w.label))
        terms |= {t for t in res.vocab.terms if "_" not in t}
    ours = {t for t in terms if stem(t) != t}
    theirs = {t for t in terms if ref.stem(t) != t}
    assert ours == theirs
    assert len(ours) < 0.1 * len(terms)


# ---------------------------------------------------------------- bigrams


def test_frequent_pair_promoted():
    docs = [["neural", "network", "model"] for _ in range(50)] + [["graph", "kernel"]] * 50
    cfg = PrepConfig(bigram_min_count=20, bigram_score_threshold=10)
    # score = (50 - 20) * 250 / (50 * 50) = 3 ... below 10, so raise N_tok with filler docs
    assert bigram_score(50, 50, 50, 20, 250) == 3.0
    docs += [[f"filler{i}"] for i in range(2000)]
    out = promote_bigrams(docs, cfg)
    assert out[0] == ["neural", "network", "model", "neural_network", "network_model"]
    assert out[-1] == ["filler1999"]


def test_rare_pair_not_promoted():
    docs = [["rare", "pair"]] + [["x"]] * 100
    assert promote_bigrams(docs, PrepConfig(bigram_min_count=20)) == docs


def test_promote_bigrams_empty():
    assert promote_bigrams([], PrepConfig()) == []


def test_bigram_score_formula_brute_force():
    docs = [["a", "b", "a", "b"], ["a", "b", "c"], ["c", "a"]]
    n_tok = 9
    count = {"a": 4, "b": 3, "c": 2}
    pair_ab = 3
    expected = (pair_ab - 2) * n_tok / (count["a"] * count["b"])  # 0.75
    keep = promote_bigrams(docs, PrepConfig(bigram_min_count=2, bigram_score_threshold=0.75))
    drop = promote_bigrams(docs, PrepConfig(bigram_min_count=2, bigram_score_threshold=0.76))
    assert expected == 0.75
    assert keep[0][-2:] == ["a_b", "a_b"] and keep[1][-1] == "a_b"
    assert drop == docs


def test_merge_phrases():
    out = merge_phrases([["support", "vector", "machin", "support", "vector"]], [["support", "vector"]])
    assert out[0][-2:] == ["support_vector", "support_vector"]


# ---------------------------------------------------------------- vocabulary


def _docs_with_term(term, k, n):
    return [[term, f"u{i}"] if i < k else [f"u{i}"] for i in range(n)]


def test_vocab_min_docs():
    v = build_vocabulary(_docs_with_term("t", 3, 10), PrepConfig(vocab_min_docs=1, vocab_max_doc_frac=1.0))
    assert "t" in v.term_to_id
    v = build_vocabulary(_docs_with_term("t", 3, 10) + [["z"]] * 5, PrepConfig(vocab_min_docs=5))
    assert "t" not in v.term_to_id and "z" in v.term_to_id


def test_vocab_max_frac():
    docs = [["t", f"u{i % 2}"] for i in range(10)]
    with pytest.raises(EmptyVocabularyError):
        build_vocabulary(docs, PrepConfig(vocab_min_docs=5, vocab_max_doc_frac=0.4))
    v = build_vocabulary(docs, PrepConfig(vocab_min_docs=5, vocab_max_doc_frac=0.5))
    assert v.terms == ("u0", "u1")


def test_vocab_keeps_term_in_six_of_ten():
    v = build_vocabulary(_docs_with_term("t", 6, 10), PrepConfig(vocab_min_docs=5, vocab_max_doc_frac=0.7))
    assert v.terms == ("t",) and v.doc_freq == (6,)


def test_vocab_file_round_trip(tmp_path):
    v = Vocabulary(("a", "b_c"), (3, 5))
    v.write(tmp_path / "v.tsv")
    assert (tmp_path / "v.tsv").read_text() == "0\ta\t3\n1\tb_c\t5\n"
    assert Vocabulary.read(tmp_path / "v.tsv") == v


# ---------------------------------------------------------------- vectorize


def test_vectorize_counts():
    vocab = Vocabulary(("a", "b"), (1, 1))
    bag = vectorize([["a", "b", "a"]], vocab, AuthorMap(("X",), ((0,),)))
    assert bag.docs == (((0, 2), (1, 1)),)
    assert bag.n_tokens == 3


def test_vectorize_drops_oov_docs_and_orphan_authors(caplog):
    vocab = Vocabulary(("a",), (1,))
    am = AuthorMap(("X", "Y", "Z"), ((0,), (1,), (0, 2)))
    with caplog.at_level("INFO"):
        bag = vectorize([["a"], ["q", "r"], ["a", "a"]], vocab, am, ["d0", "d1", "d2"])
    assert bag.doc_ids == ("d0", "d2")
    assert bag.authors == ("X", "Z")
    assert bag.doc_authors == ((0,), (0, 1))
    assert "d1" in caplog.text


def test_vectorize_errors():
    vocab = Vocabulary(("a",), (1,))
    with pytest.raises(PrepError):
        vectorize([], vocab, AuthorMap())
    with pytest.raises(PrepError):
        vectorize([["z"]], vocab, AuthorMap(("X",), ((0,),)))


def test_vectorize_preserves_in_vocab_token_count(toy_corpus):
    res = preprocess(window_slice(toy_corpus, "1997~2001"))
    assert res.bag.n_tokens == sum(c for pairs in res.bag.docs for _, c in pairs)
    for pairs in res.bag.docs:
        ids = [t for t, _ in pairs]
        assert ids == sorted(set(ids))


def test_pipeline_deterministic(toy_corpus, tmp_path):
    outs = []
    for i in range(2):
        res = preprocess(window_slice(toy_corpus, "2002~2006"))
        res.vocab.write(tmp_path / f"v{i}")
        res.bag.write(tmp_path / f"b{i}")
        outs.append(((tmp_path / f"v{i}").read_bytes(), (tmp_path / f"b{i}").read_bytes()))
    assert outs[0] == outs[1]


def test_bag_file_round_trip(toy_corpus, tmp_path):
    bag = preprocess(window_slice(toy_corpus, "1997~2001")).bag
    bag.write(tmp_path / "bag.json")
    from atmkit.textprep import BagCorpus

    again = BagCorpus.read(tmp_path / "bag.json")
    assert again == bag


def test_prep_config_validation():
    with pytest.raises(PrepError):
        PrepConfig(min_token_len=0)
    with pytest.raises(PrepError):
        PrepConfig(vocab_max_doc_frac=1.5)
    with pytest.raises(PrepError):
        PrepConfig(bigram_min_count=0)
