from importlib import resources

import pytest

from atmkit.corpus import AuthorMap, SchemaConfig, load_corpus, load_window_config
from atmkit.textprep import BagCorpus

DATA = resources.files("atmkit.data")


@pytest.fixture(scope="session")
def toy_paths():
    return DATA / "toy_corpus.jsonl", DATA / "toy_windows.txt"


@pytest.fixture(scope="session")
def toy_corpus(toy_paths):
    corpus_path, windows_path = toy_paths
    return load_corpus(corpus_path, SchemaConfig(load_window_config(windows_path)))


@pytest.fixture
def tiny_bag():
    """2 docs, 2 authors, V=3, 6 tokens; author 1 only co-writes doc 1."""
    return BagCorpus(
        docs=(((0, 2), (1, 1)), ((1, 1), (2, 2))),
        doc_authors=((0,), (0, 1)),
        terms=("a", "b", "c"),
        authors=("Ann", "Bob"),
    )


def author_map(doc_authors, n_authors=None):
    n = n_authors if n_authors is not None else 1 + max(a for d in doc_authors for a in d)
    return AuthorMap(tuple(f"author{i:03d}" for i in range(n)), tuple(tuple(sorted(d)) for d in doc_authors))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
