"""Time one Gibbs sweep with the compiled and pure-Python kernels.

    python benchmarks/bench_gibbs.py [--docs 200] [--length 50] [--sweeps 5]

Both kernels consume identical pre-drawn uniforms, so the benchmark also
checks that they leave identical assignments behind.
"""

import argparse
import sys
import time

import numpy as np

from atmkit.atm import AtmHyperParams, sample_corpus
from atmkit.atm import kernels
from atmkit.atm.gibbs import FlatCorpus, initial_state
from atmkit.corpus import AuthorMap
from atmkit.rng import make_rng


def build(docs: int, length: int, authors: int, vocab: int, K: int):
    rng = np.random.default_rng(0)
    doc_authors = tuple(
        tuple(sorted(set(rng.choice(authors, size=int(rng.integers(1, 4)), replace=False).tolist())))
        for _ in range(docs)
    )
    names = tuple(f"a{i}" for i in range(authors))
    syn = sample_corpus(AtmHyperParams(K=K, seed=1), AuthorMap(names, doc_authors), [length] * docs, vocab)
    return FlatCorpus.from_bag(syn.bag)


def run(sweep, flat, K, sweeps, alpha=0.5, eta=0.1):
    rng = make_rng(0)
    state = initial_state(flat, K, rng)
    buf = np.empty(K + int(np.diff(flat.auth_ptr).max()) * K)
    start = time.perf_counter()
    for _ in range(sweeps):
        sweep(flat.words, flat.doc_ptr, flat.auth_idx, flat.auth_ptr, state.x, state.z, state.count_ak,
              state.count_kv, state.count_k, state.count_a, alpha, eta, rng.random(flat.n_tokens), buf)
    return (time.perf_counter() - start) / sweeps, state


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--docs", type=int, default=200)
    ap.add_argument("--length", type=int, default=50)
    ap.add_argument("--authors", type=int, default=50)
    ap.add_argument("--vocab", type=int, default=500)
    ap.add_argument("-K", type=int, default=5)
    ap.add_argument("--sweeps", type=int, default=5)
    args = ap.parse_args(argv)
    flat = build(args.docs, args.length, args.authors, args.vocab, args.K)
    print(f"{flat.n_tokens} tokens, K={args.K}, {args.sweeps} sweeps per backend")
    t_py, s_py = run(kernels.python_sweep, flat, args.K, args.sweeps)
    print(f"python  {t_py * 1e3:10.2f} ms/sweep  {flat.n_tokens / t_py:12.0f} tokens/s")
    if kernels.compiled_sweep is None:
        print("compiled kernel not built; install with the build toolchain to compare")
        return 0
    t_c, s_c = run(kernels.compiled_sweep, flat, args.K, args.sweeps)
    print(f"cython  {t_c * 1e3:10.2f} ms/sweep  {flat.n_tokens / t_c:12.0f} tokens/s")
    same = np.array_equal(s_py.x, s_c.x) and np.array_equal(s_py.z, s_c.z)
    print(f"speedup {t_py / t_c:.1f}x, identical assignments: {same}")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())
