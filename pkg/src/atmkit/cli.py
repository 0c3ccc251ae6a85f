"""Command-line front end: prep -> train -> topics / similar / coherence / embed.

Exit codes: 0 success, 1 other pipeline error, 2 usage error or missing
input, 3 empty vocabulary, 4 bad hyperparameters, 5 unreadable model file,
6 unknown author, 7 manifest verification failed.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import warnings
from pathlib import Path

from . import __version__
from .atm import AtmHyperParams, fit_restarts, load_model, save_model
from .atm.model import top_authors_for_topic, top_terms
from .corpus import SchemaConfig, load_corpus, load_window_config, parse_windows, window_slice, write_author_map
from .embed import TsneConfig, embed_authors, svg_document
from .errors import (
    AtmkitError,
    EmptyVocabularyError,
    HyperParamError,
    ModelFormatError,
)
from .eval import coherence_report
from .manifest import RunRecorder, verify_manifest, write_atomic
from .similarity import SimilarityResult, pairwise_csv, pairwise_hellinger, top_k_similar
from .textprep import BagCorpus, PrepConfig, load_stopword_file, preprocess

log = logging.getLogger("atmkit")

CONFIG_DIR_ENV = "ATMKIT_CONFIG_DIR"
EXIT_ERROR, EXIT_USAGE, EXIT_VOCAB, EXIT_HYPER, EXIT_MODEL, EXIT_AUTHOR, EXIT_VERIFY = 1, 2, 3, 4, 5, 6, 7


class CliError(Exception):
    def __init__(self, stage: str, message: str, code: int = EXIT_ERROR):
        super().__init__(message)
        self.stage = stage
        self.code = code


def edit_distance(a: str, b: str) -> int:
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def closest_names(name: str, names, n: int = 5) -> list[str]:
    return sorted(names, key=lambda s: (edit_distance(name, s), s))[:n]


def _need_file(path, stage: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise CliError(stage, f"no such file: {path}", EXIT_USAGE)
    return p


def _config_dir_file(name: str) -> Path | None:
    base = os.environ.get(CONFIG_DIR_ENV)
    if base:
        p = Path(base) / name
        if p.is_file():
            return p
    return None


def _load_model(path):
    _need_file(path, "model")
    return load_model(path)


def _bag_path(path) -> Path:
    p = Path(path)
    return p / "bag.json" if p.is_dir() else p


def _load_bag(path) -> BagCorpus:
    return BagCorpus.read(_need_file(_bag_path(path), "prep"))


def _manifest_path(args, default_dir) -> Path:
    return Path(args.manifest) if args.manifest else Path(default_dir) / "manifest.json"


def _emit(text: str, out) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- prep


def _prep_config(args) -> PrepConfig:
    stop_path = args.stopwords or _config_dir_file("stopwords.txt")
    custom = load_stopword_file(_need_file(stop_path, "prep")) if stop_path else frozenset()
    phrases: tuple[str, ...] = ()
    phrase_path = args.phrases or _config_dir_file("phrases.txt")
    if phrase_path:
        lines = _need_file(phrase_path, "prep").read_text("utf-8").splitlines()
        phrases = tuple(l.split("#", 1)[0].strip() for l in lines if l.split("#", 1)[0].strip())
    return PrepConfig(
        custom_stopwords=custom,
        min_token_len=args.min_token_len,
        bigram_min_count=args.bigram_min_count,
        bigram_score_threshold=args.bigram_threshold,
        vocab_min_docs=args.vocab_min_docs,
        vocab_max_doc_frac=args.vocab_max_doc_frac,
        phrases=phrases,
    )


def _schema(args) -> SchemaConfig:
    if args.window:
        windows = parse_windows(args.window)
    else:
        wpath = args.windows or _config_dir_file("windows.txt")
        windows = load_window_config(_need_file(wpath, "corpus")) if wpath else None
    kw = {"min_year": args.min_year, "max_year": args.max_year}
    return SchemaConfig(windows, **kw) if windows is not None else SchemaConfig(**kw)


def cmd_prep(args) -> int:
    corpus_path = _need_file(args.corpus, "corpus")
    schema = _schema(args)
    config = _prep_config(args)
    corpus = load_corpus(corpus_path, schema)
    out = Path(args.out)
    rec = RunRecorder(
        _manifest_path(args, out),
        "prep",
        {
            "prep": config.snapshot(),
            "windows": [list(w) for w in schema.windows],
            "min_year": schema.min_year,
            "max_year": schema.max_year,
        },
    )
    rec.add_input(corpus_path)
    for extra in (args.stopwords, args.phrases, args.windows):
        if extra:
            rec.add_input(extra)
    for w in schema.windows:
        sub = window_slice(corpus, w.label)
        if len(sub) == 0:
            print(f"atmkit: warning [prep]: window {w.label} has no records; skipped", file=sys.stderr)
            continue
        result = preprocess(sub, config)
        wdir = out / w.label
        wdir.mkdir(parents=True, exist_ok=True)
        files = {
            "vocab.tsv": lambda p: result.vocab.write(p),
            "bag.json": lambda p: result.bag.write(p),
            "authors.tsv": lambda p: write_author_map(_bag_author_map(result.bag), p),
        }
        for name, writer in files.items():
            tmp = wdir / f".{name}.tmp"
            writer(tmp)
            os.replace(tmp, wdir / name)
            rec.add_output(wdir / name)
        if result.dropped_ids:
            print(
                f"atmkit: note [prep]: window {w.label}: dropped empty documents "
                + ", ".join(result.dropped_ids),
                file=sys.stderr,
            )
        print(
            f"{w.label}\tdocs={result.bag.n_docs}\tauthors={result.bag.n_authors}"
            f"\tterms={len(result.vocab)}\ttokens={result.bag.n_tokens}"
        )
    rec.commit()
    return 0


def _bag_author_map(bag: BagCorpus):
    from .corpus import AuthorMap

    return AuthorMap(bag.authors, bag.doc_authors)


# ---------------------------------------------------------------- train


def _hyper(args, seed=None) -> AtmHyperParams:
    return AtmHyperParams(
        K=args.K,
        alpha=args.alpha,
        eta=args.eta,
        iterations=args.iterations,
        burn_in=args.burn_in,
        thin=args.thin,
        seed=args.seed if seed is None else seed,
    )


def cmd_train(args) -> int:
    bag_path = _bag_path(args.bag)
    bag = _load_bag(bag_path)
    hyper = _hyper(args)
    if args.restarts < 1:
        raise CliError("train", "--restarts must be >= 1", EXIT_USAGE)
    model, results, best = fit_restarts(bag, hyper, args.restarts, args.top_m, args.workers)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_model(model, out)
    report = Path(args.report) if args.report else out.with_suffix(".restarts.tsv")
    lines = ["restart\tseed\tmean_coherence\tsum_coherence\tper_word_ll\tselected\n"]
    for r in results:
        lines.append(
            f"{r.restart}\t{r.seed}\t{r.mean_coherence:.6f}\t{r.sum_coherence:.6f}"
            f"\t{r.per_word_ll:.6f}\t{'*' if r.restart == best else ''}\n"
        )
    write_atomic(report, "".join(lines))
    rec = RunRecorder(
        _manifest_path(args, out.parent),
        "train",
        {"hyper": hyper.to_dict(), "restarts": args.restarts, "top_m": args.top_m},
        seeds=[r.seed for r in results],
    )
    rec.add_input(bag_path)
    rec.add_output(out)
    rec.add_output(report)
    rec.commit()
    r = results[best]
    print(f"selected restart {best} (seed {r.seed}): mean coherence {r.mean_coherence:.6f}")
    return 0


# ---------------------------------------------------------------- queries


def topics_report(model, top_words: int, top_authors: int) -> str:
    lines = ["topic\tkind\trank\tname\tvalue\n"]
    for k in range(model.K):
        for r, (term, p) in enumerate(top_terms(model, k, top_words), 1):
            lines.append(f"T{k + 1}\tword\t{r}\t{term}\t{p:.6f}\n")
        for r, (name, share) in enumerate(top_authors_for_topic(model, k, top_authors), 1):
            lines.append(f"T{k + 1}\tauthor\t{r}\t{name}\t{share:.4f}\n")
    return "".join(lines)


def cmd_topics(args) -> int:
    if args.top_words < 1 or args.top_authors < 1:
        raise CliError("topics", "--top-words and --top-authors must be >= 1", EXIT_USAGE)
    model = _load_model(args.model)
    _emit(topics_report(model, args.top_words, args.top_authors), args.out)
    _record_query(args, "topics", {"top_words": args.top_words, "top_authors": args.top_authors})
    return 0


def _record_query(args, command, config, extra_inputs=(), extra_outputs=()) -> None:
    primary = args.out or args.model
    rec = RunRecorder(_manifest_path(args, Path(primary).parent), command, config)
    rec.add_input(args.model)
    for p in extra_inputs:
        rec.add_input(p)
    if args.out:
        rec.add_output(args.out)
    for p in extra_outputs:
        rec.add_output(p)
    rec.commit()


def _candidates(args, model):
    if not args.bag:
        if args.min_docs > 1:
            raise CliError("similar", "--min-docs needs --bag", EXIT_USAGE)
        return None
    bag = _load_bag(args.bag)
    model.check_aligned(bag)
    counts = bag.author_doc_counts()
    return [a for a in range(len(counts)) if counts[a] >= args.min_docs]


def leaders_report(model, k: int, candidates=None) -> str:
    lines = ["topic\tleader\tshare\trank\tauthor_name\tsimilarity\n"]
    for t in range(model.K):
        name, share = top_authors_for_topic(model, t, 1)[0]
        res = top_k_similar(model, model.author_index(name), k, candidates)
        for r, (a, s) in enumerate(res.ranked, 1):
            lines.append(f"T{t + 1}\t{name}\t{share:.4f}\t{r}\t{model.authors[a]}\t{s:.6f}\n")
    return "".join(lines)


def cmd_similar(args) -> int:
    if args.k < 1:
        raise CliError("similar", "--k must be >= 1", EXIT_USAGE)
    model = _load_model(args.model)
    candidates = _candidates(args, model)
    extra_out = []
    if args.pairwise:
        write_atomic(args.pairwise, pairwise_csv(pairwise_hellinger(model), model.authors))
        extra_out.append(args.pairwise)
    if args.leaders:
        text = leaders_report(model, args.k, candidates)
    elif args.author is not None:
        if args.author not in model.authors:
            near = closest_names(args.author, model.authors)
            raise CliError(
                "similar",
                f"unknown author {args.author!r}; closest matches: {', '.join(near)}",
                EXIT_AUTHOR,
            )
        res: SimilarityResult = top_k_similar(model, model.author_index(args.author), args.k, candidates)
        text = res.to_tsv(model.authors)
    elif args.pairwise:
        text = ""
    else:
        raise CliError("similar", "give --author NAME, --leaders or --pairwise FILE", EXIT_USAGE)
    _emit(text, args.out)
    _record_query(
        args,
        "similar",
        {"author": args.author, "leaders": args.leaders, "k": args.k, "min_docs": args.min_docs},
        [_bag_path(args.bag)] if args.bag else [],
        extra_out,
    )
    return 0


def cmd_coherence(args) -> int:
    if args.top_m < 1:
        raise CliError("coherence", "--top-m must be >= 1", EXIT_USAGE)
    model = _load_model(args.model)
    bag = _load_bag(args.bag)
    rep = coherence_report(model, bag, args.top_m)
    _emit(rep.to_tsv(), args.out)
    outs = []
    if args.json:
        write_atomic(args.json, rep.to_json())
        outs.append(args.json)
    _record_query(args, "coherence", {"top_m": args.top_m}, [_bag_path(args.bag)], outs)
    return 0


def cmd_embed(args) -> int:
    model = _load_model(args.model)
    bag = _load_bag(args.bag)
    config = TsneConfig(
        perplexity=args.perplexity,
        iterations=args.iterations,
        learning_rate=args.learning_rate,
        early_exaggeration=args.early_exaggeration,
        exaggeration_iters=args.exaggeration_iters,
        seed=args.seed,
    )
    emb = embed_authors(model, bag, config, min_docs=args.min_docs)
    write_atomic(args.out, emb.to_csv())
    outs = []
    if args.svg:
        write_atomic(args.svg, svg_document(emb))
        outs.append(args.svg)
    _record_query(args, "embed", {"tsne": config.to_dict(), "min_docs": args.min_docs}, [_bag_path(args.bag)], outs)
    return 0


def cmd_verify(args) -> int:
    path = _need_file(args.manifest_file, "verify")
    problems = verify_manifest(path, check_outputs=not args.inputs_only)
    for p in problems:
        print(p, file=sys.stderr)
    if problems:
        raise CliError("verify", f"{len(problems)} digest mismatches in {path}", EXIT_VERIFY)
    print(f"{path}: all digests match")
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="atmkit", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"atmkit {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def with_manifest(sp):
        sp.add_argument("--manifest", help="manifest file to extend (default: next to the output)")
        return sp

    sp = with_manifest(sub.add_parser("prep", help="preprocess a JSON-lines corpus per window"))
    sp.add_argument("corpus")
    sp.add_argument("--out", required=True, help="output directory (one subdirectory per window)")
    sp.add_argument("--windows", help="file of label,year_lo,year_hi lines")
    sp.add_argument("--window", action="append", metavar="LABEL,LO,HI", help="repeatable inline window")
    sp.add_argument("--min-year", type=int)
    sp.add_argument("--max-year", type=int)
    sp.add_argument("--stopwords", help="custom stopword file, one term per line")
    sp.add_argument("--phrases", help="multi-word entity file, one phrase per line")
    sp.add_argument("--min-token-len", type=int, default=2)
    sp.add_argument("--bigram-min-count", type=int, default=20)
    sp.add_argument("--bigram-threshold", type=float, default=10.0)
    sp.add_argument("--vocab-min-docs", type=int, default=5)
    sp.add_argument("--vocab-max-doc-frac", type=float, default=0.5)
    sp.set_defaults(func=cmd_prep)

    sp = with_manifest(sub.add_parser("train", help="fit the author-topic model with restarts"))
    sp.add_argument("bag", help="bag.json or a prep window directory")
    sp.add_argument("--out", required=True, help="model file to write")
    sp.add_argument("--report", help="restart report (default: <out>.restarts.tsv)")
    sp.add_argument("--K", "-K", type=int, default=5)
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--eta", type=float, default=0.1)
    sp.add_argument("--iterations", type=int, default=2000)
    sp.add_argument("--burn-in", type=int, default=200)
    sp.add_argument("--thin", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--restarts", type=int, default=5)
    sp.add_argument("--top-m", type=int, default=10, help="words per topic for model selection")
    sp.add_argument("--workers", type=int, default=1, help="parallel restart chains")
    sp.set_defaults(func=cmd_train)

    sp = with_manifest(sub.add_parser("topics", help="top words and top authors per topic"))
    sp.add_argument("model")
    sp.add_argument("--top-words", type=int, default=10)
    sp.add_argument("--top-authors", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_topics)

    sp = with_manifest(sub.add_parser("similar", help="most similar authors by Hellinger similarity"))
    sp.add_argument("model")
    sp.add_argument("--author")
    sp.add_argument("--leaders", action="store_true", help="for each topic, its top author's neighbours")
    sp.add_argument("--k", type=int, default=5)
    sp.add_argument("--bag", help="bag corpus, needed for --min-docs")
    sp.add_argument("--min-docs", type=int, default=1)
    sp.add_argument("--pairwise", help="also write the full Hellinger matrix as CSV")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_similar)

    sp = with_manifest(sub.add_parser("coherence", help="UMass coherence per topic"))
    sp.add_argument("model")
    sp.add_argument("--bag", required=True)
    sp.add_argument("--top-m", type=int, default=10)
    sp.add_argument("--out")
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_coherence)

    sp = with_manifest(sub.add_parser("embed", help="t-SNE author map as CSV (and SVG)"))
    sp.add_argument("model")
    sp.add_argument("--bag", required=True)
    sp.add_argument("--out", required=True, help="coordinates CSV")
    sp.add_argument("--svg")
    sp.add_argument("--min-docs", type=int, default=1)
    defaults = TsneConfig()
    sp.add_argument("--perplexity", type=float, default=defaults.perplexity)
    sp.add_argument("--iterations", type=int, default=defaults.iterations)
    sp.add_argument("--learning-rate", type=float, default=defaults.learning_rate)
    sp.add_argument("--early-exaggeration", type=float, default=defaults.early_exaggeration)
    sp.add_argument("--exaggeration-iters", type=int, default=defaults.exaggeration_iters)
    sp.add_argument("--seed", type=int, default=defaults.seed)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("verify", help="recompute the digests recorded in a manifest")
    sp.add_argument("manifest_file")
    sp.add_argument("--inputs-only", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def _exit_code(exc: AtmkitError) -> int:
    if isinstance(exc, EmptyVocabularyError):
        return EXIT_VOCAB
    if isinstance(exc, HyperParamError):
        return EXIT_HYPER
    if isinstance(exc, ModelFormatError):
        return EXIT_MODEL
    return EXIT_ERROR


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"atmkit: warning: {message}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    with warnings.catch_warnings():
        warnings.simplefilter("default")
        warnings.showwarning = _show_warning
        return _dispatch(args)


def _dispatch(args) -> int:
    try:
        return args.func(args)
    except CliError as exc:
        print(f"atmkit: error [{exc.stage}]: {exc}", file=sys.stderr)
        return exc.code
    except AtmkitError as exc:
        print(f"atmkit: error [{exc.stage}]: {exc}", file=sys.stderr)
        return _exit_code(exc)
    except FileNotFoundError as exc:
        print(f"atmkit: error [{args.command}]: no such file: {exc.filename}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"atmkit: error [{args.command}]: {exc}", file=sys.stderr)
        return EXIT_ERROR

if __name__ == "__main__":
    sys.exit(main())
