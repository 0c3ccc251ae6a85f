"""Author-attributed paper records, temporal windows and author maps.

Records are read from UTF-8 JSON lines::

    {"id": "p1", "title": "...", "abstract": "...", "authors": ["A", "B"], "year": 1999}

``venue`` is optional. Author names are canonicalised with
:func:`normalize_author`; identity is exact string match after that.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .errors import CorpusError

_WS = re.compile(r"\s+")


class Window(NamedTuple):
    label: str
    year_lo: int
    year_hi: int

    def contains(self, year: int) -> bool:
        return self.year_lo <= year <= self.year_hi


DEFAULT_WINDOWS: tuple[Window, ...] = (
    Window("1997~2001", 1997, 2001),
    Window("2002~2006", 2002, 2006),
    Window("2007~2011", 2007, 2011),
    Window("2012~2016", 2012, 2016),
)


@dataclass(frozen=True)
class SchemaConfig:
    """Window layout and admissible year range used when loading a corpus.

    When ``min_year``/``max_year`` are omitted they default to the span of the
    windows.
    """

    windows: tuple[Window, ...] = DEFAULT_WINDOWS
    min_year: int | None = None
    max_year: int | None = None

    def __post_init__(self):
        windows = tuple(Window(str(w[0]), int(w[1]), int(w[2])) for w in self.windows)
        object.__setattr__(self, "windows", windows)
        check_windows(windows)
        if self.min_year is None:
            object.__setattr__(self, "min_year", min((w.year_lo for w in windows), default=0))
        if self.max_year is None:
            object.__setattr__(self, "max_year", max((w.year_hi for w in windows), default=0))
        if self.min_year > self.max_year:
            raise CorpusError(f"min_year {self.min_year} > max_year {self.max_year}")


@dataclass(frozen=True)
class CorpusRecord:
    id: str
    title: str
    abstract: str
    authors: tuple[str, ...]
    year: int
    venue: str | None = None

    @property
    def text(self) -> str:
        return f"{self.title} {self.abstract}"


@dataclass(frozen=True)
class Corpus:
    records: tuple[CorpusRecord, ...]
    windows: tuple[Window, ...] = DEFAULT_WINDOWS

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def window(self, label: str) -> Window:
        for w in self.windows:
            if w.label == label:
                return w
        known = ", ".join(w.label for w in self.windows)
        raise CorpusError(f"unknown window {label!r} (known: {known})")


@dataclass(frozen=True)
class AuthorMap:
    """Canonical author list and per-document author indices."""

    authors: tuple[str, ...] = ()
    doc_authors: tuple[tuple[int, ...], ...] = ()
    index: dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.index:
            object.__setattr__(self, "index", {a: i for i, a in enumerate(self.authors)})

    @property
    def n_authors(self) -> int:
        return len(self.authors)

    def doc_counts(self) -> list[int]:
        counts = [0] * len(self.authors)
        for ids in self.doc_authors:
            for a in ids:
                counts[a] += 1
        return counts


def normalize_author(name: str) -> str:
    """Strip and collapse whitespace in an author name; case is preserved."""
    canonical = _WS.sub(" ", str(name)).strip()
    if not canonical:
        raise CorpusError(f"blank author name {name!r}")
    return canonical


def check_windows(windows: Sequence[Window]) -> None:
    """Windows must be well formed, ordered and pairwise disjoint."""
    labels = set()
    prev_hi = None
    for w in windows:
        if w.label in labels:
            raise CorpusError(f"duplicate window label {w.label!r}")
        labels.add(w.label)
        if w.year_lo > w.year_hi:
            raise CorpusError(f"window {w.label!r} has year_lo > year_hi")
        if prev_hi is not None and w.year_lo <= prev_hi:
            raise CorpusError(f"window {w.label!r} overlaps or precedes the previous window")
        prev_hi = w.year_hi


def parse_windows(lines: Iterable[str]) -> tuple[Window, ...]:
    """Parse ``label,year_lo,year_hi`` triples; blank lines and ``#`` comments are skipped."""
    windows = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise CorpusError(f"window line {lineno}: expected label,year_lo,year_hi")
        try:
            windows.append(Window(parts[0], int(parts[1]), int(parts[2])))
        except ValueError:
            raise CorpusError(f"window line {lineno}: years must be integers") from None
    check_windows(windows)
    return tuple(windows)


def load_window_config(path) -> tuple[Window, ...]:
    with open(path, encoding="utf-8") as fh:
        return parse_windows(fh)


def _record_from_obj(obj, lineno: int) -> CorpusRecord:
    if not isinstance(obj, dict):
        raise CorpusError(f"line {lineno}: expected a JSON object")
    missing = [k for k in ("id", "title", "abstract", "authors", "year") if k not in obj]
    if missing:
        raise CorpusError(f"line {lineno}: missing keys {missing}")
    rid = str(obj["id"])
    authors = obj["authors"]
    if not isinstance(authors, list):
        raise CorpusError(f"line {lineno}: 'authors' must be an array (record {rid!r})")
    canon: list[str] = []
    for a in authors:
        try:
            name = normalize_author(a)
        except CorpusError:
            raise CorpusError(f"record {rid!r}: blank author name") from None
        if name not in canon:
            canon.append(name)
    if not canon:
        raise CorpusError(f"record {rid!r}: empty author list")
    year = obj["year"]
    if isinstance(year, bool) or not isinstance(year, int):
        raise CorpusError(f"line {lineno}: 'year' must be an integer (record {rid!r})")
    venue = obj.get("venue")
    return CorpusRecord(
        id=rid,
        title=str(obj["title"] or ""),
        abstract=str(obj["abstract"] or ""),
        authors=tuple(canon),
        year=year,
        venue=None if venue is None else str(venue),
    )


def load_corpus(path, schema_config: SchemaConfig | None = None) -> Corpus:
    """Load and validate a JSON-lines corpus, preserving file order."""
    cfg = schema_config or SchemaConfig()
    records: list[CorpusRecord] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {lineno}: malformed JSON ({exc.msg})") from None
            rec = _record_from_obj(obj, lineno)
            if rec.id in seen:
                raise CorpusError(f"record {rec.id!r}: duplicate id (line {lineno})")
            if not cfg.min_year <= rec.year <= cfg.max_year:
                raise CorpusError(
                    f"record {rec.id!r}: year {rec.year} outside [{cfg.min_year}, {cfg.max_year}]"
                )
            if not any(w.contains(rec.year) for w in cfg.windows):
                raise CorpusError(f"record {rec.id!r}: year {rec.year} falls in no window")
            seen.add(rec.id)
            records.append(rec)
    return Corpus(tuple(records), cfg.windows)


def window_slice(corpus: Corpus, label: str) -> Corpus:
    w = corpus.window(label)
    return Corpus(tuple(r for r in corpus.records if w.contains(r.year)), corpus.windows)


def build_author_map(corpus: Corpus | Iterable[CorpusRecord]) -> AuthorMap:
    records = corpus.records if isinstance(corpus, Corpus) else tuple(corpus)
    per_doc = []
    for rec in records:
        names: list[str] = []
        for a in rec.authors:
            name = normalize_author(a)
            if name not in names:
                names.append(name)
        per_doc.append(names)
    authors = tuple(sorted({a for names in per_doc for a in names}))
    index = {a: i for i, a in enumerate(authors)}
    doc_authors = tuple(tuple(sorted(index[a] for a in names)) for names in per_doc)
    return AuthorMap(authors, doc_authors, index)


def write_author_map(author_map: AuthorMap, path) -> None:
    """``index<TAB>name<TAB>doc_count`` per line."""
    counts = author_map.doc_counts()
    lines = [f"{i}\t{a}\t{c}\n" for i, (a, c) in enumerate(zip(author_map.authors, counts))]
    Path(path).write_text("".join(lines), encoding="utf-8")
