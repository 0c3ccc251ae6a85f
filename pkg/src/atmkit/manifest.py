"""Run manifests: config snapshot plus digests of every input and output."""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def write_atomic(path, data: str | bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    raw = data.encode("utf-8") if isinstance(data, str) else data
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(raw)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _rel(path, base: Path) -> str:
    return os.path.relpath(Path(path).resolve(), base.resolve())


class RunRecorder:
    """Collects one run's inputs/outputs and appends it to a manifest file."""

    def __init__(self, manifest_path, command: str, config: dict, seeds=()):
        self.path = Path(manifest_path)
        self.command = command
        self.config = config
        self.seeds = list(seeds)
        self.inputs: list[str] = []
        self.outputs: list[str] = []
        self.started = _now()

    def add_input(self, path) -> None:
        self.inputs.append(str(path))

    def add_output(self, path) -> None:
        self.outputs.append(str(path))

    def commit(self) -> None:
        base = self.path.parent
        base.mkdir(parents=True, exist_ok=True)
        run = {
            "command": self.command,
            "tool_version": __version__,
            "config": self.config,
            "seeds": self.seeds,
            "inputs": {_rel(p, base): file_digest(p) for p in self.inputs},
            "outputs": {_rel(p, base): file_digest(p) for p in self.outputs},
            "started": self.started,
            "finished": _now(),
        }
        doc = load_manifest(self.path) if self.path.exists() else {"tool": "atmkit", "runs": []}
        doc["runs"].append(run)
        write_atomic(self.path, json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def load_manifest(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def verify_manifest(path, check_outputs: bool = True) -> list[str]:
    """Recompute digests; return a list of human-readable mismatches.

    Only the most recent record of each file is checked, since later runs may
    legitimately rewrite an earlier output.
    """
    path = Path(path)
    base = path.parent
    latest: dict[str, tuple[str, str]] = {}
    for run in load_manifest(path)["runs"]:
        kinds = [("input", run.get("inputs", {}))]
        if check_outputs:
            kinds.append(("output", run.get("outputs", {})))
        for kind, entries in kinds:
            for rel, digest in entries.items():
                latest[rel] = (kind, digest)
    problems = []
    for rel, (kind, digest) in sorted(latest.items()):
        p = base / rel
        if not p.exists():
            problems.append(f"{kind} {rel}: missing")
        elif file_digest(p) != digest:
            problems.append(f"{kind} {rel}: digest mismatch")
    return problems
