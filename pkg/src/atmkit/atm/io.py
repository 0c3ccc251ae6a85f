"""Binary model container.

Layout (all integers little-endian)::

    magic      8 bytes   b"ATMKMODL"
    version    uint32    currently 1
    hlen       uint64    byte length of the JSON header
    header     hlen bytes UTF-8 JSON, keys sorted
    theta      A*K float64, row-major
    beta       K*V float64, row-major

The header holds ``hyper`` (K, alpha, eta, iterations, burn_in, thin, seed),
``n_retained``, ``shape`` ({"A", "K", "V"}), ``terms`` and ``authors``.
"""

from __future__ import annotations

import json
import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from ..errors import HyperParamError, ModelFormatError
from .model import AtmHyperParams, AtmModel

MAGIC = b"ATMKMODL"
VERSION = 1
_PRELUDE = struct.Struct("<8sIQ")


def model_to_bytes(model: AtmModel) -> bytes:
    A, K = model.theta.shape
    header = {
        "hyper": model.hyper.to_dict(),
        "n_retained": model.n_retained,
        "shape": {"A": A, "K": K, "V": model.beta.shape[1]},
        "terms": list(model.terms),
        "authors": list(model.authors),
    }
    hbytes = json.dumps(header, sort_keys=True, ensure_ascii=False, separators=(",", ":")).encode()
    return b"".join(
        [
            _PRELUDE.pack(MAGIC, VERSION, len(hbytes)),
            hbytes,
            model.theta.astype("<f8").tobytes(order="C"),
            model.beta.astype("<f8").tobytes(order="C"),
        ]
    )


def model_from_bytes(data: bytes) -> AtmModel:
    if len(data) < _PRELUDE.size:
        raise ModelFormatError("truncated model file")
    magic, version, hlen = _PRELUDE.unpack_from(data)
    if magic != MAGIC:
        raise ModelFormatError("not an atmkit model file (bad magic)")
    if version != VERSION:
        raise ModelFormatError(f"unsupported model version {version}")
    start = _PRELUDE.size
    try:
        header = json.loads(data[start : start + hlen].decode("utf-8"))
        A, K, V = (int(header["shape"][k]) for k in ("A", "K", "V"))
        hyper = AtmHyperParams(**header["hyper"])
    except (ValueError, KeyError, TypeError, HyperParamError) as exc:
        raise ModelFormatError(f"corrupt model header: {exc}") from None
    off = start + hlen
    need = off + 8 * (A * K + K * V)
    if len(data) != need:
        raise ModelFormatError(f"model payload is {len(data)} bytes, expected {need}")
    theta = np.frombuffer(data, dtype="<f8", count=A * K, offset=off).reshape(A, K)
    beta = np.frombuffer(data, dtype="<f8", count=K * V, offset=off + 8 * A * K).reshape(K, V)
    try:
        return AtmModel(
            theta=theta.astype(np.float64),
            beta=beta.astype(np.float64),
            hyper=hyper,
            terms=header["terms"],
            authors=header["authors"],
            n_retained=int(header["n_retained"]),
        )
    except (ValueError, KeyError) as exc:
        raise ModelFormatError(f"inconsistent model file: {exc}") from None


def atomic_write_bytes(path, data: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_model(model: AtmModel, path) -> None:
    atomic_write_bytes(path, model_to_bytes(model))


def load_model(path) -> AtmModel:
    return model_from_bytes(Path(path).read_bytes())
