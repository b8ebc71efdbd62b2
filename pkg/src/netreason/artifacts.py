"""Artifact plumbing: atomic writes, manifests, parameter checkpoints, hashes.

Checkpoints are numpy .npz archives keyed by state-dict name, written next to
a JSON manifest carrying format_version, seed, config hash and training
metadata. Artifacts meant to be deterministic never embed timestamps.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

import numpy as np
import torch

CHECKPOINT_FORMAT_VERSION = 1


def write_bytes_atomic(path: str | Path, data: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_text_atomic(path: str | Path, text: str) -> None:
    write_bytes_atomic(path, text.encode("utf-8"))


def write_json_atomic(path: str | Path, obj) -> None:
    write_text_atomic(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def config_hash(obj) -> str:
    """Stable short hash of any JSON-serializable configuration."""
    payload = json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def params_hash(module: torch.nn.Module) -> str:
    """SHA-256 over the module's parameters in state-dict key order."""
    h = hashlib.sha256()
    for key, tensor in sorted(module.state_dict().items()):
        h.update(key.encode("utf-8"))
        h.update(tensor.detach().cpu().numpy().tobytes())
    return h.hexdigest()


def save_checkpoint(module: torch.nn.Module, path: str | Path, meta: dict | None = None) -> None:
    """Write `<path>` (.npz tensors) and `<path>.manifest.json`."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    arrays = {k: v.detach().cpu().numpy() for k, v in module.state_dict().items()}
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    os.close(fd)
    try:
        with open(tmp, "wb") as fh:
            np.savez(fh, **arrays)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    manifest = {
        "format_version": CHECKPOINT_FORMAT_VERSION,
        "tensors": {k: list(v.shape) for k, v in arrays.items()},
        "params_hash": params_hash(module),
    }
    if meta:
        manifest.update(meta)
    write_json_atomic(str(path) + ".manifest.json", manifest)


def load_checkpoint(module: torch.nn.Module, path: str | Path) -> None:
    """Load tensors into the module; shapes must match exactly."""
    with np.load(Path(path)) as data:
        state = {k: torch.from_numpy(np.array(data[k])) for k in data.files}
    current = module.state_dict()
    if set(state) != set(current):
        missing = set(current) - set(state)
        extra = set(state) - set(current)
        raise ValueError(f"checkpoint keys mismatch (missing={sorted(missing)}, extra={sorted(extra)})")
    for k, v in state.items():
        if tuple(v.shape) != tuple(current[k].shape):
            raise ValueError(f"checkpoint tensor {k} has shape {tuple(v.shape)}, expected {tuple(current[k].shape)}")
    module.load_state_dict({k: v.to(current[k].dtype) for k, v in state.items()})


def file_sha256(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()
