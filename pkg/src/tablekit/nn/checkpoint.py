"""Checkpoint persistence: a directory with manifest.json plus one raw
little-endian array file per parameter.

The directory is assembled under a temporary name and atomically renamed
into place, so a crash can never leave a readable-but-partial manifest.
"""

from __future__ import annotations

import hashlib
import json
import os
import shutil
import tempfile
from pathlib import Path
from typing import Optional

import numpy as np

from ..errors import CheckpointMismatch

SCHEMA_VERSION = 1

_DTYPES = {"float32": "<f4", "float64": "<f8"}


def save_checkpoint(
    path: str | Path,
    params: dict[str, np.ndarray],
    tag: str,
    config: dict,
    seed: Optional[int] = None,
) -> Path:
    """Write parameters + manifest atomically; returns the final path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=path.name + ".tmp-", dir=path.parent))
    try:
        entries = []
        for name, arr in params.items():
            dtype_name = str(arr.dtype)
            if dtype_name not in _DTYPES:
                raise CheckpointMismatch(f"{name}: unsupported dtype {dtype_name}")
            fname = name + ".bin"
            with open(tmp / fname, "wb") as f:
                f.write(np.ascontiguousarray(arr, dtype=_DTYPES[dtype_name]).tobytes())
            entries.append(
                {"name": name, "shape": list(arr.shape), "dtype": dtype_name, "file": fname}
            )
        manifest = {
            "schema_version": SCHEMA_VERSION,
            "tag": tag,
            "seed": seed,
            "config": config,
            "params": entries,
        }
        with open(tmp / "manifest.json", "w", encoding="utf-8") as f:
            json.dump(manifest, f, indent=2, sort_keys=True)
        if path.exists():
            shutil.rmtree(path)
        os.replace(tmp, path)
    except Exception:
        shutil.rmtree(tmp, ignore_errors=True)
        raise
    return path


def load_checkpoint(path: str | Path, expect_tag: Optional[str] = None) -> tuple[dict[str, np.ndarray], dict]:
    """Read a checkpoint directory; validates manifest shapes and dtype."""
    path = Path(path)
    manifest_path = path / "manifest.json"
    if not manifest_path.exists():
        raise CheckpointMismatch(f"no manifest.json under {path}")
    with open(manifest_path, encoding="utf-8") as f:
        manifest = json.load(f)
    if manifest.get("schema_version") != SCHEMA_VERSION:
        raise CheckpointMismatch(f"unsupported schema version {manifest.get('schema_version')}")
    if expect_tag is not None and manifest.get("tag") != expect_tag:
        raise CheckpointMismatch(f"expected a '{expect_tag}' checkpoint, found '{manifest.get('tag')}'")
    params: dict[str, np.ndarray] = {}
    for entry in manifest["params"]:
        file_path = path / entry["file"]
        if not file_path.exists():
            raise CheckpointMismatch(f"missing array file {entry['file']}")
        raw = file_path.read_bytes()
        arr = np.frombuffer(raw, dtype=_DTYPES[entry["dtype"]]).astype(entry["dtype"])
        expected = int(np.prod(entry["shape"])) if entry["shape"] else 1
        if arr.size != expected:
            raise CheckpointMismatch(
                f"{entry['name']}: file holds {arr.size} values, manifest says {expected}"
            )
        params[entry["name"]] = arr.reshape(entry["shape"])
    return params, manifest


def params_hash(params: dict[str, np.ndarray]) -> str:
    """Order-independent content hash of a parameter dict."""
    digest = hashlib.sha256()
    for name in sorted(params):
        arr = params[name]
        digest.update(name.encode())
        digest.update(str(arr.dtype).encode())
        digest.update(str(arr.shape).encode())
        digest.update(np.ascontiguousarray(arr).tobytes())
    return digest.hexdigest()
