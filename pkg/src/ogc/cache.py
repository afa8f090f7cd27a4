"""Small on-disk JSON cache for long scans.

Entries are keyed by (kind, k, n, engine version) and live under
``$OGC_CACHE_DIR``.  Writes go to a temporary file in the same directory
followed by ``os.replace``, so a crashed or parallel run never leaves a
half-written entry.  Without ``OGC_CACHE_DIR`` the cache is disabled.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Callable, Optional

from . import ENGINE_VERSION


def cache_dir() -> Optional[Path]:
    d = os.environ.get("OGC_CACHE_DIR")
    return Path(d) if d else None


def _key(kind: str, k: int, n: int) -> str:
    raw = json.dumps([kind, k, n, ENGINE_VERSION])
    return f"{kind}-k{k}-n{n}-" + hashlib.sha256(raw.encode()).hexdigest()[:16] + ".json"


def atomic_write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(obj, fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cached(kind: str, k: int, n: int, compute: Callable[[], object]):
    """Return the cached JSON value for (kind, k, n), computing it on a miss."""
    root = cache_dir()
    if root is None:
        return compute()
    path = root / _key(kind, k, n)
    if path.exists():
        try:
            with open(path) as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError):
            pass  # unreadable entry: recompute and overwrite
    value = compute()
    atomic_write_json(path, value)
    return value
