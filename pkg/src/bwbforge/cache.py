"""Content-addressed memo cache with an optional on-disk layer.

Every expensive computation funnels through :func:`memo` with a namespace
and a hashable key object.  Results live in an in-process dict; when a cache
directory is attached (CLI flag or the BWBFORGE_CACHE environment variable)
they are also pickled to one file per entry, stamped with the engine
version.  A version mismatch silently invalidates the stored entry.

Concurrent readers are safe; insertion of a missing entry is serialized by
a lock, and a duplicate computation of the same key is benign because all
values are idempotent.
"""

from __future__ import annotations

import hashlib
import os
import pickle
import threading
from typing import Any, Callable, Dict, Optional

ENGINE_VERSION = "1.0.0"

_mem: Dict[str, Any] = {}
_lock = threading.Lock()
_dir: Optional[str] = None
_stats = {"hits": 0, "misses": 0, "disk_hits": 0}


def set_cache_dir(path: Optional[str]) -> None:
    """Attach (or detach with None) the persistent cache directory."""
    global _dir
    if path:
        os.makedirs(path, exist_ok=True)
    _dir = path


def cache_dir() -> Optional[str]:
    if _dir is not None:
        return _dir
    return os.environ.get("BWBFORGE_CACHE") or None


def _key(namespace: str, key_obj: Any) -> str:
    raw = f"{ENGINE_VERSION}|{namespace}|{key_obj!r}"
    return hashlib.sha256(raw.encode()).hexdigest()


def memo(namespace: str, key_obj: Any, compute: Callable[[], Any]) -> Any:
    key = _key(namespace, key_obj)
    if key in _mem:
        _stats["hits"] += 1
        return _mem[key]
    directory = cache_dir()
    if directory:
        path = os.path.join(directory, key + ".pkl")
        if os.path.exists(path):
            try:
                with open(path, "rb") as fh:
                    payload = pickle.load(fh)
                if payload.get("version") == ENGINE_VERSION:
                    value = payload["value"]
                    with _lock:
                        _mem[key] = value
                    _stats["disk_hits"] += 1
                    return value
            except Exception:
                pass  # corrupt entry: fall through and recompute
    _stats["misses"] += 1
    value = compute()
    with _lock:
        _mem[key] = value
    if directory:
        tmp = os.path.join(directory, key + ".tmp")
        try:
            with open(tmp, "wb") as fh:
                pickle.dump({"version": ENGINE_VERSION, "value": value}, fh)
            os.replace(tmp, os.path.join(directory, key + ".pkl"))
        except Exception:
            pass  # persistence is best-effort
    return value


def stats() -> Dict[str, Any]:
    directory = cache_dir()
    entries = 0
    if directory and os.path.isdir(directory):
        entries = sum(1 for n in os.listdir(directory) if n.endswith(".pkl"))
    return {
        "memory_entries": len(_mem),
        "disk_entries": entries,
        "directory": directory,
        **_stats,
    }


def clear(disk: bool = False) -> None:
    with _lock:
        _mem.clear()
    _stats.update({"hits": 0, "misses": 0, "disk_hits": 0})
    directory = cache_dir()
    if disk and directory and os.path.isdir(directory):
        for name in os.listdir(directory):
            if name.endswith(".pkl"):
                try:
                    os.remove(os.path.join(directory, name))
                except OSError:
                    pass
