"""Content-addressed on-disk store for solved degrees.

One JSON file per (graph hash, degree) holding the canonical basis of the
solution space as rational strings plus a SHA-256 checksum of the payload.
Writes go through a temporary file and ``os.replace`` so readers never see
partial files.  Bad entries are removed with a warning and recomputed.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import threading
from pathlib import Path

import flint

ENV_VAR = "HESSGKM_CACHE_DIR"
FORMAT = 1

log = logging.getLogger(__name__)


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "hessgkm"


def _digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


class DiskCache:
    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.root.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0
        self.evictions = 0
        self._lock = threading.Lock()

    def path(self, key: str, k: int) -> Path:
        return self.root / key[:2] / f"{key}-{k}.json"

    def stats(self) -> dict:
        return {"hits": self.hits, "misses": self.misses, "evictions": self.evictions}

    def _count(self, field: str):
        with self._lock:
            setattr(self, field, getattr(self, field) + 1)

    def load(self, key: str, k: int, width: int) -> flint.fmpq_mat | None:
        path = self.path(key, k)
        if not path.exists():
            self._count("misses")
            return None
        try:
            data = json.loads(path.read_text())
            payload = data["payload"]
            if data.get("checksum") != _digest(payload):
                raise ValueError("checksum mismatch")
            if payload["key"] != key or payload["degree"] != k or payload["cols"] != width:
                raise ValueError("entry does not match its address")
            rows, cols = payload["rows"], payload["cols"]
            ents = [flint.fmpq(*map(int, s.split("/"))) if "/" in s else flint.fmpq(int(s))
                    for s in payload["entries"]]
            if len(ents) != rows * cols:
                raise ValueError("wrong number of entries")
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("evicting corrupt cache entry %s (%s)", path, exc)
            try:
                path.unlink()
            except OSError:
                pass
            self._count("evictions")
            self._count("misses")
            return None
        self._count("hits")
        return flint.fmpq_mat(rows, cols, ents)

    def save(self, key: str, k: int, basis: flint.fmpq_mat) -> None:
        payload = {
            "format": FORMAT,
            "key": key,
            "degree": k,
            "rows": basis.nrows(),
            "cols": basis.ncols(),
            "entries": [str(x) for x in basis.entries()],
        }
        data = {"payload": payload, "checksum": _digest(payload)}
        path = self.path(key, k)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(data, fh, separators=(",", ":"))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
