"""Content-addressed on-disk cache of JSON results."""

import hashlib
import json
import os
import warnings
from pathlib import Path

from . import __version__

ENV_VAR = "MODBETTI_CACHE_DIR"


def cache_key(command, params, version=__version__):
    blob = json.dumps({"command": command, "params": params, "version": version},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    """Stores one JSON document per key under ``root``; ``root=None`` disables it."""

    def __init__(self, root=None):
        self.root = Path(root) if root else None
        self.hits = 0

    @classmethod
    def from_env(cls):
        return cls(os.environ.get(ENV_VAR) or None)

    def _path(self, key):
        return self.root / key[:2] / f"{key}.json"

    def get(self, key):
        if self.root is None:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        try:
            doc = json.loads(path.read_text())
            if doc.get("key") != key:
                raise ValueError("key mismatch")
            value = doc["value"]
        except (ValueError, KeyError, OSError) as exc:
            warnings.warn(f"ignoring corrupt cache entry {path.name}: {exc}", RuntimeWarning)
            return None
        self.hits += 1
        return value

    def put(self, key, value):
        if self.root is None:
            return
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"key": key, "value": value}, sort_keys=True))
        os.replace(tmp, path)

    def fetch(self, command, params, producer):
        """Cached ``producer()``; the value must be JSON-serialisable."""
        key = cache_key(command, params)
        value = self.get(key)
        if value is None:
            value = producer()
            self.put(key, value)
        return value
