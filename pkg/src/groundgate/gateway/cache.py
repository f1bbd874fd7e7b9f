"""Content-addressed decision cache with bounded LRU eviction.

Keys digest the normalized texts plus everything that could change the
decision: backend identity, threshold, and the model artifact version. Values
are deterministic for a fixed key, so concurrent writers racing on the same
key are benign (last writer wins with an identical value).
"""

from __future__ import annotations

import hashlib
import threading
from collections import OrderedDict

from ..text import squash_whitespace


def cache_key(query: str, context: str, backend_id: str, threshold: float,
              artifact_version: str) -> str:
    parts = [
        squash_whitespace(query),
        squash_whitespace(context),
        backend_id,
        repr(float(threshold)),
        artifact_version,
    ]
    h = hashlib.sha256()
    for part in parts:
        h.update(part.encode("utf-8"))
        h.update(b"\x1f")
    return h.hexdigest()


class DecisionCache:
    """Thread-safe LRU map from cache key to a cached gate decision."""

    def __init__(self, max_entries: int = 1024):
        if max_entries < 1:
            raise ValueError("cache needs at least one slot")
        self.max_entries = max_entries
        self._entries: OrderedDict[str, object] = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key: str):
        with self._lock:
            if key not in self._entries:
                return None
            self._entries.move_to_end(key)
            return self._entries[key]

    def put(self, key: str, value) -> None:
        with self._lock:
            self._entries[key] = value
            self._entries.move_to_end(key)
            while len(self._entries) > self.max_entries:
                self._entries.popitem(last=False)

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)
