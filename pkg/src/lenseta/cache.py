"""Append-only JSON-lines result cache.

Each line is ``{"key", "tool_version", "created", "value"}``.  Readers never
lock; writers serialize on a lock file, rewrite the whole log into a
temporary file and rename it over the old one, so a reader always sees a
complete file.
"""

from __future__ import annotations

import fcntl
import json
import os
import tempfile
import time
from contextlib import contextmanager
from pathlib import Path

CACHE_FILE = "results.jsonl"


class ResultCache:
    def __init__(self, directory):
        self.directory = Path(directory)
        self.path = self.directory / CACHE_FILE
        self._entries: dict[str, dict] | None = None
        self._mtime = None

    def _load(self) -> dict[str, dict]:
        try:
            mtime = self.path.stat().st_mtime_ns
        except FileNotFoundError:
            return {}
        if self._entries is not None and mtime == self._mtime:
            return self._entries
        entries = {}
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                try:
                    entry = json.loads(line)
                except json.JSONDecodeError:
                    continue  # tolerate a torn line from an older writer
                if isinstance(entry, dict) and "key" in entry:
                    entries[entry["key"]] = entry
        self._entries, self._mtime = entries, mtime
        return entries

    def get(self, key: str, tool_version: str):
        entry = self._load().get(key)
        if entry is None or entry.get("tool_version") != tool_version:
            return None
        return entry["value"]

    @contextmanager
    def _write_lock(self):
        self.directory.mkdir(parents=True, exist_ok=True)
        with open(self.directory / ".lock", "w") as lock:
            fcntl.flock(lock, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(lock, fcntl.LOCK_UN)

    def put(self, key: str, value, tool_version: str) -> None:
        entry = {"key": key, "tool_version": tool_version, "created": time.time(), "value": value}
        line = json.dumps(entry) + "\n"
        with self._write_lock():
            old = self.path.read_bytes() if self.path.exists() else b""
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".results-", suffix=".tmp")
            try:
                with os.fdopen(fd, "wb") as fh:
                    fh.write(old)
                    fh.write(line.encode("utf-8"))
                    fh.flush()
                    os.fsync(fh.fileno())
                os.replace(tmp, self.path)
            except BaseException:
                os.unlink(tmp)
                raise
        self._entries = None

    def __len__(self) -> int:
        return len(self._load())
