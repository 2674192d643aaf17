"""Append-only JSON-lines result cache keyed by (command, n, bits); newest line wins."""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Optional

ENV_VAR = "DOMINO2ADIC_CACHE"


def default_path() -> Optional[str]:
    return os.environ.get(ENV_VAR) or None


class ResultCache:
    def __init__(self, path: Optional[str | os.PathLike]) -> None:
        self.path = Path(path) if path else None
        self._lock = threading.Lock()
        self._entries: dict[tuple, dict] = {}
        if self.path is not None and self.path.exists():
            with self.path.open(encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        entry = json.loads(line)
                    except json.JSONDecodeError:
                        continue  # torn final line from an interrupted write
                    key = (entry.get("command"), entry.get("n"), entry.get("bits"))
                    self._entries[key] = entry["record"]

    def get(self, command: str, n: int, bits: Optional[int] = None) -> Optional[dict]:
        return self._entries.get((command, n, bits))

    def put(self, command: str, n: int, bits: Optional[int], record: dict) -> None:
        key = (command, n, bits)
        if self._entries.get(key) == record:
            return
        self._entries[key] = record
        if self.path is None:
            return
        line = json.dumps(
            {"command": command, "n": n, "bits": bits, "record": record},
            separators=(",", ":"),
        )
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")
