"""File storage helpers for fixtures, reports and figures.

Writes are atomic: write to *.tmp then os.replace().
"""

from __future__ import annotations

import json
import os
from typing import Any

from ballotope.core.exceptions import StorageError


class FileStorage:
    """JSON / text file helper with atomic writes."""

    def read_obj(self, path: str, default: dict[str, Any] | None = None) -> dict[str, Any]:
        """Read JSON object from file, return default/{} if file missing."""
        if not os.path.exists(path):
            if default is not None:
                return default
            raise StorageError(f"file not found: {path}")
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise StorageError(f"cannot read {path}: {e}") from e
        if not isinstance(data, dict):
            raise StorageError(f"{path} must contain a JSON object")
        return data

    def write_obj(self, path: str, data: dict[str, Any]) -> None:
        """Write JSON object atomically."""
        if not isinstance(data, dict):
            raise StorageError("write_obj expects a dict")
        self.write_text(path, json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True))

    def write_text(self, path: str, text: str) -> None:
        """Write text atomically, creating parent directories."""
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        tmp = path + ".tmp"
        try:
            with open(tmp, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
            os.replace(tmp, path)
        except OSError as e:
            raise StorageError(f"cannot write {path}: {e}") from e


storage = FileStorage()
