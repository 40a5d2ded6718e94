"""Canonical JSON emission: one byte sequence per value, forever."""

import json
from pathlib import Path


def canonical_json(obj) -> str:
    """Sorted keys, minimal separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def write_fixture(directory, name: str, obj) -> Path:
    path = Path(directory) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(obj))
    return path
