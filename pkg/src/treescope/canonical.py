"""Canonical JSON serialization.

Byte-for-byte determinism is the contract every payload and script relies
on: sorted keys, no insignificant whitespace, floats rendered via Python's
shortest round-trip repr. NaN/Inf are rejected (they would break both JSON
interop and equality), -0.0 is normalized to 0.0.
"""

import hashlib
import json

import numpy as np


def to_jsonable(obj):
    """Recursively convert to plain JSON types with normalized floats."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if f != f or f in (float("inf"), float("-inf")):
            raise ValueError("non-finite float in canonical payload")
        return 0.0 if f == 0.0 else f
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"not canonically serializable: {type(obj)!r}")


def canonical_dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False, allow_nan=False)


def canonical_bytes(obj) -> bytes:
    return canonical_dumps(obj).encode("utf-8")


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def token(obj) -> str:
    """Short stable identifier for a canonical value."""
    return digest(canonical_bytes(obj))[:16]
