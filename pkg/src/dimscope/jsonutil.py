"""Deterministic JSON serialization for view payloads.

Keys are sorted, separators fixed, and every float routed through a
12-significant-digit normalization so that equal computations serialize
byte-identically. NaN and infinity are rejected: view payloads encode
missing values as null.
"""

import json
import math

import numpy as np


def _canon(obj):
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if not math.isfinite(f):
            raise ValueError("non-finite float in JSON payload")
        return float(f"{f:.12g}")
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"unsupported type in JSON payload: {type(obj)!r}")


def canonical_json(obj) -> str:
    """Serialize to compact, key-sorted, float-normalized JSON."""
    return json.dumps(_canon(obj), sort_keys=True, separators=(",", ":"), allow_nan=False)
