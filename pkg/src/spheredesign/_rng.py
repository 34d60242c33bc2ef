"""Deterministic named substreams derived from a single integer seed."""
from __future__ import annotations

import hashlib

import numpy as np


def stream_key(name: str) -> int:
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def substream(seed: int, *names: str) -> np.random.Generator:
    """Generator for the substream labeled by `names` under `seed`.

    Distinct labels give statistically independent streams; the same
    (seed, labels) pair reproduces the stream bit for bit.
    """
    entropy = [int(seed)] + [stream_key(n) for n in names]
    return np.random.default_rng(np.random.SeedSequence(entropy))
