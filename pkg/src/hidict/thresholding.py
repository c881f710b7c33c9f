"""Threshold frequency scheme: f' = max(f/2, 1/(2*capacity)).

Rewriting frequencies this way keeps the weight sum at or below 1 whenever
the raw frequencies do, preserves O(log 1/f) retrieval for well-predicted
keys, and floors every weight so no key can be pushed deeper than
O(log capacity) by an adversarial estimate.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .core import CapacityError, DuplicateKeyError, MissingKeyError
from .structures import SearchResult, ZipZipTree


def threshold(f: float, capacity: int) -> float:
    """Thresholded frequency for one key."""
    if not 0.0 <= f <= 1.0:
        raise ValueError("frequency must be in [0, 1], got %r" % (f,))
    if capacity < 1:
        raise ValueError("capacity must be >= 1, got %r" % (capacity,))
    return max(f / 2.0, 1.0 / (2.0 * capacity))


def threshold_array(f: np.ndarray, capacity: int) -> np.ndarray:
    """Vectorized threshold over a frequency vector."""
    f = np.asarray(f, dtype=float)
    if capacity < 1:
        raise ValueError("capacity must be >= 1, got %r" % (capacity,))
    if f.size and (f.min() < 0.0 or f.max() > 1.0):
        raise ValueError("frequencies must be in [0, 1]")
    return np.maximum(f / 2.0, 1.0 / (2.0 * capacity))


class ThresholdedDict:
    """Static-capacity threshold wrapper around a biased zip-zip tree.

    Raw frequencies are kept alongside entries so a capacity change can
    re-threshold losslessly (the dynamic schemes rebuild through this).
    """

    kind = "threshold-zipzip"

    def __init__(self, seed: int, capacity: int, stream_base: int = 0):
        if capacity < 1:
            raise ValueError("capacity must be >= 1, got %r" % (capacity,))
        self.seed = seed
        self.capacity = capacity
        self._freqs = {}
        self._tree = ZipZipTree(seed, stream_base=stream_base)

    def insert(self, key, f: float, payload: Optional[bytes] = None):
        if key in self._freqs:
            raise DuplicateKeyError(key)
        if len(self._freqs) >= self.capacity:
            raise CapacityError(
                "capacity %d exceeded inserting %r" % (self.capacity, key)
            )
        w = threshold(f, self.capacity)
        self._tree.insert(key, w, payload)
        self._freqs[key] = f

    def delete(self, key):
        if key not in self._freqs:
            raise MissingKeyError(key)
        self._tree.delete(key)
        del self._freqs[key]

    def search(self, key) -> SearchResult:
        return self._tree.search(key)

    def search_budgeted(self, key, budget: int):
        return self._tree.search_budgeted(key, budget)

    def predecessor(self, key):
        return self._tree.predecessor(key)

    def range_query(self, lo, hi, tally=None):
        return self._tree.range_query(lo, hi, tally)

    def keys(self):
        return self._tree.keys()

    def __iter__(self):
        return iter(self._tree)

    def __contains__(self, key):
        return key in self._freqs

    def __len__(self):
        return len(self._freqs)

    def node_count(self) -> int:
        return self._tree.node_count()

    def raw_frequency(self, key) -> float:
        return self._freqs[key]

    def stored_weight_sum(self) -> float:
        return sum(threshold(f, self.capacity) for f in self._freqs.values())

    def fingerprint(self) -> bytes:
        return b"threshold;cap=%d;" % self.capacity + self._tree.fingerprint()
