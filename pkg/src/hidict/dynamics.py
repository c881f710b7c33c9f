"""Dynamic capacity management for threshold-wrapped structures.

Two cutoff-update schemes drive rebuilds:

* the amortized scheme (square N on growth, fourth-root trigger on
  shrink), which is *not* history independent -- ``counterexample_trace``
  exhibits two operation sequences with equal contents but different
  cutoffs; and
* the randomized weakly history independent scheme, under which the cutoff
  N conditioned on the current size n is uniform on {n, ..., 2n-1} no
  matter how the structure got there, with an O(1/n) per-operation rebuild
  probability.

Scheme randomness is drawn from a dedicated RNG, separate from the
structural seed, so HI tests can replay structure randomness while varying
scheme randomness.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

from .core import DuplicateKeyError, MissingKeyError
from .structures import SearchResult, ZipZipTree

AMORTIZED_INITIAL_CUTOFF = 4
WHI_INITIAL_CUTOFF = 1


@dataclass
class CutoffState:
    n: int
    N: int


@dataclass
class RebuildDecision:
    rebuild: bool
    new_N: Optional[int] = None


def amortized_after_insert(state: CutoffState) -> RebuildDecision:
    if state.n == state.N:
        return RebuildDecision(True, state.N * state.N)
    return RebuildDecision(False)


def amortized_after_delete(state: CutoffState) -> RebuildDecision:
    if state.n == round(state.N ** 0.25):
        return RebuildDecision(True, round(math.sqrt(state.N)))
    return RebuildDecision(False)


def whi_before_insert(state: CutoffState, u1: float, u2: float) -> RebuildDecision:
    """Randomized cutoff decision evaluated strictly before the insert.

    n == 0 is folded into the N == n branch: the admissible range
    {n+1, ..., 2(n+1)-1} degenerates to {1} and there is nothing to
    rebuild anyway.
    """
    n, N = state.n, state.N
    if n == 0 or N == n:
        # uniform over {n+1, ..., 2(n+1)-1}, which has n+1 values
        idx = min(int(u1 * (n + 1)), n)
        return RebuildDecision(True, n + 1 + idx)
    # two probability-1/(n+1) branches from disjoint sub-intervals of u2
    p = 1.0 / (n + 1)
    if u2 < p:
        return RebuildDecision(True, 2 * n)
    if u2 < 2 * p:
        return RebuildDecision(True, 2 * n + 1)
    return RebuildDecision(False)


def whi_after_delete(state: CutoffState, u: float) -> RebuildDecision:
    """Randomized cutoff decision evaluated after the delete (n >= 1)."""
    n, N = state.n, state.N
    if n < 1:
        raise ValueError("whi_after_delete requires n >= 1; reset instead")
    if n <= N / 2:
        idx = min(int(u * n), n - 1)
        return RebuildDecision(True, n + idx)
    if u < 1.0 / n:
        return RebuildDecision(True, n)
    return RebuildDecision(False)


class CutoffSimulator:
    """Cutoff-state machine without a backing tree.

    Scheme decisions depend only on (n, N, randomness), so distributional
    HI tests over the cutoff marginal can skip tree maintenance entirely.
    Rebuild work is tracked as key moves for cost accounting.
    """

    def __init__(self, scheme: str, rng: random.Random):
        if scheme not in ("amortized", "whi"):
            raise ValueError("unknown scheme %r" % (scheme,))
        self.scheme = scheme
        self.rng = rng
        self.n = 0
        self.N = AMORTIZED_INITIAL_CUTOFF if scheme == "amortized" else WHI_INITIAL_CUTOFF
        self.rebuilds = 0
        self.key_moves = 0
        self.operations = 0

    @property
    def cutoff(self) -> int:
        return self.N

    def _apply(self, decision: RebuildDecision):
        if decision.rebuild:
            self.N = decision.new_N
            self.rebuilds += 1
            self.key_moves += self.n

    def insert(self, key=None, f: float = 0.0):
        self.operations += 1
        if self.scheme == "whi":
            self._apply(whi_before_insert(CutoffState(self.n, self.N),
                                          self.rng.random(), self.rng.random()))
            self.n += 1
        else:
            self.n += 1
            self._apply(amortized_after_insert(CutoffState(self.n, self.N)))

    def delete(self, key=None):
        if self.n == 0:
            raise MissingKeyError("empty")
        self.operations += 1
        self.n -= 1
        if self.n == 0:
            self.N = AMORTIZED_INITIAL_CUTOFF if self.scheme == "amortized" else WHI_INITIAL_CUTOFF
            return
        if self.scheme == "whi":
            self._apply(whi_after_delete(CutoffState(self.n, self.N), self.rng.random()))
        else:
            self._apply(amortized_after_delete(CutoffState(self.n, self.N)))


class DynamicThresholdDict:
    """Threshold-wrapped biased zip-zip tree with a dynamic cutoff.

    Every stored weight is max(f/2, 1/(2N)) for the current cutoff N; a
    rebuild reconstructs the tree from scratch in sorted key order with
    re-thresholded weights, so the fingerprint is a pure function of
    (content set, structural seed, N).
    """

    kind = "dynamic-threshold"

    def __init__(self, seed: int, scheme: str = "whi", scheme_seed: int = 0):
        if scheme not in ("amortized", "whi"):
            raise ValueError("unknown scheme %r" % (scheme,))
        self.seed = seed
        self.scheme = scheme
        self.rng = random.Random(scheme_seed)
        self.N = AMORTIZED_INITIAL_CUTOFF if scheme == "amortized" else WHI_INITIAL_CUTOFF
        self._freqs = {}
        self._payloads = {}
        self._tree = ZipZipTree(seed)

    @property
    def n(self) -> int:
        return len(self._freqs)

    @property
    def cutoff(self) -> int:
        return self.N

    def state(self) -> CutoffState:
        return CutoffState(self.n, self.N)

    def _weight(self, f: float) -> float:
        return max(f / 2.0, 1.0 / (2.0 * self.N))

    def rebuild(self, new_N: int):
        self.N = new_N
        tree = ZipZipTree(self.seed)
        for key in sorted(self._freqs):
            tree.insert(key, self._weight(self._freqs[key]), self._payloads.get(key))
        self._tree = tree

    def insert(self, key, f: float = 0.0, payload: Optional[bytes] = None):
        if key in self._freqs:
            raise DuplicateKeyError(key)
        if self.scheme == "whi":
            decision = whi_before_insert(self.state(), self.rng.random(), self.rng.random())
            if decision.rebuild:
                self.rebuild(decision.new_N)
            self._freqs[key] = f
            if payload is not None:
                self._payloads[key] = payload
            self._tree.insert(key, self._weight(f), payload)
        else:
            self._freqs[key] = f
            if payload is not None:
                self._payloads[key] = payload
            self._tree.insert(key, self._weight(f), payload)
            decision = amortized_after_insert(self.state())
            if decision.rebuild:
                self.rebuild(decision.new_N)

    def delete(self, key):
        if key not in self._freqs:
            raise MissingKeyError(key)
        self._tree.delete(key)
        del self._freqs[key]
        self._payloads.pop(key, None)
        if self.n == 0:
            self.N = AMORTIZED_INITIAL_CUTOFF if self.scheme == "amortized" else WHI_INITIAL_CUTOFF
            self._tree = ZipZipTree(self.seed)
            return
        if self.scheme == "whi":
            decision = whi_after_delete(self.state(), self.rng.random())
        else:
            decision = amortized_after_delete(self.state())
        if decision.rebuild:
            self.rebuild(decision.new_N)

    def search(self, key) -> SearchResult:
        return self._tree.search(key)

    def predecessor(self, key):
        return self._tree.predecessor(key)

    def range_query(self, lo, hi, tally=None):
        return self._tree.range_query(lo, hi, tally)

    def keys(self):
        return self._tree.keys()

    def __contains__(self, key):
        return key in self._freqs

    def __len__(self):
        return self.n

    def node_count(self) -> int:
        return self._tree.node_count()

    def fingerprint(self) -> bytes:
        head = b"dyn;scheme=%s;N=%d;" % (self.scheme.encode(), self.N)
        return head + self._tree.fingerprint()


def counterexample_trace(seed: int = 0):
    """The amortized scheme's distinguishing pair, from (n=0, N=4).

    X inserts c = N - n = 4 keys and deletes the last; Y inserts c - 1
    keys.  Both end holding {1, 2, 3} but X's insertion crossed n == N,
    squaring the cutoff.  Returns the two final CutoffStates.
    """
    x, y = counterexample_structures(seed)
    return x.state(), y.state()


def counterexample_structures(seed: int = 0):
    """Build both counterexample traces as live amortized-scheme dicts."""
    x = DynamicThresholdDict(seed, scheme="amortized")
    for k in (1, 2, 3, 4):
        x.insert(k, 0.0)
    x.delete(4)
    y = DynamicThresholdDict(seed, scheme="amortized")
    for k in (1, 2, 3):
        y.insert(k, 0.0)
    return x, y
