"""Executable history-independence checks.

Strong HI is tested exactly: every operation sequence realizing a content
set must produce a byte-identical fingerprint.  Weak HI is tested
distributionally: with the structural seed fixed, the cutoff N is the only
history-sensitive component of a rebuilt threshold structure, so we compare
the empirical N distributions that different from-empty strategies induce,
using total-variation distance.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .dynamics import counterexample_structures


@dataclass
class HiReport:
    mode: str  # "strong" or "weak"
    trials: int
    mismatches: int
    tv_distance: Optional[float] = None

    @property
    def passed(self) -> bool:
        if self.mode == "strong":
            return self.mismatches == 0
        return self.tv_distance is not None and self.tv_distance <= 0.05


def fingerprint(structure) -> bytes:
    """Canonical byte serialization of a structure's representation."""
    return structure.fingerprint()


def _trial_frequency(key) -> float:
    # deterministic per-key raw frequency so that every realization of a
    # content set inserts identical (key, f) entries
    return ((key * 2654435761) % 1000 + 1) / 2000.0


def _build(structure, ops):
    for op, key in ops:
        if op == "i":
            structure.insert(key, _trial_frequency(key))
        else:
            structure.delete(key)
    return structure


def _randomized_realization(rng: random.Random, keys, universe):
    """A random operation sequence ending with exactly ``keys`` present."""
    ops = []
    order = list(keys)
    rng.shuffle(order)
    present = set()
    for key in order:
        ops.append(("i", key))
        present.add(key)
        # occasional delete/reinsert detour of an already-present key
        if present and rng.random() < 0.3:
            victim = rng.choice(sorted(present))
            ops.append(("d", victim))
            ops.append(("i", victim))
        # occasional transient key outside the target set
        if rng.random() < 0.15:
            extra = rng.choice(universe)
            if extra not in present:
                ops.append(("i", extra))
                ops.append(("d", extra))
    return ops


def shi_check(structure_factory: Callable[[], object], universe_size: int,
              trials: int, seed: int = 0) -> HiReport:
    """Strong-HI distinguisher over random (and small exhaustive) histories.

    For universe_size <= 6 every insertion order of the full key set is
    enumerated; otherwise ``trials`` random subsets are realized by two
    distinct operation sequences each (including delete/reinsert and
    transient-key detours) and compared to the sorted-order build.
    """
    rng = random.Random(seed)
    mismatches = 0
    total = 0
    if universe_size <= 6:
        keys = list(range(1, universe_size + 1))
        canonical = fingerprint(_build(structure_factory(), [("i", k) for k in keys]))
        for perm in itertools.permutations(keys):
            total += 1
            fp = fingerprint(_build(structure_factory(), [("i", k) for k in perm]))
            if fp != canonical:
                mismatches += 1
        return HiReport("strong", total, mismatches)

    universe = list(range(1, universe_size + 1))
    for _ in range(trials):
        total += 1
        size = rng.randint(1, universe_size)
        keys = rng.sample(universe, size)
        canonical = fingerprint(
            _build(structure_factory(), [("i", k) for k in sorted(keys)])
        )
        fp = fingerprint(
            _build(structure_factory(), _randomized_realization(rng, keys, universe))
        )
        if fp != canonical:
            mismatches += 1
    return HiReport("strong", total, mismatches)


def amortized_counterexample_check(seed: int = 0) -> HiReport:
    """Negative control: the amortized scheme's X/Y pair must mismatch."""
    x, y = counterexample_structures(seed)
    assert sorted(x.keys()) == sorted(y.keys())
    mism = 0 if fingerprint(x) == fingerprint(y) else 1
    return HiReport("strong", 1, mism)


def total_variation(counts_a: Counter, counts_b: Counter, samples: int) -> float:
    keys = set(counts_a) | set(counts_b)
    return 0.5 * sum(abs(counts_a.get(k, 0) - counts_b.get(k, 0)) for k in keys) / samples


def whi_check(structure_factory: Callable[[int], object], target_n: int,
              samples: int, strategies: Sequence[Callable[[object], None]],
              seed: int = 0) -> HiReport:
    """Weak-HI distributional check over the cutoff marginal.

    ``structure_factory(scheme_seed)`` builds an empty structure exposing
    ``insert``/``delete`` and a ``cutoff`` attribute; each strategy drives
    it from empty to the same target content set.  Reports the maximum
    pairwise TV distance between the strategies' empirical N distributions.
    """
    if len(strategies) < 2:
        raise ValueError("whi_check needs at least 2 strategies")
    distributions = []
    for s_idx, strategy in enumerate(strategies):
        counts = Counter()
        for i in range(samples):
            obj = structure_factory(seed * 1_000_003 + s_idx * samples + i)
            strategy(obj)
            counts[obj.cutoff] += 1
        distributions.append(counts)
    worst = 0.0
    for a, b in itertools.combinations(distributions, 2):
        worst = max(worst, total_variation(a, b, samples))
    return HiReport("weak", samples, 0, worst)


def pure_insert_strategy(n: int) -> Callable[[object], None]:
    """Insert keys 1..n in order."""
    def run(obj):
        for k in range(1, n + 1):
            obj.insert(k, _trial_frequency(k))
    return run


def detour_strategy(n: int, detours: int) -> Callable[[object], None]:
    """Insert 1..n with ``detours`` interleaved insert-then-delete pairs."""
    def run(obj):
        for k in range(1, n + 1):
            obj.insert(k, _trial_frequency(k))
            if k <= detours:
                extra = n + k
                obj.insert(extra, _trial_frequency(extra))
                obj.delete(extra)
    return run
