import math
import random
from collections import Counter

import pytest
from scipy import stats

from hidict.dynamics import (
    AMORTIZED_INITIAL_CUTOFF,
    CutoffSimulator,
    CutoffState,
    DynamicThresholdDict,
    WHI_INITIAL_CUTOFF,
    amortized_after_delete,
    amortized_after_insert,
    counterexample_structures,
    counterexample_trace,
    whi_after_delete,
    whi_before_insert,
)


# ------------------------------------------------------- amortized scheme

@pytest.mark.parametrize("n,N,rebuild,new", [
    (4, 4, True, 16),
    (3, 4, False, None),
    (16, 16, True, 256),
])
def test_amortized_after_insert(n, N, rebuild, new):
    d = amortized_after_insert(CutoffState(n, N))
    assert (d.rebuild, d.new_N) == (rebuild, new)


@pytest.mark.parametrize("n,N,rebuild,new", [
    (2, 16, True, 4),
    (3, 16, False, None),
    (4, 256, True, 16),
])
def test_amortized_after_delete(n, N, rebuild, new):
    d = amortized_after_delete(CutoffState(n, N))
    assert (d.rebuild, d.new_N) == (rebuild, new)


def test_counterexample_trace():
    sx, sy = counterexample_trace()
    assert (sx.n, sx.N) == (3, 16)
    assert (sy.n, sy.N) == (3, 4)


def test_counterexample_contents_equal_but_fingerprints_differ():
    x, y = counterexample_structures(seed=5)
    assert sorted(x.keys()) == sorted(y.keys()) == [1, 2, 3]
    assert x.fingerprint() != y.fingerprint()
    # the divergence is real: thresholds 1/32 vs 1/8 move the rank floor
    wx = {n.key: n.weight for n in _nodes(x)}
    wy = {n.key: n.weight for n in _nodes(y)}
    assert wx[1] == 1.0 / 32 and wy[1] == 1.0 / 8


def _nodes(d):
    out, stack = [], [d._tree._root]
    while stack:
        node = stack.pop()
        if node is None:
            continue
        out.append(node)
        stack.append(node.left)
        stack.append(node.right)
    return out


# ------------------------------------------------------------- WHI scheme

def test_whi_insert_at_cutoff_uniform_range():
    rng = random.Random(1)
    counts = Counter()
    for _ in range(100_000):
        d = whi_before_insert(CutoffState(8, 8), rng.random(), rng.random())
        assert d.rebuild and 9 <= d.new_N <= 17
        counts[d.new_N] += 1
    # chi-square against uniform over the 9 admissible values
    _, p = stats.chisquare(list(counts[v] for v in range(9, 18)))
    assert p > 0.001


def test_whi_insert_below_cutoff_probabilities():
    rng = random.Random(2)
    counts = Counter()
    for _ in range(90_000):
        d = whi_before_insert(CutoffState(8, 12), rng.random(), rng.random())
        counts[d.new_N if d.rebuild else None] += 1
    assert counts[16] / 90_000 == pytest.approx(1 / 9, abs=0.01)
    assert counts[17] / 90_000 == pytest.approx(1 / 9, abs=0.01)
    assert counts[None] / 90_000 == pytest.approx(7 / 9, abs=0.01)


def test_whi_first_insert_degenerate_range():
    for u in (0.0, 0.5, 0.999):
        d = whi_before_insert(CutoffState(0, WHI_INITIAL_CUTOFF), u, u)
        assert d.rebuild and d.new_N == 1


def test_whi_delete_resize_branch():
    rng = random.Random(3)
    counts = Counter()
    for _ in range(40_000):
        d = whi_after_delete(CutoffState(4, 10), rng.random())
        assert d.rebuild and 4 <= d.new_N <= 7
        counts[d.new_N] += 1
    _, p = stats.chisquare([counts[v] for v in range(4, 8)])
    assert p > 0.001


def test_whi_delete_probabilistic_branch():
    rng = random.Random(4)
    hits = sum(
        whi_after_delete(CutoffState(6, 10), rng.random()).rebuild
        for _ in range(60_000)
    )
    assert hits / 60_000 == pytest.approx(1 / 6, abs=0.01)
    d = whi_after_delete(CutoffState(6, 10), 0.0)
    assert d.new_N == 6


def test_whi_delete_degenerate():
    d = whi_after_delete(CutoffState(1, 2), 0.9)
    assert d.rebuild and d.new_N == 1
    with pytest.raises(ValueError):
        whi_after_delete(CutoffState(0, 2), 0.5)


def test_whi_range_invariant_over_random_traces():
    # n <= N <= 2(n+1)-1 after every operation
    rng = random.Random(5)
    sim = CutoffSimulator("whi", random.Random(6))
    for _ in range(20_000):
        if sim.n == 0 or rng.random() < 0.55:
            sim.insert()
        else:
            sim.delete()
        if sim.n > 0:
            assert sim.n <= sim.N <= 2 * (sim.n + 1) - 1


def test_whi_cutoff_marginal_is_uniform():
    # N | n is uniform on {n, ..., 2n-1} regardless of history
    n = 12
    counts = Counter()
    for i in range(40_000):
        sim = CutoffSimulator("whi", random.Random(1_000_000 + i))
        for _ in range(n):
            sim.insert()
        counts[sim.N] += 1
    assert sorted(counts) == list(range(n, 2 * n))
    _, p = stats.chisquare([counts[v] for v in range(n, 2 * n)])
    assert p > 0.001


def test_expected_update_cost_logarithmic():
    # rebuild key-moves per operation stay within 8*log2(n) at n ~ 1000
    sim = CutoffSimulator("whi", random.Random(7))
    for _ in range(1000):
        sim.insert()
    sim.key_moves = sim.operations = sim.rebuilds = 0
    rng = random.Random(8)
    for _ in range(20_000):
        if sim.n <= 900 or (sim.n < 1100 and rng.random() < 0.5):
            sim.insert()
        else:
            sim.delete()
    assert sim.key_moves / sim.operations <= 8 * math.log2(1000)


# ------------------------------------------------- dynamic threshold dict

def test_rebuild_determinism():
    def make():
        d = DynamicThresholdDict(3, scheme="whi", scheme_seed=11)
        for k in range(1, 20):
            d.insert(k, 1.0 / 32)
        return d

    a, b = make(), make()
    a.rebuild(40)
    b.rebuild(40)
    assert a.fingerprint() == b.fingerprint()


def test_rebuild_rethresholds_weights():
    d = DynamicThresholdDict(0, scheme="whi")
    d.insert(1, 0.0)
    d.rebuild(16)
    weights = {n.key: n.weight for n in _nodes(d)}
    assert weights[1] == 1.0 / 32  # max(0, 1/(2*16))


def test_post_rebuild_weight_sum():
    rng = random.Random(9)
    d = DynamicThresholdDict(0, scheme="whi", scheme_seed=1)
    raw = [rng.random() for _ in range(50)]
    scale = sum(raw)
    for k in range(1, 51):
        d.insert(k, raw[k - 1] / scale)
    d.rebuild(d.n)  # smallest admissible cutoff
    assert sum(n.weight for n in _nodes(d)) <= 1.0 + 1e-9


def test_dynamic_dict_tracks_scheme_invariant():
    d = DynamicThresholdDict(1, scheme="whi", scheme_seed=2)
    rng = random.Random(10)
    present = set()
    for _ in range(400):
        if not present or rng.random() < 0.6:
            k = rng.randint(1, 500)
            if k not in present:
                d.insert(k, 0.0)
                present.add(k)
        else:
            k = rng.choice(sorted(present))
            d.delete(k)
            present.discard(k)
        assert sorted(present) == d.keys()
        if d.n > 0:
            assert d.n <= d.N <= 2 * (d.n + 1) - 1
    if d.n:
        assert d.search(d.keys()[0]).found


def test_dynamic_dict_empty_reset():
    d = DynamicThresholdDict(1, scheme="whi", scheme_seed=0)
    d.insert(1, 0.5)
    d.delete(1)
    assert d.N == WHI_INITIAL_CUTOFF
    a = DynamicThresholdDict(2, scheme="amortized")
    a.insert(1, 0.5)
    a.delete(1)
    assert a.N == AMORTIZED_INITIAL_CUTOFF


def test_simulator_validates_scheme():
    with pytest.raises(ValueError):
        CutoffSimulator("bogus", random.Random(0))
    with pytest.raises(ValueError):
        DynamicThresholdDict(0, scheme="bogus")
