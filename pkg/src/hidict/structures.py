"""Ordered dictionaries with comparison counting.

All trees share one contract: insert/delete/search/predecessor/range_query/
node_count plus a canonical ``fingerprint()`` used by the history-independence
harness.  The randomized trees (zip-zip and both learned treaps) are built on
a single precedence-tree engine: each node carries a totally ordered rank, the
tree is the unique BST that is heap-ordered on ranks (ties broken toward the
smaller key), and insertion/deletion use iterative unzip/zip so that deep,
degenerate trees (which the adversarial benchmarks deliberately produce)
never hit the recursion limit.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Optional

from .core import (
    DuplicateKeyError,
    MissingKeyError,
    ComparisonTally,
    geometric_from_bits,
    oracle_uniform,
    oracle_value,
)


@dataclass
class SearchResult:
    found: bool
    comparisons: int
    payload: Optional[bytes] = None


class _Node:
    __slots__ = ("key", "rank", "weight", "payload", "left", "right")

    def __init__(self, key, rank, weight, payload):
        self.key = key
        self.rank = rank
        self.weight = weight
        self.payload = payload
        self.left = None
        self.right = None


def zz_rank(seed: int, key, weight: float):
    """Rank pair for a (possibly weighted) zip-zip tree node.

    r1 = floor(log2 weight) + Geometric(1/2); r2 is a uniform 32-bit
    tie-breaker.  Heavier keys get stochastically larger primary ranks,
    which is what yields O(log W/w) retrieval depth.
    """
    if weight <= 0:
        raise ValueError("weight must be positive, got %r" % (weight,))
    r1 = math.floor(math.log2(weight)) + geometric_from_bits(oracle_value(seed, key, 0))
    r2 = oracle_value(seed, key, 1) & 0xFFFFFFFF
    return (r1, r2)


def treap_priority(variant: str, f: float, seed: int, key) -> float:
    """Real-valued priority for the two learned-treap baselines.

    Variant "L" uses the frequency estimate itself (ties broken by oracle
    bits inside the tree); variant "C" draws u uniform in (0, 1) per key
    and uses u**(1/f), the classic weighted-treap priority.
    """
    if variant == "L":
        return f
    if variant == "C":
        if f <= 0:
            raise ValueError("variant C requires f > 0")
        u = oracle_uniform(seed, key, 3)
        return u ** (1.0 / f)
    raise ValueError("unknown treap variant %r" % (variant,))


class _PrecedenceTree:
    """Base for trees whose shape is the unique heap-on-ranks BST."""

    kind = "precedence"

    def __init__(self, seed: int):
        self.seed = seed
        self._root = None
        self._n = 0

    # subclasses provide the rank for a (key, weight-or-frequency)
    def _rank(self, key, weight):
        raise NotImplementedError

    @staticmethod
    def _wins(rank_a, key_a, rank_b, key_b):
        # higher rank wins; rank ties go to the smaller key so the shape
        # stays a pure function of the content set
        if rank_a != rank_b:
            return rank_a > rank_b
        return key_a < key_b

    def node_count(self) -> int:
        return self._n

    def __len__(self):
        return self._n

    def __contains__(self, key):
        cur = self._root
        while cur is not None:
            if key == cur.key:
                return True
            cur = cur.left if key < cur.key else cur.right
        return False

    def insert(self, key, weight: float = 1.0, payload: Optional[bytes] = None):
        if key in self:
            raise DuplicateKeyError(key)
        rank = self._rank(key, weight)
        new = _Node(key, rank, weight, payload)
        parent = None
        cur = self._root
        while cur is not None and not self._wins(rank, key, cur.rank, cur.key):
            parent = cur
            cur = cur.left if key < cur.key else cur.right
        # new takes cur's position; unzip cur's subtree around key
        lt = rt = None
        lt_tail = rt_tail = None
        node = cur
        while node is not None:
            if node.key < key:
                if lt_tail is None:
                    lt = node
                else:
                    lt_tail.right = node
                lt_tail = node
                node = node.right
            else:
                if rt_tail is None:
                    rt = node
                else:
                    rt_tail.left = node
                rt_tail = node
                node = node.left
        if lt_tail is not None:
            lt_tail.right = None
        if rt_tail is not None:
            rt_tail.left = None
        new.left = lt
        new.right = rt
        if parent is None:
            self._root = new
        elif key < parent.key:
            parent.left = new
        else:
            parent.right = new
        self._n += 1

    def delete(self, key):
        parent = None
        cur = self._root
        while cur is not None and cur.key != key:
            parent = cur
            cur = cur.left if key < cur.key else cur.right
        if cur is None:
            raise MissingKeyError(key)
        merged = self._zip(cur.left, cur.right)
        if parent is None:
            self._root = merged
        elif parent.left is cur:
            parent.left = merged
        else:
            parent.right = merged
        self._n -= 1

    def _zip(self, a, b):
        # merge two trees with all keys of a below all keys of b
        if a is None:
            return b
        if b is None:
            return a
        root = None
        attach_node = None
        attach_right = True
        while a is not None and b is not None:
            if self._wins(a.rank, a.key, b.rank, b.key):
                winner, a, side_right = a, a.right, True
            else:
                winner, b, side_right = b, b.left, False
            if root is None:
                root = winner
            elif attach_right:
                attach_node.right = winner
            else:
                attach_node.left = winner
            attach_node = winner
            attach_right = side_right
        rest = a if a is not None else b
        if attach_right:
            attach_node.right = rest
        else:
            attach_node.left = rest
        return root

    def search(self, key) -> SearchResult:
        comps = 0
        cur = self._root
        while cur is not None:
            comps += 1
            if key == cur.key:
                return SearchResult(True, comps, cur.payload)
            cur = cur.left if key < cur.key else cur.right
        return SearchResult(False, comps)

    def search_budgeted(self, key, budget: int):
        """Search spending at most ``budget`` comparisons.

        Returns (result, exhausted).  exhausted=True means the budget ran
        out before the descent reached a conclusion.
        """
        comps = 0
        cur = self._root
        while cur is not None:
            if comps >= budget:
                return SearchResult(False, comps), True
            comps += 1
            if key == cur.key:
                return SearchResult(True, comps, cur.payload), False
            cur = cur.left if key < cur.key else cur.right
        return SearchResult(False, comps), False

    def predecessor(self, key):
        best = None
        cur = self._root
        while cur is not None:
            if cur.key < key:
                best = cur.key
                cur = cur.right
            else:
                cur = cur.left
        return best

    def range_query(self, lo, hi, tally: Optional[ComparisonTally] = None):
        if lo > hi:
            raise ValueError("range bounds out of order: %r > %r" % (lo, hi))
        out = []
        stack = [(self._root, False)]
        while stack:
            node, emit = stack.pop()
            if node is None:
                continue
            if emit:
                out.append(node.key)
                continue
            if tally is not None:
                tally.count += 1
            if node.key < lo:
                stack.append((node.right, False))
            elif node.key > hi:
                stack.append((node.left, False))
            else:
                stack.append((node.right, False))
                stack.append((node, True))
                stack.append((node.left, False))
        return out

    def keys(self):
        out = []
        stack = []
        cur = self._root
        while cur is not None or stack:
            while cur is not None:
                stack.append(cur)
                cur = cur.left
            cur = stack.pop()
            out.append(cur.key)
            cur = cur.right
        return out

    def __iter__(self):
        return iter(self.keys())

    def depth_of(self, key):
        """Zero-based depth of a present key (comparisons - 1)."""
        res = self.search(key)
        if not res.found:
            raise MissingKeyError(key)
        return res.comparisons - 1

    def _payload_digest(self) -> bytes:
        h = hashlib.sha256()
        stack = [self._root]
        items = []
        while stack:
            node = stack.pop()
            if node is None:
                continue
            if node.payload is not None:
                items.append((node.key, node.payload))
            stack.append(node.left)
            stack.append(node.right)
        for key, payload in sorted(items):
            h.update(repr(key).encode())
            h.update(b"=")
            h.update(payload)
            h.update(b";")
        return h.digest()

    def fingerprint(self) -> bytes:
        """Canonical serialization: preorder topology + per-node state."""
        parts = [b"%s;seed=%d;n=%d;" % (self.kind.encode(), self.seed, self._n)]
        stack = [self._root]
        while stack:
            node = stack.pop()
            if node is None:
                parts.append(b".")
                continue
            parts.append(
                b"(%s:%s:%s)" % (
                    repr(node.key).encode(),
                    repr(node.rank).encode(),
                    repr(node.weight).encode(),
                )
            )
            stack.append(node.right)
            stack.append(node.left)
        parts.append(b"|payload=")
        parts.append(self._payload_digest())
        return b"".join(parts)

    def check_invariants(self):
        """BST order + heap-on-ranks order; used by tests."""
        stack = [(self._root, None, None)]
        prev_keys = self.keys()
        assert prev_keys == sorted(prev_keys)
        while stack:
            node, lo, hi = stack.pop()
            if node is None:
                continue
            if lo is not None:
                assert node.key > lo
            if hi is not None:
                assert node.key < hi
            for child in (node.left, node.right):
                if child is not None:
                    assert self._wins(node.rank, node.key, child.rank, child.key)
            stack.append((node.left, lo, node.key))
            stack.append((node.right, node.key, hi))


class ZipZipTree(_PrecedenceTree):
    """Zip-zip tree; uniform when every insert uses weight 1, biased otherwise.

    ``stream_base`` offsets the oracle streams so that two trees over the
    same keys and seed (as in the paired construction) get independent
    rank draws.
    """

    kind = "zipzip"

    def __init__(self, seed: int, stream_base: int = 0):
        super().__init__(seed)
        self._stream_base = stream_base
        if stream_base:
            self.kind = "zipzip+%d" % stream_base

    def _rank(self, key, weight):
        if weight <= 0:
            raise ValueError("weight must be positive, got %r" % (weight,))
        base = self._stream_base
        r1 = math.floor(math.log2(weight)) + geometric_from_bits(
            oracle_value(self.seed, key, base)
        )
        r2 = oracle_value(self.seed, key, base + 1) & 0xFFFFFFFF
        return (r1, r2)


class LTreap(_PrecedenceTree):
    """Learned treap with deterministic priority = frequency estimate.

    Ties are broken by oracle bits.  With monotone frequencies and sorted
    insertion the tree degenerates toward a path; that order sensitivity
    is inherent to the priority rule and deliberately not papered over.
    """

    kind = "l-treap"

    def _rank(self, key, f):
        return (f, oracle_value(self.seed, key, 2))


class CTreap(_PrecedenceTree):
    """Weighted treap with priority u**(1/f), compared in log space."""

    kind = "c-treap"

    def _rank(self, key, f):
        if f <= 0:
            raise ValueError("C-treap requires a positive frequency estimate")
        u = oracle_uniform(self.seed, key, 3)
        # log of u**(1/f); monotone transform, avoids underflow for tiny f
        return (math.log(u) / f,)


class _AvlNode:
    __slots__ = ("key", "payload", "left", "right", "height")

    def __init__(self, key, payload):
        self.key = key
        self.payload = payload
        self.left = None
        self.right = None
        self.height = 1


class AVLTree:
    """Frequency-oblivious balanced BST; the non-learned control."""

    kind = "avl"

    def __init__(self, seed: int = 0):
        self.seed = seed  # unused; uniform constructor signature
        self._root = None
        self._n = 0

    @staticmethod
    def _h(node):
        return node.height if node is not None else 0

    def _fix(self, node):
        node.height = 1 + max(self._h(node.left), self._h(node.right))

    def _balance(self, node):
        return self._h(node.left) - self._h(node.right)

    def _rot_right(self, y):
        x = y.left
        y.left = x.right
        x.right = y
        self._fix(y)
        self._fix(x)
        return x

    def _rot_left(self, x):
        y = x.right
        x.right = y.left
        y.left = x
        self._fix(x)
        self._fix(y)
        return y

    def _rebalance(self, node):
        self._fix(node)
        bal = self._balance(node)
        if bal > 1:
            if self._balance(node.left) < 0:
                node.left = self._rot_left(node.left)
            return self._rot_right(node)
        if bal < -1:
            if self._balance(node.right) > 0:
                node.right = self._rot_right(node.right)
            return self._rot_left(node)
        return node

    def insert(self, key, weight: float = 1.0, payload: Optional[bytes] = None):
        # weight accepted for interface uniformity and ignored
        def rec(node):
            if node is None:
                return _AvlNode(key, payload)
            if key == node.key:
                raise DuplicateKeyError(key)
            if key < node.key:
                node.left = rec(node.left)
            else:
                node.right = rec(node.right)
            return self._rebalance(node)

        self._root = rec(self._root)
        self._n += 1

    def delete(self, key):
        if key not in self:
            raise MissingKeyError(key)

        def rec(node, target):
            if target == node.key:
                if node.left is None:
                    return node.right
                if node.right is None:
                    return node.left
                succ = node.right
                while succ.left is not None:
                    succ = succ.left
                node.key, node.payload = succ.key, succ.payload
                node.right = rec(node.right, succ.key)
            elif target < node.key:
                node.left = rec(node.left, target)
            else:
                node.right = rec(node.right, target)
            return self._rebalance(node)

        self._root = rec(self._root, key)
        self._n -= 1

    def __contains__(self, key):
        cur = self._root
        while cur is not None:
            if key == cur.key:
                return True
            cur = cur.left if key < cur.key else cur.right
        return False

    def search(self, key) -> SearchResult:
        comps = 0
        cur = self._root
        while cur is not None:
            comps += 1
            if key == cur.key:
                return SearchResult(True, comps, cur.payload)
            cur = cur.left if key < cur.key else cur.right
        return SearchResult(False, comps)

    def predecessor(self, key):
        best = None
        cur = self._root
        while cur is not None:
            if cur.key < key:
                best = cur.key
                cur = cur.right
            else:
                cur = cur.left
        return best

    def range_query(self, lo, hi, tally: Optional[ComparisonTally] = None):
        if lo > hi:
            raise ValueError("range bounds out of order: %r > %r" % (lo, hi))
        out = []
        stack = [(self._root, False)]
        while stack:
            node, emit = stack.pop()
            if node is None:
                continue
            if emit:
                out.append(node.key)
                continue
            if tally is not None:
                tally.count += 1
            if node.key < lo:
                stack.append((node.right, False))
            elif node.key > hi:
                stack.append((node.left, False))
            else:
                stack.append((node.right, False))
                stack.append((node, True))
                stack.append((node.left, False))
        return out

    def keys(self):
        out = []
        stack = []
        cur = self._root
        while cur is not None or stack:
            while cur is not None:
                stack.append(cur)
                cur = cur.left
            cur = stack.pop()
            out.append(cur.key)
            cur = cur.right
        return out

    def __iter__(self):
        return iter(self.keys())

    def node_count(self) -> int:
        return self._n

    def __len__(self):
        return self._n

    def height(self) -> int:
        return self._h(self._root)

    def fingerprint(self) -> bytes:
        parts = [b"avl;n=%d;" % self._n]
        stack = [self._root]
        while stack:
            node = stack.pop()
            if node is None:
                parts.append(b".")
                continue
            parts.append(b"(%s:h%d)" % (repr(node.key).encode(), node.height))
            stack.append(node.right)
            stack.append(node.left)
        return b"".join(parts)
