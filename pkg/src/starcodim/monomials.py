"""Multilinear *-monomials: bracketing trees with tagged variable labels.

A tree is a nested tuple: the leaf is ``()`` and an internal node is
``(left, right)``.  Variables are integers ``0..n-1``; with ``k`` symmetric
variables, ``v < k`` is ``x_{v+1}`` and ``v >= k`` is ``y_{v-k+1}``, which
fixes the global order x1 < ... < xk < y1 < ... < ym.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Dict, List, Sequence, Tuple

LEAF = ()
Tree = tuple

DEFAULT_MAX_DEGREE = 8
CAP_ENV = "STARCODIM_MAX_DEGREE"


class DegreeCapError(RuntimeError):
    """Requested degree exceeds the enumeration cap."""


def max_degree() -> int:
    return int(os.environ.get(CAP_ENV, DEFAULT_MAX_DEGREE))


def check_cap(n: int, cap: int | None = None) -> None:
    cap = max_degree() if cap is None else cap
    if n > cap:
        raise DegreeCapError(f"degree {n} exceeds the cap {cap} (set {CAP_ENV} to raise it)")


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def leaf_count(tree: Tree) -> int:
    if tree == LEAF:
        return 1
    return leaf_count(tree[0]) + leaf_count(tree[1])


@lru_cache(maxsize=None)
def _bracketings(n: int) -> Tuple[Tree, ...]:
    if n == 1:
        return (LEAF,)
    out = []
    for i in range(1, n):
        for left in _bracketings(i):
            for right in _bracketings(n - i):
                out.append((left, right))
    return tuple(out)


def enumerate_bracketings(n: int, cap: int | None = None) -> List[Tree]:
    """All full binary trees with ``n`` leaves, ordered by left split size then recursively."""
    if n < 1:
        raise ValueError("n must be positive")
    check_cap(n, cap)
    return list(_bracketings(n))


@lru_cache(maxsize=None)
def tree_rank(tree: Tree) -> int:
    return _bracketings(leaf_count(tree)).index(tree)


def left_normed_tree(n: int) -> Tree:
    t = LEAF
    for _ in range(n - 1):
        t = (t, LEAF)
    return t


def var_name(v: int, k: int) -> str:
    return f"x{v + 1}" if v < k else f"y{v - k + 1}"


@dataclass(frozen=True)
class MultilinearMonomial:
    tree: Tree
    labels: Tuple[int, ...]
    k: int
    m: int

    def __post_init__(self):
        n = self.k + self.m
        if len(self.labels) != n or leaf_count(self.tree) != n:
            raise ValueError("leaf count must equal k + m")
        if sorted(self.labels) != list(range(n)):
            raise ValueError("every variable must appear exactly once")

    @property
    def degree(self) -> int:
        return self.k + self.m

    def __str__(self):
        return monomial_to_string(self)


def monomial_to_string(w: MultilinearMonomial) -> str:
    it = iter(w.labels)

    def walk(t):
        if t == LEAF:
            return var_name(next(it), w.k)
        left = walk(t[0])
        right = walk(t[1])
        return f"({left} {right})"

    return walk(w.tree)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|([xy])(\d+))")


def parse_monomial(text: str, k: int, m: int) -> MultilinearMonomial:
    """Inverse of :func:`monomial_to_string`; every internal node needs its own parentheses."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        pos = mt.end()
        if mt.group(1):
            tokens.append("(")
        elif mt.group(2):
            tokens.append(")")
        else:
            kind, idx = mt.group(3), int(mt.group(4))
            limit = k if kind == "x" else m
            if not 1 <= idx <= limit:
                raise ValueError(f"variable {kind}{idx} out of range")
            tokens.append(idx - 1 if kind == "x" else k + idx - 1)
    labels: List[int] = []
    i = 0

    def node():
        nonlocal i
        if i >= len(tokens):
            raise ValueError("unbalanced parentheses")
        tok = tokens[i]
        i += 1
        if tok == "(":
            left = node()
            right = node()
            if i >= len(tokens) or tokens[i] != ")":
                raise ValueError("unbalanced parentheses")
            i += 1
            return (left, right)
        if tok == ")":
            raise ValueError("unbalanced parentheses")
        labels.append(tok)
        return LEAF

    tree = node()
    if i != len(tokens):
        raise ValueError("unbalanced parentheses")
    if len(set(labels)) != len(labels):
        raise ValueError("repeated variable")
    return MultilinearMonomial(tree, tuple(labels), k, m)


def permutation_rank(perm: Sequence[int]) -> int:
    """Lexicographic rank of a permutation of ``0..n-1``."""
    n = len(perm)
    rank = 0
    remaining = list(range(n))
    for i, v in enumerate(perm):
        j = remaining.index(v)
        rank += j * factorial(n - 1 - i)
        remaining.pop(j)
    return rank


class MonomialBasis:
    """Ordered basis of ``P*_{k,m}``: tree rank first, then lexicographic labels.

    In ``left_normed`` mode only the comb tree is used and labels satisfy
    ``labels[0] < labels[1]``; this spans ``P*_{k,m}`` modulo commutativity
    and ``(xy)(zt) = 0``.
    """

    def __init__(self, k: int, m: int, mode: str = "full", cap: int | None = None):
        if k < 0 or m < 0:
            raise ValueError("k and m must be nonnegative")
        if mode not in ("full", "left_normed"):
            raise ValueError(f"unknown basis mode {mode!r}")
        self.k, self.m, self.mode = k, m, mode
        self.n = n = k + m
        if n == 0:
            self.trees: List[Tree] = []
            self.size = 0
            return
        check_cap(n, cap)
        if mode == "full":
            self.trees = enumerate_bracketings(n, cap)
            self.size = len(self.trees) * factorial(n)
            self._tree_index = {t: i for i, t in enumerate(self.trees)}
        else:
            self.trees = [left_normed_tree(n)]
            perms = [p for p in permutations(range(n)) if n < 2 or p[0] < p[1]]
            self._labels = perms
            self._label_index = {p: i for i, p in enumerate(perms)}
            self.size = len(perms)

    def __len__(self):
        return self.size

    def index(self, tree: Tree, labels: Tuple[int, ...]) -> int:
        if self.mode == "full":
            return self._tree_index[tree] * factorial(self.n) + permutation_rank(labels)
        return self._label_index[labels]

    def index_of(self, w: MultilinearMonomial) -> int:
        return self.index(w.tree, w.labels)

    def __getitem__(self, i: int) -> MultilinearMonomial:
        if not 0 <= i < self.size:
            raise IndexError(i)
        if self.mode == "left_normed":
            return MultilinearMonomial(self.trees[0], self._labels[i], self.k, self.m)
        f = factorial(self.n)
        t, r = divmod(i, f)
        remaining = list(range(self.n))
        labels = []
        for pos in range(self.n, 0, -1):
            j, r = divmod(r, factorial(pos - 1))
            labels.append(remaining.pop(j))
        return MultilinearMonomial(self.trees[t], tuple(labels), self.k, self.m)

    def __iter__(self):
        for i in range(self.size):
            yield self[i]

    def normalize(self, w: MultilinearMonomial) -> MultilinearMonomial:
        """Left-normed representative of a left-normed monomial (swap the first two factors)."""
        if w.tree != left_normed_tree(w.degree):
            raise ValueError("only left-normed monomials have a left-normed representative")
        labels = w.labels
        if len(labels) >= 2 and labels[0] > labels[1]:
            labels = (labels[1], labels[0]) + labels[2:]
        return MultilinearMonomial(w.tree, labels, w.k, w.m)


def enumerate_monomials(k: int, m: int, cap: int | None = None) -> MonomialBasis:
    if k + m < 1:
        raise ValueError("k + m must be at least 1")
    return MonomialBasis(k, m, "full", cap)


def left_normed_enumerate(k: int, m: int, cap: int | None = None) -> MonomialBasis:
    if k + m < 1:
        raise ValueError("k + m must be at least 1")
    return MonomialBasis(k, m, "left_normed", cap)


def expected_size(k: int, m: int) -> int:
    n = k + m
    return catalan(n - 1) * factorial(n) if n else 0
