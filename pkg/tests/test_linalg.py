from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import dense_rank
from starcodim.linalg import (
    PRIMES,
    invert_matrix,
    left_nullspace,
    rank,
    rank_exact,
    rank_mod_p,
    row_echelon_vectors,
)

entries = st.one_of(st.integers(-5, 5), st.fractions(min_value=-3, max_value=3, max_denominator=4))
matrices = st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=0, max_size=7))


def sparse(M):
    return [{j: x for j, x in enumerate(r) if x} for r in M]


def test_small_cases():
    assert rank_exact([]) == 0
    assert rank_exact([{}, {}]) == 0
    assert rank_exact([{0: 1, 1: 2}, {0: 2, 1: 4}]) == 1
    assert rank_exact([{0: Fraction(1, 2)}, {1: 3}, {0: 1, 1: 1}]) == 2


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_exact_matches_dense(M):
    assert rank_exact(sparse(M)) == (dense_rank(M) if M else 0)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_modular_matches_exact(M):
    r, certified = rank(sparse(M), "modular")
    assert r == rank_exact(sparse(M))
    assert certified


def test_mod_p_can_undercount():
    rows = [{0: PRIMES[0]}, {1: 1}]
    assert rank_mod_p(rows, PRIMES[0]) == 1
    assert rank(rows, "modular")[0] == 2


def test_unknown_method():
    with pytest.raises(ValueError):
        rank([], "magic")


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_nullspace(M):
    rows = sparse(M)
    null = left_nullspace(rows)
    assert len(null) == len(rows) - rank_exact(rows)
    for vec in null:
        total = {}
        for i, c in vec.items():
            for j, x in rows[i].items():
                total[j] = total.get(j, 0) + c * x
        assert all(v == 0 for v in total.values())


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rref_spans(M):
    rows = sparse(M)
    red = row_echelon_vectors(rows)
    assert len(red) == rank_exact(rows)
    pivots = [min(r) for r in red]
    assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
    assert all(r[min(r)] == 1 for r in red)
    assert rank_exact(red + rows) == len(red)


def test_invert():
    P = [[2, 1], [1, 1]]
    Q = invert_matrix(P)
    assert [[sum(P[i][k] * Q[k][j] for k in range(2)) for j in range(2)] for i in range(2)] == [[1, 0], [0, 1]]
    with pytest.raises(ValueError, match="singular"):
        invert_matrix([[1, 2], [2, 4]])
