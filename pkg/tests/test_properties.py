"""Invariants checked over generated inputs."""

import random

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import random_unimodular
from starcodim.algebra import change_basis, direct_sum, dumps, loads, nilpotent_tensor, validate
from starcodim.engine import (
    assemble_matrix,
    identity_space,
    partial_codimension,
    total_codimension,
    witness_lower_bound,
)
from starcodim.families import make_A_T
from starcodim.monomials import MonomialBasis

A2 = make_A_T(2)
cells = st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda km: 1 <= sum(km) <= 3)
slow = settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@slow
@given(st.integers(0, 2 ** 32), cells)
def test_basis_change_invariance(seed, km):
    B = change_basis(A2, random_unimodular(7, random.Random(seed)))
    assert validate(B) == []
    assert partial_codimension(B, *km) == partial_codimension(A2, *km)


@slow
@given(st.integers(0, 2 ** 32))
def test_basis_change_keeps_fast_path(seed):
    B = change_basis(A2, random_unimodular(7, random.Random(seed)))
    assert B.is_commutative_metabelian()
    assert total_codimension(B, 4, "left_normed").cells == total_codimension(A2, 4).cells


@slow
@given(st.integers(0, 2 ** 32))
def test_file_round_trip(seed):
    B = change_basis(A2, random_unimodular(7, random.Random(seed)))
    again = loads(dumps(B))
    assert again.table == B.table and again.involution == B.involution


@settings(max_examples=20, deadline=None)
@given(cells)
def test_rank_nullity(km):
    size = len(MonomialBasis(*km))
    assert identity_space(A2, *km).dimension + partial_codimension(A2, *km) == size


@settings(max_examples=20, deadline=None)
@given(cells)
def test_rank_bounded_by_shape(km):
    M = assemble_matrix(A2, *km)
    c = partial_codimension(A2, *km)
    assert c <= min(len(M.basis), M.full_column_count)


@settings(max_examples=20, deadline=None)
@given(cells)
def test_direct_square_same_codims(km):
    assert partial_codimension(direct_sum([A2, A2]), *km) == partial_codimension(A2, *km)


@slow
@given(st.integers(1, 4), st.integers(1, 4))
def test_nilpotent_truncation(N, n):
    R = nilpotent_tensor(A2, N)
    expected = total_codimension(A2, n).total if n <= N else 0
    assert total_codimension(R, n, "left_normed").total == expected


@settings(max_examples=20, deadline=None)
@given(cells, st.data())
def test_witness_below_codim(km, data):
    M = assemble_matrix(A2, *km)
    rows = data.draw(st.lists(st.integers(0, len(M.basis) - 1), max_size=4, unique=True))
    from starcodim.engine import Assignment

    dec = A2.decomposition()
    k, m = km
    choices = st.tuples(*([st.integers(0, dec.p - 1)] * k + [st.integers(0, dec.q - 1)] * m))
    assigns = [Assignment(k, m, c) for c in data.draw(st.lists(choices, max_size=4))]
    if not rows:
        return
    cert = witness_lower_bound(A2, [M.basis[i] for i in rows], assigns)
    assert cert.rank <= partial_codimension(A2, *km)


@settings(max_examples=10, deadline=None)
@given(cells)
def test_modular_equals_exact(km):
    assert partial_codimension(A2, *km, rank_method="modular") == partial_codimension(A2, *km)
