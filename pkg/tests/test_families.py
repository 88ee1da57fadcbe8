import pytest

from starcodim.algebra import direct_sum, validate
from starcodim.engine import codim_sequence, total_codimension
from starcodim.families import (
    check_interleaving,
    make_A_T,
    make_B_slice,
    make_C_prefix,
    make_tilde_slice,
    tilde_slice_dim,
)


def test_a2_decomposition(A2):
    dec = A2.decomposition()
    lab = A2.basis_labels
    sym = sorted(lab[min(v)] for v in dec.symmetric_basis)
    skew = sorted(lab[min(v)] for v in dec.skew_basis)
    assert sym == ["b", "z1", "z3", "z5"] and skew == ["a", "z2", "z4"]


def test_a2_table(A2):
    a = A2.element("a")
    assert A2.multiply(A2.element("z4"), a) == A2.element("z5")
    assert A2.multiply(A2.element("z5"), a) == {}


@pytest.mark.parametrize("T", [1, 0, 2.5, "3"])
def test_bad_T(T):
    with pytest.raises(ValueError):
        make_A_T(T)


@pytest.mark.parametrize("T", [2, 3, 4])
def test_a_t_valid(T):
    A = make_A_T(T)
    assert A.dim == 2 * T + 3 and validate(A) == []
    assert A.decomposition().q == T + 1


def test_tilde_slice():
    S = make_tilde_slice(2, 3)
    assert S.dim == tilde_slice_dim(2, 3) == 1 + 3 + 4 * 5
    assert validate(S) == []
    z = S.multiply(S.element("z1_5"), S.element("b1"))
    assert z == S.element("z2_1")
    assert S.multiply(S.element("z1_5"), S.element("b2")) == {}
    assert S.multiply(S.element("z4_5"), S.element("b3")) == {}
    with pytest.raises(ValueError):
        make_tilde_slice(2, 0)


def test_tilde_matches_a_t_low_degree(A2):
    S = make_tilde_slice(2, 4)
    assert [total_codimension(S, n).total for n in range(1, 5)] == [2, 4, 12, 38]


def test_b_slice_truncation():
    B = make_B_slice(2, 3, 2)
    assert validate(B) == []
    assert codim_sequence(B, 5).totals == {1: 2, 2: 4, 3: 12, 4: 0, 5: 0}


def test_interleaving():
    check_interleaving([(2, 3), (6, 7)])
    for bad in ([(3, 3)], [(2, 5), (4, 9)], [(0, 1)], []):
        with pytest.raises(ValueError):
            check_interleaving(bad)


def test_prefix_single_block():
    C = make_C_prefix([(2, 3)], 2)
    B = make_B_slice(2, 3, 2)
    assert C.dim == B.dim
    assert C.table == direct_sum([B]).table


def test_direct_sum_cross_block(A2):
    S = direct_sum([A2, A2])
    assert S.multiply(S.element("z1@1"), S.element("a@2")) == {}
    assert S.multiply(S.element("z1@1"), S.element("a@1")) == S.element("z2@1")


def test_prefix_low_degree_equals_tilde():
    C = make_C_prefix([(2, 3), (5, 6)], 3)
    assert validate(C) == []
    S = make_tilde_slice(2, 3)
    for n in (1, 2, 3):
        assert total_codimension(C, n, "left_normed").total == total_codimension(S, n).total
