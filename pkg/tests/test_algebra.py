from fractions import Fraction

import pytest

from starcodim.algebra import (
    AlgebraStructureError,
    AlgebraWithInvolution,
    InvolutionAxiomError,
    change_basis,
    direct_sum,
    dumps,
    ensure_valid,
    from_products,
    loads,
    nilpotent_tensor,
    validate,
)
from starcodim.families import make_A_T


def test_a2_shape(A2):
    assert A2.dim == 7
    assert A2.basis_labels == ("a", "b", "z1", "z2", "z3", "z4", "z5")
    dec = A2.decomposition()
    assert (dec.p, dec.q) == (4, 3)
    assert validate(A2) == []


def test_a2_products(A2):
    z1, a, b = A2.element("z1"), A2.element("a"), A2.element("b")
    assert A2.multiply(z1, a) == A2.element("z2")
    assert A2.multiply(a, z1) == A2.element("z2")
    assert A2.multiply(A2.element("z5"), b) == z1
    assert A2.multiply(a, a) == {}
    assert A2.multiply(z1, A2.element("z2")) == {}


def test_star(A2):
    assert A2.star(A2.element("a")) == {0: -1}
    assert A2.star(A2.element("z2")) == {A2.index("z2"): -1}
    assert A2.star(A2.element("z3")) == A2.element("z3")


def test_commutative_metabelian(A2):
    assert A2.is_commutative() and A2.is_metabelian()


def test_broken_sign_names_pair():
    alg = make_A_T(2)
    J = [list(r) for r in alg.involution]
    J[2][2] = -1  # z1 -> -z1
    bad = AlgebraWithInvolution(alg.dim, alg.basis_labels, alg.table, J)
    pairs = {v.pair for v in validate(bad)}
    assert ("a", "z1") in pairs
    with pytest.raises(InvolutionAxiomError):
        ensure_valid(bad)


def test_not_order_two():
    J = [[0, 1], [0, 0]]
    alg = AlgebraWithInvolution(2, ("u", "v"), {}, J)
    assert [v.axiom for v in validate(alg)] == ["involution squared is identity"] * 2


def test_structure_errors():
    with pytest.raises(AlgebraStructureError):
        AlgebraWithInvolution(0, (), {}, ())
    with pytest.raises(AlgebraStructureError):
        AlgebraWithInvolution(2, ("u", "u"), {}, [[1, 0], [0, 1]])
    with pytest.raises(AlgebraStructureError):
        AlgebraWithInvolution(2, ("u", "v"), {(0, 2): {0: 1}}, [[1, 0], [0, 1]])
    with pytest.raises(AlgebraStructureError):
        AlgebraWithInvolution(2, ("u", "v"), {}, [[1, 0]])


def test_round_trip(A2):
    text = dumps(A2)
    again = loads(text)
    assert again.table == A2.table and again.involution == A2.involution
    assert again.basis_labels == A2.basis_labels and again.name == A2.name
    assert dumps(again) == text


def test_matrix_involution_and_rationals():
    text = """name swap
dim 2
basis u v
involution matrix
0 1
1 0
prod 1 1 1 1/2
prod 2 2 2 1/2
"""
    alg = loads(text)
    assert alg.table[(0, 0)] == {0: Fraction(1, 2)}
    assert validate(alg) == []
    assert loads(dumps(alg)).table == alg.table


@pytest.mark.parametrize("text, fragment", [
    ("dim 1\nbasis u\ninvolution sign 1\nprod 1 1 1 1\nprod 1 1 1 2\n", "line 5"),
    ("dim 2\nbasis u\ninvolution sign 1 1\n", "label"),
    ("dim 1\nbasis u\ninvolution sign 1\nprod 1 2 1 1\n", "line 4"),
    ("dim 1\nbasis u\ninvolution sign 1\nfrobnicate\n", "line 4"),
    ("dim x\n", "line 1"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(AlgebraStructureError, match=fragment):
        loads(text)


def test_direct_sum_and_tensor(A2):
    S = direct_sum([A2, A2])
    assert S.dim == 14 and validate(S) == []
    assert S.decomposition().p == 8
    R = nilpotent_tensor(A2, 3)
    assert R.dim == 21 and validate(R) == []
    # (z1 t)(a t) = z2 t^2 survives; (z1 t^2)(a t^2) would be t^4 = 0
    z1t, at = R.index("z1*Z1"), R.index("a*Z1")
    assert R.basis_product(z1t, at) == {R.index("z2*Z2"): 1}
    assert R.basis_product(R.index("z1*Z2"), R.index("a*Z2")) == {}
    assert nilpotent_tensor(A2, 1).table == {}


def test_change_basis_identity(A2):
    I = [[int(i == j) for j in range(7)] for i in range(7)]
    B = change_basis(A2, I)
    assert B.table == A2.table and B.involution == A2.involution


def test_change_basis_singular(A2):
    P = [[0] * 7 for _ in range(7)]
    with pytest.raises(ValueError):
        change_basis(A2, P)


def test_from_products_unknown_label():
    with pytest.raises(AlgebraStructureError):
        from_products("x", ["u"], {("u", "w"): {"u": 1}}, [1])
