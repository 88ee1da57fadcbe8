"""The algebra families: A_T, finite slices of Ã_T, B(T, N) and prefixes of C."""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .algebra import AlgebraWithInvolution, direct_sum, ensure_valid, from_products, nilpotent_tensor


def make_A_T(T: int) -> AlgebraWithInvolution:
    """Basis a, b, z1..z_{2T+1}; z_i a = a z_i = z_{i+1} (i <= 2T), z_{2T+1} b = b z_{2T+1} = z1.

    Involution: a* = -a, b* = b, z_i* = (-1)^{i+1} z_i.
    """
    if not isinstance(T, int) or T < 2:
        raise ValueError(f"T must be an integer >= 2, got {T!r}")
    top = 2 * T + 1
    labels = ["a", "b"] + [f"z{i}" for i in range(1, top + 1)]
    products: Dict[Tuple[str, str], Dict[str, int]] = {}
    for i in range(1, top):
        products[(f"z{i}", "a")] = {f"z{i + 1}": 1}
        products[("a", f"z{i}")] = {f"z{i + 1}": 1}
    products[(f"z{top}", "b")] = {"z1": 1}
    products[("b", f"z{top}")] = {"z1": 1}
    signs = [-1, 1] + [1 if i % 2 else -1 for i in range(1, top + 1)]
    alg = ensure_valid(from_products(f"A_{T}", labels, products, signs))
    if not alg.is_commutative_metabelian():
        raise AssertionError("A_T must be commutative and metabelian")
    return alg


def make_tilde_slice(T: int, M: int) -> AlgebraWithInvolution:
    """Finite piece of Ã_T: a, b_1..b_M and z^i_j for i <= M+1.

    ``a z^i_j = z^i_j a = z^i_{j+1}`` (j <= 2T) and ``b_i z^i_{2T+1} = z^i_{2T+1} b_i = z^{i+1}_1``;
    the last chain link z^{M+1}_{2T+1} has no b to continue with.
    """
    if not isinstance(T, int) or T < 2:
        raise ValueError(f"T must be an integer >= 2, got {T!r}")
    if not isinstance(M, int) or M < 1:
        raise ValueError(f"M must be a positive integer, got {M!r}")
    top = 2 * T + 1
    labels = ["a"] + [f"b{i}" for i in range(1, M + 1)]
    labels += [f"z{i}_{j}" for i in range(1, M + 2) for j in range(1, top + 1)]
    products: Dict[Tuple[str, str], Dict[str, int]] = {}
    for i in range(1, M + 2):
        for j in range(1, top):
            products[(f"z{i}_{j}", "a")] = {f"z{i}_{j + 1}": 1}
            products[("a", f"z{i}_{j}")] = {f"z{i}_{j + 1}": 1}
    for i in range(1, M + 1):
        products[(f"b{i}", f"z{i}_{top}")] = {f"z{i + 1}_1": 1}
        products[(f"z{i}_{top}", f"b{i}")] = {f"z{i + 1}_1": 1}
    signs = [-1] + [1] * M + [1 if j % 2 else -1 for i in range(1, M + 2) for j in range(1, top + 1)]
    return ensure_valid(from_products(f"Ã_{T}[M={M}]", labels, products, signs))


def tilde_slice_dim(T: int, M: int) -> int:
    return 1 + M + (M + 1) * (2 * T + 1)


def make_B_slice(T: int, N: int, M: int) -> AlgebraWithInvolution:
    """B(T, N) = Ã_T ⊗ R_N on the slice of size M."""
    return nilpotent_tensor(make_tilde_slice(T, M), N, name=f"B({T},{N})[M={M}]")


def check_interleaving(pairs: Sequence[Tuple[int, int]]) -> None:
    flat = [x for pair in pairs for x in pair]
    if not flat or flat[0] <= 0 or any(a >= b for a, b in zip(flat, flat[1:])):
        raise ValueError(f"schedule must satisfy 0 < T1 < N1 < T2 < N2 < ..., got {flat}")


def make_C_prefix(pairs: Sequence[Tuple[int, int]], slice_sizes: Sequence[int] | int) -> AlgebraWithInvolution:
    """B(T1, N1) ⊕ B(T2, N2) ⊕ ... over the listed (T_j, N_j) pairs."""
    pairs = [tuple(p) for p in pairs]
    check_interleaving(pairs)
    if isinstance(slice_sizes, int):
        slice_sizes = [slice_sizes] * len(pairs)
    if len(slice_sizes) != len(pairs):
        raise ValueError("one slice size per block")
    blocks = [make_B_slice(T, N, M) for (T, N), M in zip(pairs, slice_sizes)]
    name = "C(" + ", ".join(f"B({T},{N})" for T, N in pairs) + ")"
    return direct_sum(blocks, name=name)


def nonvanishing_witness(T: int, k: int, t: int):
    """Monomial and assignment showing ``P*_{k+1, 2Tk+t}(A_T) != 0``.

    The word is z1 (a^{2T} b)^k a^t = z_{t+1}; symmetric variables take z1
    then b, skew ones all take a.
    """
    from .engine import assignment_from_labels
    from .monomials import MultilinearMonomial, left_normed_tree

    nsym, nskew = k + 1, 2 * T * k + t
    n = nsym + nskew
    order = [0]
    ys = iter(range(nsym, n))
    for block in range(1, k + 1):
        order += [next(ys) for _ in range(2 * T)]
        order.append(block)
    order += list(ys)
    w = MultilinearMonomial(left_normed_tree(n), tuple(order), nsym, nskew)
    alg = make_A_T(T)
    a = assignment_from_labels(alg, nsym, nskew, ["z1"] + ["b"] * k, ["a"] * nskew)
    return alg, w, a


def factorial_witness(T: int, m: int, j: int = 0, M: int | None = None):
    """The family w_sigma, sigma in S_m, with the m! assignments x_{i+1} -> b_{pi(i)}.

    ``w_sigma = x0 y.. y x_{sigma(1)} y.. y x_{sigma(2)} ... x_{sigma(m)} y..y`` (2T y's
    between symmetric letters, j trailing), degree ``(2T+1)m + j + 1``.  Variable
    x0 is our x1.  Returns (algebra, monomials, assignments).
    """
    from itertools import permutations

    from .engine import assignment_from_labels
    from .monomials import MultilinearMonomial, left_normed_tree

    M = m if M is None else M
    if M < m:
        raise ValueError("slice needs at least m b-generators")
    alg = make_tilde_slice(T, M)
    nsym, nskew = m + 1, 2 * T * m + j
    n = nsym + nskew
    monos, assigns = [], []
    perms = list(permutations(range(1, m + 1)))
    for sigma in perms:
        order = [0]
        ys = iter(range(nsym, n))
        for i in range(m):
            order += [next(ys) for _ in range(2 * T)]
            order.append(sigma[i])
        order += list(ys)
        monos.append(MultilinearMonomial(left_normed_tree(n), tuple(order), nsym, nskew))
    for pi in perms:
        sym = ["z1_1"] + [f"b{pi[i]}" for i in range(m)]
        assigns.append(assignment_from_labels(alg, nsym, nskew, sym, ["a"] * nskew))
    return alg, monos, assigns
