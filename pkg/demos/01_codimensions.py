"""Exact *-codimensions of the algebras A_T.

Builds A_2 and A_3, shows the symmetric/skew split, then tabulates the
partial codimensions c*_{k,m} and the totals c*_n next to the two easy
envelopes n^3 and d^(n+1).

    python demos/01_codimensions.py
"""

from math import comb

from starcodim import codim_sequence, make_A_T

for T in (2, 3):
    A = make_A_T(T)
    dec = A.decomposition()
    sym = [A.format_vector(v) for v in dec.symmetric_basis]
    skew = [A.format_vector(v) for v in dec.skew_basis]
    print(f"{A.name}: dim {A.dim}")
    print(f"  symmetric part: {', '.join(sym)}")
    print(f"  skew part:      {', '.join(skew)}")

    # commutative and metabelian, so the n!/2 left-normed words suffice
    n_max = 7 if T == 2 else 8
    seq = codim_sequence(A, n_max, basis_mode="left_normed")
    print(f"  {'n':>2}  {'cells c*_(k,n-k), k = 0..n':<34} {'c*_n':>6} {'n^3':>6} {'d^(n+1)':>12}")
    for n, e in sorted(seq.entries.items()):
        cells = " ".join(str(c) for _, _, c in e.cells)
        print(f"  {n:>2}  {cells:<34} {e.total:>6} {n ** 3:>6} {A.dim ** (n + 1):>12}")
    # the total is the binomially weighted sum of the cells
    e = seq.entries[n_max]
    assert e.total == sum(comb(n_max, k) * c for k, _, c in e.cells)
    print()

# Only a narrow band of k carries weight: the symmetric letters are rare.
print("note: nonzero cells sit at small k.  The n^3 envelope is only guaranteed")
print("for n <= 2T, but in this window it happens to hold further out as well.")
