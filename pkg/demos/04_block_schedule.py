"""Interleaved blocks T1 < N1 < T2 < N2 < ... and the direct sum C.

First the bound-mode schedule for alpha = 2, whose numbers are far beyond
computation and are kept in exact symbolic form.  Then a desk-scale prefix
C = B(2,3) + B(5,6), where all three regimes of the piecewise comparison
with the Ã_T slices can actually be computed.

    python demos/04_block_schedule.py
"""

from starcodim import (
    check_piecewise,
    check_recursion,
    codim_sequence,
    greedy_schedule,
    make_C_prefix,
    make_tilde_slice,
)

print(greedy_schedule(2, "bound").ledger())
print(greedy_schedule(2, "computed", horizon=6, steps=1, first=2).ledger())
print(greedy_schedule(100, "computed", horizon=3).ledger())

pairs = [(2, 3), (5, 6)]
C = make_C_prefix(pairs, 3)
print(f"{C.name}: dim {C.dim}")
cs = codim_sequence(C, 6, basis_mode="left_normed")
blocks = {
    0: codim_sequence(make_tilde_slice(2, 3), 6, basis_mode="left_normed"),
    1: codim_sequence(make_tilde_slice(5, 3), 6, basis_mode="left_normed"),
}
print("c*_n(C)        ", cs.totals)
print("c*_n(tilde T=2)", blocks[0].totals)
print("c*_n(tilde T=5)", blocks[1].totals)
print()
print(check_piecewise(cs, pairs, blocks).to_table())
print(check_recursion(cs).to_table())

# all-symmetric words vanish here from degree 3 on
print("c*_(n,0)(C):", {n: e.cell(n) for n, e in sorted(cs.entries.items())})
