"""Finite-window view of growth: c*_n^(1/n) against the constant beta_T.

beta_T = 1/(theta^theta (1-theta)^(1-theta)) with theta = 1/(2T+1) is
computed as a certified interval.  At desk-scale degrees the roots sit far
above beta_T; the sandwich bounds only pin c*_n between polynomial
multiples of beta_T^n, so no limit is claimed here.

    python demos/03_exponent_window.py
"""

import mpmath

from starcodim import check_sandwich, codim_sequence, exponent_constants, make_A_T, window_estimate

for T in range(2, 7):
    c = exponent_constants(T)
    print(f"beta_{T} in {c.interval(20)}")

print()
A = make_A_T(2)
seq = codim_sequence(A, 8, basis_mode="left_normed")
est = window_estimate(seq, range(3, 9))
c = exponent_constants(2)
beta = mpmath.mpf(c.beta)
for n, r in sorted(est.values.items()):
    lo = (beta ** (n - 5) / n ** 2) ** (mpmath.mpf(1) / n) if n >= 6 else None
    hi = (3 * 125 * n ** 3) ** (mpmath.mpf(1) / n) * beta
    corridor = f"[{mpmath.nstr(lo, 6)}, {mpmath.nstr(hi, 6)}]" if lo else f"(.., {mpmath.nstr(hi, 6)}]"
    print(f"n = {n}: c*_n = {seq.total(n):>4}, root {mpmath.nstr(r, 10)}  corridor {corridor}")

print()
print(check_sandwich(seq, 2, c).to_table())
