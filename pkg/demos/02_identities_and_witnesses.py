"""Identities, containment between algebras, and cheap lower bounds.

The evaluation matrix has a left null space: the multilinear identities.
We list a few, compare identity sets of A_2, A_3 and a finite piece of the
infinite algebra Ã_2, and finally certify a factorial lower bound from a
tiny submatrix instead of the full degree-16 matrix.

    python demos/02_identities_and_witnesses.py
"""

from math import factorial

from starcodim import (
    factorial_witness,
    identity_space,
    identity_subset_check,
    make_A_T,
    make_tilde_slice,
    nonvanishing_witness,
    witness_lower_bound,
)
from starcodim.engine import dump_certificate, verify_certificate

A2, A3 = make_A_T(2), make_A_T(3)

for k, m in [(2, 0), (0, 2), (1, 2)]:
    space = identity_space(A2, k, m)
    print(f"identities of A_2 in ({k},{m}): dimension {space.dimension} of {len(space.basis)}")
    for vec in space.vectors[:2]:
        print("   ", space.format(vec))

print()
tilde = make_tilde_slice(2, 3)
for n in range(1, 5):
    up = all(identity_subset_check(A2, A3, k, n - k) for k in range(n + 1))
    same = all(identity_subset_check(A2, tilde, k, n - k) and identity_subset_check(tilde, A2, k, n - k)
               for k in range(n + 1))
    print(f"degree {n}: Id(A_2) in Id(A_3): {up};  Id(A_2) = Id({tilde.name}): {same}")

print()
# one word that survives in A_2: z1 (a^4 b) a^2 = z3
alg, w, a = nonvanishing_witness(2, 1, 2)
print(f"non-vanishing word {w} at {a.describe(alg, alg.decomposition())}")
print("  value:", alg.format_vector(witness_lower_bound(alg, [w], [a]).submatrix[0][0]))

for m in (2, 3):
    alg, words, assigns = factorial_witness(2, m, M=3)
    cert = witness_lower_bound(alg, words, assigns)
    print(f"m = {m}: {len(words)} words x {len(assigns)} assignments in degree {cert.k + cert.m}, "
          f"rank {cert.rank} = {m}! = {factorial(m)}")

text = dump_certificate(alg, cert)
print("\ncertificate (first lines):")
print("\n".join(text.splitlines()[:4]))
print("re-verified:", verify_certificate(alg, text))
