"""Bloch invariants and Borel regulators of the M_n.

The regulator vector of M_n is (2 v1 + 2n v2, 2 v1 - 2n v2), so no two
are positively proportional and the M_n are pairwise incommensurable.
"""

from linkcomm.bloch import (
    beta2, bloch_invariant_Mn, borel_regulator, d2, incommensurability_certificate,
    mutation_invariance_check, triangulate_P1, triangulate_P2, volume,
)

print("D2((1+i)/2) =", d2((1 + 1j) / 2))
print("P1:", triangulate_P1(), " volume", volume(triangulate_P1()))
print("P2:", triangulate_P2(), " volume", volume(triangulate_P2()))
print("B(beta2) =", borel_regulator(beta2()))
print()
for n in range(1, 6):
    print(f"n={n}: {bloch_invariant_Mn(n)}")
    print(f"     B = {borel_regulator(bloch_invariant_Mn(n))}")
print()
for m, n in ((1, 2), (2, 5), (3, 8)):
    c = incommensurability_certificate(m, n)
    print(f"det(B_{m}, B_{n}) = {c.determinant:.6f}  distinct={c.distinct}")
print()
for check in mutation_invariance_check((0, 2, 2, 0)).checks:
    print(("PASS " if check.passed else "FAIL ") + check.name, check.detail or "")
