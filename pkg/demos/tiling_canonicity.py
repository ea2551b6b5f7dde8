"""Exact coplanarity and convexity certificates for the tiling."""

from linkcomm.tiling import NORMAL, canonicity_report, convexity_witnesses, coplanarity_values, load_MN

M, N = load_MN()
print("n.m_i:", [str(x) for x in coplanarity_values(NORMAL, M)])
print("n.n_i:", [str(x) for x in coplanarity_values(NORMAL, N)], "(scale by sqrt2)")
for w in convexity_witnesses():
    print(f"{w.description}: n.w = {w.value}")
rep = canonicity_report()
print(f"\n{sum(c.passed for c in rep.checks)}/{len(rep.checks)} canonicity checks pass")
