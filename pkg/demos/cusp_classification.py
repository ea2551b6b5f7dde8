"""Walk through cusp parameters of M_n and its mutants.

Run: python demos/cusp_classification.py [n]
"""

import sys

from linkcomm.cusp_moduli import (
    CuspParameter, adjacent_pair, brute_force_pgl2q, classify_family, mn_moduli, mutant_moduli,
    single_two, walk_chain,
)


def main(n: int = 4) -> None:
    T1, T2 = mn_moduli(n)
    print(f"M_{n}: T1 = {T1}, T2 = {T2}")

    word = single_two(n, 1)
    print(f"\nchains for I = {word}")
    for k in (1, 2):
        print(f"  T{k}: " + " -> ".join(walk_chain(word, k).labels()))

    print("\nsingle-2 family")
    for k in range(n + 1):
        S1, S2 = mutant_moduli(single_two(n, k))
        print(f"  k={k}: T1 = {S1}, T2 = {S2}")

    print("\nadjacent-pair family (all share one pair of moduli)")
    for k in range(n):
        print(f"  {adjacent_pair(n, k)}: {mutant_moduli(adjacent_pair(n, k))[0]}")

    C = classify_family(n)
    single = C.single_two_classes()
    print(f"\n{len(C.classes)} classes among {2 ** (n + 1)} words; "
          f"single-2 family spans {len(set(single))}")

    # the smallest PGL2(Z) witness for a sign flip needs entries of size 28
    z = mn_moduli(1)[0]
    w = CuspParameter(2, -4)
    print(f"\nwitness {z} -> {w}: bound 10 {brute_force_pgl2q(z, w, 10)}, "
          f"bound 28 {brute_force_pgl2q(z, w, 28)}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 4)
