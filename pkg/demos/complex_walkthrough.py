"""Build the complex of a permutation, specialize it and read off homology.

Run with ``python3 demos/complex_walkthrough.py [PERMUTATION]`` (default 2413).
"""

import random
import sys

from schubert import Permutation
from schubert.complex import FlaggedMap, build_complex, homology_ranks, verify_dd_zero
from schubert.ideal import ideal_generators, locus_membership, random_locus_point


def show(label, C):
    print(f"  {label:<22} homology {homology_ranks(C)}")


def main(word: str = "2413") -> None:
    w = Permutation.parse(word)
    n = w.n
    C = build_complex(w, FlaggedMap.generic(n))
    print(f"w = {w}: term ranks {C.ranks}, d^2 = 0: {verify_dd_zero(C)}")
    if C.differentials:
        d1 = C.differentials[0]
        print("first differential, first column:")
        for row in d1:
            print(f"  {row[0]}")

    print("\nspecializations:")
    show("identity map", C.specialize(FlaggedMap.identity(n)))
    show("zero map", C.specialize(FlaggedMap.zero(n)))
    rng = random.Random(0)
    dense = [[rng.randint(-99, 99) for _ in range(n)] for _ in range(n)]
    show("random dense map", C.specialize(FlaggedMap.from_matrix(dense)))
    point = random_locus_point(w, rng)
    show("random locus point", C.specialize(FlaggedMap.from_matrix(point)))

    print(f"\nthe locus point passes the membership test: {locus_membership(w, point)}")
    print(f"the locus of w is cut out by the generators of w^-1 = {w.inverse()}:")
    for m in ideal_generators(w.inverse()):
        print(f"  {m}")


if __name__ == "__main__":
    main(*sys.argv[1:2])
