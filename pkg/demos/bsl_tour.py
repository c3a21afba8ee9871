"""Labelings of a permutation diagram and the polynomial they add up to.

Run with ``python3 demos/bsl_tour.py [PERMUTATION]`` (default 321).
"""

import sys

from schubert import Permutation
from schubert.poly import double_schubert, substitute, uniform_assignment
from schubert.superlabel import (
    bsl_generating_function, enumerate_bsl, factor_bsl, homological_degree, monomial, star,
)


def main(word: str = "321") -> None:
    w = Permutation.parse(word)
    print(f"w = {w}, length {w.length}, diagram cells {list(w.diagram.cells)}")

    labelings = enumerate_bsl(w)
    print(f"\n{len(labelings)} balanced super labelings (rows separated by |):")
    for T in labelings:
        print(f"  {T.serialize():<16} degree {homological_degree(T)}  monomial {monomial(T)}")

    S = double_schubert(w)
    print(f"\ndouble Schubert polynomial: {S}")
    print(f"sum of monomials matches: {bsl_generating_function(w) == S}")
    print(f"value at x=1, y=-1: {substitute(S, uniform_assignment(w.n, 1, -1))}")

    T = labelings[len(labelings) // 2]
    t_u, t_v, u, v = factor_bsl(T)
    print(f"\nsplitting {T.serialize()}: u = {u} carries {t_u.serialize() or '(empty)'}, "
          f"v = {v} carries {t_v.serialize() or '(empty)'}")
    print(f"dual labeling on w^-1 = {w.inverse()}: {star(T).serialize()}")


if __name__ == "__main__":
    main(*sys.argv[1:2])
