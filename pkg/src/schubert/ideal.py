"""
Schubert determinantal ideals and degeneracy-locus membership.

A matrix ``M`` is read with ``M[i][j]`` the coefficient of ``e'_i`` in
``d(e_j)``: rows index the target ``F1``, columns the source ``F0``.

The ideal of ``w`` is generated by the ``(r_w(p, q) + 1)``-minors of the
upper-left block on rows ``1..p`` and columns ``1..q``, for ``(p, q)`` a
southeast corner of ``D(w)``.  The locus of ``w`` asks that the block on
rows ``1..q``, columns ``1..p`` have rank at most ``r_w(p, q)``; its zero set
is cut out by the generators of the ideal of ``w^{-1}``, and it is where
the Schubert complex of ``w`` fails to be exact.

>>> from schubert.perm import Permutation
>>> [str(m) for m in ideal_generators(Permutation.parse("2413"))][:2]
['det d[{1}][{1}]', 'det d[{2}][{1}]']
>>> locus_membership(Permutation.parse("2413"), [[0] * 4 for _ in range(4)])
True
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .linalg import rank_rational
from .perm import Permutation, southeast_corners
from .poly import SparsePoly, double_schubert

__all__ = [
    "MinorDescriptor", "ideal_generators", "locus_membership", "membership_by_rank",
    "membership_by_minors", "minor_vanishes", "expected_codimension", "fulton_class",
    "GEOMETRIC_VARIABLES", "MAX_MINORS", "random_locus_point",
]

MAX_MINORS = 100_000

# Chern-class meaning of the polynomial variables in the degeneracy class
GEOMETRIC_VARIABLES = {
    "x_i": "-c1(E_i / E_{i-1})",
    "y_j": "-c1(ker(F_j -> F_{j-1}))",
}


@dataclass(frozen=True, order=True)
class MinorDescriptor:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        if not self.rows or len(self.rows) != len(self.cols):
            raise ValueError("a minor needs equally many (and at least one) rows and columns")
        if list(self.rows) != sorted(set(self.rows)) or list(self.cols) != sorted(set(self.cols)):
            raise ValueError("minor indices must be strictly increasing")
        if min(self.rows + self.cols) < 1:
            raise ValueError("minor indices are 1-based")

    @property
    def size(self) -> int:
        return len(self.rows)

    def __str__(self):
        rows = ",".join(map(str, self.rows))
        cols = ",".join(map(str, self.cols))
        return f"det d[{{{rows}}}][{{{cols}}}]"

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}


def ideal_generators(w: Permutation) -> list[MinorDescriptor]:
    """Southeast-corner minors of ``w``, deduplicated and sorted."""
    found: set[MinorDescriptor] = set()
    for p, q in southeast_corners(w):
        k = w.rank(p, q) + 1
        count = comb(p, k) * comb(q, k)
        if count > MAX_MINORS:
            raise ValueError(f"corner ({p}, {q}) of {w} needs {count} minors (cap {MAX_MINORS})")
        for rows in combinations(range(1, p + 1), k):
            for cols in combinations(range(1, q + 1), k):
                found.add(MinorDescriptor(rows, cols))
    return sorted(found, key=lambda m: (m.size, m.cols, m.rows))


def _check_point(w: Permutation, point: Sequence[Sequence]) -> list[list[Fraction]]:
    M = [[Fraction(a) for a in row] for row in point]
    if len(M) < w.n or any(len(r) < w.n for r in M):
        raise ValueError(f"point must be at least {w.n} x {w.n}")
    return M


def minor_vanishes(point: Sequence[Sequence], minor: MinorDescriptor) -> bool:
    sub = [[point[i - 1][j - 1] for j in minor.cols] for i in minor.rows]
    return rank_rational(sub) < minor.size


def membership_by_rank(w: Permutation, point: Sequence[Sequence]) -> bool:
    """All ``(p, q)``: ``rank M[1..q, 1..p] <= r_w(p, q)``."""
    M = _check_point(w, point)
    n = w.n
    return all(
        rank_rational([row[:p] for row in M[:q]]) <= w.rank(p, q)
        for p in range(1, n + 1)
        for q in range(1, n + 1)
    )


def membership_by_minors(w: Permutation, point: Sequence[Sequence]) -> bool:
    """Every essential generator of the ideal of ``w^{-1}`` vanishes."""
    M = _check_point(w, point)
    return all(minor_vanishes(M, m) for m in ideal_generators(w.inverse()))


def locus_membership(w: Permutation, point: Sequence[Sequence], method: str = "both") -> bool:
    """Is ``point`` in the degeneracy locus of ``w``?

    ``method`` is ``"rank"``, ``"minors"`` or ``"both"``; the last runs both
    tests and raises if they disagree.
    """
    if method == "rank":
        return membership_by_rank(w, point)
    if method == "minors":
        return membership_by_minors(w, point)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    a = membership_by_rank(w, point)
    b = membership_by_minors(w, point)
    if a != b:
        raise ArithmeticError(f"rank test says {a}, minor test says {b} for {w}")
    return a


def expected_codimension(w: Permutation) -> int:
    return w.length


def fulton_class(w: Permutation) -> SparsePoly:
    """Class of the degeneracy locus, in the variables of :data:`GEOMETRIC_VARIABLES`."""
    return double_schubert(w)


def random_locus_point(w: Permutation, rng: random.Random, bound: int = 9) -> list[list[Fraction]]:
    """A random point of the locus of ``w``: ``L P U`` with ``P`` the matrix of ``w^{-1}``.

    ``L`` is lower and ``U`` upper unitriangular with random entries in
    ``[-bound, bound]``; such points are dense in the locus.
    """
    n = w.n
    L = [[Fraction(1 if i == j else rng.randint(-bound, bound) if i > j else 0)
          for j in range(n)] for i in range(n)]
    U = [[Fraction(1 if i == j else rng.randint(-bound, bound) if i < j else 0)
          for j in range(n)] for i in range(n)]
    winv = w.inverse()
    P = [[Fraction(1 if j + 1 == winv(i + 1) else 0) for j in range(n)] for i in range(n)]
    return _matmul(_matmul(L, P), U)


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]
