"""
Exact linear algebra over the rationals and prime fields.

A thin layer over sympy's ``DomainMatrix``.  Callers pass plain Python
lists: matrices are lists of rows, and a sparse vector is a ``dict`` from a
hashable key to a nonzero scalar.

>>> rank_rational([[1, 2], [2, 4]])
1
>>> rank_mod_p([[1, 2], [3, 4]], 5)
2
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from sympy import GF, QQ, isprime
from sympy.polys.matrices import DomainMatrix

__all__ = [
    "DEFAULT_PRIME", "MIN_PRIME", "PrimeField", "Rationals", "default_field",
    "rank_rational", "rank_mod_p", "NotInSpanError", "RankDeficiencyError",
    "solve_full_column_rank",
]

DEFAULT_PRIME = (1 << 61) - 1
MIN_PRIME = 1 << 30


@dataclass(frozen=True)
class PrimeField:
    """The field with ``p`` elements, ``p`` a prime above ``2**30``."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.p <= MIN_PRIME:
            raise ValueError(f"prime modulus must exceed 2**30, got {self.p}")
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def coerce(self, value) -> int:
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image mod {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def rank(self, rows: Sequence[Sequence]) -> int:
        return rank_mod_p([[self.coerce(a) for a in row] for row in rows], self.p)

    def __str__(self):
        return f"p:{self.p}"


@dataclass(frozen=True)
class Rationals:
    def coerce(self, value) -> Fraction:
        return Fraction(value)

    def rank(self, rows: Sequence[Sequence]) -> int:
        return rank_rational(rows)

    def __str__(self):
        return "q"


def default_field() -> PrimeField:
    """The prime field named by ``SCHUBERT_PRIME``, else ``2**61 - 1``."""
    text = os.environ.get("SCHUBERT_PRIME")
    return PrimeField(int(text)) if text else PrimeField()


def _qq(a):
    a = Fraction(a)
    return QQ(a.numerator, a.denominator)


def _fraction(a) -> Fraction:
    return Fraction(int(a.numerator), int(a.denominator))


def _matrix(rows: Sequence[Sequence], domain, convert) -> DomainMatrix | None:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return None
    return DomainMatrix([[convert(a) for a in r] for r in rows], (len(rows), len(rows[0])), domain)


def rank_rational(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals of a matrix with int or Fraction entries."""
    M = _matrix(rows, QQ, _qq)
    return 0 if M is None else M.rank()


def rank_mod_p(rows: Iterable, p: int) -> int:
    """Rank over ``F_p``; rows may be dense lists or sparse dicts."""
    rows = list(rows)
    if rows and isinstance(rows[0], Mapping):
        keys = sorted({k for r in rows for k in r}, key=repr)
        rows = [[r.get(k, 0) for k in keys] for r in rows]
    F = GF(p)
    M = _matrix(rows, F, lambda a: F(int(a) % p))
    return 0 if M is None else M.rank()


# --- block solving ----------------------------------------------------------


class RankDeficiencyError(ArithmeticError):
    """A matrix expected to have independent columns does not."""


class NotInSpanError(ArithmeticError):
    """A target vector lies outside the column span.

    ``residual`` is ``b - A x`` for the candidate ``x`` read off the reduced
    rows, as a sparse dict; it is never empty.
    """

    def __init__(self, message: str, residual: dict):
        super().__init__(message)
        self.residual = residual


def solve_full_column_rank(
    columns: Sequence[Mapping[Hashable, int]],
    targets: Sequence[Mapping[Hashable, int]],
) -> list[list[Fraction]]:
    """Solve ``A x = b`` exactly for each target ``b``.

    ``A`` is given by its sparse columns and must have full column rank.
    One reduced row echelon form of ``[A | b_1 ... b_t]`` serves every
    target.  Returns one coefficient list per target.
    """
    k = len(columns)
    if k == 0:
        for b in targets:
            if any(b.values()):
                raise NotInSpanError("target is nonzero but the span is empty", dict(b))
        return [[] for _ in targets]
    every = list(columns) + list(targets)
    keys = sorted({key for col in every for key in col}, key=repr)
    index = {key: r for r, key in enumerate(keys)}
    rows = [[0] * len(every) for _ in keys]
    for c, col in enumerate(every):
        for key, a in col.items():
            rows[index[key]][c] = a
    R, pivots = _matrix(rows, QQ, _qq).rref()
    if pivots[:k] != tuple(range(k)):
        rank = sum(1 for c in pivots if c < k)
        raise RankDeficiencyError(f"columns have rank {rank} < {k}")
    R = R.to_list()
    solutions = []
    for t, b in enumerate(targets):
        c = k + t
        x = [_fraction(R[r][c]) for r in range(k)]
        # rows below k are zero on A, so any entry there means 0 = nonzero
        if any(R[r][c] for r in range(k, len(R))):
            raise NotInSpanError("target is outside the column span", _residual(columns, b, x))
        solutions.append(x)
    return solutions


def _residual(columns, b, x) -> dict:
    res: dict = {key: Fraction(a) for key, a in b.items()}
    for col, coef in zip(columns, x):
        for key, a in col.items():
            res[key] = res.get(key, 0) - coef * a
    return {key: a for key, a in res.items() if a}
