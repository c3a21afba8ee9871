"""
Schubert complexes of a flagged map ``d : F0 -> F1`` and their homology.

The term in degree ``i`` has the BSLs with ``i`` unmarked letters as a basis.
The differential turns one unmarked letter ``u`` into a marked ``m'`` with
weight ``d[m][u]`` (the coefficient of ``e'_m`` in ``d(e_u)``), on the level
of row elements, then maps back into the BSL basis of degree ``i - 1``.

The generic complex is built once per permutation with entries that are
affine forms in the variables ``d[m][u]``; any concrete map is then a
substitution.

>>> from schubert.perm import Permutation
>>> C = build_complex(Permutation.parse("1423"), FlaggedMap.generic(4))
>>> C.ranks
[3, 6, 3]
>>> verify_dd_zero(C)
True
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence, Union

from .functor import RowElement, build_functor_image, row_element, straighten_many, _phi
from .linalg import PrimeField, Rationals
from .perm import Permutation
from .superlabel import Labeling, enumerate_bsl, homological_degree

__all__ = [
    "LinearForm", "FlaggedMap", "ChainComplex", "ambient_differential",
    "build_complex", "verify_dd_zero", "homology_ranks", "cokernel_fiber_rank",
    "euler_characteristic", "term_ranks", "parse_scalar",
]

Var = tuple[int, int]


class LinearForm:
    """``const + sum coeff * d[m][u]`` with rational coefficients."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs: Mapping[Var, Fraction] | None = None, const=0):
        self.coeffs = {v: Fraction(c) for v, c in (coeffs or {}).items() if c}
        self.const = Fraction(const)

    @classmethod
    def var(cls, m: int, u: int) -> LinearForm:
        return cls({(m, u): 1})

    def __add__(self, other):
        other = _as_form(other)
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out.get(v, 0) + c
        return LinearForm(out, self.const + other.const)

    __radd__ = __add__

    def __neg__(self):
        return LinearForm({v: -c for v, c in self.coeffs.items()}, -self.const)

    def __sub__(self, other):
        return self + (-_as_form(other))

    def scale(self, c) -> LinearForm:
        return LinearForm({v: a * c for v, a in self.coeffs.items()}, self.const * c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LinearForm(const=other)
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.coeffs == other.coeffs and self.const == other.const

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.const))

    def __bool__(self):
        return bool(self.coeffs) or bool(self.const)

    def evaluate(self, values: Mapping[Var, object]):
        """Substitute numbers or other forms for the variables."""
        total = self.const
        for v, c in self.coeffs.items():
            x = values[v]
            total = total + (x.scale(c) if isinstance(x, LinearForm) else x * c)
        return total

    def __str__(self):
        pieces = []
        for (m, u), c in sorted(self.coeffs.items()):
            mag = abs(c)
            body = f"d[{m}][{u}]" if mag == 1 else f"{mag}*d[{m}][{u}]"
            pieces.append((c < 0, body))
        if self.const or not pieces:
            pieces.append((self.const < 0, str(abs(self.const))))
        text = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            text += (" - " if neg else " + ") + body
        return text

    def __repr__(self):
        return f"LinearForm({str(self)!r})"


def _as_form(x) -> LinearForm:
    return x if isinstance(x, LinearForm) else LinearForm(const=x)


def parse_scalar(text: str) -> Fraction:
    """Rational from ``"p/q"`` or an integer string."""
    return Fraction(text.strip())


Scalar = Union[LinearForm, Fraction, int]


@dataclass(frozen=True)
class FlaggedMap:
    """An ``n x n`` matrix; entry ``(m, u)`` is the coefficient of ``e'_m`` in ``d(e_u)``."""

    n: int
    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise ValueError(f"flagged map must be {self.n} x {self.n}")

    @classmethod
    def generic(cls, n: int) -> FlaggedMap:
        return cls(n, tuple(tuple(LinearForm.var(m, u) for u in range(1, n + 1))
                            for m in range(1, n + 1)))

    @classmethod
    def identity(cls, n: int) -> FlaggedMap:
        return cls(n, tuple(tuple(Fraction(int(m == u)) for u in range(n)) for m in range(n)))

    @classmethod
    def zero(cls, n: int) -> FlaggedMap:
        return cls(n, tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence]) -> FlaggedMap:
        rows = [[a if isinstance(a, LinearForm) else Fraction(a) for a in r] for r in rows]
        return cls(len(rows), tuple(tuple(r) for r in rows))

    def __getitem__(self, mu: Var) -> Scalar:
        m, u = mu
        return self.entries[m - 1][u - 1]

    def assignment(self) -> dict[Var, Scalar]:
        return {(m, u): self[m, u] for m in range(1, self.n + 1) for u in range(1, self.n + 1)}

    @property
    def is_generic(self) -> bool:
        return any(isinstance(a, LinearForm) for r in self.entries for a in r)


def ambient_differential(rows: RowElement, n: int) -> list[tuple[int, int, int, RowElement]]:
    """Terms ``(sign, m, u, rows')`` of the differential on a row element.

    Each distinct unmarked ``u`` in row position ``k`` becomes ``m'`` (any
    ``m <= n`` not already marked in that row).  The sign is
    ``(-1)^(marked letters in earlier rows + marked letters in this row)``
    times the sign of sliding ``m'`` to its place among the row's marked
    letters from the far end.
    """
    out = []
    marked_before = 0
    for k, row in enumerate(rows):
        marked = [l for l in row if l < 0]
        base = marked_before + len(marked)
        for u in sorted({l for l in row if l > 0}):
            rest = list(row)
            rest.remove(u)
            for m in range(1, n + 1):
                if -m in rest:
                    continue
                slide = sum(1 for l in marked if l > -m)
                sign = -1 if (base + slide) % 2 else 1
                new = rows[:k] + (tuple(sorted(rest + [-m])),) + rows[k + 1:]
                out.append((sign, m, u, new))
        marked_before += len(marked)
    return out


@dataclass(frozen=True)
class ChainComplex:
    """Terms in degrees ``0..top``; ``differentials[i-1]`` is ``d_i : C_i -> C_{i-1}``.

    ``d_i`` is a dense ``dim C_{i-1} x dim C_i`` matrix of scalars.
    """

    w: Permutation
    terms: tuple[tuple[Labeling, ...], ...]
    differentials: tuple[tuple[tuple[Scalar, ...], ...], ...]

    @property
    def ranks(self) -> list[int]:
        return [len(t) for t in self.terms]

    @property
    def is_generic(self) -> bool:
        return any(isinstance(a, LinearForm) for d in self.differentials for r in d for a in r)

    def specialize(self, f: FlaggedMap | Mapping[Var, object]) -> ChainComplex:
        values = f.assignment() if isinstance(f, FlaggedMap) else f
        diffs = tuple(
            tuple(tuple(_specialize(a, values) for a in row) for row in d)
            for d in self.differentials
        )
        return ChainComplex(self.w, self.terms, diffs)

    def to_json(self) -> dict:
        diffs = []
        for d in self.differentials:
            diffs.append([[r, c, str(a)] for r, row in enumerate(d) for c, a in enumerate(row) if a])
        return {"w": str(self.w), "ranks": self.ranks, "differentials": diffs}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _specialize(a, values):
    return a.evaluate(values) if isinstance(a, LinearForm) else a


@lru_cache(maxsize=256)
def _generic_complex(w: Permutation) -> ChainComplex:
    F = build_functor_image(w)
    top = max((homological_degree(T) for T in F.bsl_basis), default=0)
    by_degree: list[list[int]] = [[] for _ in range(top + 1)]
    for k, T in enumerate(F.bsl_basis):
        by_degree[homological_degree(T)].append(k)
    local = {k: pos for deg in by_degree for pos, k in enumerate(deg)}

    # one straightening target per (source BSL, variable)
    targets: list[dict] = []
    labels: list[tuple[int, Var]] = []
    n = w.n
    for k, T in enumerate(F.bsl_basis):
        grouped: dict[Var, dict] = defaultdict(lambda: defaultdict(int))
        for sign, m, u, rows in ambient_differential(row_element(T), n):
            for key, a in _phi(w, rows):
                grouped[m, u][key] += sign * a
        for var, vec in grouped.items():
            vec = {key: a for key, a in vec.items() if a}
            if vec:
                targets.append(vec)
                labels.append((k, var))
    solutions = straighten_many(targets, F)

    diffs = []
    for i in range(1, top + 1):
        diffs.append([[LinearForm() for _ in by_degree[i]] for _ in by_degree[i - 1]])
    for (k, var), sol in zip(labels, solutions):
        i = homological_degree(F.bsl_basis[k])
        c = local[k]
        for target, coef in enumerate(sol):
            if coef:
                if homological_degree(F.bsl_basis[target]) != i - 1:
                    raise ArithmeticError("differential left its degree")
                r = local[target]
                diffs[i - 1][r][c] = diffs[i - 1][r][c] + LinearForm({var: coef})
    terms = tuple(tuple(F.bsl_basis[k] for k in deg) for deg in by_degree)
    return ChainComplex(w, terms, tuple(tuple(tuple(r) for r in d) for d in diffs))


def build_complex(w: Permutation, f: FlaggedMap) -> ChainComplex:
    """The Schubert complex of ``w`` for the flagged map ``f``."""
    if f.n < w.n:
        raise ValueError(f"flagged map has size {f.n} but w lives in S_{w.n}")
    C = _generic_complex(w)
    values = f.assignment()
    # variables outside w's range never reach a nonzero column
    return C.specialize({v: values[v] for v in values if v[0] <= w.n and v[1] <= w.n})


def _poly_product_zero(A, B) -> bool:
    """Is ``A @ B`` zero, with entries multiplied as polynomials in the variables?"""
    for row in A:
        for c in range(len(B[0]) if B else 0):
            acc: dict = defaultdict(Fraction)
            for k, a in enumerate(row):
                b = B[k][c]
                if not a or not b:
                    continue
                for ta, ca in _terms(a):
                    for tb, cb in _terms(b):
                        acc[tuple(sorted(ta + tb))] += ca * cb
            if any(acc.values()):
                return False
    return True


def _terms(a):
    if isinstance(a, LinearForm):
        out = [((v,), c) for v, c in a.coeffs.items()]
        if a.const:
            out.append(((), a.const))
        return out
    return [((), Fraction(a))]


def verify_dd_zero(C: ChainComplex) -> bool:
    """Every composite ``d_i d_{i+1}`` vanishes (symbolically for generic entries)."""
    return all(_poly_product_zero(C.differentials[i], C.differentials[i + 1])
               for i in range(len(C.differentials) - 1))


def _rank(d, field) -> int:
    if not d or not d[0]:
        return 0
    if any(isinstance(a, LinearForm) and a.coeffs for row in d for a in row):
        raise ValueError("specialize the complex before computing ranks")
    rows = [[a.const if isinstance(a, LinearForm) else a for a in row] for row in d]
    return field.rank(rows)


def homology_ranks(
    C: ChainComplex,
    specialization: FlaggedMap | Mapping[Var, object] | None = None,
    field: PrimeField | Rationals | None = None,
) -> list[int]:
    """``h_i = dim C_i - rank d_i - rank d_{i+1}`` over ``field`` (rationals by default)."""
    if specialization is not None:
        C = C.specialize(specialization)
    field = Rationals() if field is None else field
    ranks = [_rank(d, field) for d in C.differentials]
    out = []
    for i, dim in enumerate(C.ranks):
        out.append(dim - (ranks[i - 1] if i >= 1 else 0) - (ranks[i] if i < len(ranks) else 0))
    return out


def cokernel_fiber_rank(w: Permutation, point: Sequence[Sequence], field=None) -> int:
    """``h_0`` of the complex of ``w`` at a concrete matrix."""
    C = build_complex(w, FlaggedMap.from_matrix(point))
    return homology_ranks(C, field=field)[0]


def term_ranks(w: Permutation) -> list[int]:
    """``dim C_i`` for each degree, counted from the BSLs without building maps."""
    counts = [0] * (w.length + 1)
    for T in enumerate_bsl(w):
        counts[homological_degree(T)] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def euler_characteristic(C: ChainComplex | Sequence[int]) -> int:
    """Alternating sum of term ranks of a complex (or of a rank list)."""
    ranks = C.ranks if isinstance(C, ChainComplex) else C
    return sum((-1) ** i * r for i, r in enumerate(ranks))
