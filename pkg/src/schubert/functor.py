"""
The Z/2-graded Schubert functor of a permutation and its BSL basis.

A *row element* fills each nonempty row ``k`` of ``D(w)`` with a multiset of
``r_k`` letters (marked letters distinct, unmarked ones at most ``k``).  It is
stored as a tuple of ascending letter tuples, one per nonempty row.  A
*column element* is the analogous tuple over nonempty columns; it is the
coordinate system of the target space.

``phi`` spreads each row multiset over its row in every distinct way, moves
the letters into columns and brings each column to ascending order.  Signs:

* each row arrangement carries ``(-1)^(inversions among its marked letters)``;
* moving from row-major to column-major order costs ``-1`` for every pair of
  marked letters whose cells are crossed (upper cell strictly to the right);
* sorting a column costs ``-1`` per inverted pair unless both are marked.

A column with a repeated unmarked letter, or a marked ``k'`` with ``k``
larger than the column index, contributes zero.

>>> from schubert.perm import Permutation
>>> w = Permutation.parse("321")
>>> phi(w, ((1, 1), (2,)))
{((1, 2), (1,)): 1}
>>> phi(w, ((1, 1), (1,)))
{}
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from itertools import combinations_with_replacement, permutations, product
from typing import Iterable, Mapping

from .linalg import NotInSpanError, RankDeficiencyError, rank_rational, solve_full_column_rank
from .perm import Permutation
from .poly import SparsePoly
from .superlabel import Labeling, enumerate_bsl, format_letter, homological_degree, monomial

__all__ = [
    "RowElement", "ColumnElement", "phi", "row_element", "ambient_basis",
    "FunctorImage", "build_functor_image", "straighten", "straighten_many",
    "graded_character", "render_column_element", "NotInSpanError", "RankDeficiencyError",
]

RowElement = tuple[tuple[int, ...], ...]
ColumnElement = tuple[tuple[int, ...], ...]
Weight = tuple[int, ...]


@dataclass(frozen=True)
class _Shape:
    """Cell bookkeeping for ``D(w)`` shared by every call to ``phi``."""

    row_index: tuple[int, ...]            # nonempty row numbers
    row_sizes: tuple[int, ...]
    col_index: tuple[int, ...]            # nonempty column numbers
    col_members: tuple[tuple[int, ...], ...]  # row-major positions, top to bottom
    crossings: tuple[tuple[int, int], ...]    # (a, b): a above b and right of it


@lru_cache(maxsize=None)
def _shape(w: Permutation) -> _Shape:
    cells = w.diagram.cells
    rows = w.diagram.rows()
    cols = w.diagram.columns()
    pos = {c: k for k, c in enumerate(cells)}
    crossings = tuple(
        (a, b)
        for a, (i1, j1) in enumerate(cells)
        for b, (i2, j2) in enumerate(cells)
        if i1 < i2 and j1 > j2
    )
    return _Shape(
        row_index=tuple(rows),
        row_sizes=tuple(len(v) for v in rows.values()),
        col_index=tuple(cols),
        col_members=tuple(tuple(pos[c] for c in v) for v in cols.values()),
        crossings=crossings,
    )


def row_element(T: Labeling) -> RowElement:
    """Forget the order within each row of a labeling."""
    rows = T.rows()
    return tuple(tuple(sorted(rows[i])) for i in _shape(T.w).row_index)


def _check_row_element(w: Permutation, rows: RowElement):
    shape = _shape(w)
    if len(rows) != len(shape.row_index):
        raise ValueError(f"D({w}) has {len(shape.row_index)} nonempty rows, got {len(rows)}")
    for k, size, letters in zip(shape.row_index, shape.row_sizes, rows):
        if len(letters) != size:
            raise ValueError(f"row {k} needs {size} letters, got {len(letters)}")
        if list(letters) != sorted(letters):
            raise ValueError(f"row {k} is not sorted: {letters}")
        if any(l == 0 or l > k for l in letters):
            raise ValueError(f"row {k} holds a letter outside the flag: {letters}")
        neg = [l for l in letters if l < 0]
        if len(neg) != len(set(neg)):
            raise ValueError(f"row {k} repeats a marked letter: {letters}")


def _marked_inversions(seq) -> int:
    return sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq))
               if seq[a] < 0 and seq[b] < 0 and seq[a] > seq[b])


@lru_cache(maxsize=4096)
def _arrangements(letters: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for arr in sorted(set(permutations(letters))):
        out.append((arr, -1 if _marked_inversions(arr) % 2 else 1))
    return tuple(out)


def phi(w: Permutation, rows: RowElement) -> dict[ColumnElement, int]:
    """Image of a row element as a sparse vector over column elements."""
    rows = tuple(tuple(r) for r in rows)
    _check_row_element(w, rows)
    return dict(_phi(w, rows))


@lru_cache(maxsize=200_000)
def _phi(w: Permutation, rows: RowElement) -> tuple[tuple[ColumnElement, int], ...]:
    shape = _shape(w)
    acc: dict[ColumnElement, int] = defaultdict(int)
    for combo in product(*(_arrangements(r) for r in rows)):
        flat: list[int] = []
        sign = 1
        for arr, s in combo:
            flat.extend(arr)
            sign *= s
        for a, b in shape.crossings:
            if flat[a] < 0 and flat[b] < 0:
                sign = -sign
        key = []
        for j, members in zip(shape.col_index, shape.col_members):
            seq = [flat[m] for m in members]
            pos = [l for l in seq if l > 0]
            if len(pos) != len(set(pos)) or any(l < -j for l in seq):
                break
            for a in range(len(seq)):
                for b in range(a + 1, len(seq)):
                    if seq[a] > seq[b] and not (seq[a] < 0 and seq[b] < 0):
                        sign = -sign
            key.append(tuple(sorted(seq)))
        else:
            acc[tuple(key)] += sign
    return tuple((k, v) for k, v in sorted(acc.items()) if v)


def ambient_basis(w: Permutation, n: int | None = None) -> list[RowElement]:
    """Every row element of ``D(w)`` with marked letters from ``n', ..., 1'``."""
    n = w.n if n is None else n
    shape = _shape(w)
    per_row = []
    for k, size in zip(shape.row_index, shape.row_sizes):
        alphabet = list(range(-n, 0)) + list(range(1, k + 1))
        options = []
        for m in combinations_with_replacement(alphabet, size):
            neg = [l for l in m if l < 0]
            if len(neg) == len(set(neg)):
                options.append(m)
        per_row.append(options)
    return [tuple(c) for c in product(*per_row)]


def render_column_element(key: ColumnElement) -> str:
    return "|".join(",".join(format_letter(l) for l in col) for col in key)


def _weight(letters: Iterable[int]) -> Weight:
    return tuple(sorted(letters))


def _key_weight(key) -> Weight:
    return _weight(l for part in key for l in part)


@dataclass(frozen=True)
class FunctorImage:
    """The BSL basis of the functor of ``w`` and its image matrix.

    ``matrix`` holds one sparse column per BSL, keyed by column element.
    ``blocks`` groups basis indices by content (the weight of a BSL).
    """

    w: Permutation
    bsl_basis: list[Labeling]
    columns: list[ColumnElement]
    matrix: list[dict[ColumnElement, int]]
    blocks: dict[Weight, list[int]] = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.bsl_basis)

    def index_of(self, T: Labeling) -> int:
        return self._index[T.entries]

    def __post_init__(self):
        object.__setattr__(self, "_index", {T.entries: k for k, T in enumerate(self.bsl_basis)})

    def expand(self, coefficients) -> dict[ColumnElement, Fraction]:
        """``image_matrix @ coefficients`` as a sparse vector."""
        out: dict[ColumnElement, Fraction] = defaultdict(Fraction)
        for c, col in zip(coefficients, self.matrix):
            if c:
                for key, a in col.items():
                    out[key] += c * a
        return {k: v for k, v in out.items() if v}

    def dense_matrix(self) -> list[list[int]]:
        index = {key: r for r, key in enumerate(self.columns)}
        M = [[0] * len(self.bsl_basis) for _ in self.columns]
        for c, col in enumerate(self.matrix):
            for key, a in col.items():
                M[index[key]][c] = a
        return M

    def to_json(self) -> dict:
        index = {key: r for r, key in enumerate(self.columns)}
        triplets = sorted(
            [index[key], c, a] for c, col in enumerate(self.matrix) for key, a in col.items()
        )
        return {
            "w": str(self.w),
            "bsl": [T.serialize() for T in self.bsl_basis],
            "columns": [render_column_element(k) for k in self.columns],
            "matrix": triplets,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _basis_key(T: Labeling):
    return (homological_degree(T), T.serialize())


@lru_cache(maxsize=256)
def build_functor_image(w: Permutation) -> FunctorImage:
    """Images of all BSLs of ``w``; raises if they are not independent."""
    basis = sorted(enumerate_bsl(w), key=_basis_key)
    matrix = [dict(_phi(w, row_element(T))) for T in basis]
    blocks: dict[Weight, list[int]] = defaultdict(list)
    for k, T in enumerate(basis):
        blocks[_weight(T.entries)].append(k)
    for k, col in enumerate(matrix):
        bad = [key for key in col if _key_weight(key) != _weight(basis[k].entries)]
        if bad:
            raise ArithmeticError(f"phi changed the weight of {basis[k]}")
    for weight, members in blocks.items():
        keys = sorted({key for m in members for key in matrix[m]})
        rows = [[matrix[m].get(key, 0) for m in members] for key in keys]
        rank = rank_rational(rows)
        if rank < len(members):
            raise RankDeficiencyError(
                f"BSL images of weight {weight} for w={w} have rank {rank} < {len(members)}"
            )
    columns = sorted({key for col in matrix for key in col})
    return FunctorImage(w, basis, columns, matrix, dict(blocks))


def straighten_many(
    vectors: list[Mapping[ColumnElement, int]], F: FunctorImage
) -> list[list[Fraction]]:
    """Straighten several integer vectors, one linear solve per weight block."""
    out = [[Fraction(0)] * F.dimension for _ in vectors]
    jobs: dict[Weight, list[tuple[int, dict]]] = defaultdict(list)
    for t, v in enumerate(vectors):
        parts: dict[Weight, dict] = defaultdict(dict)
        for key, a in v.items():
            if a:
                parts[_key_weight(key)][key] = a
        for weight, part in parts.items():
            jobs[weight].append((t, part))
    for weight, items in jobs.items():
        members = F.blocks.get(weight, [])
        cols = [F.matrix[m] for m in members]
        try:
            sols = solve_full_column_rank(cols, [part for _, part in items])
        except NotInSpanError as exc:
            raise NotInSpanError(f"vector of weight {weight} is not in the image of D({F.w})",
                                 exc.residual) from None
        for (t, _), sol in zip(items, sols):
            for m, c in zip(members, sol):
                out[t][m] += c
    return out


def straighten(v: Mapping[ColumnElement, int | Fraction], F: FunctorImage) -> list[Fraction]:
    """Coordinates of ``v`` in the BSL image basis.

    Raises :class:`NotInSpanError` carrying the residual when ``v`` is not
    in the image.
    """
    v = {k: Fraction(a) for k, a in v.items() if a}
    if not v:
        return [Fraction(0)] * F.dimension
    scale = lcm(*(a.denominator for a in v.values()))
    ints = {k: int(a * scale) for k, a in v.items()}
    return [c / scale for c in straighten_many([ints], F)[0]]


def graded_character(F: FunctorImage) -> tuple[SparsePoly, SparsePoly]:
    """``(supercharacter, character)`` of the functor.

    The supercharacter is the sum of the BSL monomials, which is the double
    Schubert polynomial.  The character flips the sign of every ``x_i``.
    """
    n = F.w.n
    sch = SparsePoly(n)
    for T in F.bsl_basis:
        sch = sch + monomial(T)
    ch = sch.rename({i: (-1, i) for i in range(n)})
    return sch, ch
