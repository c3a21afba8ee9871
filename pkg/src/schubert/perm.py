"""
Permutations of ``{1, ..., n}`` in one-line notation.

Permutations multiply as functions, ``(w * u)(i) == w(u(i))``, so right
multiplication by ``s_i`` swaps the entries in positions ``i`` and ``i + 1``.

>>> w = Permutation.parse("35142")
>>> w.length
6
>>> sorted(w.diagram)
[(1, 1), (1, 2), (2, 1), (2, 2), (2, 4), (4, 2)]
>>> rank_function(Permutation.parse("2413"), 2, 3)
1
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations as _permutations

__all__ = [
    "Permutation", "Diagram", "Transition",
    "length", "rank_function", "diagram", "strong_leq", "weak_leq",
    "weak_order_ideal", "border_cells", "southeast_corners",
    "maximal_transition", "index", "pad", "all_permutations", "reduced_word",
]

Cell = tuple[int, int]


@dataclass(frozen=True)
class Diagram:
    """A set of cells ``(row, col)``, 1-indexed, in matrix convention."""

    cells: tuple[Cell, ...]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(sorted(set(self.cells))))
        object.__setattr__(self, "_set", frozenset(self.cells))

    def __contains__(self, cell) -> bool:
        return cell in self._set

    def __iter__(self):
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def row_count(self, k: int) -> int:
        return sum(1 for i, _ in self.cells if i == k)

    def column_count(self, j: int) -> int:
        return sum(1 for _, c in self.cells if c == j)

    def rows(self) -> dict[int, list[Cell]]:
        """Nonempty rows, each listing its cells left to right."""
        out: dict[int, list[Cell]] = {}
        for cell in self.cells:
            out.setdefault(cell[0], []).append(cell)
        return out

    def columns(self) -> dict[int, list[Cell]]:
        """Nonempty columns, each listing its cells top to bottom."""
        out: dict[int, list[Cell]] = {}
        for cell in sorted(self.cells, key=lambda c: (c[1], c[0])):
            out.setdefault(cell[1], []).append(cell)
        return out

    def transpose(self) -> Diagram:
        return Diagram(tuple((j, i) for i, j in self.cells))


@dataclass(frozen=True)
class Permutation:
    """A permutation ``w`` stored as the word ``w(1) w(2) ... w(n)``.

    Length, diagram and the rank table are computed once at construction.
    """

    word: tuple[int, ...]
    length: int = field(init=False, compare=False, repr=False)
    diagram: Diagram = field(init=False, compare=False, repr=False)
    _ranks: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        word = tuple(int(a) for a in self.word)
        n = len(word)
        if sorted(word) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {word}")
        object.__setattr__(self, "word", word)
        cells = [
            (i + 1, word[j])
            for i in range(n)
            for j in range(i + 1, n)
            if word[i] > word[j]
        ]
        object.__setattr__(self, "length", len(cells))
        object.__setattr__(self, "diagram", Diagram(tuple(cells)))
        # ranks[p][q] = #{i <= p : w(i) <= q}, with a zero row and column
        ranks = [[0] * (n + 1) for _ in range(n + 1)]
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                ranks[p][q] = ranks[p - 1][q] + (1 if word[p - 1] <= q else 0)
        object.__setattr__(self, "_ranks", tuple(tuple(r) for r in ranks))

    # --- construction -------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Parse ``"35142"`` or the comma-separated form ``"10,3,1,..."``."""
        text = text.strip()
        if not text:
            raise ValueError("empty permutation")
        if "," in text:
            return cls(tuple(int(t) for t in text.split(",")))
        if not text.isdigit():
            raise ValueError(f"cannot parse permutation {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> Permutation:
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def simple(cls, i: int, n: int) -> Permutation:
        """The simple transposition ``s_i`` in ``Sigma_n``."""
        return cls.transposition(i, i + 1, n)

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> Permutation:
        word = list(range(1, n + 1))
        word[i - 1], word[j - 1] = word[j - 1], word[i - 1]
        return cls(tuple(word))

    # --- basic structure ----------------------------------------------

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.n != other.n:
            raise ValueError("size mismatch; pad explicitly")
        return Permutation(tuple(self.word[other(i) - 1] for i in range(1, self.n + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, a in enumerate(self.word, start=1):
            inv[a - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.length == 0

    def rank(self, p: int, q: int) -> int:
        if not (1 <= p <= self.n and 1 <= q <= self.n):
            raise IndexError(f"rank indices ({p}, {q}) out of range for n={self.n}")
        return self._ranks[p][q]

    def row_count(self, k: int) -> int:
        return self.diagram.row_count(k)

    def column_count(self, j: int) -> int:
        return self.diagram.column_count(j)

    def descents(self) -> list[int]:
        return [i for i in range(1, self.n) if self(i) > self(i + 1)]

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(a) for a in self.word)
        return ",".join(str(a) for a in self.word)

    def __lt__(self, other: Permutation) -> bool:
        return (self.length, self.word) < (other.length, other.word)


@dataclass(frozen=True)
class Transition:
    """Data of the maximal transition of ``w``.

    ``v = w * t(alpha, beta)`` and ``psis[t] = v * t(gammas[t], alpha)``.
    """

    w: Permutation
    alpha: int
    beta: int
    v: Permutation
    gammas: tuple[int, ...]
    psis: tuple[Permutation, ...]


def length(w: Permutation) -> int:
    return w.length


def rank_function(w: Permutation, p: int, q: int) -> int:
    return w.rank(p, q)


def diagram(w: Permutation) -> Diagram:
    return w.diagram


def _check_same_size(u: Permutation, w: Permutation):
    if u.n != w.n:
        raise ValueError(f"size mismatch: {u.n} vs {w.n}; pad explicitly")


def strong_leq(u: Permutation, w: Permutation) -> bool:
    """Bruhat order via the (reversed) rank-function comparison."""
    _check_same_size(u, w)
    n = u.n
    return all(
        u.rank(p, q) >= w.rank(p, q)
        for p in range(1, n + 1)
        for q in range(1, n + 1)
    )


def weak_leq(u: Permutation, w: Permutation) -> bool:
    """True iff a reduced word of ``u`` is a suffix of one for ``w``."""
    _check_same_size(u, w)
    return (w * u.inverse()).length + u.length == w.length


def all_permutations(n: int) -> list[Permutation]:
    """All of ``Sigma_n``, sorted by length then word."""
    return sorted(Permutation(p) for p in _permutations(range(1, n + 1)))


def weak_order_ideal(w: Permutation) -> list[Permutation]:
    # Walk down by removing right descents of u from the left: u <=_W w iff
    # u is reached from w by repeatedly stripping a left factor s_i.
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for x in frontier:
            xinv = x.inverse()
            for i in range(1, x.n):
                # s_i * x is shorter iff x^{-1}(i) > x^{-1}(i+1)
                if xinv(i) > xinv(i + 1):
                    y = Permutation.simple(i, x.n) * x
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    return sorted(seen)


def border_cells(w: Permutation) -> list[Cell]:
    return [(i, j) for (i, j) in w.diagram if i < w.n and w(i + 1) == j]


def southeast_corners(w: Permutation) -> list[Cell]:
    d = w.diagram
    return [(i, j) for (i, j) in d if (i + 1, j) not in d and (i, j + 1) not in d]


def maximal_transition(w: Permutation) -> Transition:
    if w.is_identity():
        raise ValueError("the identity has no maximal transition")
    n = w.n
    alpha, beta = max(
        (a, b)
        for a in range(1, n + 1)
        for b in range(a + 1, n + 1)
        if w(a) > w(b)
    )
    wb = w(beta)
    gammas = []
    for g in range(1, alpha):
        if w(g) >= wb:
            continue
        blocked = any(w(g) <= w(i) <= wb for i in range(g + 1, alpha))
        if not blocked:
            gammas.append(g)
    v = w * Permutation.transposition(alpha, beta, n)
    psis = tuple(v * Permutation.transposition(g, alpha, n) for g in gammas)
    return Transition(w, alpha, beta, v, tuple(gammas), psis)


def index(w: Permutation) -> int:
    n = w.n
    return sum(
        (k - 1) * sum(1 for j in range(k + 1, n + 1) if w(k) > w(j))
        for k in range(1, n + 1)
    )


def pad(w: Permutation, m: int) -> Permutation:
    """Embed ``w`` into ``Sigma_{n+m}`` fixing ``n+1, ..., n+m``."""
    if m < 0:
        raise ValueError("padding must be nonnegative")
    return Permutation(w.word + tuple(range(w.n + 1, w.n + m + 1)))


def reduced_word(w: Permutation, *, rightmost: bool = False) -> list[int]:
    """A reduced word ``[i1, ..., ik]`` with ``w = s_i1 ... s_ik``.

    Built by stripping right descents; ``rightmost`` picks the last descent
    at each step instead of the first, giving a second word for testing
    path independence.
    """
    word: list[int] = []
    x = w
    while not x.is_identity():
        ds = x.descents()
        i = ds[-1] if rightmost else ds[0]
        word.append(i)
        x = x * Permutation.simple(i, x.n)
    return word[::-1]
