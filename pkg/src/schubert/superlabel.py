"""
Balanced super labelings (BSLs) of permutation diagrams.

Letters of the super alphabet ``... < 2' < 1' < 1 < 2 < ...`` are encoded as
nonzero ints: unmarked ``i`` is ``+i`` and marked ``i'`` is ``-i``.  With this
encoding the integer order *is* the alphabet order.

>>> from schubert.perm import Permutation
>>> len(enumerate_bsl(Permutation.parse("321")))
8
>>> T = Labeling.from_string(Permutation.parse("321"), "1,1|2")
>>> print(monomial(T))
x1^2*x2
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .perm import Permutation
from .poly import SparsePoly

__all__ = [
    "marked", "unmarked", "is_marked", "format_letter", "parse_letter",
    "Labeling", "is_balanced", "is_bsl", "enumerate_bsl", "monomial",
    "bsl_generating_function", "star", "factor_bsl", "compose_factorization",
    "homological_degree", "weight_vector", "dominance_leq", "remove_border_cell",
]

Cell = tuple[int, int]


def marked(i: int) -> int:
    return -i


def unmarked(i: int) -> int:
    return i


def is_marked(letter: int) -> bool:
    return letter < 0


def format_letter(letter: int) -> str:
    return f"{-letter}'" if letter < 0 else str(letter)


def parse_letter(text: str) -> int:
    text = text.strip()
    if text.endswith("'"):
        value = -int(text[:-1])
    else:
        value = int(text)
    if value == 0:
        raise ValueError("0 is not a letter")
    return value


@dataclass(frozen=True)
class Labeling:
    """Letters on the cells of ``D(w)``, stored in row-major cell order."""

    w: Permutation
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != len(self.w.diagram):
            raise ValueError(
                f"labeling has {len(self.entries)} entries but D({self.w}) has "
                f"{len(self.w.diagram)} cells"
            )
        if any(e == 0 for e in self.entries):
            raise ValueError("0 is not a letter")

    @classmethod
    def from_cells(cls, w: Permutation, mapping: dict[Cell, int]) -> Labeling:
        if set(mapping) != set(w.diagram.cells):
            raise ValueError("labeling domain differs from the diagram")
        return cls(w, tuple(mapping[c] for c in w.diagram.cells))

    @classmethod
    def from_string(cls, w: Permutation, text: str) -> Labeling:
        """Parse ``"1,2'|2"``: nonempty diagram rows top to bottom, left to right."""
        rows = [r for r in text.split("|")] if text else []
        drows = list(w.diagram.rows().values())
        if len(rows) != len(drows):
            raise ValueError(f"expected {len(drows)} rows, got {len(rows)}")
        mapping = {}
        for cells, row in zip(drows, rows):
            letters = [parse_letter(t) for t in row.split(",")]
            if len(letters) != len(cells):
                raise ValueError(f"row {row!r} does not fit {len(cells)} cells")
            mapping.update(zip(cells, letters))
        return cls.from_cells(w, mapping)

    def __getitem__(self, cell: Cell) -> int:
        return self.as_dict()[cell]

    def as_dict(self) -> dict[Cell, int]:
        return dict(zip(self.w.diagram.cells, self.entries))

    def rows(self) -> dict[int, tuple[int, ...]]:
        """Row index -> letters left to right (nonempty rows only)."""
        out: dict[int, list[int]] = {}
        for (i, _), letter in zip(self.w.diagram.cells, self.entries):
            out.setdefault(i, []).append(letter)
        return {i: tuple(v) for i, v in out.items()}

    def content(self) -> Counter:
        return Counter(self.entries)

    def serialize(self) -> str:
        return "|".join(",".join(format_letter(l) for l in row) for row in self.rows().values())

    def to_json(self) -> dict:
        return {
            "w": str(self.w),
            "entries": [[i, j, format_letter(l)] for (i, j), l in zip(self.w.diagram.cells, self.entries)],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> Labeling:
        if isinstance(data, str):
            data = json.loads(data)
        w = Permutation.parse(data["w"])
        return cls.from_cells(w, {(int(i), int(j)): parse_letter(l) for i, j, l in data["entries"]})

    def __str__(self):
        return self.serialize()


def _hooks(w: Permutation) -> list[tuple[int, list[int]]]:
    """For each cell index, the arm length and the hook's cell indices."""
    cells = w.diagram.cells
    pos = {c: k for k, c in enumerate(cells)}
    out = []
    for k, (i, j) in enumerate(cells):
        arm = [pos[c] for c in cells if c[0] == i and c[1] > j]
        leg = [pos[c] for c in cells if c[1] == j and c[0] > i]
        out.append((len(arm), [k] + arm + leg))
    return out


def _hook_balanced(entries, corner: int, arm: int, members: list[int]) -> bool:
    # sorted increasingly from the arm's end, the corner sits at position `arm`
    return sorted(entries[m] for m in members)[arm] == entries[corner]


def is_balanced(T: Labeling) -> bool:
    return all(_hook_balanced(T.entries, k, arm, members)
               for k, (arm, members) in enumerate(_hooks(T.w)))


def is_bsl(T: Labeling) -> bool:
    cells = T.w.diagram.cells
    for (i, j), letter in zip(cells, T.entries):
        if not (-j <= letter <= i):
            return False
    seen_cols: set[tuple[int, int]] = set()
    seen_rows: set[tuple[int, int]] = set()
    for (i, j), letter in zip(cells, T.entries):
        if letter > 0:
            if (j, letter) in seen_cols:
                return False
            seen_cols.add((j, letter))
        else:
            if (i, letter) in seen_rows:
                return False
            seen_rows.add((i, letter))
    return is_balanced(T)


def enumerate_bsl(w: Permutation) -> list[Labeling]:
    """All BSLs of ``D(w)`` by backtracking in row-major cell order.

    Candidates at ``(i, j)`` are ``j', ..., 1', 1, ..., i`` in alphabet order.
    Strictness is pruned on placement; a hook is checked as soon as its last
    cell (in scan order) is filled.
    """
    cells = w.diagram.cells
    if not cells:
        return [Labeling(w, ())]
    hooks = _hooks(w)
    closing: list[list[tuple[int, int, list[int]]]] = [[] for _ in cells]
    for k, (arm, members) in enumerate(hooks):
        closing[max(members)].append((k, arm, members))
    same_col = [[p for p in range(k) if cells[p][1] == cells[k][1]] for k in range(len(cells))]
    same_row = [[p for p in range(k) if cells[p][0] == cells[k][0]] for k in range(len(cells))]
    candidates = [list(range(-j, 0)) + list(range(1, i + 1)) for i, j in cells]

    out: list[Labeling] = []
    entries = [0] * len(cells)
    last = len(cells) - 1

    def place(k: int):
        for letter in candidates[k]:
            if letter > 0:
                if any(entries[p] == letter for p in same_col[k]):
                    continue
            elif any(entries[p] == letter for p in same_row[k]):
                continue
            entries[k] = letter
            if all(_hook_balanced(entries, c, arm, members) for c, arm, members in closing[k]):
                if k == last:
                    out.append(Labeling(w, tuple(entries)))
                else:
                    place(k + 1)
        entries[k] = 0

    place(0)
    return out


def monomial(T: Labeling) -> SparsePoly:
    """``prod x_i^{f(i)} * prod (-y_i)^{f(i')}`` with budget ``n = T.w.n``."""
    n = T.w.n
    e = [0] * (2 * n)
    sign = 1
    for letter in T.entries:
        if letter > 0:
            e[letter - 1] += 1
        else:
            e[n - letter - 1] += 1
            sign = -sign
    return SparsePoly(n, {tuple(e): sign})


def bsl_generating_function(w: Permutation) -> SparsePoly:
    total = SparsePoly(w.n)
    for T in enumerate_bsl(w):
        total = total + monomial(T)
    return total


def star(T: Labeling) -> Labeling:
    """Transpose and swap ``i <-> i'``; a labeling of ``D(w^{-1})``."""
    winv = T.w.inverse()
    return Labeling.from_cells(winv, {(j, i): -l for (i, j), l in T.as_dict().items()})


def homological_degree(T: Labeling) -> int:
    return sum(1 for l in T.entries if l > 0)


def weight_vector(T: Labeling) -> tuple[int, ...]:
    """``(a_{-n}, ..., a_{-1}, a_1, ..., a_n)``: counts of ``n', ..., 1', 1, ..., n``."""
    n = T.w.n
    c = T.content()
    return tuple(c[-i] for i in range(n, 0, -1)) + tuple(c[i] for i in range(1, n + 1))


def dominance_leq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """``a <= b`` in dominance order: every prefix sum of ``a`` is at most that of ``b``."""
    if len(a) != len(b):
        raise ValueError("weight vectors of different length")
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa > sb:
            return False
    return True


def remove_border_cell(T: Labeling, row: int) -> Labeling:
    """``(T minus (row, w(row+1))) * s_row``, a labeling of ``D(w s_row)``."""
    w = T.w
    cell = (row, w(row + 1))
    d = T.as_dict()
    if cell not in d:
        raise ValueError(f"{cell} is not a border cell of D({w})")
    del d[cell]
    moved = {}
    for (i, j), l in d.items():
        i2 = row + 1 if i == row else row if i == row + 1 else i
        moved[(i2, j)] = l
    return Labeling.from_cells(w * Permutation.simple(row, w.n), moved)


def factor_bsl(T: Labeling) -> tuple[Labeling, Labeling, Permutation, Permutation]:
    """Split a BSL as ``T = T_u * v + u * T_v`` with ``w = u v``.

    Returns ``(T_u, T_v, u, v)``: ``T_u`` is the marked-only part on ``D(u)``
    and ``T_v`` the unmarked-only part on ``D(v)``.  Found by repeatedly
    stripping border cells that hold the largest unmarked label.
    """
    if not is_bsl(T):
        raise ValueError("factor_bsl needs a BSL")
    w = T.w
    n = w.n
    cur = T
    while any(l > 0 for l in cur.entries):
        top = max(cur.entries)
        d = cur.as_dict()
        rows = [i for i in range(1, n) if d.get((i, cur.w(i + 1))) == top]
        if not rows:
            raise ArithmeticError(f"no border cell carries {top} in {cur}")
        cur = remove_border_cell(cur, rows[0])
    u = cur.w
    v = u.inverse() * w
    if u.length + v.length != w.length:
        raise ArithmeticError("factorization is not length-additive")
    full = T.as_dict()
    vinv = v.inverse()
    t_u = Labeling.from_cells(u, {(r, j): full[(vinv(r), j)] for (r, j) in u.diagram})
    t_v = Labeling.from_cells(v, {(i, c): full[(i, u(c))] for (i, c) in v.diagram})
    return t_u, t_v, u, v


def compose_factorization(t_u: Labeling, t_v: Labeling) -> Labeling:
    """Inverse of :func:`factor_bsl`: build ``T_u * v + u * T_v`` on ``D(u v)``.

    A cell ``(r, j)`` of ``D(u)`` lands on ``(v^{-1}(r), j)`` and a cell
    ``(i, c)`` of ``D(v)`` on ``(i, u(c))``.
    """
    u, v = t_u.w, t_v.w
    w = u * v
    if u.length + v.length != w.length:
        raise ValueError("u v is not length-additive")
    mapping: dict[Cell, int] = {}
    vinv = v.inverse()
    for (r, j), l in t_u.as_dict().items():
        mapping[(vinv(r), j)] = l
    for (i, c), l in t_v.as_dict().items():
        cell = (i, u(c))
        if cell in mapping:
            raise ArithmeticError(f"cells overlap at {cell}")
        mapping[cell] = l
    return Labeling.from_cells(w, mapping)
