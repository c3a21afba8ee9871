"""
Sparse integer polynomials in ``x1..xn, y1..yn`` and double Schubert
polynomials.

A polynomial carries a variable budget ``n``; its exponent vectors have
length ``2n`` (x-exponents first).  Arithmetic between polynomials with
different budgets is refused, use :meth:`SparsePoly.with_budget`.

>>> from schubert.perm import Permutation
>>> print(double_schubert(Permutation.parse("321")))
x1^2*x2 - x1^2*y1 - x1*x2*y1 - x1*x2*y2 + x1*y1^2 + x1*y1*y2 + x2*y1*y2 - y1^2*y2
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .perm import Permutation, reduced_word, weak_order_ideal

__all__ = [
    "SparsePoly", "divided_difference", "double_schubert", "double_schubert_along",
    "single_schubert", "substitute", "uniform_assignment", "check_convolution_identity",
    "parse_poly",
]

Exponent = tuple[int, ...]


class SparsePoly:
    """Immutable map from exponent vectors to nonzero integer coefficients."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, int] | None = None):
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != 2 * n:
                raise ValueError(f"exponent {e} does not fit budget n={n}")
            if c:
                clean[tuple(e)] = int(c)
        self.terms: dict[Exponent, int] = clean
        self._hash = None

    # --- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c: int, n: int) -> SparsePoly:
        return cls(n, {(0,) * (2 * n): c})

    @classmethod
    def x(cls, i: int, n: int) -> SparsePoly:
        e = [0] * (2 * n)
        e[i - 1] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def y(cls, i: int, n: int) -> SparsePoly:
        e = [0] * (2 * n)
        e[n + i - 1] = 1
        return cls(n, {tuple(e): 1})

    def with_budget(self, n: int) -> SparsePoly:
        """Re-express with a larger (or equal) variable budget."""
        if n < self.n:
            raise ValueError("cannot shrink the variable budget")
        pad = (0,) * (n - self.n)
        return SparsePoly(n, {e[: self.n] + pad + e[self.n:] + pad: c for e, c in self.terms.items()})

    # --- arithmetic ---------------------------------------------------

    def _check(self, other: SparsePoly):
        if self.n != other.n:
            raise ValueError(f"variable budgets differ ({self.n} vs {other.n})")

    def _coerce(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return SparsePoly.constant(other, self.n)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return SparsePoly(self.n, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = SparsePoly.constant(1, self.n)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = SparsePoly.constant(other, self.n)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # --- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> int:
        return self.terms.get((0,) * (2 * self.n), 0)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in graded lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def variables(self) -> set[str]:
        names = set()
        for e in self.terms:
            for k, a in enumerate(e):
                if a:
                    names.add(_var_name(k, self.n))
        return names

    def rename(self, target: Mapping[int, tuple[int, int]]) -> SparsePoly:
        """Signed variable renaming.

        ``target`` maps a variable slot (0..2n-1) to ``(sign, slot)``;
        unmapped slots are left alone.  Used for substitutions such as
        ``x -> -y``.
        """
        out: dict[Exponent, int] = {}
        for e, c in self.terms.items():
            new = [0] * (2 * self.n)
            sign = 1
            for k, a in enumerate(e):
                if not a:
                    continue
                s, slot = target.get(k, (1, k))
                new[slot] += a
                if s < 0 and a % 2:
                    sign = -sign
            key = tuple(new)
            out[key] = out.get(key, 0) + sign * c
        return SparsePoly(self.n, out)

    def drop_y(self) -> SparsePoly:
        """Set every ``y_j`` to zero."""
        n = self.n
        return SparsePoly(n, {e: c for e, c in self.terms.items() if not any(e[n:])})

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"SparsePoly(n={self.n}, {render(self)!r})"


def _var_name(slot: int, n: int) -> str:
    return f"x{slot + 1}" if slot < n else f"y{slot - n + 1}"


def render(p: SparsePoly) -> str:
    """Canonical text, e.g. ``"x1^2*x2 - x1*y1*y2 + 3"``."""
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in p.sorted_terms():
        factors = []
        for k, a in enumerate(e):
            if a == 1:
                factors.append(_var_name(k, p.n))
            elif a > 1:
                factors.append(f"{_var_name(k, p.n)}^{a}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR_RE = re.compile(r"^(?:(\d+)|([xy])(\d+)(?:\^(\d+))?)$")


def parse_poly(text: str, n: int | None = None) -> SparsePoly:
    """Parse the canonical rendering back into a :class:`SparsePoly`.

    The budget defaults to the largest variable index present (at least 1).
    """
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    raw_terms = []
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(1) is None and raw_terms:
            raise ValueError(f"missing operator near {text[pos:]!r}")
        coeff = sign
        powers: dict[tuple[str, int], int] = {}
        for factor in m.group(2).strip().split("*"):
            f = _FACTOR_RE.match(factor.strip())
            if not f:
                raise ValueError(f"bad factor {factor!r}")
            if f.group(1) is not None:
                coeff *= int(f.group(1))
            else:
                key = (f.group(2), int(f.group(3)))
                if key[1] < 1:
                    raise ValueError(f"bad variable index in {factor!r}")
                powers[key] = powers.get(key, 0) + int(f.group(4) or 1)
        raw_terms.append((coeff, powers))
        pos = m.end()
    top = max([i for _, pw in raw_terms for (_, i) in pw] + [1])
    if n is None:
        n = top
    elif top > n:
        raise ValueError(f"variable index {top} exceeds budget {n}")
    out: dict[Exponent, int] = {}
    for coeff, powers in raw_terms:
        e = [0] * (2 * n)
        for (kind, i), a in powers.items():
            e[(i - 1) if kind == "x" else (n + i - 1)] += a
        key = tuple(e)
        out[key] = out.get(key, 0) + coeff
    return SparsePoly(n, out)


def divided_difference(p: SparsePoly, i: int) -> SparsePoly:
    """``(P - s_i P) / (x_i - x_{i+1})`` computed monomial by monomial.

    For ``x_i^a x_{i+1}^b`` with ``a > b`` the quotient is
    ``(x_i x_{i+1})^b * sum_{k<a-b} x_i^{a-b-1-k} x_{i+1}^k``; the case
    ``a < b`` is the negative of the swapped one and ``a == b`` gives zero.
    """
    n = p.n
    if not 1 <= i < n:
        raise ValueError(f"divided difference index {i} out of range for n={n}")
    a_slot, b_slot = i - 1, i
    out: dict[Exponent, int] = {}
    for e, c in p.terms.items():
        a, b = e[a_slot], e[b_slot]
        if a == b:
            continue
        sign = 1
        if a < b:
            a, b, sign = b, a, -1
        base = list(e)
        for k in range(a - b):
            base[a_slot] = a - 1 - k
            base[b_slot] = b + k
            key = tuple(base)
            out[key] = out.get(key, 0) + sign * c
    return SparsePoly(n, out)


def _top_class(n: int) -> SparsePoly:
    result = SparsePoly.constant(1, n)
    for i in range(1, n + 1):
        for j in range(1, n + 1 - i):
            result = result * (SparsePoly.x(i, n) - SparsePoly.y(j, n))
    return result


_SCHUBERT_CACHE: dict[tuple[int, ...], SparsePoly] = {}


def double_schubert(w: Permutation) -> SparsePoly:
    """The double Schubert polynomial, memoized by one-line word."""
    cached = _SCHUBERT_CACHE.get(w.word)
    if cached is not None:
        return cached
    n = w.n
    if w == Permutation.longest(n):
        result = _top_class(n)
    else:
        # any ascent i gives l(w s_i) = l(w) + 1 and S_w = d_i S_{w s_i}
        i = next(k for k in range(1, n) if w(k) < w(k + 1))
        result = divided_difference(double_schubert(w * Permutation.simple(i, n)), i)
    # insertion is idempotent, so concurrent writers agree
    _SCHUBERT_CACHE.setdefault(w.word, result)
    return result


def double_schubert_along(w: Permutation, word: list[int]) -> SparsePoly:
    """Compute ``S_w`` from the top class along an explicit path.

    ``word`` must be a reduced word for ``w0 * w``; the operators are applied
    as ``d_{ik} ... d_{i1}`` to ``S_{w0}``.  No memoization.
    """
    n = w.n
    w0 = Permutation.longest(n)
    check = w0
    for i in word:
        check = check * Permutation.simple(i, n)
    if check != w or len(word) != w0.length - w.length:
        raise ValueError("word is not a reduced word for w0 * w")
    p = _top_class(n)
    for i in word:
        p = divided_difference(p, i)
    return p


def single_schubert(w: Permutation) -> SparsePoly:
    return double_schubert(w).drop_y()


def uniform_assignment(n: int, x=0, y=0) -> dict[str, Fraction]:
    """All ``x_i`` set to ``x`` and all ``y_j`` set to ``y``."""
    out = {f"x{i}": Fraction(x) for i in range(1, n + 1)}
    out.update({f"y{i}": Fraction(y) for i in range(1, n + 1)})
    return out


def substitute(p: SparsePoly, assignment: Mapping[str, Fraction | int]) -> Fraction:
    """Exact rational evaluation; every variable occurring in ``p`` must be assigned."""
    missing = p.variables() - set(assignment)
    if missing:
        raise KeyError(f"no value for {', '.join(sorted(missing))}")
    n = p.n
    values = [Fraction(assignment.get(_var_name(k, n), 0)) for k in range(2 * n)]
    total = Fraction(0)
    for e, c in p.terms.items():
        term = Fraction(c)
        for v, a in zip(values, e):
            if a:
                term *= v ** a
        total += term
    return total


def x_to_minus_y(p: SparsePoly) -> SparsePoly:
    """Substitute ``x_i -> -y_i`` (the input must not involve ``y``)."""
    n = p.n
    return p.rename({k: (-1, n + k) for k in range(n)})


def check_convolution_identity(w: Permutation) -> bool:
    """``S_w(x, y) == sum_{u <=_W w} S_u(x) * S_{u w^{-1}}(-y)``."""
    total = SparsePoly(w.n)
    winv = w.inverse()
    for u in weak_order_ideal(w):
        total = total + single_schubert(u) * x_to_minus_y(single_schubert(u * winv))
    return total == double_schubert(w)
