from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from schubert.perm import Permutation, all_permutations, pad, reduced_word
from schubert.poly import (
    SparsePoly, check_convolution_identity, divided_difference, double_schubert, double_schubert_along,
    parse_poly, single_schubert, substitute, uniform_assignment,
)

P = Permutation.parse
S4 = all_permutations(4)


def x(i, n=3):
    return SparsePoly.x(i, n)


def y(j, n=3):
    return SparsePoly.y(j, n)


def polys(n=3, max_terms=5, max_deg=4):
    exps = st.tuples(*[st.integers(0, max_deg)] * (2 * n)).filter(lambda e: sum(e) <= max_deg)
    return st.dictionaries(exps, st.integers(-5, 5), max_size=max_terms).map(lambda d: SparsePoly(n, d))


def sympy_schubert(w):
    """Independent oracle: sympy divided differences from the top class."""
    n = w.n
    xs = sympy.symbols(f"x1:{n + 1}")
    ys = sympy.symbols(f"y1:{n + 1}")
    f = sympy.Integer(1)
    for i in range(1, n + 1):
        for j in range(1, n + 1 - i):
            f *= xs[i - 1] - ys[j - 1]
    word = reduced_word(Permutation.longest(n) * w)
    for i in word:
        a, b = xs[i - 1], xs[i]
        g = f.subs({a: b, b: a}, simultaneous=True)
        f = sympy.cancel((f - g) / (a - b))
    return sympy.expand(f), xs, ys


def to_sympy(p: SparsePoly, xs, ys):
    gens = list(xs) + list(ys)
    return sympy.expand(sum(c * sympy.Mul(*[g ** e for g, e in zip(gens, ex)]) for ex, c in p.terms.items()))


# --- arithmetic ------------------------------------------------------------------


def test_budget_mismatch_refused():
    with pytest.raises(ValueError):
        x(1, 2) + x(1, 3)
    assert x(1, 2).with_budget(3) == x(1, 3)
    with pytest.raises(ValueError):
        x(1, 3).with_budget(2)


def test_zero_coefficients_dropped():
    p = x(1) - x(1)
    assert p.is_zero() and p.terms == {}
    assert str(p) == "0"


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys())
def test_render_parse_round_trip(p):
    assert parse_poly(str(p), 3) == p


def test_render_order_and_format():
    p = x(1) ** 2 * x(2) - x(1) * y(1) * y(2) + 3
    assert str(p) == "x1^2*x2 - x1*y1*y2 + 3"


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_poly("x1 +* 2", 3)


# --- divided differences ----------------------------------------------------------


def test_divided_difference_examples():
    assert divided_difference(x(1), 1) == SparsePoly.constant(1, 3)
    assert divided_difference(x(1) * x(2) + y(1), 1).is_zero()


@given(polys())
@settings(max_examples=40)
def test_divided_difference_squares_to_zero(p):
    for i in (1, 2):
        assert divided_difference(divided_difference(p, i), i).is_zero()


@given(polys())
@settings(max_examples=20)
def test_braid_relation(p):
    d = divided_difference
    assert d(d(d(p, 1), 2), 1) == d(d(d(p, 2), 1), 2)


@given(polys())
@settings(max_examples=30)
def test_divided_difference_matches_sympy(p):
    xs = sympy.symbols("x1:4")
    ys = sympy.symbols("y1:4")
    f = to_sympy(p, xs, ys)
    g = f.subs({xs[0]: xs[1], xs[1]: xs[0]}, simultaneous=True)
    expected = sympy.expand(sympy.cancel((f - g) / (xs[0] - xs[1])))
    assert to_sympy(divided_difference(p, 1), xs, ys) == expected


# --- Schubert polynomials ----------------------------------------------------------


def test_321_is_the_product():
    assert double_schubert(P("321")) == (x(1) - y(1)) * (x(1) - y(2)) * (x(2) - y(1))


def test_identity_is_one():
    assert double_schubert(Permutation.identity(4)) == SparsePoly.constant(1, 4)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_simple_reflection_formula(i):
    n = 4
    expected = SparsePoly(n)
    for k in range(1, i + 1):
        expected = expected + SparsePoly.x(k, n) - SparsePoly.y(k, n)
    assert double_schubert(Permutation.simple(i, n)) == expected


@pytest.mark.parametrize("w", S4, ids=str)
def test_matches_independent_oracle(w):
    expected, xs, ys = sympy_schubert(w)
    assert to_sympy(double_schubert(w), xs, ys) == expected


def test_single_schubert_examples():
    assert single_schubert(Permutation.simple(1, 3)) == x(1)
    assert single_schubert(P("321")) == x(1) ** 2 * x(2)


@pytest.mark.parametrize("w", S4, ids=str)
def test_path_independence(w):
    top = Permutation.longest(4)
    a = reduced_word(top * w)
    b = reduced_word(top * w, rightmost=True)
    assert double_schubert_along(w, a) == double_schubert_along(w, b) == double_schubert(w)


@pytest.mark.parametrize("w", all_permutations(3), ids=str)
@pytest.mark.parametrize("m", [1, 2])
def test_stability_under_padding(w, m):
    assert double_schubert(pad(w, m)) == double_schubert(w).with_budget(w.n + m)


# --- evaluation ----------------------------------------------------------------------


def test_substitute_examples():
    assert substitute(double_schubert(P("321")), uniform_assignment(3, 1, -1)) == 8
    p = double_schubert(P("2413"))
    assert substitute(p, uniform_assignment(4)) == p.constant_term()
    with pytest.raises(KeyError):
        substitute(p, {"x1": 1})


def test_vanishes_on_the_diagonal():
    values = [Fraction(3), Fraction(-7, 2), Fraction(11, 5), Fraction(13)]
    assignment = {f"x{i + 1}": v for i, v in enumerate(values)}
    assignment.update({f"y{i + 1}": v for i, v in enumerate(values)})
    for w in S4[1:]:
        assert substitute(double_schubert(w), assignment) == 0, w


def test_count_at_one_minus_one():
    assert substitute(double_schubert(P("4321")), uniform_assignment(4, 1, -1)) == 64


@pytest.mark.parametrize("w", S4, ids=str)
def test_convolution_identity(w):
    assert check_convolution_identity(w)


def test_convolution_identity_for_s1_by_hand():
    # S_1(x) S_{s1}(-y) + S_{s1}(x) S_1(-y) = -y1 + x1
    assert double_schubert(Permutation.simple(1, 2)) == SparsePoly.x(1, 2) - SparsePoly.y(1, 2)
    assert check_convolution_identity(Permutation.simple(1, 2))
