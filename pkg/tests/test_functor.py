import json
import random
from collections import defaultdict
from fractions import Fraction

import pytest

from schubert.complex import ambient_differential
from schubert.functor import (
    ambient_basis, build_functor_image, graded_character, phi, render_column_element, row_element,
    straighten, straighten_many,
)
from schubert.linalg import NotInSpanError, rank_rational
from schubert.perm import Permutation, all_permutations
from schubert.poly import SparsePoly, double_schubert
from schubert.superlabel import Labeling, enumerate_bsl, weight_vector

P = Permutation.parse
W321 = P("321")
S4 = all_permutations(4)


# --- the map on row elements ----------------------------------------------------


def test_phi_examples_321():
    assert phi(W321, ((1, 1), (2,))) == {((1, 2), (1,)): 1}
    assert phi(W321, ((1, 1), (1,))) == {}


def test_phi_of_marked_column_conflict_is_zero():
    # both rows put 2' in column 1 or column 2; column 1 refuses 2'
    assert phi(W321, ((-2, -1), (-2,))) == {}


def test_phi_input_validation():
    with pytest.raises(ValueError):
        phi(W321, ((1, 1),))           # wrong number of rows
    with pytest.raises(ValueError):
        phi(W321, ((1,), (1,)))        # wrong row size
    with pytest.raises(ValueError):
        phi(W321, ((2, 1), (1,)))      # unsorted
    with pytest.raises(ValueError):
        phi(W321, ((1, 2), (1,)))      # 2 is outside the flag in row 1
    with pytest.raises(ValueError):
        phi(W321, ((-1, -1), (1,)))    # repeated marked letter


@pytest.mark.parametrize("w", S4, ids=str)
def test_phi_preserves_weight_and_never_kills_a_bsl(w):
    for T in enumerate_bsl(w):
        image = phi(w, row_element(T))
        assert image, T
        content = sorted(T.entries)
        for key in image:
            assert sorted(l for col in key for l in col) == content


# --- the image matrix ----------------------------------------------------------------


def test_small_images():
    s1 = build_functor_image(Permutation.simple(1, 2))
    assert s1.dimension == 2
    assert rank_rational(s1.dense_matrix()) == 2
    ident = build_functor_image(Permutation.identity(3))
    assert ident.dimension == 1 and ident.dense_matrix() == [[1]]


def test_321_image_has_rank_eight():
    F = build_functor_image(W321)
    assert F.dimension == 8
    assert rank_rational(F.dense_matrix()) == 8


def test_basis_sorted_by_degree():
    F = build_functor_image(P("2413"))
    degrees = [sum(1 for l in T.entries if l > 0) for T in F.bsl_basis]
    assert degrees == sorted(degrees)
    for T in F.bsl_basis:
        assert F.bsl_basis[F.index_of(T)] == T


@pytest.mark.parametrize("w", S4, ids=str)
def test_bsl_images_span_all_row_element_images(w):
    F = build_functor_image(w)
    basis = ambient_basis(w)
    keys = sorted({k for rows in basis for k in phi(w, rows)} | set(F.columns))
    index = {k: r for r, k in enumerate(keys)}
    M = [[0] * len(basis) for _ in keys]
    for c, rows in enumerate(basis):
        for k, a in phi(w, rows).items():
            M[index[k]][c] = a
    assert rank_rational(M) == F.dimension


def test_tensor_count_for_disjoint_blocks():
    # the diagram splits into blocks acting on disjoint rows and columns
    z = lambda text: len(enumerate_bsl(P(text)))
    assert z("2143") == z("2134") * z("1243") == 2 * 6
    assert z("21543") == z("21345") * z("12543")


# --- straightening ------------------------------------------------------------------


def test_straighten_basis_vectors():
    F = build_functor_image(W321)
    for k, col in enumerate(F.matrix):
        coords = straighten(col, F)
        assert coords == [Fraction(int(j == k)) for j in range(F.dimension)]


def test_straighten_zero_and_fractions():
    F = build_functor_image(W321)
    assert straighten({}, F) == [0] * 8
    half = {k: Fraction(a, 2) for k, a in F.matrix[3].items()}
    assert straighten(half, F)[3] == Fraction(1, 2)


@pytest.mark.parametrize("w", [P("321"), P("2413"), P("4321")], ids=str)
def test_straighten_random_row_elements(w):
    F = build_functor_image(w)
    rng = random.Random(str(w))
    basis = ambient_basis(w)
    for rows in rng.sample(basis, min(30, len(basis))):
        v = phi(w, rows)
        coords = straighten(v, F)
        assert F.expand(coords) == {k: Fraction(a) for k, a in v.items()}


def test_straighten_outside_the_image():
    F = build_functor_image(W321)
    foreign = ((2, 2), (1,))  # no BSL image has this column element
    assert foreign not in F.columns
    with pytest.raises(NotInSpanError) as info:
        straighten({foreign: 1}, F)
    assert info.value.residual


def test_straighten_many_agrees_with_single():
    F = build_functor_image(P("2413"))
    vectors = [F.matrix[0], F.matrix[-1], {}]
    assert straighten_many(vectors, F) == [straighten(v, F) for v in vectors]


@pytest.mark.parametrize("w", S4, ids=str)
def test_image_is_closed_under_the_ambient_differential(w):
    F = build_functor_image(w)
    rng = random.Random(f"closed:{w}")
    values = {(m, u): rng.randint(-9, 9) for m in range(1, 5) for u in range(1, 5)}
    for T in F.bsl_basis:
        v = defaultdict(int)
        for sign, m, u, rows in ambient_differential(row_element(T), 4):
            for k, a in phi(w, rows).items():
                v[k] += sign * values[(m, u)] * a
        straighten(v, F)  # raises if the image leaks


@pytest.mark.parametrize("w", S4, ids=str)
def test_ambient_differential_squares_to_zero(w):
    for rows in ambient_basis(w):
        acc = defaultdict(int)
        for s1, m1, u1, r1 in ambient_differential(rows, 4):
            for s2, m2, u2, r2 in ambient_differential(r1, 4):
                acc[(frozenset([(m1, u1), (m2, u2)]), r2)] += s1 * s2
        assert not any(acc.values()), rows


# --- characters and serialization ------------------------------------------------------


def test_graded_character_small_cases():
    sch, ch = graded_character(build_functor_image(Permutation.simple(1, 2)))
    x1, y1 = SparsePoly.x(1, 2), SparsePoly.y(1, 2)
    assert sch == x1 - y1
    assert ch == -x1 - y1
    sch, ch = graded_character(build_functor_image(Permutation.identity(3)))
    assert sch == ch == SparsePoly.constant(1, 3)


@pytest.mark.parametrize("w", S4, ids=str)
def test_supercharacter_is_the_schubert_polynomial(w):
    sch, ch = graded_character(build_functor_image(w))
    assert sch == double_schubert(w)
    n = w.n
    assert ch == double_schubert(w).rename({i: (-1, i) for i in range(n)})


def test_weight_blocks_cover_the_basis():
    F = build_functor_image(P("4321"))
    assert sorted(i for members in F.blocks.values() for i in members) == list(range(64))
    for members in F.blocks.values():
        assert len({weight_vector(F.bsl_basis[i]) for i in members}) == 1


def test_json_dump():
    F = build_functor_image(W321)
    data = json.loads(F.dumps())
    assert data["w"] == "321"
    assert len(data["bsl"]) == 8 and data["bsl"][0] == F.bsl_basis[0].serialize()
    assert all(0 <= r < len(data["columns"]) and 0 <= c < 8 for r, c, _ in data["matrix"])
    assert render_column_element(((1, 2), (1,))) == "1,2|1"
    assert Labeling.from_string(W321, data["bsl"][0]) == F.bsl_basis[0]
