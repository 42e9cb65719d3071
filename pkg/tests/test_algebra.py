import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from canform.algebra import (MultiPoly, PolyMatrix, det_by_permutations, permutation_sign, poly_det, poly_perm,
                             poly_vars)
from canform.graphs import cycle_basis_from_tree, default_tree, graph_polynomial, spanning_tree_polynomial

from corpus import GRAPHS, build

x1, x2, x3 = poly_vars("x1", "x2", "x3")

NAMES = ["x1", "x2", "x3", "y"]
coeffs = st.one_of(st.integers(-6, 6), st.fractions(min_value=-3, max_value=3, max_denominator=5))


@st.composite
def polys(draw):
    nv = len(NAMES)
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * nv), coeffs, max_size=5))
    return MultiPoly.from_terms(NAMES, terms)


def test_cancellation():
    assert (x1 + x2) + (-x2) == x1
    assert (x1 + x2) + (-x2) - x1 == 0


def test_difference_of_squares():
    assert (x1 + x2) * (x1 - x2) == x1 ** 2 - x2 ** 2


def test_text_round_trip():
    b12, b23, b13, b22 = poly_vars("b12", "b23", "b13", "b22")
    p = b12 * b23 + b13 * b22
    text = p.to_text()
    assert text == "b12*b23 + b13*b22"
    assert MultiPoly.parse(text) == p
    assert MultiPoly.parse(text).to_text() == text


def test_text_uses_ascii_minus_and_fractions():
    p = x1 * Fraction(-1, 2) + 3 * x2 ** 2 - 1
    assert p.to_text() == "3*x2^2 - 1/2*x1 - 1"
    assert MultiPoly.parse(p.to_text()) == p
    assert MultiPoly.parse("−x1") == -x1


def test_natural_variable_order():
    p = MultiPoly.var("x10") + MultiPoly.var("x2")
    assert p.variables == ("x2", "x10")


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        MultiPoly.parse("")
    with pytest.raises(ValueError):
        MultiPoly.parse("x1**")


@given(polys())
def test_round_trip_property(p):
    assert MultiPoly.parse(p.to_text()) == p


@given(polys(), polys())
def test_commutative(a, b):
    assert a * b == b * a
    assert a + b == b + a


@given(polys(), polys(), polys())
def test_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(polys(), polys())
def test_exact_division_inverts_product(a, b):
    if b:
        assert (a * b).exact_div(b) == a


def test_det_examples():
    p = MultiPoly.var("p")
    assert PolyMatrix([[p]]).det() == p
    b = PolyMatrix.generic_symmetric(3)
    b12, b13, b22, b23 = poly_vars("b12", "b13", "b22", "b23")
    assert b.submatrix([0, 1], [1, 2]).det() == b12 * b23 - b13 * b22


def test_perm_examples():
    b = PolyMatrix.generic_symmetric(3)
    b12, b13, b22, b23 = poly_vars("b12", "b13", "b22", "b23")
    assert b.submatrix([0, 1], [1, 2]).perm() == b12 * b23 + b13 * b22
    assert b.submatrix([1, 1], [1, 2]).perm() == 2 * b22 * b23


@pytest.mark.parametrize("n", range(1, 8))
def test_perm_all_ones(n):
    from math import factorial
    ones = PolyMatrix([[1] * n for _ in range(n)])
    assert poly_perm(ones) == factorial(n)
    assert poly_perm(ones, "ryser") == factorial(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_det_methods_agree(n):
    rng = random.Random(n)
    for _ in range(20):
        m = PolyMatrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
        assert poly_det(m, "cofactor") == poly_det(m, "fraction_free")


def test_det_methods_agree_rational():
    rng = random.Random(7)
    for _ in range(20):
        m = PolyMatrix([[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)] for _ in range(4)])
        assert poly_det(m, "cofactor") == poly_det(m, "fraction_free")


def _perm_by_permutations(m):
    total = 0
    for sigma in itertools.permutations(range(m.rows)):
        t = 1
        for i, j in enumerate(sigma):
            t = t * m[i, j]
        total = total + t
    return total


@pytest.mark.parametrize("n", range(1, 5))
def test_symbolic_det_and_perm_against_permutation_sums(n):
    m = PolyMatrix.generic(n)
    assert poly_det(m) == det_by_permutations(m)
    assert poly_perm(m, "naive") == _perm_by_permutations(m)
    assert poly_perm(m, "ryser") == _perm_by_permutations(m)


def test_symbolic_fraction_free_det():
    m = PolyMatrix.generic(4)
    assert poly_det(m, "fraction_free") == poly_det(m)


@pytest.mark.parametrize("n", [5, 6])
def test_ryser_matches_naive(n):
    rng = random.Random(n)
    m = PolyMatrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
    assert poly_perm(m, "ryser") == poly_perm(m, "naive") == _perm_by_permutations(m)


def test_permutation_sign():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([1, 2, 0]) == 1
    assert permutation_sign(["b", "a"]) == -1


def test_non_square_rejected():
    m = PolyMatrix([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(ValueError):
        m.det()
    with pytest.raises(ValueError):
        m.perm()
    with pytest.raises(ValueError):
        poly_det(m, "fraction_free")


def test_unknown_methods_rejected():
    m = PolyMatrix.identity(2)
    with pytest.raises(ValueError):
        poly_det(m, "lu")
    with pytest.raises(ValueError):
        poly_perm(m, "glynn")


def test_inverse_times_matrix_is_identity():
    m = PolyMatrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert m.inverse() @ m == PolyMatrix.identity(3)


def test_subs_and_evaluate():
    p = x1 ** 2 * x2 + 3 * x3
    assert p.evaluate({"x1": 2, "x2": Fraction(1, 2), "x3": 1}) == 5
    assert p.subs({"x1": 1}) == x2 + 3 * x3
    assert p.diff("x1") == 2 * x1 * x2


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_matrix_tree_identity(name):
    g = build(name)
    basis = cycle_basis_from_tree(g, default_tree(g))
    assert graph_polynomial(g, basis) == spanning_tree_polynomial(g)
