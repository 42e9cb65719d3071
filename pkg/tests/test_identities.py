import itertools
import random
from fractions import Fraction
from math import comb, factorial

import pytest

from canform.algebra import MultiPoly, PolyMatrix, poly_det, poly_vars
from canform.exterior import ExtForm, FormMatrix
from canform.graphs import GraphError, edge_var, wheel
from canform.identities import (antisym_perm_bruteforce, antisym_perm_recursive, assemble_symmetric,
                                block_indices, canonical_form_direct_at_point, canonical_form_direct_symbolic,
                                canonical_form_graph, canonical_form_symmetric, enumerate_dk,
                                invariant_form_bruteforce, jacobi_minor_check, jacobi_sign, permanent_poly,
                                phi_matrix, projective_volume_form, q_polynomial, sigma_poly, sigma_recursive,
                                symmetric_trace, symmetric_trace_bruteforce, theorem1_check, two_row_expansion)
from canform.suites import (closed_vs_direct_suite, jacobi_suite, perm_sigma_suite, random_int_matrix,
                            sym_trace_suite, thm1_suite)
from canform.typenu import TypeNu, all_types, omega_form, wheel_type

from corpus import TOP_FORM_GRAPHS, build

B3 = PolyMatrix.generic(3)
b11, b12, b13, b21, b22, b23, b31, b32, b33 = poly_vars("b11", "b12", "b13", "b21", "b22", "b23",
                                                       "b31", "b32", "b33")


# permanents of repeated rows and columns

def test_permanent_poly_examples():
    bs = PolyMatrix.generic_symmetric(3)
    assert permanent_poly((1, 1, 0), (0, 1, 1), bs) == b12 * b23 + b13 * b22
    assert permanent_poly((0, 2, 0), (0, 1, 1), bs) == 2 * b22 * b23


def test_permanent_poly_edge_cases():
    assert permanent_poly((-1, 2, 0), (0, 1, 0), B3) == 0
    assert permanent_poly((0, 0, 0), (0, 0, 0), B3) == 1
    with pytest.raises(ValueError):
        permanent_poly((1, 1, 0), (0, 0, 1), B3)


# the matrices Phi_nu

def test_phi_rank_two():
    b = PolyMatrix.generic(2)
    b11_, b21_ = poly_vars("b11", "b21")
    assert phi_matrix(TypeNu.parse(2, "11,12,22"), b).tolist() == [[b21_, b11_], [0, 2 * b21_]]


def test_phi_rank_three_examples():
    nu1 = TypeNu.parse(3, "11,12,22,23,33")
    nu2 = TypeNu.parse(3, "11,12,13,22,33")
    nu3 = TypeNu.parse(3, "13,23,33,31,32")
    s = b21 * b32 + b22 * b31
    assert phi_matrix(nu1, B3).tolist() == [
        [s, b11 * b32 + b12 * b31, b11 * b22 + b12 * b21],
        [0, 2 * s, 2 * b21 * b22],
        [0, 2 * b31 * b32, 2 * s],
    ]
    assert phi_matrix(nu2, B3).tolist() == [
        [2 * b21 * b31, 2 * b11 * b31, 2 * b11 * b21],
        [0, 4 * b21 * b31, 2 * b21 ** 2],
        [0, 2 * b31 ** 2, 4 * b21 * b31],
    ]
    assert phi_matrix(nu3, B3).tolist() == [
        [2 * b33 ** 2, 0, 4 * b13 * b33],
        [0, 2 * b33 ** 2, 4 * b23 * b33],
        [0, 0, 6 * b33 ** 2],
    ]


def test_trace_of_phi():
    for nu in all_types(3):
        w = nu.weight()
        phi = phi_matrix(nu, B3)
        tr = phi[0, 0] + phi[1, 1] + phi[2, 2]
        assert MultiPoly.coerce(tr) == MultiPoly.coerce(
            5 * permanent_poly([x - 1 for x in w.q], [x - 1 for x in w.p], B3))


def test_phi_rejects_wrong_size():
    with pytest.raises(ValueError):
        phi_matrix(TypeNu.parse(2, "11,12,22"), B3)


# (B Omega_nu)^(2n-1) = det(B) Phi_nu(B) omega_nu

def test_power_identity_rank_two_exhaustive():
    res = thm1_suite(2)
    assert res.ok and res.instances == 4


def test_power_identity_rank_three_examples():
    for text in ("11,12,22,23,33", "11,12,13,22,33", "13,23,33,31,32"):
        assert theorem1_check(TypeNu.parse(3, text), B3)


def test_power_identity_rank_three_exhaustive():
    res = thm1_suite(3)
    assert res.ok, res.failures
    assert res.instances == 126


def test_power_identity_rank_four_random():
    res = thm1_suite(4, trials=50, seed=3)
    assert res.ok, res.failures


# paired-block partitions

def _as_sets(parts):
    return {frozenset(frozenset(map(frozenset, blk)) for blk in p.blocks) for p in parts}


def test_dk_examples():
    assert [p.blocks for p in enumerate_dk(2, 1)] == [(((1,), (2,)),)]
    assert _as_sets(enumerate_dk(4, 1)) == _as_sets_literal([[((1, 2), (3, 4))], [((1, 3), (2, 4))],
                                                             [((1, 4), (2, 3))]])
    assert _as_sets(enumerate_dk(4, 2)) == _as_sets_literal([[((1,), (2,)), ((3,), (4,))],
                                                             [((1,), (3,)), ((2,), (4,))],
                                                             [((1,), (4,)), ((2,), (3,))]])
    assert list(enumerate_dk(4, 3)) == []


def _as_sets_literal(items):
    return {frozenset(frozenset(map(frozenset, blk)) for blk in p) for p in items}


def test_dk_counts_and_errors():
    for m in (2, 4, 6, 8):
        for k in range(1, m // 2 + 1):
            parts = list(enumerate_dk(m, k))
            assert len(parts) == len(_as_sets(parts))
            for p in parts:
                assert sorted(x for blk in p.blocks for half in blk for x in half) == list(range(1, m + 1))
                assert all(len(i) == len(j) and min(i) < min(j) for i, j in p.blocks)
            assert len(parts) * factorial(k) == _split_count(m, k)
    with pytest.raises(ValueError):
        list(enumerate_dk(3, 1))


def _split_count(m, k):
    """Ordered choices of k even blocks, each split into an unordered pair of equal halves."""
    total = 0
    for sizes in itertools.product(range(1, m // 2 + 1), repeat=k):
        if 2 * sum(sizes) != m:
            continue
        ways, left = 1, m
        for size in sizes:
            ways *= comb(left, 2 * size) * comb(2 * size, size) // 2
            left -= 2 * size
        total += ways
    return total


def test_block_indices():
    e = [(1, 2), (2, 3), (3, 4), (4, 5)]
    assert block_indices(e, (1, 2)) == (1, 2, 2, 3)
    assert block_indices(e, (3, 4)) == (3, 4, 4, 5)
    assert block_indices(e, (1, 3), interleaved=False) == (1, 3, 2, 4)


# antisymmetrised permanents

def _det(b, rows, cols):
    return poly_det(b.submatrix([r - 1 for r in rows], [c - 1 for c in cols]))


def test_sigma_rank_two():
    b = PolyMatrix.generic_symmetric(4)
    s1, t1, s2, t2 = 1, 2, 3, 4
    expected = -2 * _det(b, [s1, t1], [s2, t2])
    assert sigma_poly(b, [(s1, t1), (s2, t2)]) == expected
    assert antisym_perm_bruteforce(b, [s1, s2], [t1, t2]) == expected


def test_sigma_rank_four_six_terms():
    b = PolyMatrix.generic_symmetric(8)
    s = {1: 1, 2: 3, 3: 5, 4: 7}
    t = {1: 2, 2: 4, 3: 6, 4: 8}

    def st(*ks):
        return [x for k in ks for x in (s[k], t[k])]

    expected = (-2 * _det(b, st(1, 2), st(3, 4)) - 2 * _det(b, st(1, 3), st(2, 4)) - 2 * _det(b, st(1, 4), st(2, 3))
                + 8 * _det(b, st(1), st(2)) * _det(b, st(3), st(4))
                + 8 * _det(b, st(1), st(3)) * _det(b, st(2), st(4))
                + 8 * _det(b, st(1), st(4)) * _det(b, st(2), st(3)))
    e = [(s[k], t[k]) for k in range(1, 5)]
    assert sigma_poly(b, e) == expected
    assert antisym_perm_bruteforce(b, [s[k] for k in range(1, 5)], [t[k] for k in range(1, 5)]) == expected


def test_sigma_empty_and_odd():
    assert sigma_poly(B3, []) == 1
    assert antisym_perm_bruteforce(B3, [], []) == 1
    assert antisym_perm_recursive(B3, [], []) == 1
    with pytest.raises(ValueError):
        sigma_poly(B3, [(1, 2)])


@pytest.mark.parametrize("m", [1, 3, 5])
def test_odd_antisymmetrised_permanent_vanishes(m):
    res = perm_sigma_suite(m)
    assert res.ok


@pytest.mark.parametrize("m", [0, 2, 4])
def test_four_routes_agree_symbolically(m):
    res = perm_sigma_suite(m)
    assert res.ok, res.failures


def test_four_routes_agree_rank_six_random():
    res = perm_sigma_suite(6, trials=20, seed=5)
    assert res.ok, res.failures
    assert res.instances == 20


def test_sigma_recursive_on_repeated_indices():
    rng = random.Random(8)
    for _ in range(10):
        b = random_int_matrix(rng, 4, symmetric=True)
        e = [(rng.randint(1, 4), rng.randint(1, 4)) for _ in range(4)]
        brute = antisym_perm_bruteforce(b, [x for x, _ in e], [y for _, y in e])
        assert sigma_poly(b, e) == brute == sigma_recursive(b, e)


def test_sigma_invariant_under_reordering_pairs():
    b = PolyMatrix.generic_symmetric(8)
    e = [(1, 2), (3, 4), (5, 6), (7, 8)]
    ref = sigma_poly(b, e)
    for perm in itertools.permutations(range(4)):
        assert sigma_poly(b, [e[i] for i in perm]) == ref
    assert sigma_poly(b, e, interleaved=False) == ref


def test_sigma_swap_within_pairs():
    b = PolyMatrix.generic_symmetric(8)
    e = [(1, 2), (3, 4), (5, 6), (7, 8)]
    ref = sigma_poly(b, e)
    # one swap s_i <-> t_i flips the sign of the antisymmetrised permanent
    assert sigma_poly(b, [(2, 1)] + e[1:]) == -ref
    assert sigma_poly(b, [(2, 1), (4, 3)] + e[2:]) == ref


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_two_row_expansion(n):
    rng = random.Random(n)
    for _ in range(5):
        m = random_int_matrix(rng, n)
        assert two_row_expansion(m) == m.det()
    if n <= 4:
        g = PolyMatrix.generic(n)
        assert two_row_expansion(g) == g.det()


# symmetric matrices of forms

def test_symmetric_trace_rank_three_example():
    bs = PolyMatrix.generic_symmetric(3)
    nu = TypeNu.parse(3, "11,12,22,23,33")
    minor = bs.submatrix([0, 1], [1, 2]).det()
    coeff = -10 * bs.det() * minor
    closed = symmetric_trace(nu, bs)
    table = closed.table
    assert closed == omega_form(nu, table).scale(coeff)
    # omega_nu carries the sign (-1)^3 relative to the plain wedge in this order
    literal = ExtForm.monomial(table, ["w11", "w22", "w33", "w12", "w23"], -coeff)
    assert closed == literal
    assert symmetric_trace_bruteforce(nu, bs) == literal


def test_symmetric_trace_even_rank_vanishes():
    b = PolyMatrix.generic_symmetric(2)
    for nu in [TypeNu.parse(2, "11,12,22")]:
        assert symmetric_trace(nu, b) == 0
        assert symmetric_trace_bruteforce(nu, b) == 0


def test_symmetric_trace_suites():
    assert sym_trace_suite(3).ok
    res = sym_trace_suite(5, trials=3, seed=2)
    assert res.ok, res.failures


def test_symmetric_trace_rank_five_wheel_type():
    rng = random.Random(9)
    b = random_int_matrix(rng, 5, symmetric=True)
    nu = wheel_type(5)
    assert symmetric_trace(nu, b) == symmetric_trace_bruteforce(nu, b)


def test_symmetric_trace_rejects_bad_types():
    with pytest.raises(ValueError):
        symmetric_trace(TypeNu.parse(3, "11,12,21,22,33"), PolyMatrix.generic_symmetric(3))


# Jacobi's complementary minors

def test_jacobi_sign_examples():
    assert jacobi_sign((1,)) == -1
    assert jacobi_sign((2, 1)) == 1
    assert jacobi_sign((1, 1)) == 0


def test_jacobi_two_by_two():
    a = PolyMatrix([[3, 1], [4, 2]])
    w = jacobi_minor_check(a, (1,), (1,))
    assert w and w.lhs == Fraction(2, 2)


def test_jacobi_repeated_indices():
    a = PolyMatrix([[3, 1, 0], [4, 2, 1], [0, 1, 5]])
    w = jacobi_minor_check(a, (1, 1), (2, 3))
    assert w and w.lhs == 0 and w.rhs == 0


def test_jacobi_rational_matrix():
    rng = random.Random(4)
    done = 0
    while done < 20:
        a = PolyMatrix([[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(5)] for _ in range(5)])
        if not a.det("fraction_free"):
            continue
        rows = tuple(rng.sample(range(1, 6), 2))
        cols = tuple(rng.sample(range(1, 6), 2))
        assert jacobi_minor_check(a, rows, cols)
        done += 1


def test_jacobi_thousand_instances():
    res = jacobi_suite(5, trials=1000, seed=1)
    assert res.ok, res.failures[:5]


def test_jacobi_singular():
    with pytest.raises(ZeroDivisionError):
        jacobi_minor_check(PolyMatrix([[1, 2], [2, 4]]), (1,), (1,))


# closed invariant form of symmetric matrices and graphs

def test_symmetric_closed_form_random_numeric(rng):
    for _ in range(5):
        a = random_int_matrix(rng, 3, symmetric=True)
        d = a.det()
        if not d:
            continue
        da = FormMatrix.generic_symmetric(3)
        terms = canonical_form_symmetric(a, da)
        # only components carrying every diagonal differential are produced
        diag = da.table.mask(["w11", "w22", "w33"])
        full = invariant_form_bruteforce(a, da)
        leading = ExtForm(da.table, {m: c for m, c in full.raw_terms.items() if m & diag == diag})
        assert assemble_symmetric(terms, d, da.table) == leading
        assert leading


def test_symmetric_closed_form_even_rank_empty():
    assert canonical_form_symmetric(PolyMatrix.identity(4)) == []


def test_symmetric_closed_form_requires_symmetry():
    with pytest.raises(ValueError):
        canonical_form_symmetric(PolyMatrix([[1, 2, 0], [0, 1, 0], [0, 0, 1]]))


def test_wheel3_invariant_form():
    g, tree, _ = wheel(3)
    form = canonical_form_graph(g, tree)
    assert form.chart == 6 and form.free_edges == (1, 2, 3, 4, 5)
    assert form.numerators == {1: -10}
    assert form.text() == "-10/Ψ^2"
    ones = {e: 1 for e in form.free_edges}
    assert form.value_at(ones) == Fraction(-10, 256)
    assert canonical_form_direct_at_point(g, tree, 6, ones).top_coefficient() == Fraction(-10, 256)


def _spokes(n, upto):
    out = MultiPoly.const(1)
    for r in range(n + 1, upto + 1):
        out = out * MultiPoly.var(edge_var(r))
    return out


def test_wheel5_invariant_form():
    g, tree, _ = wheel(5)
    form = canonical_form_graph(g, tree)
    assert form.numerators == {1: 18, 2: 216 * _spokes(5, 9)}


def test_wheel7_invariant_form():
    g, tree, _ = wheel(7)
    form = canonical_form_graph(g, tree)
    s = _spokes(7, 13)
    assert form.numerators == {1: -26, 2: -26 * 60 * s, 3: -26 * 360 * s ** 2}


def test_q_polynomial_first_term_exposed():
    g, tree, _ = wheel(5)
    form = canonical_form_graph(g, tree)
    e = form.terms[0].positions
    lam = build_chart_laplacian(5)
    q1 = q_polynomial(lam, e, 1)
    assert isinstance(q1, (int, MultiPoly))


def build_chart_laplacian(n):
    from canform.graphs import laplacian
    g, _, basis = wheel(n)
    return laplacian(g, basis).specialize(2 * n).matrix


def test_even_loop_number_vanishes():
    g = build("w4")
    form = canonical_form_graph(g)
    assert form.is_zero() and form.text() == "0"


def test_edge_count_mismatch_rejected():
    with pytest.raises(GraphError):
        canonical_form_graph(build("prism"))


def test_chart_must_be_tree_edge():
    g, tree, _ = wheel(3)
    with pytest.raises(GraphError):
        canonical_form_graph(g, tree, chart=1)


def test_singular_point_rejected():
    g, tree, _ = wheel(3)
    form = canonical_form_graph(g, tree)
    zero = {e: 0 for e in form.free_edges}
    with pytest.raises(ZeroDivisionError):
        form.value_at(zero)
    with pytest.raises(ZeroDivisionError):
        canonical_form_direct_at_point(g, tree, 6, zero)


@pytest.mark.parametrize("name", TOP_FORM_GRAPHS)
def test_closed_form_matches_direct_trace(name):
    g = build(name)
    res = closed_vs_direct_suite(g, points=20, seed=1)
    assert res.ok, res.failures
    # the doubled square has a vanishing top form; the direct trace agrees pointwise
    assert canonical_form_graph(g).is_zero() == (name == "square_doubled")


def test_closed_form_other_tree_and_chart():
    g, _, _ = wheel(5)
    tree = frozenset({1, 2, 3, 4, 10})
    res = closed_vs_direct_suite(g, points=5, seed=3, tree=tree)
    assert res.ok, res.failures


def test_wheel3_symbolic_brute_force():
    g, tree, _ = wheel(3)
    form, psi, table = canonical_form_direct_symbolic(g, tree, projective=True)
    omega = projective_volume_form(table, [edge_var(e) for e in range(1, 7)])
    # tr((adj L dL)^5) / Psi^5 = -10 Omega / Psi^2
    assert form == omega.scale(-10 * psi ** 3)
    affine, psi_affine, _ = canonical_form_direct_symbolic(g, tree, projective=False)
    assert affine.top_coefficient() == -10 * psi_affine ** 3


def test_projective_form_of_wheel5_is_homogeneous():
    g, tree, _ = wheel(5)
    form = canonical_form_graph(g, tree)
    nums = form.homogeneous_numerators()
    for k, num in nums.items():
        assert all(sum(e) == 5 * (k - 1) for e, _ in num.terms())
    assert nums[2] == 216 * _spokes(5, 10)
