import random

import pytest

from canform.algebra import PolyMatrix
from canform.antisym import (antisymmetrize_bruteforce, antisymmetrize_closed, coefficient_cp, f_nu_by_paths,
                             f_nu_identity, loop_sum, path_sum, types_for_entry)
from canform.identities import phi_matrix
from canform.suites import amitsur_suite, random_int_matrix
from canform.typenu import TypeNu, all_types, omega_sign


def generic(name, n=2):
    return PolyMatrix.generic(n, name)


def test_single_matrix():
    a = generic("a", 3)
    assert antisymmetrize_bruteforce([a]) == a


def test_commutator():
    a, b = generic("a"), generic("b")
    assert antisymmetrize_bruteforce([a, b]) == a @ b - b @ a


def test_accepts_nested_lists():
    assert antisymmetrize_bruteforce([[[1, 2], [3, 4]], [[0, 1], [1, 0]]]).tolist() == [[-1, -3], [3, 1]]


@pytest.mark.parametrize("n", [2, 3])
def test_standard_identity_random(n):
    rng = random.Random(n)
    for _ in range(5):
        ms = [random_int_matrix(rng, n) for _ in range(2 * n)]
        assert all(x == 0 for row in antisymmetrize_bruteforce(ms).tolist() for x in row)


def test_standard_identity_symbolic_rank_two():
    ms = [generic(c) for c in "abcd"]
    assert all(x == 0 for row in antisymmetrize_bruteforce(ms).tolist() for x in row)


def test_too_many_matrices_refused():
    ms = [PolyMatrix.identity(2)] * 9
    with pytest.raises(ValueError, match="362880 products"):
        antisymmetrize_bruteforce(ms)


def test_shape_validation():
    with pytest.raises(ValueError):
        antisymmetrize_bruteforce([])
    with pytest.raises(ValueError):
        antisymmetrize_bruteforce([PolyMatrix.identity(2), PolyMatrix.identity(3)])


def test_coefficient_cp():
    assert coefficient_cp((1, 1, 1), 2) == 1
    assert coefficient_cp((2, 1), 1) == 2
    assert coefficient_cp((0, 2), 2) == 2
    assert coefficient_cp((0, 2), 1) == 1
    assert coefficient_cp((3, 0, 1), 3) == 2
    with pytest.raises(ValueError):
        coefficient_cp((1, 1), 3)


def test_f_nu_zero_when_a_row_is_empty():
    for nu in all_types(3):
        if 0 in nu.weight().p:
            assert f_nu_identity(nu) == [[0] * 3 for _ in range(3)]


@pytest.mark.parametrize("n", [2, 3])
def test_f_nu_counts_walks(n):
    for nu in all_types(n):
        f = f_nu_identity(nu)
        assert f == f_nu_by_paths(nu), nu
        loops = loop_sum(nu)
        for i in range(n):
            assert f[i][i] == nu.weight().p[i] * loops


@pytest.mark.parametrize("n", [2, 3])
def test_f_nu_is_signed_phi_at_identity(n):
    ident = PolyMatrix.identity(n)
    for nu in all_types(n):
        s = omega_sign(nu)
        assert f_nu_identity(nu) == [[s * x for x in row] for row in phi_matrix(nu, ident).tolist()]


def test_path_sum_small():
    nu = TypeNu.parse(2, "11,12,22")
    # walks 1 -> 1 -> 2 -> 2 in the only possible order
    assert path_sum(nu, 1, 2) == 1
    assert path_sum(nu, 2, 1) == 0


def test_types_for_entry():
    for nu in types_for_entry(3, 1, 2):
        w = nu.weight()
        assert [a - b for a, b in zip(w.p, w.q)] == [1, -1, 0]
        assert omega_sign(nu)


def _det3(rows):
    return PolyMatrix(rows).det()


def test_three_matrices_of_size_two():
    a, b, c = generic("a"), generic("b"), generic("c")
    ms = [a, b, c]

    def x(cols):
        return _det3([[m[i - 1, j - 1] for i, j in cols] for m in ms])

    x1 = x([(1, 1), (1, 2), (2, 1)])
    x2 = x([(1, 1), (1, 2), (2, 2)])
    x3 = x([(1, 1), (2, 1), (2, 2)])
    x4 = x([(1, 2), (2, 1), (2, 2)])
    expected = PolyMatrix([[2 * x1 - x4, x2], [-x3, x1 - 2 * x4]])
    assert antisymmetrize_closed(ms) == expected
    assert antisymmetrize_bruteforce(ms) == expected
    explicit = a @ b @ c - b @ a @ c + b @ c @ a - c @ b @ a + c @ a @ b - a @ c @ b
    assert explicit == expected


def test_closed_form_symbolic_rank_two_suite():
    res = amitsur_suite(2, trials=5, seed=1, symbolic=True)
    assert res.ok, res.failures


def test_closed_form_random_rank_three():
    res = amitsur_suite(3, trials=50, seed=2)
    assert res.ok, res.failures
    assert res.instances == 100


def test_repeated_argument_vanishes():
    a = generic("a")
    zero = PolyMatrix([[0, 0], [0, 0]])
    assert antisymmetrize_closed([a, a, a]) == zero
    assert antisymmetrize_bruteforce([a, a, a]) == zero
    b = generic("b")
    assert antisymmetrize_closed([a, b, a]) == zero


def test_closed_form_wrong_count():
    with pytest.raises(ValueError):
        antisymmetrize_closed([generic("a"), generic("b")])
