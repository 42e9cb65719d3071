"""Full antisymmetrization of matrix products.

[A_1, ..., A_k] is the signed sum of A_pi(1) ... A_pi(k) over all
permutations.  For k = 2n - 1 matrices of size n it has a closed form as a
sum over types nu of F_nu times a k x k determinant of matrix entries.
"""
from __future__ import annotations

import itertools
from math import factorial
from typing import List, Sequence, Tuple

from .algebra import PolyMatrix, permutation_sign
from .typenu import TypeNu, all_types, omega_sign

BRUTE_FORCE_LIMIT = 8


def _as_matrices(ms) -> List[PolyMatrix]:
    out = [m if isinstance(m, PolyMatrix) else PolyMatrix(m) for m in ms]
    if not out:
        raise ValueError("need at least one matrix")
    n = out[0].rows
    for m in out:
        if m.shape != (n, n):
            raise ValueError("all matrices must be square of the same size")
    return out


def antisymmetrize_bruteforce(ms) -> PolyMatrix:
    """sum over pi of sgn(pi) A_pi(1) ... A_pi(k)."""
    mats = _as_matrices(ms)
    k = len(mats)
    if k > BRUTE_FORCE_LIMIT:
        n = mats[0].rows
        raise ValueError(f"{k} matrices need {factorial(k)} products of {n}x{n} matrices; "
                         f"brute force is limited to k <= {BRUTE_FORCE_LIMIT}")
    n = mats[0].rows
    acc = PolyMatrix([[0] * n for _ in range(n)])
    # prefix products are shared between permutations with a common start
    prefix: dict = {(): PolyMatrix.identity(n)}
    for perm in itertools.permutations(range(k)):
        for depth in range(1, k + 1):
            key = perm[:depth]
            if key not in prefix:
                prefix[key] = prefix[perm[:depth - 1]] @ mats[perm[depth - 1]]
        prod = prefix[perm]
        acc = acc + (prod if permutation_sign(perm) > 0 else prod.scale(-1))
        # keep the cache to the current branch only
        for depth in range(k - 1, 0, -1):
            prefix.pop(perm[:depth + 1], None)
    return acc


def coefficient_cp(p: Sequence[int], i: int) -> int:
    """prod over r with p_r + [r == i] >= 1 of (p_r + [r == i] - 1)!  (i is 1-based)."""
    if not 1 <= i <= len(p):
        raise ValueError("index out of range")
    out = 1
    for r, pr in enumerate(p, start=1):
        v = pr + (1 if r == i else 0)
        if v >= 1:
            out *= factorial(v - 1)
    return out


def f_nu_identity(nu: TypeNu) -> List[List[int]]:
    """F_nu for B = I: (F_nu)_ij = [p - e_i == q - e_j] c(p)_j sign(nu)."""
    if len(nu) != 2 * nu.n - 1:
        raise ValueError("F_nu needs a type with 2n-1 positions")
    n = nu.n
    w = nu.weight()
    s = omega_sign(nu)
    out = [[0] * n for _ in range(n)]
    if not s:
        return out
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            lhs = [w.p[r] - (r + 1 == i) for r in range(n)]
            rhs = [w.q[r] - (r + 1 == j) for r in range(n)]
            if lhs == rhs:
                out[i - 1][j - 1] = coefficient_cp(w.p, j) * s
    return out


def _trails(nu: TypeNu, start: int, first_edge: int = None):
    """Edge sequences using every position of nu once, as a walk from ``start``.

    Position (a, b) is the oriented edge a -> b.  Yields index tuples into
    ``nu.pairs``.
    """
    pairs = nu.pairs
    total = len(pairs)
    out_edges = {v: [k for k, (a, _) in enumerate(pairs) if a == v] for v in range(1, nu.n + 1)}
    used = [False] * total
    path: List[int] = []

    def rec(v):
        if len(path) == total:
            yield tuple(path)
            return
        for k in out_edges[v]:
            if not used[k]:
                used[k] = True
                path.append(k)
                yield from rec(pairs[k][1])
                path.pop()
                used[k] = False

    if first_edge is None:
        yield from rec(start)
    elif pairs[first_edge][0] == start:
        used[first_edge] = True
        path.append(first_edge)
        yield from rec(pairs[first_edge][1])


def path_sum(nu: TypeNu, i: int, j: int) -> int:
    """Signed count of walks from i to j through every position of nu exactly once."""
    total = 0
    for t in _trails(nu, i):
        if nu.pairs[t[-1]][1] == j:
            total += permutation_sign(t)
    return total


def loop_sum(nu: TypeNu) -> int:
    """Signed count of closed walks through every position, up to cyclic rotation.

    Each rotation class has exactly one representative starting with the
    first position of nu, and the sign is rotation invariant for an odd
    number of edges.
    """
    a, _ = nu.pairs[0]
    total = 0
    for t in _trails(nu, a, first_edge=0):
        if nu.pairs[t[-1]][1] == a:
            total += permutation_sign(t)
    return total


def f_nu_by_paths(nu: TypeNu) -> List[List[int]]:
    n = nu.n
    return [[path_sum(nu, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]


def types_for_entry(n: int, i: int, j: int) -> List[TypeNu]:
    """Types of rank n with p - q = e_i - e_j and nonzero sign."""
    out = []
    for nu in all_types(n):
        w = nu.weight()
        if all(w.p[r] - w.q[r] == (r + 1 == i) - (r + 1 == j) for r in range(n)) and omega_sign(nu):
            out.append(nu)
    return out


def antisymmetrize_closed(ms) -> PolyMatrix:
    """[A_1, ..., A_{2n-1}] as a sum of F_nu times k x k determinants of entries."""
    mats = _as_matrices(ms)
    n = mats[0].rows
    k = len(mats)
    if k != 2 * n - 1:
        raise ValueError(f"closed formula needs exactly {2 * n - 1} matrices of size {n}, got {k}")
    by_weight = {}
    for nu in all_types(n):
        s = omega_sign(nu)
        if s:
            w = nu.weight()
            diff = tuple(a - b for a, b in zip(w.p, w.q))
            by_weight.setdefault(diff, []).append((nu, s))
    out: List[List[object]] = [[0] * n for _ in range(n)]
    det_cache = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            diff = tuple((r == i) - (r == j) for r in range(1, n + 1))
            acc = 0
            for nu, s in by_weight.get(diff, ()):
                coeff = coefficient_cp(nu.weight().p, j) * s
                if nu.pairs not in det_cache:
                    det_cache[nu.pairs] = _entry_det(mats, nu.pairs)
                d = det_cache[nu.pairs]
                if d:
                    acc = acc + coeff * d
            out[i - 1][j - 1] = acc
    return PolyMatrix(out)


def _entry_det(mats: Sequence[PolyMatrix], pairs: Sequence[Tuple[int, int]]):
    """det of the matrix with (row r, column (a, b)) entry (A_r)_ab."""
    return PolyMatrix([[m[a - 1, b - 1] for a, b in pairs] for m in mats]).det()
