"""Batches of identity checks shared by the command line and the test suite.

Each suite returns a :class:`SuiteResult` counting instances and failures;
random instances are drawn from a seeded ``random.Random``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .algebra import MultiPoly, PolyMatrix
from .antisym import antisymmetrize_bruteforce, antisymmetrize_closed
from .exterior import ExtForm, FormMatrix, GeneratorTable, form_matrix_power, pair_name
from .graphs import Graph, default_tree
from .identities import (antisym_perm_bruteforce, antisym_perm_recursive, canonical_form_direct_at_point,
                         canonical_form_graph, jacobi_minor_check, sigma_poly, sigma_recursive,
                         symmetric_trace, symmetric_trace_bruteforce, theorem1_check)
from .typenu import all_types, random_type, upper_types_with_diagonal


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.instances > 0 and not self.failures

    def record(self, passed: bool, label: str):
        self.instances += 1
        if not passed:
            self.failures.append(label)

    def summary(self) -> str:
        state = "PASS" if self.ok else "FAIL"
        return f"{state} {self.name}: {self.instances - len(self.failures)}/{self.instances} instances"


def random_int_matrix(rng: random.Random, n: int, lo: int = -5, hi: int = 5, symmetric: bool = False) -> PolyMatrix:
    rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]
    if symmetric:
        for i in range(n):
            for j in range(i):
                rows[i][j] = rows[j][i]
    return PolyMatrix(rows)


def thm1_suite(n: int, trials: Optional[int] = None, seed: int = 0) -> SuiteResult:
    """All types with generic symbolic B, or ``trials`` random types with random integer B."""
    res = SuiteResult(f"thm1 n={n}")
    if trials is None:
        b = PolyMatrix.generic(n)
        for nu in all_types(n):
            res.record(bool(theorem1_check(nu, b)), str(nu))
    else:
        rng = random.Random(seed)
        for _ in range(trials):
            nu = random_type(n, rng)
            b = random_int_matrix(rng, n)
            res.record(bool(theorem1_check(nu, b)), str(nu))
    return res


def bomega_nilpotent_suite(n: int, trials: Optional[int] = None, seed: int = 0,
                           components: Optional[int] = None) -> SuiteResult:
    """(B Omega)^(2n) = 0 with generic Omega; B symbolic if ``trials`` is None, else random integers.

    With ``components`` set, each trial checks that many sampled sets nu of 2n
    positions instead of the whole algebra: the part of (B Omega)^(2n) built
    from exactly the generators of nu is (B Omega_nu)^(2n), with Omega_nu
    zero off nu.  Sets are drawn as random trails so that G_nu has a walk
    through every edge, the only case with nonzero individual terms.
    """
    res = SuiteResult(f"(B Omega)^{2 * n} = 0, n={n}")
    if trials is None:
        res.record(form_matrix_power(PolyMatrix.generic(n), FormMatrix.generic(n), 2 * n).is_zero(), "symbolic B")
        return res
    rng = random.Random(seed)
    omega = FormMatrix.generic(n) if components is None else None
    for t in range(trials):
        b = random_int_matrix(rng, n)
        if components is None:
            res.record(form_matrix_power(b, omega, 2 * n).is_zero(), f"trial {t}")
            continue
        for _ in range(components):
            pairs = random_trail_pairs(rng, n, 2 * n)
            res.record(form_matrix_power(b, restricted_generic(n, pairs), 2 * n).is_zero(),
                       f"trial {t} nu={sorted(pairs)}")
    return res


def random_trail_pairs(rng: random.Random, n: int, length: int) -> List[Tuple[int, int]]:
    """Distinct positions (i, j) forming a directed walk i0 -> i1 -> ... of the given length."""
    while True:
        v = rng.randint(1, n)
        used: List[Tuple[int, int]] = []
        for _ in range(length):
            options = [(v, w) for w in range(1, n + 1) if (v, w) not in used]
            if not options:
                break
            edge = rng.choice(options)
            used.append(edge)
            v = edge[1]
        if len(used) == length:
            return used


def restricted_generic(n: int, pairs) -> FormMatrix:
    """Form matrix with generator w_ij at each position of ``pairs`` and zero elsewhere."""
    names = sorted(pairs)
    table = GeneratorTable(pair_name("w", i, j) for i, j in names)
    zero = ExtForm(table)
    rows = [[zero] * n for _ in range(n)]
    for i, j in names:
        rows[i - 1][j - 1] = ExtForm.generator(table, pair_name("w", i, j))
    return FormMatrix(table, rows)


def perm_sigma_suite(m: int, trials: Optional[int] = None, seed: int = 0) -> SuiteResult:
    """Brute-force antisymmetrised permanent against the determinant sum and both recursions.

    Symbolic case: B generic symmetric of size 2m with S = (1..m), T = (m+1..2m).
    Random case: random symmetric integer B of size 2m and random index lists.
    """
    res = SuiteResult(f"perm-sigma m={m}")
    size = max(2 * m, 1)
    cases = []
    if trials is None:
        cases.append((PolyMatrix.generic_symmetric(size), list(range(1, m + 1)), list(range(m + 1, 2 * m + 1))))
    else:
        rng = random.Random(seed)
        for _ in range(trials):
            b = random_int_matrix(rng, size, symmetric=True)
            idx = rng.sample(range(1, size + 1), 2 * m)
            cases.append((b, idx[:m], idx[m:]))
    for b, s, t in cases:
        brute = antisym_perm_bruteforce(b, s, t)
        label = f"S={s} T={t}"
        if m % 2:
            res.record(brute == 0, label)
            continue
        e = list(zip(s, t))
        routes = (sigma_poly(b, e), antisym_perm_recursive(b, s, t), sigma_recursive(b, e))
        res.record(all(_same(brute, r) for r in routes), label)
    return res


def _same(a, b) -> bool:
    return MultiPoly.coerce(a) == MultiPoly.coerce(b)


def sym_trace_suite(n: int, trials: Optional[int] = None, seed: int = 0) -> SuiteResult:
    """tr((B Upsilon_nu)^(2n-1)): closed form against the matrix power."""
    res = SuiteResult(f"sym-trace n={n}")
    if trials is None:
        b = PolyMatrix.generic_symmetric(n)
        for nu in upper_types_with_diagonal(n):
            res.record(symmetric_trace(nu, b) == symmetric_trace_bruteforce(nu, b), str(nu))
    else:
        rng = random.Random(seed)
        types = list(upper_types_with_diagonal(n))
        for _ in range(trials):
            nu = rng.choice(types)
            b = random_int_matrix(rng, n, symmetric=True)
            res.record(symmetric_trace(nu, b) == symmetric_trace_bruteforce(nu, b), str(nu))
    return res


def jacobi_suite(n: int, trials: int = 100, seed: int = 0) -> SuiteResult:
    """Minors of A^-1 against signed complementary minors of A, random invertible integer A."""
    res = SuiteResult(f"jacobi n={n}")
    rng = random.Random(seed)
    while res.instances < trials:
        a = random_int_matrix(rng, n)
        if not a.det("fraction_free"):
            continue
        k = rng.randint(1, n)
        rows = tuple(sorted(rng.sample(range(1, n + 1), k)))
        cols = tuple(sorted(rng.sample(range(1, n + 1), k)))
        res.record(bool(jacobi_minor_check(a, rows, cols)), f"rows={rows} cols={cols}")
    return res


def random_point(rng: random.Random, edges, denominator: int = 7):
    return {e: Fraction(rng.randint(1, 5 * denominator), rng.randint(1, denominator)) for e in edges}


def closed_vs_direct_suite(g: Graph, points: int = 5, seed: int = 0, tree=None) -> SuiteResult:
    """Closed invariant form of a graph against tr((Lambda^-1 dLambda)^(2h-1)) at random rational points."""
    tree = frozenset(tree) if tree is not None else default_tree(g)
    res = SuiteResult(f"closed-vs-direct |E|={g.num_edges} h={g.loop_number}")
    form = canonical_form_graph(g, tree)
    rng = random.Random(seed)
    while res.instances < points:
        pt = random_point(rng, form.free_edges)
        try:
            closed = form.value_at(pt)
            direct = canonical_form_direct_at_point(g, tree, form.chart, pt).top_coefficient()
        except ZeroDivisionError:
            continue
        res.record(Fraction(closed) == Fraction(direct), str({e: str(v) for e, v in pt.items()}))
    return res


def amitsur_suite(n: int, trials: int = 10, seed: int = 0, symbolic: bool = False) -> SuiteResult:
    """Closed antisymmetrization of 2n-1 matrices against brute force, plus 2n matrices giving 0."""
    res = SuiteResult(f"amitsur n={n}")
    if symbolic:
        ms = [PolyMatrix.generic(n, chr(ord("a") + r)) for r in range(2 * n - 1)]
        res.record(antisymmetrize_closed(ms) == antisymmetrize_bruteforce(ms), "symbolic")
    rng = random.Random(seed)
    for t in range(trials):
        ms = [random_int_matrix(rng, n) for _ in range(2 * n - 1)]
        res.record(antisymmetrize_closed(ms) == antisymmetrize_bruteforce(ms), f"trial {t}")
        extra = ms + [random_int_matrix(rng, n)]
        res.record(all(x == 0 for row in antisymmetrize_bruteforce(extra).tolist() for x in row),
                   f"trial {t}, {2 * n} matrices")
    return res
