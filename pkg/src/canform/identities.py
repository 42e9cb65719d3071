"""Identity engines for powers of form matrices and the invariant forms of graphs.

The routines here come in pairs: a closed formula and an independent brute
force evaluation of the same quantity.  Check functions return a
:class:`Witness` that is truthy on agreement and carries both sides.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .algebra import MultiPoly, PolyMatrix, permutation_sign, poly_det, poly_perm
from .exterior import (ExtForm, FormMatrix, GeneratorTable, form_matrix_power, pair_name,
                       trace_of_power)
from .graphs import Graph, GraphError, cycle_basis_from_tree, default_tree, edge_var, laplacian
from .typenu import Pair, TypeNu, omega_form, omega_wedge

Pairs = Tuple[Pair, ...]


@dataclass
class Witness:
    ok: bool
    lhs: object = None
    rhs: object = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


# ----------------------------------------------------------------------------
# permanents of repeated rows and columns


def _multiset(weights: Sequence[int]) -> List[int]:
    return [i for i, w in enumerate(weights) for _ in range(w)]


def permanent_poly(p: Sequence[int], q: Sequence[int], b: PolyMatrix):
    """perm of B with row i repeated p_i times and column j repeated q_j times.

    Zero as soon as a weight is negative.
    """
    if any(x < 0 for x in p) or any(x < 0 for x in q):
        return 0
    if sum(p) != sum(q):
        raise ValueError(f"row weights {tuple(p)} and column weights {tuple(q)} have different totals")
    rows, cols = _multiset(p), _multiset(q)
    if not rows:
        return 1
    return poly_perm(b.submatrix(rows, cols))


def phi_matrix(nu: TypeNu, b: PolyMatrix) -> PolyMatrix:
    n = nu.n
    if b.shape != (n, n):
        raise ValueError("B must be n x n for a rank n type")
    p, q = nu.weight().p, nu.weight().q
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            delta = int(i == j)
            rw = [q[r] + (r == i) - (r == j) - 1 for r in range(n)]
            cw = [p[r] - 1 for r in range(n)]
            factor = q[j] + delta - 1
            row.append(factor * permanent_poly(rw, cw, b) if factor else 0)
        out.append(row)
    return PolyMatrix(out)


def omega_nu_matrix(nu: TypeNu, table: Optional[GeneratorTable] = None) -> FormMatrix:
    """Omega restricted to nu: generator w_ij at each position of nu, zero elsewhere."""
    n = nu.n
    table = table or GeneratorTable.pairs(n)
    zero = ExtForm(table)
    rows = [[zero] * n for _ in range(n)]
    for i, j in nu.pairs:
        rows[i - 1][j - 1] = ExtForm.generator(table, pair_name("w", i, j))
    return FormMatrix(table, rows)


def theorem1_sides(nu: TypeNu, b: PolyMatrix) -> Tuple[FormMatrix, FormMatrix]:
    """(B·Omega_nu)^(2n-1) and det(B)·Phi_nu(B)·omega_nu."""
    n = nu.n
    table = GeneratorTable.pairs(n)
    lhs = form_matrix_power(b, omega_nu_matrix(nu, table), 2 * n - 1)
    w = omega_form(nu, table)
    d = poly_det(b)
    phi = phi_matrix(nu, b)
    rhs = FormMatrix(table, [[w.scale(d * phi[i, j]) for j in range(n)] for i in range(n)])
    return lhs, rhs


def theorem1_check(nu: TypeNu, b: PolyMatrix) -> Witness:
    lhs, rhs = theorem1_sides(nu, b)
    ok = lhs == rhs
    return Witness(ok, None if ok else lhs, None if ok else rhs, str(nu))


# ----------------------------------------------------------------------------
# partitions into paired blocks


@dataclass(frozen=True)
class DkPartition:
    """k unordered pairs {I, J} of equal-size blocks covering 1..m; I holds the block minimum."""

    blocks: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]

    @property
    def k(self) -> int:
        return len(self.blocks)


def enumerate_dk(m: int, k: int) -> Iterator[DkPartition]:
    if m % 2:
        raise ValueError("m must be even")
    if k < 1:
        raise ValueError("k must be positive")

    def rec(rest: Tuple[int, ...], k_left: int):
        if not rest:
            if k_left == 0:
                yield ()
            return
        if k_left == 0 or len(rest) < 2 * k_left:
            return
        a, others = rest[0], rest[1:]
        for half in range(1, len(rest) // 2 + 1):
            for partners in itertools.combinations(others, 2 * half - 1):
                remaining = tuple(x for x in others if x not in partners)
                for with_a in itertools.combinations(partners, half - 1):
                    i_block = (a,) + with_a
                    j_block = tuple(x for x in partners if x not in with_a)
                    for tail in rec(remaining, k_left - 1):
                        yield ((i_block, j_block),) + tail

    for blocks in rec(tuple(range(1, m + 1)), k):
        yield DkPartition(blocks)


def block_indices(e: Sequence[Pair], block: Sequence[int], interleaved: bool = True) -> Tuple[int, ...]:
    """(s_i1, t_i1, s_i2, t_i2, ...) or, grouped, (s_i1, s_i2, ..., t_i1, t_i2, ...)."""
    if interleaved:
        return tuple(x for i in block for x in e[i - 1])
    return tuple(e[i - 1][0] for i in block) + tuple(e[i - 1][1] for i in block)


# ----------------------------------------------------------------------------
# antisymmetrised permanents and the determinant sum


def _minor(b: PolyMatrix, rows: Sequence[int], cols: Sequence[int], cache: Optional[dict] = None):
    """Determinant of the submatrix on 1-based ``rows`` x ``cols``."""
    key = (tuple(rows), tuple(cols))
    if cache is not None and key in cache:
        return cache[key]
    d = poly_det(b.submatrix([r - 1 for r in rows], [c - 1 for c in cols]))
    if cache is not None:
        cache[key] = d
    return d


def sigma_poly(b: PolyMatrix, e: Sequence[Pair], interleaved: bool = True):
    """Sum over k of (-2)^k k! times the sum over D^k_m of products of block minors."""
    m = len(e)
    if m % 2:
        raise ValueError("the pair list must have even length")
    if m == 0:
        return 1
    cache: dict = {}
    total = 0
    for k in range(1, m // 2 + 1):
        acc = 0
        for d in enumerate_dk(m, k):
            prod = 1
            for bi, bj in d.blocks:
                prod = prod * _minor(b, block_indices(e, bi, interleaved), block_indices(e, bj, interleaved), cache)
                if not prod:
                    break
            if prod:
                acc = acc + prod
        if acc:
            total = total + (-2) ** k * factorial(k) * acc
    return total


def _swap(s: Sequence[int], t: Sequence[int], positions: Iterable[int]):
    s, t = list(s), list(t)
    for i in positions:
        s[i], t[i] = t[i], s[i]
    return s, t


def antisym_perm_bruteforce(b: PolyMatrix, s: Sequence[int], t: Sequence[int]):
    """Signed sum of perm(B[S', T']) over all simultaneous swaps s_i <-> t_i."""
    m = len(s)
    if len(t) != m:
        raise ValueError("S and T must have the same length")
    if m == 0:
        return 1
    total = 0
    for mask in range(1 << m):
        swapped = [i for i in range(m) if (mask >> i) & 1]
        s2, t2 = _swap(s, t, swapped)
        p = poly_perm(b.submatrix([x - 1 for x in s2], [x - 1 for x in t2]))
        total = total + p if len(swapped) % 2 == 0 else total - p
    return total


def _two_by_two(b: PolyMatrix, r1: int, r2: int, c1: int, c2: int):
    return b[r1 - 1, c1 - 1] * b[r2 - 1, c2 - 1] - b[r1 - 1, c2 - 1] * b[r2 - 1, c1 - 1]


def _pi_apply(term, s, t, i: int, j: int):
    """Apply pi_{i,j} = (1 - g_i)(1 - g_j) to a function of (S, T); i == j gives 2(1 - g_i)."""
    if i == j:
        s1, t1 = _swap(s, t, [i])
        return 2 * (term(s, t) - term(s1, t1))
    total = 0
    for a in (0, 1):
        for c in (0, 1):
            s1, t1 = _swap(s, t, [x for x, on in ((i, a), (j, c)) if on])
            v = term(s1, t1)
            total = total + v if (a + c) % 2 == 0 else total - v
    return total


def antisym_perm_recursive(b: PolyMatrix, s: Sequence[int], t: Sequence[int]):
    """Recursion that strips the first pair and one more pair per step.

    Each step pairs the 2x2 minor on rows (s1, t1), columns (s_i, t_j) with
    the antisymmetrised permanent of the remaining pairs after renaming t_j
    to t_i.
    """
    m = len(s)
    if m == 0:
        return 1
    total = 0
    for i in range(1, m):
        for j in range(1, m):
            def term(ss, tt, i=i, j=j):
                d = _two_by_two(b, ss[0], tt[0], ss[i], tt[j])
                if not d:
                    return 0
                keep = [k for k in range(1, m) if k != i]
                s_red = [ss[k] for k in keep]
                t_red = [tt[i] if k == j else tt[k] for k in keep]
                return d * antisym_perm_recursive(b, s_red, t_red)
            total = total + _pi_apply(term, s, t, i, j)
    return _halve_negate(total)


def sigma_recursive(b: PolyMatrix, e: Sequence[Pair]):
    """The same recursion run on the determinant sum, with base value 1 on the empty list."""
    m = len(e)
    if m % 2:
        raise ValueError("the pair list must have even length")
    if m == 0:
        return 1
    s = [x for x, _ in e]
    t = [y for _, y in e]
    total = 0
    for i in range(1, m):
        for j in range(1, m):
            def term(ss, tt, i=i, j=j):
                d = _two_by_two(b, ss[0], tt[0], ss[i], tt[j])
                if not d:
                    return 0
                if i == j:
                    reduced = [(ss[k], tt[k]) for k in range(1, m) if k != i]
                else:
                    reduced = [(ss[k], tt[i]) if k == j else (ss[k], tt[k]) for k in range(1, m) if k != i]
                return d * sigma_recursive(b, reduced)
            total = total + _pi_apply(term, s, t, i, j)
    return _halve_negate(total)


def _halve_negate(x):
    if isinstance(x, MultiPoly):
        return x * Fraction(-1, 2)
    v = Fraction(x) * Fraction(-1, 2)
    return v.numerator if v.denominator == 1 else v


def two_row_expansion(a: PolyMatrix):
    """Expand det(A) along its first two rows: sum over column pairs of 2x2 minor times complement."""
    n = a.rows
    if n < 2 or not a.is_square():
        raise ValueError("need a square matrix of size at least 2")
    total = 0
    for x in range(n):
        for y in range(x + 1, n):
            top = poly_det(a.submatrix([0, 1], [x, y]))
            if not top:
                continue
            rest = poly_det(a.delete([0, 1], [x, y])) if n > 2 else 1
            # columns are 1-based in the sign: (-1)^(a+b+1) with a=x+1, b=y+1
            sign = (-1) ** (x + y + 3)
            total = total + sign * top * rest
    return total


# ----------------------------------------------------------------------------
# symmetric matrices of forms


def symmetric_type_pairs(nu: TypeNu) -> List[Pair]:
    return [(i, j) for i, j in nu.pairs if i != j]


def _check_symmetric_type(nu: TypeNu):
    if not (nu.is_upper_triangular() and nu.contains_diagonal() and len(nu.pairs) == 2 * nu.n - 1):
        raise ValueError(f"{nu} must be upper triangular with 2n-1 positions including the diagonal")


def upsilon_nu_matrix(nu: TypeNu, table: Optional[GeneratorTable] = None) -> FormMatrix:
    """Symmetric form matrix with w_ij at (i, j) and (j, i) for each position of nu."""
    n = nu.n
    table = table or GeneratorTable.pairs(n, symmetric=True)
    zero = ExtForm(table)
    rows = [[zero] * n for _ in range(n)]
    for i, j in nu.pairs:
        g = ExtForm.generator(table, pair_name("w", i, j))
        rows[i - 1][j - 1] = g
        rows[j - 1][i - 1] = g
    return FormMatrix(table, rows)


def symmetric_trace(nu: TypeNu, b: PolyMatrix) -> ExtForm:
    """Closed form of tr((B·Upsilon_nu)^(2n-1)) for symmetric B."""
    _check_symmetric_type(nu)
    table = GeneratorTable.pairs(nu.n, symmetric=True)
    if nu.n % 2 == 0:
        return ExtForm(table)
    coeff = (2 * nu.n - 1) * poly_det(b) * sigma_poly(b, symmetric_type_pairs(nu))
    return omega_form(nu, table).scale(coeff)


def symmetric_trace_bruteforce(nu: TypeNu, b: PolyMatrix) -> ExtForm:
    _check_symmetric_type(nu)
    return trace_of_power(b, upsilon_nu_matrix(nu), 2 * nu.n - 1)


# ----------------------------------------------------------------------------
# Jacobi's complementary minors


def jacobi_sign(indices: Sequence[int]) -> int:
    if len(set(indices)) != len(indices):
        return 0
    return (-1) ** sum(indices) * permutation_sign(indices)


def jacobi_minor_check(a: PolyMatrix, rows: Sequence[int], cols: Sequence[int]) -> Witness:
    """det of the (rows, cols) block of A^-1 against the signed complementary minor of A."""
    if len(rows) != len(cols):
        raise ValueError("index lists must have equal length")
    d = poly_det(a, "fraction_free")
    if not d:
        raise ZeroDivisionError("matrix is singular")
    inv = a.inverse()
    lhs = poly_det(inv.submatrix([r - 1 for r in rows], [c - 1 for c in cols]), "fraction_free")
    sign = jacobi_sign(rows) * jacobi_sign(cols)
    if sign:
        comp = a.delete([c - 1 for c in cols], [r - 1 for r in rows])
        rhs = Fraction(sign * poly_det(comp, "fraction_free")) / d
    else:
        rhs = 0
    return Witness(lhs == rhs, lhs, rhs)


# ----------------------------------------------------------------------------
# closed formula for the invariant form of a symmetric matrix


@dataclass(frozen=True)
class LeadingTerm:
    """coefficient / det(A)^(k+1) times omega, for one choice of off-diagonal positions."""

    positions: Pairs
    k: int
    coefficient: object
    omega: ExtForm


def q_polynomial(a: PolyMatrix, e: Sequence[Pair], k: int, cache: Optional[dict] = None):
    """Sum over D^k_m of products of sign(E_I) sign(E_J) det(A without rows E_I, columns E_J)."""
    cache = {} if cache is None else cache
    m = len(e)
    total = 0
    for d in enumerate_dk(m, k):
        prod = 1
        for bi, bj in d.blocks:
            ri, cj = block_indices(e, bi), block_indices(e, bj)
            sign = jacobi_sign(ri) * jacobi_sign(cj)
            if not sign:
                prod = 0
                break
            key = (frozenset(ri), frozenset(cj))
            if key not in cache:
                sub = a.delete([r - 1 for r in ri], [c - 1 for c in cj])
                cache[key] = poly_det(sub) if sub.rows else 1
            prod = prod * (sign * cache[key])
            if not prod:
                break
        if prod:
            total = total + prod
    return total


def differential(a: PolyMatrix, table: Optional[GeneratorTable] = None) -> FormMatrix:
    """dA: entry (i, j) is the sum over variables v of dA_ij/dv times the generator d<v>."""
    if table is None:
        names = sorted({v for i in range(a.rows) for j in range(a.cols)
                        if isinstance(a[i, j], MultiPoly) for v in a[i, j].used_variables()},
                       key=lambda v: MultiPoly.var(v).variables)
        table = GeneratorTable("d" + v for v in names)
    rows = []
    for i in range(a.rows):
        row = []
        for j in range(a.cols):
            x = a[i, j]
            terms = {}
            if isinstance(x, MultiPoly):
                for g_index, g in enumerate(table.names):
                    c = x.diff(g[1:])
                    if c:
                        terms[1 << g_index] = c.constant_value() if c.is_constant() else c
            row.append(ExtForm(table, terms))
        rows.append(row)
    return FormMatrix(table, rows)


def canonical_form_symmetric(a: PolyMatrix, da: Optional[FormMatrix] = None) -> List[LeadingTerm]:
    """Leading terms (2n-1)(-2)^k k! Q_k(A,E) / det(A)^(k+1) * omega_{diag+E}(dA).

    Only positions E whose wedge of differentials is nonzero are visited;
    empty for even n.
    """
    n = a.rows
    if not a.is_symmetric():
        raise ValueError("matrix must be symmetric")
    if n % 2 == 0:
        return []
    da = differential(a) if da is None else da
    m = n - 1
    diag = [(i, i) for i in range(1, n + 1)]
    support = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if da[i - 1, j - 1]]
    entries = {(i, j): da[i - 1, j - 1] for i in range(1, n + 1) for j in range(i, n + 1)}
    cache: dict = {}
    out = []
    for e in itertools.combinations(support, m):
        if not _spans_tree(n, e):
            continue
        nu = TypeNu(n, diag + list(e))
        w = omega_wedge(nu, entries)
        if not w:
            continue
        for k in range(1, m // 2 + 1):
            q = q_polynomial(a, e, k, cache)
            if q:
                coeff = (2 * n - 1) * (-2) ** k * factorial(k) * q
                out.append(LeadingTerm(tuple(e), k, coeff, w))
    return out


def _spans_tree(n: int, e: Sequence[Pair]) -> bool:
    """Diagonal plus e gives a nonzero sign only when e is a spanning tree on 1..n."""
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in e:
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def assemble_symmetric(terms: Sequence[LeadingTerm], det_value, table: GeneratorTable) -> ExtForm:
    """Evaluate sum of coefficient/det^(k+1)*omega for numeric coefficients."""
    acc = ExtForm(table)
    for t in terms:
        acc = acc + t.omega.scale(Fraction(t.coefficient) / Fraction(det_value) ** (t.k + 1))
    return acc


def invariant_form_bruteforce(a: PolyMatrix, da: FormMatrix) -> ExtForm:
    """tr((A^-1 dA)^(2n-1)) for a numeric matrix A."""
    n = a.rows
    return trace_of_power(a.inverse(), da, 2 * n - 1)


# ----------------------------------------------------------------------------
# graphs


@dataclass
class GraphCanonicalForm:
    """omega_G on the chart x_chart = 1, as sum_k numerators[k] / Psi^(k+1) dx_(free edges).

    ``numerators`` maps k to a polynomial in the free edge variables; the
    differential is the wedge of dx_e over the free edges in increasing order.
    """

    loops: int
    chart: int
    free_edges: Tuple[int, ...]
    psi: MultiPoly
    numerators: Dict[int, object]
    terms: List[LeadingTerm] = field(default_factory=list, repr=False)

    def is_zero(self) -> bool:
        return not any(self.numerators.values())

    def value_at(self, point: Dict[int, object]) -> Fraction:
        """Coefficient of the top form at a point given as {edge: value} on the free edges."""
        env = {edge_var(e): Fraction(v) for e, v in point.items()}
        psi = Fraction(self.psi.evaluate(env))
        if not psi:
            raise ZeroDivisionError("graph polynomial vanishes at this point")
        total = Fraction(0)
        for k, num in self.numerators.items():
            val = num.evaluate(env) if isinstance(num, MultiPoly) else num
            total += Fraction(val) / psi ** (k + 1)
        return total

    def text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in sorted(self.numerators):
            num = MultiPoly.coerce(self.numerators[k])
            power = k + 1
            den = "Ψ" if power == 1 else f"Ψ^{power}"
            if len(num) == 1:
                body = str(num)
            else:
                body = f"({num})"
            parts.append(f"{body}/{den}")
        return " + ".join(parts).replace("+ -", "- ")

    def homogeneous_numerators(self) -> Dict[int, MultiPoly]:
        """Numerators made homogeneous of degree n(k-1) in all edge variables (chart edge restored)."""
        out = {}
        for k, num in self.numerators.items():
            out[k] = MultiPoly.coerce(num).homogenize(edge_var(self.chart), self.loops * (k - 1))
        return out


def _graph_setup(g: Graph, tree, chart):
    tree = frozenset(tree) if tree is not None else default_tree(g)
    basis = cycle_basis_from_tree(g, tree)
    if chart is None:
        chart = max(tree)
    if chart not in tree:
        raise GraphError(f"chart edge {chart} must belong to the spanning tree")
    lap = laplacian(g, basis).specialize(chart, 1)
    free = tuple(e for e in range(1, g.num_edges + 1) if e != chart)
    table = GeneratorTable(f"dx{e}" for e in free)
    h = len(basis)
    rows = []
    for i in range(h):
        row = []
        for j in range(h):
            terms = {}
            for pos, e in enumerate(free):
                w = basis[i][e - 1] * basis[j][e - 1]
                if w:
                    terms[1 << pos] = w
            row.append(ExtForm(table, terms))
        rows.append(row)
    return basis, chart, lap, free, FormMatrix(table, rows)


def canonical_form_graph(g: Graph, tree=None, chart: Optional[int] = None) -> GraphCanonicalForm:
    h = g.loop_number
    if g.num_edges != 2 * h:
        raise GraphError(f"the top invariant form needs |E| = 2 h_G, got |E| = {g.num_edges}, h_G = {h}")
    basis, chart, lap, free, dlam = _graph_setup(g, tree, chart)
    psi = lap.det()
    if h % 2 == 0:
        return GraphCanonicalForm(h, chart, free, psi, {})
    terms = canonical_form_symmetric(lap.matrix, dlam)
    nums: Dict[int, object] = {}
    for t in terms:
        top = t.omega.top_coefficient()
        if top:
            nums[t.k] = nums.get(t.k, 0) + t.coefficient * top
    nums = {k: v for k, v in nums.items() if v}
    return GraphCanonicalForm(h, chart, free, psi, nums, terms)


def canonical_form_direct_at_point(g: Graph, tree, chart: Optional[int], point: Dict[int, object]) -> ExtForm:
    """tr((Lambda(x)^-1 dLambda)^(2n-1)) with x numeric and the dx_e kept as generators.

    Lambda(x) = L / D with L an integer matrix, so Lambda^-1 = D adj(L) / det(L)
    and the whole power is (D / det L)^(2n-1) times an integer computation.
    """
    h = g.loop_number
    basis, chart, lap, free, dlam = _graph_setup(g, tree, chart)
    vals = {e: Fraction(point[e]) for e in free}
    num = lap.evaluate(vals)
    denom = lcm(*[Fraction(num[i, j]).denominator for i in range(h) for j in range(h)])
    scaled = num.map(lambda v: int(Fraction(v) * denom))
    det_l = poly_det(scaled, "fraction_free")
    if not det_l:
        raise ZeroDivisionError("Laplacian is singular at this point")
    adj = scaled.inverse().map(lambda v: Fraction(v) * det_l)
    adj = adj.map(lambda v: v.numerator)
    top = trace_of_power(adj, dlam, 2 * h - 1)
    return top.scale(Fraction(denom, det_l) ** (2 * h - 1))


def canonical_form_direct_symbolic(g: Graph, tree=None, projective: bool = True):
    """Symbolic tr((adj(Lambda) dLambda)^(2n-1)) and Psi, so that the form is the first over Psi^(2n-1).

    With ``projective`` every edge keeps its differential; otherwise the
    highest tree edge is fixed to 1.
    """
    tree = frozenset(tree) if tree is not None else default_tree(g)
    basis = cycle_basis_from_tree(g, tree)
    lap = laplacian(g, basis)
    chart = None if projective else max(tree)
    if chart is not None:
        lap = lap.specialize(chart, 1)
    edges = [e for e in range(1, g.num_edges + 1) if e != chart]
    table = GeneratorTable(f"dx{e}" for e in edges)
    h = len(basis)
    dlam = FormMatrix(table, [[ExtForm(table, {1 << pos: basis[i][e - 1] * basis[j][e - 1]
                                                for pos, e in enumerate(edges) if basis[i][e - 1] * basis[j][e - 1]})
                               for j in range(h)] for i in range(h)])
    adj = lap.matrix.adjugate()
    return trace_of_power(adj, dlam, 2 * h - 1), lap.det(), table


def projective_volume_form(table: GeneratorTable, variables: Sequence[str]) -> ExtForm:
    """Omega = sum_i (-1)^i x_i dx_1 ∧ ... (dx_i omitted) ... ∧ dx_N."""
    n = len(variables)
    acc = ExtForm(table)
    full = (1 << n) - 1
    for i, v in enumerate(variables, start=1):
        acc = acc + ExtForm(table, {full & ~(1 << (i - 1)): MultiPoly.var(v) * (-1) ** i})
    return acc
