"""Types: sets of matrix positions (i, j) and their signed top forms.

A type of rank n is a set of 2n-1 positions in an n x n matrix.  Its
weight vectors count positions per row (p) and per column (q).  The sign
attached to a type is a maximal minor of its bipartite incidence matrix,
and it is nonzero exactly when the positions, read as edges between row
nodes and column nodes, form a spanning tree.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, List, Mapping, Optional, Tuple

from .algebra import _det_bareiss, permutation_sign
from .exterior import ExtForm, GeneratorTable, pair_name

Pair = Tuple[int, int]


@dataclass(frozen=True)
class WeightVectors:
    p: Tuple[int, ...]
    q: Tuple[int, ...]


@dataclass(frozen=True)
class TypeNu:
    n: int
    pairs: Tuple[Pair, ...]
    _weights: WeightVectors = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, n: int, pairs):
        ps = tuple(sorted((int(i), int(j)) for i, j in pairs))
        if len(set(ps)) != len(ps):
            raise ValueError("type contains a repeated position")
        for i, j in ps:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"position ({i},{j}) outside a {n}x{n} matrix")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "pairs", ps)
        p = [0] * n
        q = [0] * n
        for i, j in ps:
            p[i - 1] += 1
            q[j - 1] += 1
        object.__setattr__(self, "_weights", WeightVectors(tuple(p), tuple(q)))

    @classmethod
    def parse(cls, n: int, text: str) -> "TypeNu":
        """Accept "11,12,22" style shorthand (single-digit indices only)."""
        items = [t.strip() for t in text.replace("{", "").replace("}", "").split(",") if t.strip()]
        return cls(n, [(int(t[0]), int(t[1])) for t in items])

    def weight(self) -> WeightVectors:
        return self._weights

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __str__(self) -> str:
        return "{" + ",".join(f"({i},{j})" for i, j in self.pairs) + "}"

    def is_upper_triangular(self) -> bool:
        return all(i <= j for i, j in self.pairs)

    def contains_diagonal(self) -> bool:
        return all((i, i) in self.pairs for i in range(1, self.n + 1))

    def generator_names(self, prefix: str = "w") -> List[str]:
        return [pair_name(prefix, i, j) for i, j in self.pairs]

    def incidence_matrix(self) -> List[List[int]]:
        """One row per position, -1 in row-node column i, +1 in column-node column n+j."""
        rows = []
        for i, j in self.pairs:
            r = [0] * (2 * self.n)
            r[i - 1] = -1
            r[self.n + j - 1] = 1
            rows.append(r)
        return rows

    def omega_sign(self, deleted_column: Optional[int] = None) -> int:
        return omega_sign(self, deleted_column)


def omega_sign(nu: TypeNu, deleted_column: Optional[int] = None) -> int:
    """(-1)^(C(n,2)+k-1) times the minor of the incidence matrix without column k."""
    n = nu.n
    k = 2 * n if deleted_column is None else deleted_column
    if not 1 <= k <= 2 * n:
        raise ValueError("deleted column out of range")
    if len(nu.pairs) != 2 * n - 1:
        raise ValueError("omega_sign needs a type with 2n-1 positions")
    m = [[x for c, x in enumerate(r) if c != k - 1] for r in nu.incidence_matrix()]
    d = _det_bareiss(m)
    return (-1) ** (comb(n, 2) + k - 1) * d


def omega_form(nu: TypeNu, table: GeneratorTable, prefix: str = "w") -> ExtForm:
    """omega_nu = sign * (wedge of the generators of nu in lexicographic order)."""
    s = omega_sign(nu)
    if not s:
        return ExtForm(table)
    return ExtForm.monomial(table, nu.generator_names(prefix), s)


def omega_wedge(nu: TypeNu, entries: Mapping[Pair, ExtForm]) -> ExtForm:
    """omega_nu with each generator replaced by a given 1-form, e.g. dLambda_ij."""
    s = omega_sign(nu)
    forms = [entries[p] for p in nu.pairs]
    table = forms[0].table
    if not s:
        return ExtForm(table)
    out = ExtForm.scalar(table, s)
    for f in forms:
        out = out.wedge(f)
        if not out:
            break
    return out


@dataclass(frozen=True)
class Expansion:
    """omega_nu = sign * w_{chain[0]} ∧ w_{chain[1]} ∧ ... (sign 0 means omega_nu = 0)."""

    sign: int
    chain: Tuple[Pair, ...]

    def lexicographic_sign(self) -> int:
        """The sign once the chain is reordered lexicographically."""
        if not self.sign:
            return 0
        return self.sign * permutation_sign(self.chain)


def omega_expand_recursive(nu: TypeNu) -> Expansion:
    """Peel off a lone column entry and a lone row entry, then recurse on rank n-1.

    Looks for a column c holding a single position (i, c) and, once column c
    is removed, a row r holding a single position (r, j).  Then
    omega_nu = (-1)^(c+r) w_ic ∧ w_rj ∧ omega_rest where the rest lives in
    the matrix with row r and column c deleted.  No such pair means zero.
    """
    if len(nu.pairs) != 2 * nu.n - 1:
        raise ValueError("recursive expansion needs 2n-1 positions")
    sign, chain = _expand(list(nu.pairs), list(nu.pairs), nu.n)
    return Expansion(sign, tuple(chain) if sign else ())


def _expand(pairs: List[Pair], labels: List[Pair], n: int):
    if n == 1:
        return (1, [labels[0]]) if pairs == [(1, 1)] else (0, [])
    for c in range(1, n + 1):
        in_col = [k for k, (_, j) in enumerate(pairs) if j == c]
        if len(in_col) != 1:
            continue
        kc = in_col[0]
        for r in range(1, n + 1):
            in_row = [k for k, (i, j) in enumerate(pairs) if i == r and j != c]
            if len(in_row) != 1:
                continue
            kr = in_row[0]
            rest = [k for k in range(len(pairs)) if k not in (kc, kr)]
            if any(pairs[k][0] == r or pairs[k][1] == c for k in rest):
                continue
            sub_pairs = [(pairs[k][0] - (pairs[k][0] > r), pairs[k][1] - (pairs[k][1] > c)) for k in rest]
            order = sorted(range(len(rest)), key=lambda t: sub_pairs[t])
            s, sub_chain = _expand([sub_pairs[t] for t in order], [labels[rest[t]] for t in order], n - 1)
            if not s:
                return 0, []
            return (-1) ** (c + r) * s, [labels[kc], labels[kr]] + sub_chain
    return 0, []


def all_types(n: int, size: Optional[int] = None) -> Iterator[TypeNu]:
    """Every type of rank n in lexicographic order of the sorted pair lists."""
    size = 2 * n - 1 if size is None else size
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for combo in itertools.combinations(cells, size):
        yield TypeNu(n, combo)


def random_type(n: int, rng: random.Random, size: Optional[int] = None) -> TypeNu:
    size = 2 * n - 1 if size is None else size
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    return TypeNu(n, rng.sample(cells, size))


def random_tree_type(n: int, rng: random.Random) -> TypeNu:
    """A random type whose sign is nonzero (its bipartite graph is a spanning tree)."""
    while True:
        nu = random_type(n, rng)
        if omega_sign(nu):
            return nu


def wheel_type(n: int) -> TypeNu:
    """Diagonal plus the superdiagonal positions (1,2), ..., (n-1,n)."""
    return TypeNu(n, [(i, i) for i in range(1, n + 1)] + [(i, i + 1) for i in range(1, n)])


def upper_types_with_diagonal(n: int) -> Iterator[TypeNu]:
    """Upper-triangular types containing the diagonal: diagonal plus n-1 off-diagonal positions."""
    upper = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    diag = [(i, i) for i in range(1, n + 1)]
    for extra in itertools.combinations(upper, n - 1):
        yield TypeNu(n, diag + list(extra))
