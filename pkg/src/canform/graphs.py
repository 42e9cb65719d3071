"""Graphs, fundamental cycle bases and the cycle-space Laplacian.

Vertices are numbered from 0, edges from 1.  Each edge carries an
orientation (tail, head) and a variable ``x<e>``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .algebra import MultiPoly, PolyMatrix


class GraphError(ValueError):
    pass


def edge_var(e: int) -> str:
    return f"x{e}"


class Graph:
    """A connected multigraph with oriented, numbered edges."""

    def __init__(self, num_vertices: int, edges: Sequence[Tuple[int, int]]):
        if num_vertices < 1:
            raise GraphError("a graph needs at least one vertex")
        self.num_vertices = num_vertices
        self.edges: Tuple[Tuple[int, int], ...] = tuple((int(u), int(v)) for u, v in edges)
        for u, v in self.edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise GraphError(f"edge ({u},{v}) uses a vertex outside 0..{num_vertices - 1}")
        if not self._connected(range(1, len(self.edges) + 1)):
            raise GraphError("graph is not connected")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def loop_number(self) -> int:
        return self.num_edges - self.num_vertices + 1

    def edge(self, e: int) -> Tuple[int, int]:
        return self.edges[e - 1]

    def has_self_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def _connected(self, edge_ids: Iterable[int]) -> bool:
        parent = list(range(self.num_vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        comps = self.num_vertices
        for e in edge_ids:
            u, v = self.edge(e)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        return comps == 1

    def is_spanning_tree(self, tree: Iterable[int]) -> bool:
        tree = sorted(set(tree))
        if len(tree) != self.num_vertices - 1 or any(not 1 <= e <= self.num_edges for e in tree):
            return False
        return self._connected(tree)

    def spanning_trees(self) -> List[FrozenSet[int]]:
        """All spanning trees by brute force over edge subsets."""
        return [frozenset(t) for t in itertools.combinations(range(1, self.num_edges + 1), self.num_vertices - 1)
                if self._connected(t)]

    def incidence(self) -> List[List[int]]:
        """Signed vertex-edge incidence matrix: -1 at the tail, +1 at the head."""
        m = [[0] * self.num_edges for _ in range(self.num_vertices)]
        for k, (u, v) in enumerate(self.edges):
            m[u][k] -= 1
            m[v][k] += 1
        return m

    def to_json(self, tree: Optional[Iterable[int]] = None) -> dict:
        d = {"vertices": self.num_vertices, "edges": [list(e) for e in self.edges]}
        if tree is not None:
            d["tree"] = sorted(tree)
        return d

    def __repr__(self) -> str:
        return f"Graph(V={self.num_vertices}, E={list(self.edges)})"


@dataclass(frozen=True)
class CycleBasis:
    """Integer cycle vectors indexed by edge (position e-1 holds edge e)."""

    cycles: Tuple[Tuple[int, ...], ...]
    tree: FrozenSet[int] = frozenset()

    def __len__(self) -> int:
        return len(self.cycles)

    def __getitem__(self, i: int) -> Tuple[int, ...]:
        return self.cycles[i]


def _tree_path(g: Graph, tree: Iterable[int], start: int, goal: int) -> List[Tuple[int, int]]:
    """Walk from start to goal inside the tree; returns (edge, +1/-1 traversal sign)."""
    adj: Dict[int, List[Tuple[int, int, int]]] = {v: [] for v in range(g.num_vertices)}
    for e in tree:
        u, v = g.edge(e)
        adj[u].append((v, e, 1))
        adj[v].append((u, e, -1))
    prev: Dict[int, Optional[Tuple[int, int, int]]] = {start: None}
    stack = [start]
    while stack:
        a = stack.pop()
        if a == goal:
            break
        for b, e, s in adj[a]:
            if b not in prev:
                prev[b] = (a, e, s)
                stack.append(b)
    if goal not in prev:
        raise GraphError("tree does not connect the endpoints of an edge")
    path = []
    v = goal
    while prev[v] is not None:
        a, e, s = prev[v]
        path.append((e, s))
        v = a
    return path[::-1]


def cycle_basis_from_tree(g: Graph, tree: Iterable[int]) -> CycleBasis:
    """Fundamental cycles of ``tree``, one per non-tree edge in increasing order.

    The cycle for non-tree edge e = (u, v) is e itself (+1) followed by the
    tree path from v back to u, each tree edge signed by the direction in
    which it is traversed.
    """
    tree = frozenset(tree)
    if not g.is_spanning_tree(tree):
        raise GraphError(f"edges {sorted(tree)} do not form a spanning tree")
    if g.has_self_loops():
        raise GraphError("self-loops are not supported by the cycle basis construction")
    cycles = []
    for e in range(1, g.num_edges + 1):
        if e in tree:
            continue
        vec = [0] * g.num_edges
        vec[e - 1] = 1
        u, v = g.edge(e)
        for f, s in _tree_path(g, tree, v, u):
            vec[f - 1] += s
        cycles.append(tuple(vec))
    return CycleBasis(tuple(cycles), tree)


def is_cycle(g: Graph, vec: Sequence[int]) -> bool:
    inc = g.incidence()
    return all(sum(r[k] * vec[k] for k in range(g.num_edges)) == 0 for r in inc)


class LaplacianMatrix:
    """Lambda_ij = sum_e c_i[e] c_j[e] x_e for a given cycle basis."""

    def __init__(self, matrix: PolyMatrix, basis: CycleBasis, fixed: Optional[Dict[int, int]] = None):
        self.matrix = matrix
        self.basis = basis
        self.fixed = dict(fixed or {})

    @property
    def size(self) -> int:
        return self.matrix.rows

    def specialize(self, edge: int, value=1) -> "LaplacianMatrix":
        """Set x_edge to a constant (the affine chart)."""
        fixed = dict(self.fixed)
        fixed[edge] = value
        return LaplacianMatrix(self.matrix.subs({edge_var(edge): value}), self.basis, fixed)

    def free_edges(self) -> List[int]:
        n_edges = len(self.basis.cycles[0]) if self.basis.cycles else 0
        return [e for e in range(1, n_edges + 1) if e not in self.fixed]

    def evaluate(self, point: Dict[int, object]) -> PolyMatrix:
        return self.matrix.evaluate({edge_var(e): v for e, v in point.items()})

    def det(self):
        return self.matrix.det()

    def __str__(self) -> str:
        return str(self.matrix)


def laplacian(g: Graph, basis: CycleBasis) -> LaplacianMatrix:
    h = len(basis)
    xs = [MultiPoly.var(edge_var(e)) for e in range(1, g.num_edges + 1)]
    entries = [[MultiPoly.zero()] * h for _ in range(h)]
    for i in range(h):
        for j in range(i, h):
            acc = MultiPoly.zero()
            ci, cj = basis[i], basis[j]
            for k in range(g.num_edges):
                w = ci[k] * cj[k]
                if w:
                    acc = acc + xs[k] * w
            entries[i][j] = acc
            entries[j][i] = acc
    return LaplacianMatrix(PolyMatrix(entries), basis)


def graph_polynomial(g: Graph, basis: CycleBasis) -> MultiPoly:
    return laplacian(g, basis).det()


def spanning_tree_polynomial(g: Graph) -> MultiPoly:
    """Sum over spanning trees T of the product of x_e over edges not in T."""
    acc = MultiPoly.zero()
    for t in g.spanning_trees():
        term = MultiPoly.const(1)
        for e in range(1, g.num_edges + 1):
            if e not in t:
                term = term * MultiPoly.var(edge_var(e))
        acc = acc + term
    return acc


def wheel(n: int) -> Tuple[Graph, FrozenSet[int], CycleBasis]:
    """The wheel with n spokes.

    Hub is vertex 0 and rim vertex i (1..n) is where rim edges i and i+1
    meet.  Rim edge i runs from rim vertex i-1 to i (counter-clockwise),
    spoke n+i runs from rim vertex i into the hub.  The spokes form the
    tree, giving the triangle cycles c_i = e_i + e_{n+i} - e_{n+i-1}.
    """
    if n < 3:
        raise GraphError("wheels need at least 3 spokes")
    edges = [(n if i == 1 else i - 1, i) for i in range(1, n + 1)]
    edges += [(i, 0) for i in range(1, n + 1)]
    g = Graph(n + 1, edges)
    tree = frozenset(range(n + 1, 2 * n + 1))
    return g, tree, cycle_basis_from_tree(g, tree)


def load_graph(source: str) -> Tuple[Graph, Optional[FrozenSet[int]]]:
    """Read ``wheel:N`` shorthand, a JSON file path, or an inline JSON object."""
    if source.startswith("wheel:"):
        try:
            n = int(source.split(":", 1)[1])
        except ValueError:
            raise GraphError(f"bad wheel shorthand {source!r}") from None
        g, tree, _ = wheel(n)
        return g, tree
    text = source if source.lstrip().startswith("{") else Path(source).read_text()
    try:
        data = json.loads(text)
        g = Graph(int(data["vertices"]), [tuple(e) for e in data["edges"]])
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise GraphError(f"malformed graph description: {exc}") from None
    tree = frozenset(data["tree"]) if "tree" in data else None
    return g, tree


def default_tree(g: Graph) -> FrozenSet[int]:
    """Greedy spanning tree preferring the highest-numbered edges."""
    parent = list(range(g.num_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree = []
    for e in range(g.num_edges, 0, -1):
        u, v = g.edge(e)
        if u == v:
            continue
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append(e)
    return frozenset(tree)
