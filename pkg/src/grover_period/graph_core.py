"""Graphs, generalized Bethe trees and their level structure.

Vertices are the integers ``0..n-1``.  Arcs are ordered pairs ``(u, v)`` for
every edge ``{u, v}``, indexed lexicographically so that matrices built on the
arc set are reproducible.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable


class GraphError(ValueError):
    """Invalid graph input: loops, repeated edges, disconnected, too small."""


class SpecError(ValueError):
    """Invalid Bethe degree sequence."""


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    arcs: tuple[tuple[int, int], ...] = field(init=False, repr=False)
    arc_index: dict[tuple[int, int], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 2:
            raise GraphError("a graph needs at least 2 vertices")
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range")
            if u >= v:
                raise GraphError(f"edge ({u}, {v}) is not normalised as u < v")
            nbrs[u].append(v)
            nbrs[v].append(u)
        adjacency = tuple(tuple(sorted(x)) for x in nbrs)
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != n:
            raise GraphError("graph is disconnected")
        arcs = tuple((u, v) for u in range(n) for v in adjacency[u])
        object.__setattr__(self, "adjacency", adjacency)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "arc_index", {a: i for i, a in enumerate(arcs)})

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
        normed = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in normed:
                raise GraphError(f"duplicate edge {e}")
            normed.add(e)
        return cls(vertex_count, frozenset(normed))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def inverse_arc(self, a: int) -> int:
        u, v = self.arcs[a]
        return self.arc_index[(v, u)]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def transition_matrix(g: Graph) -> list[list[Fraction]]:
    """Simple random walk matrix, T[u][v] = 1/deg(u) for adjacent u, v."""
    n = g.vertex_count
    T = [[Fraction(0)] * n for _ in range(n)]
    for u in range(n):
        w = Fraction(1, g.degree(u))
        for v in g.adjacency[u]:
            T[u][v] = w
    return T


def betti_and_bipartite(g: Graph) -> tuple[int, bool]:
    """First Betti number |E| - |V| + 1 and whether g is 2-colourable."""
    colour = [-1] * g.vertex_count
    colour[0] = 0
    queue = deque([0])
    bipartite = True
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if colour[w] < 0:
                colour[w] = 1 - colour[u]
                queue.append(w)
            elif colour[w] == colour[u]:
                bipartite = False
    return g.edge_count - g.vertex_count + 1, bipartite


def load_edge_list(text: str) -> Graph:
    """Parse whitespace-separated 0-based vertex pairs."""
    tokens = text.split()
    if not tokens:
        raise GraphError("empty edge list")
    if len(tokens) % 2:
        raise GraphError("odd number of vertex ids")
    try:
        ids = [int(t) for t in tokens]
    except ValueError as exc:
        raise GraphError(f"non-integer vertex id: {exc}") from None
    if min(ids) < 0:
        raise GraphError("negative vertex id")
    pairs = list(zip(ids[::2], ids[1::2]))
    return Graph.from_edges(max(ids) + 1, pairs)


def path_graph(m: int) -> Graph:
    return Graph.from_edges(m, [(i, i + 1) for i in range(m - 1)])


def cycle_graph(m: int) -> Graph:
    return Graph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])


def complete_graph(m: int) -> Graph:
    return Graph.from_edges(m, combinations(range(m), 2))


def complete_bipartite_graph(r: int, s: int) -> Graph:
    return Graph.from_edges(r + s, [(i, r + j) for i in range(r) for j in range(s)])


def subdivide_graph(g: Graph, k: int) -> Graph:
    """Replace every edge by a path with k - 1 new internal vertices."""
    if k < 1:
        raise GraphError("k must be positive")
    edges = []
    nxt = g.vertex_count
    for u, v in g.sorted_edges():
        chain = [u] + list(range(nxt, nxt + k - 1)) + [v]
        nxt += k - 1
        edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(nxt, edges)


# ---------------------------------------------------------------------------
# generalized Bethe trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BetheSpec:
    """Children-per-level sequence d(0), ..., d(n-1); d(n) is implicitly 0."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        degrees = tuple(self.degrees)
        if not degrees:
            raise SpecError("degree sequence is empty")
        for d in degrees:
            if not isinstance(d, int) or isinstance(d, bool) or d < 1:
                raise SpecError(f"invalid level degree {d!r}")
        object.__setattr__(self, "degrees", degrees)

    @classmethod
    def parse(cls, text: str) -> BetheSpec:
        try:
            return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t != ""))
        except ValueError:
            raise SpecError(f"cannot parse Bethe spec {text!r}") from None

    def __str__(self) -> str:
        return ",".join(map(str, self.degrees))

    @property
    def n(self) -> int:
        """Index of the leaf level (the tree has n + 1 levels)."""
        return len(self.degrees)

    def d(self, i: int) -> int:
        """Degree at level i, with d(n) = 0 (and 0 beyond)."""
        if i < 0:
            raise IndexError(i)
        return self.degrees[i] if i < self.n else 0

    @property
    def level_sizes(self) -> tuple[int, ...]:
        sizes = [1]
        for d in self.degrees:
            sizes.append(sizes[-1] * d)
        return tuple(sizes)

    @property
    def vertex_count(self) -> int:
        return sum(self.level_sizes)

    @property
    def arc_count(self) -> int:
        return 2 * (self.vertex_count - 1)


@dataclass(frozen=True)
class LevelPartition:
    levels: tuple[tuple[int, ...], ...]
    parent: dict[int, int]

    def level_of(self, v: int) -> int:
        for i, lev in enumerate(self.levels):
            if lev[0] <= v <= lev[-1]:
                return i
        raise KeyError(v)

    def children(self, v: int) -> list[int]:
        return sorted(c for c, p in self.parent.items() if p == v)


def bethe_graph(spec: BetheSpec) -> tuple[Graph, LevelPartition]:
    """Build B(spec) with BFS numbering: by level, children in parent order."""
    levels: list[tuple[int, ...]] = [(0,)]
    parent: dict[int, int] = {}
    edges = []
    nxt = 1
    for d in spec.degrees:
        layer = []
        for p in levels[-1]:
            for _ in range(d):
                parent[nxt] = p
                edges.append((p, nxt))
                layer.append(nxt)
                nxt += 1
        levels.append(tuple(layer))
    return Graph.from_edges(nxt, edges), LevelPartition(tuple(levels), parent)


def subdivide_spec(spec: BetheSpec, k: int) -> BetheSpec:
    if k < 1:
        raise SpecError("k must be positive")
    out: list[int] = []
    for d in spec.degrees:
        out.append(d)
        out.extend([1] * (k - 1))
    return BetheSpec(tuple(out))


def path_spec(vertices: int) -> BetheSpec:
    if vertices < 2:
        raise SpecError("a path needs at least 2 vertices")
    return BetheSpec((1,) * (vertices - 1))


def star_spec(vertices: int) -> BetheSpec:
    if vertices < 3:
        raise SpecError("a star needs at least 3 vertices")
    return BetheSpec((vertices - 1,))


def extract_bethe_spec(g: Graph, root: int = 0) -> BetheSpec | None:
    """Recover the degree sequence of ``g`` rooted at ``root``.

    Returns None when g is not a tree or its levels are not equitable.
    """
    if g.edge_count != g.vertex_count - 1:
        return None
    depth = {root: 0}
    layers = [[root]]
    while True:
        nxt = []
        for u in layers[-1]:
            for w in g.adjacency[u]:
                if w not in depth:
                    depth[w] = len(layers)
                    nxt.append(w)
        if not nxt:
            break
        layers.append(nxt)
    degrees = []
    for i, layer in enumerate(layers[:-1]):
        counts = {sum(1 for w in g.adjacency[u] if depth[w] == i + 1) for u in layer}
        if len(counts) != 1:
            return None
        degrees.append(counts.pop())
    return BetheSpec(tuple(degrees)) if degrees else None


def level_size_formula(spec: BetheSpec) -> int:
    """1 + sum_i prod_{j<i} d(j), the closed-form vertex count."""
    return 1 + sum(math.prod(spec.degrees[:i]) for i in range(1, spec.n + 1))


def is_equitable(g: Graph, partition: LevelPartition, spec: BetheSpec) -> bool:
    for i, layer in enumerate(partition.levels[:-1]):
        below = set(partition.levels[i + 1])
        if any(sum(1 for w in g.adjacency[v] if w in below) != spec.d(i) for v in layer):
            return False
    return True

