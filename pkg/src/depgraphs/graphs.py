"""Bitset graphs and the exact combinatorial primitives built on them.

Vertices are the integers 0..n-1.  Adjacency is one Python int per vertex,
with bit v of row u set iff {u,v} is an edge.  Unordered pairs carry a
colexicographic index: {u,v} with u < v maps to v*(v-1)//2 + u, so the
pairs on the first k vertices occupy indices 0..C(k,2)-1 and the index of
a pair never depends on n.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple


def num_edges(n: int) -> int:
    """Number of potential edges on n vertices."""
    return n * (n - 1) // 2


def edge_index(u: int, v: int, n: int) -> int:
    """Canonical index of the unordered pair {u,v}; order-insensitive."""
    if u == v:
        raise ValueError(f"self-pair ({u},{u}) has no edge index")
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"vertices ({u},{v}) out of range for n={n}")
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def edge_endpoints(index: int, n: int) -> tuple[int, int]:
    """Inverse of edge_index: the pair (u, v) with u < v."""
    if not (0 <= index < num_edges(n)):
        raise ValueError(f"edge index {index} out of range for n={n}")
    v = int((1 + (1 + 8 * index) ** 0.5) / 2)
    # guard against float rounding at the triangular-number boundaries
    while v * (v - 1) // 2 > index:
        v -= 1
    while (v + 1) * v // 2 <= index:
        v += 1
    return index - v * (v - 1) // 2, v


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vertex_mask(vertices: Iterable[int], n: int) -> int:
    """Bitmask of a vertex subset, validating range."""
    m = 0
    for v in vertices:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
        m |= 1 << v
    return m


class Graph:
    """Immutable simple undirected graph on labeled vertices."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Iterable[int] | None = None):
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        self.n = n
        if rows is None:
            self.rows = (0,) * n
        else:
            self.rows = tuple(rows)
            if len(self.rows) != n:
                raise ValueError("adjacency must have one row per vertex")
            self._validate()

    def _validate(self) -> None:
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {u} has bits beyond vertex {self.n - 1}")
            if (row >> u) & 1:
                raise ValueError(f"self-loop at vertex {u}")
        for u, row in enumerate(self.rows):
            for v in iter_bits(row):
                if not (self.rows[v] >> u) & 1:
                    raise ValueError(f"adjacency not symmetric at ({u},{v})")

    @classmethod
    def _from_rows_unchecked(cls, n: int, rows) -> "Graph":
        # trusted fast path for samplers that build symmetric rows by construction
        g = object.__new__(cls)
        g.n = n
        g.rows = tuple(rows)
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, (full ^ (1 << v) for v in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad edge ({u},{v}) for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._from_rows_unchecked(n, rows)

    @classmethod
    def from_edge_indices(cls, n: int, indices: Iterable[int]) -> "Graph":
        rows = [0] * n
        for i in indices:
            u, v = edge_endpoints(i, n)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._from_rows_unchecked(n, rows)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, ascending by edge index."""
        for v in range(self.n):
            row = self.rows[v] & ((1 << v) - 1)
            for u in iter_bits(row):
                yield u, v

    def edge_indices(self) -> Iterator[int]:
        for u, v in self.edges():
            yield edge_index(u, v, self.n)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count()})"


def count_edges_between(g: Graph, a: Iterable[int], b: Iterable[int]) -> int:
    """e(A,B): edges with one endpoint in A and one in B.

    Edges with both endpoints in the intersection contribute twice, the
    convention under which e(V,V) = 2|E|.
    """
    am = vertex_mask(a, g.n)
    bm = vertex_mask(b, g.n)
    return sum((g.rows[u] & bm).bit_count() for u in iter_bits(am))


def degree_sequence(g: Graph) -> list[int]:
    """Degree of every vertex, in vertex order."""
    return [r.bit_count() for r in g.rows]


def is_connected(g: Graph) -> bool:
    """True iff the graph has exactly one connected component."""
    if g.n == 1:
        return True
    visited = 1
    frontier = 1
    while frontier:
        reach = 0
        for v in iter_bits(frontier):
            reach |= g.rows[v]
        frontier = reach & ~visited
        visited |= frontier
    return visited == (1 << g.n) - 1


def connected_components(g: Graph) -> list[int]:
    """Vertex bitmasks of the connected components."""
    remaining = (1 << g.n) - 1
    comps = []
    while remaining:
        start = remaining & -remaining
        visited = start
        frontier = start
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= g.rows[v]
            frontier = reach & ~visited
            visited |= frontier
        comps.append(visited)
        remaining &= ~visited
    return comps


def clique_number(g: Graph) -> int:
    """Exact maximum clique size.

    Branch and bound with a greedy-coloring bound; intended for n up to
    roughly 60.  No approximate fallback: oversized inputs just take long.
    """
    rows = g.rows
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            if size > best:
                best = size
            return
        # color classes of the candidate set; a clique meets each class once
        order: list[int] = []
        bound: list[int] = []
        uncolored = cand
        color = 0
        while uncolored:
            color += 1
            avail = uncolored
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(rows[v] | (1 << v))
                uncolored &= ~(1 << v)
                order.append(v)
                bound.append(color)
        for i in range(len(order) - 1, -1, -1):
            if size + bound[i] <= best:
                return
            v = order[i]
            expand(size + 1, cand & rows[v])
            cand &= ~(1 << v)

    expand(0, (1 << g.n) - 1)
    return best


class SubgraphPattern:
    """A small target graph H together with its derived quantities."""

    __slots__ = ("graph", "name")

    def __init__(self, graph: Graph, name: str | None = None):
        self.graph = graph
        self.name = name

    @property
    def vertex_count(self) -> int:
        return self.graph.n

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count()

    @classmethod
    def clique(cls, k: int) -> "SubgraphPattern":
        return cls(Graph.complete(k), name=f"k{k}")

    @classmethod
    def cycle(cls, k: int) -> "SubgraphPattern":
        if k < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return cls(Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)]), name=f"c{k}")

    @classmethod
    def path(cls, edges: int) -> "SubgraphPattern":
        """Path with the given number of edges."""
        if edges < 1:
            raise ValueError("path needs at least one edge")
        return cls(Graph.from_edges(edges + 1, [(i, i + 1) for i in range(edges)]),
                   name=f"path{edges}")

    @classmethod
    def single_edge(cls) -> "SubgraphPattern":
        return cls(Graph.from_edges(2, [(0, 1)]), name="edge")

    def __eq__(self, other) -> bool:
        return isinstance(other, SubgraphPattern) and self.graph == other.graph

    def __hash__(self) -> int:
        return hash(self.graph)

    def __repr__(self) -> str:
        return f"SubgraphPattern({self.name or self.graph!r})"


def named_pattern(name: str) -> SubgraphPattern:
    """Small pattern library: k2..k8, c3..c8, path1..path7, edge."""
    key = name.strip().lower()
    if key == "edge":
        return SubgraphPattern.single_edge()
    if key.startswith("k") and key[1:].isdigit():
        return SubgraphPattern.clique(int(key[1:]))
    if key.startswith("c") and key[1:].isdigit():
        return SubgraphPattern.cycle(int(key[1:]))
    if key.startswith("path") and key[4:].isdigit():
        return SubgraphPattern.path(int(key[4:]))
    raise ValueError(f"unknown pattern {name!r} (try k3, c5, path2, edge)")


def _embedding_order(h: Graph) -> list[int]:
    # most-constrained first: start at max degree, then prefer vertices with
    # many already-placed neighbors
    placed: list[int] = []
    placed_mask = 0
    degs = degree_sequence(h)
    while len(placed) < h.n:
        best_v, best_key = -1, (-1, -1)
        for v in range(h.n):
            if (placed_mask >> v) & 1:
                continue
            key = ((h.rows[v] & placed_mask).bit_count(), degs[v])
            if key > best_key:
                best_v, best_key = v, key
        placed.append(best_v)
        placed_mask |= 1 << best_v
    return placed


def contains_subgraph(g: Graph, pattern: SubgraphPattern) -> bool:
    """True iff g has a (not necessarily induced) copy of the pattern."""
    h = pattern.graph
    k = h.n
    if k > g.n:
        return False
    if h.edge_count() > g.edge_count():
        return False
    order = _embedding_order(h)
    # earlier-placed pattern neighbors of order[i], as positions in `order`
    back_edges: list[list[int]] = []
    for i, v in enumerate(order):
        back_edges.append([j for j in range(i) if h.has_edge(v, order[j])])
    h_degs = [h.degree(v) for v in order]
    g_degs = degree_sequence(g)
    full = (1 << g.n) - 1
    images = [0] * k

    def place(i: int, used: int) -> bool:
        if i == k:
            return True
        cands = full & ~used
        for j in back_edges[i]:
            cands &= g.rows[images[j]]
        need = h_degs[i]
        for w in iter_bits(cands):
            if g_degs[w] < need:
                continue
            images[i] = w
            if place(i + 1, used | (1 << w)):
                return True
        return False

    return place(0, 0)


@lru_cache(maxsize=None)
def _max_matching(n: int, edges: tuple[tuple[int, int], ...]) -> int:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    memo: dict[int, int] = {}

    def rec(mask: int) -> int:
        if mask not in memo:
            m = mask
            v = -1
            # first vertex in mask with a neighbor also in mask
            while m:
                c = (m & -m).bit_length() - 1
                if adj[c] & mask:
                    v = c
                    break
                m ^= m & -m
            if v < 0:
                memo[mask] = 0
            else:
                best = rec(mask & ~(1 << v))  # leave v unmatched
                for w in iter_bits(adj[v] & mask):
                    best = max(best, 1 + rec(mask & ~((1 << v) | (1 << w))))
                memo[mask] = best
        return memo[mask]

    return rec((1 << n) - 1)


def support_vertices(g: Graph) -> int:
    """Bitmask of vertices with at least one incident edge."""
    m = 0
    for v, row in enumerate(g.rows):
        if row:
            m |= 1 << v
    return m


def edge_cover_number(pattern: SubgraphPattern) -> int:
    """Minimum number of edges whose endpoints cover every non-isolated vertex.

    Uses the Gallai identity |V| - (maximum matching); every matching edge
    covers two vertices and each leftover vertex needs one more edge.
    """
    h = pattern.graph
    edges = tuple(h.edges())
    if not edges:
        raise ValueError("edge cover undefined for an edgeless pattern")
    support = support_vertices(h)
    return support.bit_count() - _max_matching(h.n, edges)


class DensityResult(NamedTuple):
    value: Fraction
    witness: tuple[tuple[int, int], ...]


def max_subgraph_density(pattern: SubgraphPattern) -> DensityResult:
    """m(H): exact max of |E(G')|/|V(G')| over nonempty edge subsets G' of H.

    The maximum over edge subsets is always attained by taking every edge
    inside some vertex subset, so vertex subsets (2^|V|) are enumerated
    instead of edge subsets (2^|E|).  The achieving edge set is returned.
    """
    h = pattern.graph
    if h.edge_count() == 0:
        raise ValueError("density undefined for an edgeless pattern")
    best: Fraction | None = None
    best_edges: tuple[tuple[int, int], ...] = ()
    verts = list(iter_bits(support_vertices(h)))
    for r in range(2, len(verts) + 1):
        for subset in combinations(verts, r):
            smask = 0
            for v in subset:
                smask |= 1 << v
            inside = [(u, v) for u, v in h.edges()
                      if (smask >> u) & 1 and (smask >> v) & 1]
            if not inside:
                continue
            endpoints = 0
            for u, v in inside:
                endpoints |= (1 << u) | (1 << v)
            dens = Fraction(len(inside), endpoints.bit_count())
            if best is None or dens > best:
                best = dens
                best_edges = tuple(inside)
    assert best is not None
    return DensityResult(best, best_edges)


def to_edge_list(g: Graph) -> str:
    """Serialize to the edge-list text format ("n <count>" header)."""
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    """Parse the edge-list text format; inverse of to_edge_list.

    Lines starting with "#" are comments (provenance headers) and skipped.
    """
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("n "):
        raise ValueError('edge-list text must start with a "n <count>" header')
    n = int(lines[0].split()[1])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph.from_edges(n, edges)
