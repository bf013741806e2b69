"""Immutable simple graphs and the structural operations the package builds on.

Vertices are always 0..n-1. Edges are unordered pairs stored as sorted
tuples. Every function that returns a collection returns it in sorted order
so downstream output is reproducible run to run.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    EdgeError,
    GraphFormatError,
    NoCycleEdgeError,
    VertexRangeError,
)

VertexSet = frozenset[int]

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """An immutable simple undirected graph on vertices 0..n-1.

    Attributes:
        n: number of vertices.
        edges: sorted tuple of edges, each a sorted pair.
        adj: per-vertex adjacency as a tuple of frozensets.
    """

    __slots__ = ("n", "edges", "adj")

    n: int
    edges: tuple[Edge, ...]
    adj: tuple[VertexSet, ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise VertexRangeError(f"vertex count must be >= 0, got {n}")
        seen: set[Edge] = set()
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(
                    f"edge ({u}, {v}) out of range for n={n}"
                )
            if u == v:
                raise EdgeError(f"loop at vertex {u}")
            e = _norm_edge(u, v)
            if e in seen:
                raise EdgeError(f"duplicate edge {e}")
            seen.add(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(
            self, "adj", tuple(frozenset(s) for s in nbrs)
        )

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Graph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        """Largest vertex degree; 0 for an edgeless graph."""
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def closed_neighborhood(self, v: int) -> VertexSet:
        """N[v] = N(v) together with v itself."""
        if not (0 <= v < self.n):
            raise VertexRangeError(f"vertex {v} out of range for n={self.n}")
        return self.adj[v] | {v}

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def closed_neighborhood_masks(g: Graph) -> list[int]:
    """Closed neighbourhoods as bitmasks, bit v set iff v is in N[u].

    Used by the checkers and the exact solver; quadratic-size total output
    is fine at the instance sizes this package targets.
    """
    masks = []
    for v in range(g.n):
        m = 1 << v
        for w in g.adj[v]:
            m |= 1 << w
        masks.append(m)
    return masks


def _twin_pairs(keys: list[frozenset[int]]) -> tuple[tuple[int, int], ...]:
    groups: dict[frozenset[int], list[int]] = {}
    for v, key in enumerate(keys):
        groups.setdefault(key, []).append(v)
    pairs = []
    for members in groups.values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                pairs.append((members[i], members[j]))
    return tuple(sorted(pairs))


def find_closed_twins(g: Graph) -> tuple[tuple[int, int], ...]:
    """All pairs u < v with N[u] = N[v], sorted. Empty iff g is identifiable."""
    return _twin_pairs([g.adj[v] | {v} for v in range(g.n)])


def find_open_twins(g: Graph) -> tuple[tuple[int, int], ...]:
    """All pairs u < v with N(u) = N(v), sorted."""
    return _twin_pairs([g.adj[v] for v in range(g.n)])


def triangle_witness(g: Graph) -> tuple[int, int, int] | None:
    """Some triangle of g as a sorted triple, or None if g is triangle-free."""
    for u, v in g.edges:
        common = g.adj[u] & g.adj[v]
        if common:
            return tuple(sorted((u, v, min(common))))  # type: ignore[return-value]
    return None


def components(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Connected components as sorted vertex tuples, ordered by first vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return tuple(out)


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def delete(
    g: Graph,
    vertices: Iterable[int] = (),
    edges: Iterable[tuple[int, int]] = (),
) -> tuple[Graph, dict[int, int]]:
    """Remove vertices and/or edges; returns the new graph and the old-to-new
    vertex id map (surviving vertices only, order preserved).

    Deleting a vertex drops its incident edges. Asking to delete a missing
    vertex or edge raises.
    """
    vs = set(vertices)
    for v in vs:
        if not (0 <= v < g.n):
            raise VertexRangeError(f"vertex {v} out of range for n={g.n}")
    drop: set[Edge] = set()
    for u, v in edges:
        e = _norm_edge(u, v)
        if e not in set(g.edges):
            raise EdgeError(f"edge {e} not in graph")
        drop.add(e)
    keep = [v for v in range(g.n) if v not in vs]
    old_to_new = {v: i for i, v in enumerate(keep)}
    new_edges = [
        (old_to_new[u], old_to_new[v])
        for u, v in g.edges
        if u not in vs and v not in vs and (u, v) not in drop
    ]
    return Graph(len(keep), new_edges), old_to_new


def induced_subgraph(
    g: Graph, vertices: Iterable[int]
) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on the given vertices.

    Returns the subgraph (relabelled 0..k-1 in sorted original order) and the
    new-to-old id table.
    """
    keep = sorted(set(vertices))
    for v in keep:
        if not (0 <= v < g.n):
            raise VertexRangeError(f"vertex {v} out of range for n={g.n}")
    drop = [v for v in range(g.n) if v not in set(keep)]
    sub, old_to_new = delete(g, vertices=drop)
    del old_to_new  # identical to enumerate(keep)
    return sub, tuple(keep)


def bridges(g: Graph) -> tuple[Edge, ...]:
    """All bridge edges (edges whose removal disconnects their component)."""
    disc = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    out: list[Edge] = []
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        # Iterative DFS; each frame is (vertex, iterator over its neighbours).
        stack: list[tuple[int, Iterable[int]]] = []
        disc[root] = low[root] = timer
        timer += 1
        stack.append((root, iter(sorted(g.adj[root]))))
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    parent[w] = v
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                elif w != parent[v]:
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        out.append(_norm_edge(p, v))
    return tuple(sorted(out))


def pick_cycle_edge(g: Graph) -> Edge:
    """A deterministic non-bridge edge: maximum degree sum, then smallest pair.

    Raises NoCycleEdgeError when the graph is a forest.
    """
    bridge_set = set(bridges(g))
    best: Edge | None = None
    best_sum = -1
    for e in g.edges:
        if e in bridge_set:
            continue
        s = g.degree(e[0]) + g.degree(e[1])
        if s > best_sum:
            best, best_sum = e, s
    if best is None:
        raise NoCycleEdgeError("every edge is a bridge")
    return best


def linear_order(g: Graph) -> tuple[str, tuple[int, ...]] | None:
    """Recognise paths and cycles.

    Returns ("path", order) or ("cycle", order) with a deterministic vertex
    order along the graph, or None when g is not a connected graph of
    maximum degree <= 2 (the single vertex counts as a path).
    """
    if g.n == 0 or not is_connected(g) or g.max_degree() > 2:
        return None
    if g.n == 1:
        return ("path", (0,))
    ends = [v for v in range(g.n) if g.degree(v) <= 1]
    if ends:
        start = min(ends)
        kind = "path"
    else:
        start = 0
        kind = "cycle"
    order = [start]
    prev = -1
    cur = start
    while len(order) < g.n:
        nxt = min(w for w in g.adj[cur] if w != prev)
        order.append(nxt)
        prev, cur = cur, nxt
    return (kind, tuple(order))


@dataclass(frozen=True)
class BoundaryDecomposition:
    """The two-sided neighbourhood split around an edge (u, v).

    near_u / near_v are the other neighbours of u and v; boundary is their
    union, closed additionally holds u and v, far is everything else.
    far_graph is the subgraph induced on far, with far_to_orig translating
    its vertex ids back. The far components are classified by order.
    """

    u: int
    v: int
    near_u: tuple[int, ...]
    near_v: tuple[int, ...]
    boundary: tuple[int, ...]
    closed: tuple[int, ...]
    far: tuple[int, ...]
    far_graph: Graph
    far_to_orig: tuple[int, ...]
    isolated: tuple[int, ...]
    pair_components: tuple[tuple[int, int], ...]
    large_components: tuple[tuple[int, ...], ...]


def boundary_decomposition(g: Graph, u: int, v: int) -> BoundaryDecomposition:
    """Decompose g around the edge (u, v). Requires uv to be an edge.

    In a triangle-free graph near_u and near_v are disjoint and each is an
    independent set; the function itself does not require triangle-freeness.
    """
    if not g.has_edge(u, v):
        raise EdgeError(f"({u}, {v}) is not an edge")
    near_u = sorted(g.adj[u] - {v})
    near_v = sorted(g.adj[v] - {u})
    boundary = sorted(set(near_u) | set(near_v))
    closed_set = set(boundary) | {u, v}
    far = [w for w in range(g.n) if w not in closed_set]
    far_graph, far_verts = induced_subgraph(g, far)
    isolated: list[int] = []
    pairs: list[tuple[int, int]] = []
    large: list[tuple[int, ...]] = []
    for comp in components(far_graph):
        orig = tuple(far_verts[x] for x in comp)
        if len(orig) == 1:
            isolated.append(orig[0])
        elif len(orig) == 2:
            pairs.append(orig)  # type: ignore[arg-type]
        else:
            large.append(orig)
    return BoundaryDecomposition(
        u=min(u, v),
        v=max(u, v),
        near_u=tuple(near_u) if u < v else tuple(near_v),
        near_v=tuple(near_v) if u < v else tuple(near_u),
        boundary=tuple(boundary),
        closed=tuple(sorted(closed_set)),
        far=tuple(far),
        far_graph=far_graph,
        far_to_orig=far_verts,
        isolated=tuple(isolated),
        pair_components=tuple(pairs),
        large_components=tuple(large),
    )


def serialize_graph(g: Graph) -> str:
    """Stable text form: an "n m" header line, then one sorted "u v" per edge."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def graph_hash(g: Graph) -> str:
    """sha256 hex digest of the canonical serialization."""
    return hashlib.sha256(serialize_graph(g).encode("ascii")).hexdigest()


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format written by serialize_graph.

    '#' starts a comment, blank lines are ignored. Errors carry 1-based line
    numbers.
    """
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise GraphFormatError(
                f"expected two integers, got {raw.strip()!r}", lineno
            )
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(
                f"expected two integers, got {raw.strip()!r}", lineno
            ) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError(
                    f"header must be 'n m' with n, m >= 0, got {a} {b}", lineno
                )
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(
                f"edge ({a}, {b}) out of range for n={n}", lineno
            )
        if a == b:
            raise GraphFormatError(f"loop at vertex {a}", lineno)
        e = _norm_edge(a, b)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e}", lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphFormatError("missing 'n m' header line")
    if len(edges) != header[1]:
        raise GraphFormatError(
            f"header promises {header[1]} edges, found {len(edges)}"
        )
    return Graph(header[0], edges)


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_graph(fh.read())
