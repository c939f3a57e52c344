"""Mutable multigraph with stable integer identifiers.

Vertex and edge ids are handed out by counters and never reused within one
graph's lifetime, so certificates and label genealogies can refer to
long-deleted entities unambiguously.  Incidence lists are unordered here;
cyclic order lives in the embedding structures.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class GraphError(Exception):
    """Base class for graph contract violations."""


class InvalidReferenceError(GraphError):
    """A vertex or edge id does not refer to a live entity."""


class PreconditionError(GraphError):
    """An operation's precondition does not hold."""


class InternalInvariantError(GraphError):
    """A condition guaranteed by theory failed; indicates a bug."""


class Graph:
    """Undirected multigraph; self-loops allowed unless callers forbid them."""

    def __init__(self) -> None:
        self._adj: dict[int, list[int]] = {}        # vertex -> incident edge ids
        self._edges: dict[int, tuple[int, int]] = {}  # edge id -> endpoint pair
        self._next_vertex = 0
        self._next_edge = 0

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple[int, int]], n: int | None = None) -> "Graph":
        """Build a graph whose vertex ids are exactly those mentioned (plus 0..n-1)."""
        g = cls()
        pairs = list(pairs)
        top = max((max(u, v) for u, v in pairs), default=-1)
        if n is not None:
            top = max(top, n - 1)
        for v in range(top + 1):
            g.add_vertex()
        for u, v in pairs:
            g.add_edge(u, v)
        return g

    @classmethod
    def with_members(cls, vertices: Iterable[int], edges: dict[int, tuple[int, int]]) -> "Graph":
        """Build a graph with explicitly chosen vertex and edge ids."""
        g = cls()
        for v in vertices:
            g._add_vertex_with_id(v)
        for e, (u, v) in edges.items():
            g._add_edge_with_id(e, u, v)
        return g

    def copy(self) -> "Graph":
        g = Graph()
        g._adj = {v: list(es) for v, es in self._adj.items()}
        g._edges = dict(self._edges)
        g._next_vertex = self._next_vertex
        g._next_edge = self._next_edge
        return g

    # -- queries -----------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return len(self._edges)

    def vertices(self) -> Iterator[int]:
        return iter(self._adj)

    def edges(self) -> Iterator[int]:
        return iter(self._edges)

    def edge_items(self) -> Iterator[tuple[int, tuple[int, int]]]:
        return iter(self._edges.items())

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, e: int) -> bool:
        return e in self._edges

    def endpoints(self, e: int) -> tuple[int, int]:
        try:
            return self._edges[e]
        except KeyError:
            raise InvalidReferenceError(f"edge {e} is not live") from None

    def other_end(self, e: int, v: int) -> int:
        u, w = self.endpoints(e)
        return w if v == u else u

    def incident_edges(self, v: int) -> list[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise InvalidReferenceError(f"vertex {v} is not live") from None

    def degree(self, v: int) -> int:
        return len(self.incident_edges(v))

    def neighbors(self, v: int) -> list[int]:
        return [self.other_end(e, v) for e in self.incident_edges(v)]

    def find_edge(self, u: int, v: int) -> int | None:
        """Some edge with endpoints {u, v}, or None."""
        if u not in self._adj or v not in self._adj:
            return None
        if len(self._adj[u]) > len(self._adj[v]):
            u, v = v, u
        for e in self._adj[u]:
            a, b = self._edges[e]
            if (a == u and b == v) or (a == v and b == u):
                return e
        return None

    def has_pair(self, u: int, v: int) -> bool:
        return self.find_edge(u, v) is not None

    def edge_pairs(self) -> list[tuple[int, int]]:
        """Endpoint pairs of all edges, each normalized (min, max)."""
        return [(u, v) if u <= v else (v, u) for u, v in self._edges.values()]

    # -- mutations ---------------------------------------------------------

    def add_vertex(self) -> int:
        v = self._next_vertex
        self._next_vertex += 1
        self._adj[v] = []
        return v

    def _add_vertex_with_id(self, v: int) -> None:
        if v in self._adj:
            raise PreconditionError(f"vertex {v} already present")
        self._adj[v] = []
        self._next_vertex = max(self._next_vertex, v + 1)

    def add_edge(self, u: int, v: int) -> int:
        if u not in self._adj or v not in self._adj:
            raise InvalidReferenceError(f"endpoint of ({u},{v}) is not live")
        e = self._next_edge
        self._next_edge += 1
        self._edges[e] = (u, v)
        self._adj[u].append(e)
        if v != u:
            self._adj[v].append(e)
        return e

    def _add_edge_with_id(self, e: int, u: int, v: int) -> None:
        if e in self._edges:
            raise PreconditionError(f"edge {e} already present")
        if u not in self._adj or v not in self._adj:
            raise InvalidReferenceError(f"endpoint of ({u},{v}) is not live")
        self._edges[e] = (u, v)
        self._adj[u].append(e)
        if v != u:
            self._adj[v].append(e)
        self._next_edge = max(self._next_edge, e + 1)

    def remove_edge(self, e: int) -> None:
        u, v = self.endpoints(e)
        del self._edges[e]
        self._adj[u].remove(e)
        if v != u:
            self._adj[v].remove(e)

    def remove_vertex(self, v: int) -> None:
        for e in list(self.incident_edges(v)):
            self.remove_edge(e)
        del self._adj[v]

    def subdivide(self, e: int) -> int:
        """Replace edge e by a path through a fresh degree-2 vertex; return it."""
        u, v = self.endpoints(e)
        self.remove_edge(e)
        x = self.add_vertex()
        self.add_edge(x, u)
        self.add_edge(x, v)
        return x

    def suppress(self, v: int) -> int:
        """Delete degree-2 vertex v and join its two distinct neighbors."""
        es = self.incident_edges(v)
        if len(es) != 2:
            raise PreconditionError(f"suppress needs degree 2, vertex {v} has {len(es)}")
        y = self.other_end(es[0], v)
        z = self.other_end(es[1], v)
        if y == z:
            raise PreconditionError(f"suppress at {v}: neighbors coincide ({y})")
        self.remove_vertex(v)
        return self.add_edge(y, z)

    # -- checks ------------------------------------------------------------

    def is_simple(self) -> bool:
        seen: set[tuple[int, int]] = set()
        for u, v in self._edges.values():
            if u == v:
                return False
            key = (u, v) if u <= v else (v, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    def check_consistency(self) -> None:
        """Audit that edge table and incidence lists agree; raises on failure."""
        count = 0
        for v, es in self._adj.items():
            for e in es:
                if e not in self._edges:
                    raise InternalInvariantError(f"dangling edge {e} at vertex {v}")
                u, w = self._edges[e]
                if v not in (u, w):
                    raise InternalInvariantError(f"edge {e} listed at non-endpoint {v}")
                count += 1
        loops = sum(1 for u, v in self._edges.values() if u == v)
        if count != 2 * len(self._edges) - loops:
            raise InternalInvariantError("incidence/edge-table mismatch")
        for e, (u, v) in self._edges.items():
            if u not in self._adj or v not in self._adj:
                raise InternalInvariantError(f"edge {e} has dead endpoint")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def bucket_sort_pairs(pairs: list[tuple[int, int]], key_bound: int) -> list[tuple[int, int]]:
    """Stable two-pass bucket sort of normalized pairs, lexicographic."""
    buckets: list[list[tuple[int, int]]] = [[] for _ in range(key_bound + 1)]
    for p in pairs:
        buckets[p[1]].append(p)
    once = [p for b in buckets for p in b]
    for b in buckets:
        b.clear()
    for p in once:
        buckets[p[0]].append(p)
    return [p for b in buckets for p in b]


def dedupe_multiedges(g: Graph) -> Graph:
    """Simple copy of g: self-loops dropped, parallel classes collapsed.

    Runs via two linear bucket passes over endpoint keys.  The surviving
    edge of each parallel class keeps the smallest original edge id; vertex
    ids are unchanged.
    """
    tagged = []
    for e, (u, v) in g.edge_items():
        if u == v:
            continue
        a, b = (u, v) if u <= v else (v, u)
        tagged.append((a, b, e))
    bound = max(g.vertices(), default=0)
    # sort by pair, then collapse runs keeping the smallest edge id
    buckets: list[list[tuple[int, int, int]]] = [[] for _ in range(bound + 1)]
    for t in tagged:
        buckets[t[1]].append(t)
    once = [t for b in buckets for t in b]
    for b in buckets:
        b.clear()
    for t in once:
        buckets[t[0]].append(t)
    ordered = [t for b in buckets for t in b]

    kept: dict[int, tuple[int, int]] = {}
    prev: tuple[int, int] | None = None
    best = -1
    for a, b, e in ordered:
        if (a, b) != prev:
            if prev is not None:
                kept[best] = prev
            prev = (a, b)
            best = e
        elif e < best:
            best = e
    if prev is not None:
        kept[best] = prev
    return Graph.with_members(list(g.vertices()), kept)
