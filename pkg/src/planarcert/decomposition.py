"""Biconnected and triconnected decomposition.

A biconnected multigraph is split recursively at separation pairs; both
halves receive a fresh virtual edge linking them.  Terminal pieces are
triple-bonds, triangles and simple triconnected graphs; bond/polygon pieces
sharing a virtual edge are then merged, yielding bonds, polygons and simple
triconnected components with a perfect virtual-edge matching.  Reassembling
along that matching is the module's self-check oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .flow import disjoint_path_count
from .graph import Graph, InternalInvariantError, PreconditionError

BOND = "bond"
POLYGON = "polygon"
TRICONNECTED = "triconnected"


@dataclass
class TriconnectedComponent:
    kind: str
    graph: Graph
    # virtual edge id -> (component index, partner edge id)
    virtual_links: dict[int, tuple[int, int]] = field(default_factory=dict)
    # non-virtual edge id -> edge id of the decomposed input graph
    origin: dict[int, int] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# connectivity basics
# ---------------------------------------------------------------------------


def is_connected(g: Graph) -> bool:
    verts = list(g.vertices())
    if not verts:
        return True
    seen = {verts[0]}
    q = deque([verts[0]])
    while q:
        v = q.popleft()
        for e in g.incident_edges(v):
            w = g.other_end(e, v)
            if w not in seen:
                seen.add(w)
                q.append(w)
    return len(seen) == g.n


def _block_dfs(g: Graph) -> tuple[list[list[int]], set[int]]:
    """Lowpoint DFS over all roots; returns (blocks as edge-id lists, cut vertices).

    Parents are tracked per tree edge, so parallel edges and any multigraph
    input are handled; self-loops belong to no block.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    estack: list[int] = []
    blocks: list[list[int]] = []
    cuts: set[int] = set()
    for root in g.vertices():
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        # frame: (vertex, edge index, tree edge that entered the vertex)
        stack = [[root, 0, -1]]
        while stack:
            frame = stack[-1]
            v, idx, in_edge = frame
            edges_v = g.incident_edges(v)
            advanced = False
            while idx < len(edges_v):
                e = edges_v[idx]
                idx += 1
                w = g.other_end(e, v)
                if w == v:
                    continue
                if w not in disc:
                    estack.append(e)
                    disc[w] = low[w] = counter
                    counter += 1
                    if v == root:
                        root_children += 1
                    frame[1] = idx
                    stack.append([w, 0, e])
                    advanced = True
                    break
                if e != in_edge and disc[w] < disc[v]:
                    estack.append(e)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if advanced:
                continue
            frame[1] = idx
            stack.pop()
            if in_edge != -1:
                p = g.other_end(in_edge, v)
                if low[v] < low[p]:
                    low[p] = low[v]
                if low[v] >= disc[p]:
                    blk: list[int] = []
                    while True:
                        e = estack.pop()
                        blk.append(e)
                        if e == in_edge:
                            break
                    blocks.append(blk)
                    if p != root:
                        cuts.add(p)
        if root_children >= 2:
            cuts.add(root)
    return blocks, cuts


def cut_vertices(g: Graph) -> list[int]:
    """Articulation points of g."""
    return sorted(_block_dfs(g)[1])


def is_biconnected(g: Graph) -> bool:
    return g.n >= 2 and is_connected(g) and not cut_vertices(g)


def biconnected_components(g: Graph) -> list[Graph]:
    """Edge-partitioning blocks of g, each returned with its original ids.

    Isolated vertices yield no component.  Single edges (bridges) come out
    as 2-vertex components.
    """
    blocks, _ = _block_dfs(g)
    out = []
    for blk in blocks:
        verts: dict[int, None] = {}
        for e in blk:
            a, b = g.endpoints(e)
            verts[a] = None
            verts[b] = None
        out.append(Graph.with_members(sorted(verts), {e: g.endpoints(e) for e in sorted(blk)}))
    return out


# ---------------------------------------------------------------------------
# separation pairs and triconnectivity
# ---------------------------------------------------------------------------


def _connected_without(g: Graph, banned: tuple[int, ...]) -> bool:
    skip = set(banned)
    verts = [v for v in g.vertices() if v not in skip]
    if len(verts) <= 1:
        return True
    seen = {verts[0]}
    q = deque([verts[0]])
    while q:
        v = q.popleft()
        for e in g.incident_edges(v):
            w = g.other_end(e, v)
            if w not in skip and w not in seen:
                seen.add(w)
                q.append(w)
    return len(seen) == len(verts)


def find_separation_pair_bruteforce(g: Graph) -> tuple[int, int] | None:
    """Lowest lexicographic pair whose deletion disconnects g, or None."""
    verts = sorted(g.vertices())
    if len(verts) <= 3:
        return None
    for i, x in enumerate(verts):
        for y in verts[i + 1:]:
            if not _connected_without(g, (x, y)):
                return (x, y)
    return None


def is_triconnected(g: Graph) -> bool:
    """True iff g is connected, has no cut vertex, no separation pair, n >= 4.

    Uses flow-based vertex connectivity: a separating pair containing a fixed
    vertex s shows up as a cut vertex of g - s; any other pair leaves a vertex
    t non-adjacent to s with fewer than 3 disjoint s-t paths (Menger).
    """
    if g.n < 4 or not g.is_simple():
        return False
    degs = {v: g.degree(v) for v in g.vertices()}
    if min(degs.values()) < 3:
        return False
    if not is_connected(g) or cut_vertices(g):
        return False
    s = min(degs, key=lambda v: (degs[v], v))
    rest = g.copy()
    rest.remove_vertex(s)
    if not is_connected(rest) or cut_vertices(rest):
        return False
    nbrs = set(g.neighbors(s))
    for t in g.vertices():
        if t == s or t in nbrs:
            continue
        if disjoint_path_count(g, s, t, 3) < 3:
            return False
    return True


def find_separation_pair(g: Graph) -> tuple[int, int] | None:
    """A separation pair of biconnected g, or None if g is triconnected.

    Returns None for n <= 3.  The triconnected case is decided by the fast
    flow check; a witness pair is then located by the lexicographic scan.
    """
    if not is_biconnected(g):
        raise PreconditionError("find_separation_pair requires a biconnected graph")
    if g.n <= 3:
        return None
    if is_triconnected(g):
        return None
    pair = find_separation_pair_bruteforce(g)
    if pair is None:
        raise InternalInvariantError("flow check and pair scan disagree")
    return pair


# ---------------------------------------------------------------------------
# splitting
# ---------------------------------------------------------------------------


def _separation_classes(g: Graph, x: int, y: int) -> list[list[int]]:
    """Edge classes of the pair {x, y}: direct edges first, then one class
    per connected component of g - {x, y} (component edges + attachments)."""
    classes: list[list[int]] = []
    for e in g.incident_edges(x):
        if g.other_end(e, x) == y:
            classes.append([e])
    seen: set[int] = set()
    for start in sorted(g.vertices()):
        if start in (x, y) or start in seen:
            continue
        comp: list[int] = []
        seen.add(start)
        q = deque([start])
        edges: set[int] = set()
        while q:
            v = q.popleft()
            comp.append(v)
            for e in g.incident_edges(v):
                w = g.other_end(e, v)
                edges.add(e)
                if w not in (x, y) and w not in seen:
                    seen.add(w)
                    q.append(w)
        classes.append(sorted(edges))
    return classes


def _splittable(classes: list[list[int]]) -> bool:
    k = len(classes)
    if k < 2:
        return False
    sizes = sorted(len(c) for c in classes)
    if k == 2 and sizes[0] == 1:
        return False  # adjacent pair in an otherwise solid graph
    if k == 3 and sizes == [1, 1, 1]:
        return False  # triple bond is terminal
    return True


def split(g: Graph, pair: tuple[int, int]) -> tuple[Graph, Graph, int, int]:
    """Split simple biconnected g at a separation pair.

    Returns (h1, h2, v1, v2): h2 holds the component of g - pair with the
    smallest vertex plus its attachment edges, h1 all remaining edges; v1/v2
    are the fresh partner virtual edges added to each side.
    """
    x, y = pair
    if _connected_without(g, (x, y)):
        raise PreconditionError(f"{{{x},{y}}} is not a separation pair")
    classes = _separation_classes(g, x, y)
    comp_classes = [c for c in classes if len(c) > 1 or _not_direct(g, c[0], x, y)]
    chosen = comp_classes[0]
    rest = [e for c in classes for e in c if c is not chosen]
    h2 = _piece_graph(g, chosen)
    h1 = _piece_graph(g, rest)
    for h, v in ((h1, x), (h1, y), (h2, x), (h2, y)):
        if not h.has_vertex(v):
            h._add_vertex_with_id(v)
    eid = max(g.edges(), default=-1) + 1
    h1._add_edge_with_id(eid, x, y)
    h2._add_edge_with_id(eid + 1, x, y)
    return h1, h2, eid, eid + 1


def _not_direct(g: Graph, e: int, x: int, y: int) -> bool:
    return set(g.endpoints(e)) != {x, y}


def _piece_graph(g: Graph, edge_ids: list[int]) -> Graph:
    verts: dict[int, None] = {}
    for e in edge_ids:
        a, b = g.endpoints(e)
        verts[a] = None
        verts[b] = None
    return Graph.with_members(sorted(verts), {e: g.endpoints(e) for e in sorted(edge_ids)})


# ---------------------------------------------------------------------------
# triconnected components
# ---------------------------------------------------------------------------


class _Piece:
    __slots__ = ("graph", "vpair")

    def __init__(self, graph: Graph, vpair: dict[int, int]) -> None:
        self.graph = graph
        self.vpair = vpair  # virtual edge id -> global pair id


def _is_cycle(g: Graph) -> bool:
    return (
        g.n >= 3
        and g.m == g.n
        and all(g.degree(v) == 2 for v in g.vertices())
        and is_connected(g)
    )


def _find_split(g: Graph) -> tuple[tuple[int, int], list[list[int]]] | None:
    verts = sorted(g.vertices())
    for i, x in enumerate(verts):
        for y in verts[i + 1:]:
            classes = _separation_classes(g, x, y)
            if _splittable(classes):
                return (x, y), classes
    return None


def triconnected_components(g: Graph) -> list[TriconnectedComponent]:
    """Decompose simple biconnected g (n >= 3) per the recursive definition."""
    if not g.is_simple():
        raise PreconditionError("input must be simple")
    if not is_biconnected(g) or g.n < 3:
        raise PreconditionError("input must be biconnected with n >= 3")

    next_edge = max(g.edges(), default=-1) + 1
    next_pair = 0
    work = [_Piece(g.copy(), {})]
    done: list[_Piece] = []
    while work:
        p = work.pop()
        pg = p.graph
        if pg.n == 2 or _is_cycle(pg):
            done.append(p)
            continue
        if pg.is_simple() and is_triconnected(pg):
            done.append(p)
            continue
        found = _find_split(pg)
        if found is None:
            raise InternalInvariantError("non-terminal piece with no split pair")
        (x, y), classes = found
        comp_classes = [c for c in classes if len(c) > 1]
        if comp_classes:
            chosen = comp_classes[0]
        else:
            chosen = classes[0] + classes[1]  # parallel bond: peel two edges
        chosen_set = set(chosen)
        rest = [e for c in classes for e in c if e not in chosen_set]
        g2 = _piece_graph(pg, sorted(chosen_set))
        g1 = _piece_graph(pg, sorted(rest))
        for h, v in ((g1, x), (g1, y), (g2, x), (g2, y)):
            if not h.has_vertex(v):
                h._add_vertex_with_id(v)
        e1, e2 = next_edge, next_edge + 1
        next_edge += 2
        g1._add_edge_with_id(e1, x, y)
        g2._add_edge_with_id(e2, x, y)
        vp1 = {e: pid for e, pid in p.vpair.items() if e not in chosen_set}
        vp2 = {e: pid for e, pid in p.vpair.items() if e in chosen_set}
        vp1[e1] = next_pair
        vp2[e2] = next_pair
        next_pair += 1
        work.append(_Piece(g1, vp1))
        work.append(_Piece(g2, vp2))

    _merge_pieces(done)
    return _finalize(done)


def _piece_kind(p: _Piece) -> str:
    if p.graph.n == 2:
        return BOND
    if _is_cycle(p.graph):
        return POLYGON
    return TRICONNECTED


def _merge_pieces(pieces: list[_Piece]) -> None:
    """Merge bond pairs and polygon pairs sharing a virtual pair, in place."""
    changed = True
    while changed:
        changed = False
        by_pair: dict[int, list[int]] = {}
        for i, p in enumerate(pieces):
            for pid in p.vpair.values():
                by_pair.setdefault(pid, []).append(i)
        for pid, idxs in sorted(by_pair.items()):
            if len(idxs) != 2 or idxs[0] == idxs[1]:
                continue
            i, j = idxs
            a, b = pieces[i], pieces[j]
            ka, kb = _piece_kind(a), _piece_kind(b)
            if ka != kb or ka == TRICONNECTED:
                continue
            ea = next(e for e, q in a.vpair.items() if q == pid)
            eb = next(e for e, q in b.vpair.items() if q == pid)
            merged = _glue(a, b, ea, eb)
            pieces[i] = merged
            del pieces[j]
            changed = True
            break


def _glue(a: _Piece, b: _Piece, ea: int, eb: int) -> _Piece:
    g = a.graph.copy()
    g.remove_edge(ea)
    for v in b.graph.vertices():
        if not g.has_vertex(v):
            g._add_vertex_with_id(v)
    for e, (u, v) in b.graph.edge_items():
        if e != eb:
            g._add_edge_with_id(e, u, v)
    vpair = {e: pid for e, pid in a.vpair.items() if e != ea}
    vpair.update({e: pid for e, pid in b.vpair.items() if e != eb})
    return _Piece(g, vpair)


def _finalize(pieces: list[_Piece]) -> list[TriconnectedComponent]:
    pieces = sorted(pieces, key=lambda p: min(p.graph.vertices()))
    out: list[TriconnectedComponent] = []
    for i, p in enumerate(pieces):
        comp = TriconnectedComponent(kind=_piece_kind(p), graph=p.graph)
        for e in p.graph.edges():
            pid = p.vpair.get(e)
            if pid is None:
                comp.origin[e] = e  # real edges keep input ids throughout
        out.append(comp)
    # second pass: symmetric partner links
    by_pair: dict[int, list[tuple[int, int]]] = {}
    for i, p in enumerate(pieces):
        for e, pid in p.vpair.items():
            by_pair.setdefault(pid, []).append((i, e))
    for pid, locs in by_pair.items():
        if len(locs) != 2:
            raise InternalInvariantError(f"virtual pair {pid} has {len(locs)} ends")
        (i, e), (j, f) = locs
        out[i].virtual_links[e] = (j, f)
        out[j].virtual_links[f] = (i, e)
    return out


def reassemble(components: list[TriconnectedComponent]) -> Graph:
    """Merge partner virtual edges pairwise; inverse of the decomposition."""
    verts: set[int] = set()
    edges: dict[int, tuple[int, int]] = {}
    for i, c in enumerate(components):
        for e, (j, f) in c.virtual_links.items():
            if not (0 <= j < len(components)) or components[j].virtual_links.get(f) != (i, e):
                raise PreconditionError(f"dangling virtual partner for edge {e}")
        verts.update(c.graph.vertices())
        for e, pair in c.graph.edge_items():
            if e not in c.virtual_links:
                if e in edges:
                    raise PreconditionError(f"edge id {e} appears in two components")
                edges[e] = pair
    return Graph.with_members(sorted(verts), {e: edges[e] for e in sorted(edges)})
