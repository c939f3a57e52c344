"""Kuratowski-subdivision extraction when an operation's attachments are not
co-facial.

Given the embedded state H and the failed operation, pick two attachments a,
b with no common face; the boundary C of the merged faces around a is a
simple cycle (H minus a is 2-connected) with a's piece the only C-component
inside.  The C-components of a and b must overlap: either skew (yielding a
K3,3 with the added edge as the ninth path) or C-equivalent (yielding a K5).
Disjoint paths inside the b-side component are found by unit-vertex-capacity
flow; skew target pairs are enumerated with a flow test each, since an
arbitrary alternating quadruple need not be routable from b's entry point.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .flow import disjoint_paths_to_targets
from .graph import Graph, InternalInvariantError, PreconditionError
from .stgraph import PlaneStGraph


@dataclass
class KuratowskiSubdivision:
    kind: str  # "K5" or "K3,3"; for K3,3 the branch list is [left x3, right x3]
    branch_vertices: list[int]
    paths: list[list[int]]


@dataclass
class CComponent:
    """A chord of C, or a connected piece of the graph minus C plus its
    joining edges; attachments are its vertices on C."""

    interior: list[int]
    edges: list[int]
    attachments: list[int]
    is_chord: bool


class ExtractionError(InternalInvariantError):
    pass


# ---------------------------------------------------------------------------
# the cycle around an attachment
# ---------------------------------------------------------------------------


def merged_face_cycle(h: PlaneStGraph, kind: str, ref: int) -> list[int]:
    """Boundary cycle of the union of faces around a vertex or an edge.

    For an edge: both incident faces, traced with the edge dropped; for a
    vertex: all faces at the vertex, traced with the vertex dropped.  The
    result is a simple cycle because the rest of the graph is 2-connected.
    """
    rot = {v: h.neighbors_in_order(v) for v in h.g.vertices()}
    if kind == "vertex":
        a = ref
        u = rot[a][0]
        i = rot[u].index(a)
        start = (u, rot[u][(i + 1) % len(rot[u])])
        for v in rot[a]:
            rot[v] = [w for w in rot[v] if w != a]
        del rot[a]
    else:
        p, q = h.g.endpoints(ref)
        i = rot[p].index(q)
        start = (p, rot[p][(i + 1) % len(rot[p])])
        rot[p] = [w for w in rot[p] if w != q]
        rot[q] = [w for w in rot[q] if w != p]
    index = {v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in rot.items()}
    cyc = []
    d = start
    while True:
        cyc.append(d[0])
        u, w = d
        nxt = rot[w]
        d = (w, nxt[(index[w][u] + 1) % len(nxt)])
        if d == start:
            break
    if len(set(cyc)) != len(cyc):
        raise ExtractionError("merged face boundary is not a simple cycle")
    return cyc


# ---------------------------------------------------------------------------
# C-components and overlap classification
# ---------------------------------------------------------------------------


def c_components(g: Graph, cycle: list[int]) -> list[CComponent]:
    on_c = set(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    cyc_edges = set()
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        e = g.find_edge(u, v)
        if e is None:
            raise PreconditionError("cycle edge missing from the graph")
        cyc_edges.add(e)
    out: list[CComponent] = []
    for e, (u, v) in sorted(g.edge_items()):
        if e not in cyc_edges and u in on_c and v in on_c:
            out.append(CComponent([], [e], sorted((u, v), key=pos.get), True))
    seen: set[int] = set()
    for s in sorted(g.vertices()):
        if s in on_c or s in seen:
            continue
        interior = [s]
        seen.add(s)
        q = deque([s])
        edges: set[int] = set()
        att: set[int] = set()
        while q:
            v = q.popleft()
            for e in g.incident_edges(v):
                w = g.other_end(e, v)
                edges.add(e)
                if w in on_c:
                    att.add(w)
                elif w not in seen:
                    seen.add(w)
                    interior.append(w)
                    q.append(w)
        out.append(
            CComponent(sorted(interior), sorted(edges), sorted(att, key=pos.get), False)
        )
    return out


def classify_overlap(c1: CComponent, c2: CComponent, cycle: list[int]):
    """('skew', (x1, x2, x3, x4)) with x1, x3 from c1 in cyclic order, or
    ('c_equivalent', triple), or ('avoid', None)."""
    pos = {v: i for i, v in enumerate(cycle)}
    a_set, b_set = set(c1.attachments), set(c2.attachments)
    if a_set == b_set and len(a_set) == 3:
        return ("c_equivalent", tuple(sorted(a_set, key=pos.get)))
    quad = _skew_quadruple(c1.attachments, c2.attachments, pos, len(cycle))
    if quad is not None:
        return ("skew", quad)
    return ("avoid", None)


def _strictly_between(pos_u: int, pos_v: int, p: int, n: int) -> bool:
    """Is position p strictly inside the arc from pos_u forward to pos_v?"""
    span = (pos_v - pos_u) % n
    off = (p - pos_u) % n
    return 0 < off < span


def _skew_quadruple(a_att, b_att, pos, n):
    a_pos = sorted(pos[v] for v in a_att)
    inv = {p: v for v, p in pos.items()}
    for i, pa in enumerate(a_pos):
        for pb in a_pos[i + 1:]:
            w1 = [v for v in b_att if _strictly_between(pa, pb, pos[v], n)]
            w2 = [v for v in b_att if _strictly_between(pb, pa, pos[v], n)]
            if w1 and w2:
                return (inv[pa], w1[0], inv[pb], w2[0])
    return None


def _alternating_b_pairs(a_att, b_att, pos, n):
    """All (u, v) from b_att admitting a-attachments strictly inside both
    open arcs, each with one such witness pair; deterministic order."""
    out = []
    for i, u in enumerate(b_att):
        for v in b_att[i + 1:]:
            w1 = [w for w in a_att if w not in (u, v)
                  and _strictly_between(pos[u], pos[v], pos[w], n)]
            w2 = [w for w in a_att if w not in (u, v)
                  and _strictly_between(pos[v], pos[u], pos[w], n)]
            if w1 and w2:
                out.append((u, v, w1[0], w2[0]))
    return out


# ---------------------------------------------------------------------------
# disjoint paths inside one component
# ---------------------------------------------------------------------------


def disjoint_paths(g: Graph, comp: CComponent, start: int, targets: list[int]):
    """Internally disjoint paths from start to exactly the targets, staying
    inside the component; None if the flow comes up short."""
    allowed = set(comp.interior) | set(targets) | {start}
    return disjoint_paths_to_targets(g, start, list(targets), allowed)


# ---------------------------------------------------------------------------
# extraction driver
# ---------------------------------------------------------------------------


def _arc(cycle: list[int], u: int, v: int) -> list[int]:
    """Vertices of the cycle from u forward to v, inclusive."""
    pos = {w: i for i, w in enumerate(cycle)}
    n = len(cycle)
    i = pos[u]
    out = [u]
    while cycle[i] != v:
        i = (i + 1) % n
        out.append(cycle[i])
    return out


def _component_of(comps: list[CComponent], *, vertex: int | None = None,
                  edge: int | None = None) -> CComponent:
    for c in comps:
        if vertex is not None and vertex in c.interior:
            return c
        if edge is not None and edge in c.edges:
            return c
    raise ExtractionError("attachment lost its C-component")


def extract_on_state(h: PlaneStGraph, att_a, att_b) -> KuratowskiSubdivision | None:
    """Try one extraction with attachment a in the inside role.

    Attachments are ('vertex', id), ('edge', id), or ('tunnel', vertex, edge):
    the tunnel form enters at an endpoint of an attachment edge whose midpoint
    is crossed only by the witness's connecting path, so that edge is removed
    from the scratch graph entirely.  Returns a witness in the scratch-graph
    vertex space (midpoints of 'edge' attachments are fresh vertices, reported
    via .midpoints), or None when no routable quadruple exists for this role
    assignment.
    """
    ref_kind = "vertex" if att_a[0] == "tunnel" else att_a[0]
    cycle = merged_face_cycle(h, ref_kind, att_a[1])
    on_c = set(cycle)
    g0 = h.g.copy()
    midpoints: dict[str, int] = {}
    for att in (att_a, att_b):
        if att[0] == "tunnel":
            if not g0.has_edge(att[2]):
                return None
            g0.remove_edge(att[2])

    def entry(att, tag):
        if att[0] == "edge":
            w = g0.subdivide(att[1])
            midpoints[tag] = w
            return w
        if att[1] in on_c and tag == "b":
            return None
        if att[1] in on_c:
            raise ExtractionError("attachment vertex lies on its own cycle")
        return att[1]

    a_start = entry(att_a, "a")
    b_start = entry(att_b, "b")
    if a_start is None or b_start is None:
        return None

    try:
        comps = c_components(g0, cycle)
    except PreconditionError:
        return None  # a tunneled edge lay on the cycle; try another pair
    comp_a = _component_of(comps, vertex=a_start)
    comp_b = _component_of(comps, vertex=b_start)
    if comp_a is comp_b:
        raise ExtractionError("attachments share a C-component")
    a_att, b_att = comp_a.attachments, comp_b.attachments
    pos = {v: i for i, v in enumerate(cycle)}
    n = len(cycle)

    verdict = classify_overlap(comp_a, comp_b, cycle)
    if verdict[0] == "avoid":
        raise ExtractionError("C-components avoid each other; contradicts triconnectivity")

    if verdict[0] == "c_equivalent":
        s1, s2, s3 = verdict[1]
        a_paths = disjoint_paths(g0, comp_a, a_start, [s1, s2, s3])
        b_paths = disjoint_paths(g0, comp_b, b_start, [s1, s2, s3])
        if a_paths is None or b_paths is None:
            raise ExtractionError("Menger paths missing in C-equivalent case")
        paths = a_paths + b_paths
        paths.append(["T"])  # placeholder; caller splices the added edge
        paths.append(_arc(cycle, s1, s2))
        paths.append(_arc(cycle, s2, s3))
        paths.append(_arc(cycle, s3, s1))
        k = KuratowskiSubdivision("K5", [a_start, b_start, s1, s2, s3], paths)
        k.midpoints = midpoints  # type: ignore[attr-defined]
        return k

    # skew: enumerate alternating target pairs until the flow routes one
    candidates = _alternating_b_pairs(a_att, b_att, pos, n)
    _, quad = verdict
    preferred = (quad[1], quad[3], quad[0], quad[2])
    ordered = [preferred] + [c for c in candidates if (c[0], c[1]) != (preferred[0], preferred[1])]
    for x2, x4, x1, x3 in ordered:
        b_paths = disjoint_paths(g0, comp_b, b_start, [x2, x4])
        if b_paths is None:
            continue
        a_paths = disjoint_paths(g0, comp_a, a_start, [x1, x3])
        if a_paths is None:
            continue
        # the four consecutive arcs in cyclic order alternate the two sides
        c1, c2, c3, c4 = sorted((x1, x2, x3, x4), key=pos.get)
        paths = [a_paths[0], a_paths[1], ["T"], b_paths[0], b_paths[1],
                 _arc(cycle, c1, c2), _arc(cycle, c2, c3),
                 _arc(cycle, c3, c4), _arc(cycle, c4, c1)]
        k = KuratowskiSubdivision("K3,3", [a_start, x2, x4, b_start, x1, x3], paths)
        k.midpoints = midpoints  # type: ignore[attr-defined]
        return k
    return None


def claw_reduction(h: PlaneStGraph, a: int, b: int, c: int):
    """Reduce the all-pairs-co-facial claw case to a non-co-facial pair
    (edge ab, vertex c); inserts the edge ab into h when a, b were not
    already adjacent.  Returns ('edge', id), ('vertex', c)."""
    e = h.g.find_edge(a, b)
    if e is None:
        f = h.query_vertex_vertex_slow(a, b)
        if f is None:
            raise PreconditionError("claw reduction expects a co-facial pair")
        e = h.insert_edge(a, b, f)
    return ("edge", e), ("vertex", c), e


def to_k33(g: Graph, k: KuratowskiSubdivision, center: int, third: int) -> KuratowskiSubdivision:
    """Convert a claw-produced K5-subdivision into a K3,3-subdivision of the
    same host.

    The K5 contains the claw path a-center-b.  Promoting the center to a
    branch vertex and moving one s to the {a, b} side needs a fresh path
    from the center to s (the claw's third edge, extended through unused
    vertices when the third attachment is not s itself).  Candidates are
    tried until the verifier passes; hosts equal to K5 admit none.
    """
    from . import certify

    if k.kind != "K5":
        return k
    if g.n == 5 and g.m == 10:
        raise PreconditionError("host is K5; no K3,3-subdivision exists")
    a, b = k.branch_vertices[0], k.branch_vertices[1]
    others = k.branch_vertices[2:]
    t_path = next(p for p in k.paths if {p[0], p[-1]} == {a, b})
    i = t_path.index(center)
    half_a = t_path[: i + 1][::-1] if t_path[0] == a else t_path[i:]
    half_b = t_path[i:] if t_path[0] == a else t_path[: i + 1][::-1]
    # half_a runs center->a, half_b runs center->b
    for s in sorted(others):
        rest = sorted(t for t in others if t != s)
        drop = ({a, b}, {a, s}, {b, s}, set(rest))
        keep = [p for p in k.paths if {p[0], p[-1]} not in drop]
        used = {v for p in keep for v in p} | set(half_a) | set(half_b)
        used.discard(s)
        used.discard(center)
        path_cs = _avoiding_path(g, center, s, used)
        if path_cs is None:
            continue
        branch = [a, b, s, center, rest[0], rest[1]]
        cand = keep + [half_a, half_b, path_cs]
        if certify.verify_kuratowski(g, "K3,3", branch, cand):
            return KuratowskiSubdivision("K3,3", branch, cand)
    raise ExtractionError("no verifying rerouting found")


def _avoiding_path(g: Graph, s: int, t: int, banned: set[int]) -> list[int] | None:
    prev: dict[int, int] = {s: -1}
    q = deque([s])
    while q and t not in prev:
        x = q.popleft()
        for e in sorted(g.incident_edges(x)):
            w = g.other_end(e, x)
            if w not in prev and (w == t or w not in banned):
                prev[w] = x
                q.append(w)
    if t not in prev:
        return None
    out = [t]
    while out[-1] != s:
        out.append(prev[out[-1]])
    return out[::-1]


# ---------------------------------------------------------------------------
# lifting through the decomposition
# ---------------------------------------------------------------------------


def lift_to_input(k: KuratowskiSubdivision, components, comp_index: int,
                  input_graph: Graph) -> KuratowskiSubdivision:
    """Replace virtual edges on witness paths by paths through the partner
    components, recursively; the result lives in the input graph."""

    def expand_step(idx: int, u: int, v: int, banned_edge: int | None) -> list[int]:
        g = components[idx].graph
        links = components[idx].virtual_links
        # BFS from u to v avoiding the banned (partner) edge
        prev: dict[int, tuple[int, int]] = {u: (-1, -1)}
        q = deque([u])
        while q and v not in prev:
            x = q.popleft()
            for e in sorted(g.incident_edges(x)):
                if e == banned_edge:
                    continue
                w = g.other_end(e, x)
                if w not in prev:
                    prev[w] = (x, e)
                    q.append(w)
        if v not in prev:
            raise ExtractionError("partner side does not reconnect the virtual pair")
        hops: list[tuple[int, int, int]] = []
        x = v
        while x != u:
            px, e = prev[x]
            hops.append((px, x, e))
            x = px
        hops.reverse()
        out = [u]
        for x, y, e in hops:
            if e in links:
                j, f = links[e]
                sub = expand_step(j, x, y, f)
                out.extend(sub[1:])
            else:
                out.append(y)
        return out

    def expand_path(path: list[int]) -> list[int]:
        g = components[comp_index].graph
        links = components[comp_index].virtual_links
        out = [path[0]]
        for u, v in zip(path, path[1:]):
            e = g.find_edge(u, v)
            if e is not None and e in links:
                j, f = links[e]
                sub = expand_step(j, u, v, f)
                out.extend(sub[1:])
            else:
                out.append(v)
        return out

    new_paths = [expand_path(p) for p in k.paths]
    return KuratowskiSubdivision(k.kind, list(k.branch_vertices), new_paths)
