"""Graph generators: named instances and seeded random families."""

from __future__ import annotations

import random

from . import cseq
from .graph import Graph, PreconditionError


def k4() -> Graph:
    return complete(4)


def complete(n: int) -> Graph:
    return Graph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)], n=n)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges([(i, a + j) for i in range(a) for j in range(b)], n=a + b)


def wheel(n: int) -> Graph:
    """Wheel on n vertices: rim cycle 0..n-2 plus hub n-1."""
    if n < 4:
        raise PreconditionError("wheel needs n >= 4")
    rim = n - 1
    edges = [(i, (i + 1) % rim) for i in range(rim)]
    edges += [(i, rim) for i in range(rim)]
    return Graph.from_edges(edges, n=n)


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return Graph.from_edges(edges, n=10)


def octahedron() -> Graph:
    return Graph.from_edges(
        [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5),
         (0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5)], n=6
    )


def hypercube(n_vertices: int) -> Graph:
    d = n_vertices.bit_length() - 1
    if 1 << d != n_vertices:
        raise PreconditionError("hypercube size must be a power of two")
    edges = []
    for v in range(n_vertices):
        for bit in range(d):
            w = v ^ (1 << bit)
            if v < w:
                edges.append((v, w))
    return Graph.from_edges(edges, n=n_vertices)


def prism() -> Graph:
    return Graph.from_edges(
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)], n=6
    )


def random_graph(n: int, m: int, seed: int) -> Graph:
    """Uniform simple graph with n vertices and m edges."""
    if m > n * (n - 1) // 2:
        raise PreconditionError("too many edges for a simple graph")
    rng = random.Random(seed)
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        a, b = rng.sample(range(n), 2)
        edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(sorted(edges), n=n)


def random_planar(n: int, seed: int) -> Graph:
    """Random triangulation grown from K4 by repeated face splitting.

    Each step drops a new vertex into a uniformly random triangular face and
    joins it to the face's three corners, so the result stays a planar
    triangulation with m = 3n - 6.
    """
    if n < 4:
        raise PreconditionError("triangulation needs n >= 4")
    rng = random.Random(seed)
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    faces = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    for x in range(4, n):
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        faces[i] = (a, b, x)
        faces.append((a, c, x))
        faces.append((b, c, x))
        edges += [(a, x), (b, x), (c, x)]
    return Graph.from_edges(edges, n=n)


def random_triconnected(n: int, seed: int, extra_edges: int = 0):
    """Random simple triconnected graph grown by forward operations from K4,
    with `extra_edges` trailing edge additions; returns (graph, sequence).

    All edge additions come last, so the recorded sequence is canonical.
    Labels are drawn directly (vertex labels are 0..count-1, edge labels
    likewise), keeping each step O(1).
    """
    if n < 4:
        raise PreconditionError("triconnected graphs need n >= 4")
    rng = random.Random(seed)
    b = cseq.SequenceBuilder()
    r = b.replayer
    g = r.graph
    while g.n < n:
        kind = rng.choice("bcd") if g.n + 2 <= n else rng.choice("bd")
        if kind == "b":
            lab = rng.randrange(b.next_edge_label)
            ends = set(g.endpoints(r.edge_of_label[lab]))
            while True:
                y = rng.randrange(b.next_vertex_label)
                if r.vertex_of_label[y] not in ends:
                    break
            b.subdivide_connect(lab, y)
        elif kind == "c":
            l1 = rng.randrange(b.next_edge_label)
            while True:
                l2 = rng.randrange(b.next_edge_label)
                if l2 != l1:
                    break
            b.two_subdivide(l1, l2)
        else:
            vs = rng.sample(range(b.next_vertex_label), 3)
            b.add_claw(*vs)
    added = 0
    attempts = 0
    while added < extra_edges and attempts < 20 * extra_edges + 100:
        attempts += 1
        x, y = rng.sample(range(b.next_vertex_label), 2)
        if not g.has_pair(r.vertex_of_label[x], r.vertex_of_label[y]):
            b.add_edge(x, y)
            added += 1
    seq = b.finish({lab: vid for lab, vid in r.vertex_of_label.items()})
    return r.graph.copy(), seq


def random_planar_triconnected(n: int, seed: int, extra_edges: int = 0):
    """Random planar simple triconnected graph grown by operations whose
    attachments are sampled from one face, so planarity is preserved;
    returns (graph, canonical sequence).

    The growth runs an actual embedded state: a face id is drawn uniformly
    (face ids are never reused, so they stay dense), its boundary is read
    off, and an operation inside it is recorded and applied.  Trailing edge
    additions are placed between non-adjacent vertices of a common face.
    """
    from .planarity import EmbeddingDriver

    if n < 4:
        raise PreconditionError("triconnected graphs need n >= 4")
    rng = random.Random(seed)
    b = cseq.SequenceBuilder()
    drv = EmbeddingDriver(b.seq)
    h = drv.h
    label_of_hedge = {e: lab for lab, e in drv.e_of_label.items()}

    def sync_labels(op) -> None:
        for lab in _edge_labels_of(op):
            label_of_hedge[drv.e_of_label[lab]] = lab

    while b.replayer.graph.n < n:
        f = rng.randrange(h._next_face)
        cyc = h.face_cycle(f)
        verts = [h.dart_vertex(d) for d in cyc]
        kind = rng.choice("bcd") if b.replayer.graph.n + 2 <= n else rng.choice("bd")
        if kind == "b":
            d = cyc[rng.randrange(len(cyc))]
            ends = set(h.g.endpoints(d // 2))
            others = [v for v in verts if v not in ends]
            if not others:
                continue
            y = others[rng.randrange(len(others))]
            op = b.subdivide_connect(label_of_hedge[d // 2], drv.label_of_v[y])
        elif kind == "c":
            d1, d2 = rng.sample(range(len(cyc)), 2)
            e1, e2 = cyc[d1] // 2, cyc[d2] // 2
            if e1 == e2:
                continue
            op = b.two_subdivide(label_of_hedge[e1], label_of_hedge[e2])
        else:
            if len(set(verts)) < 3:
                continue
            vs = rng.sample(sorted(set(verts)), 3)
            op = b.add_claw(*(drv.label_of_v[v] for v in vs))
        drv.apply_op(op, f)
        sync_labels(op)

    added = attempts = 0
    g = b.replayer.graph
    while added < extra_edges and attempts < 30 * extra_edges + 100:
        attempts += 1
        f = rng.randrange(h._next_face)
        verts = sorted({h.dart_vertex(d) for d in h.face_cycle(f)})
        if len(verts) < 4:
            continue
        x, y = rng.sample(verts, 2)
        if h.g.has_pair(x, y):
            continue
        op = b.add_edge(drv.label_of_v[x], drv.label_of_v[y])
        drv.apply_op(op, f)
        sync_labels(op)
        added += 1
    seq = b.finish({lab: vid for lab, vid in b.replayer.vertex_of_label.items()})
    return b.replayer.graph.copy(), seq


def _edge_labels_of(op) -> tuple[int, ...]:
    if op.kind == "a":
        return (op.new_edge,)
    if op.kind == "b":
        return (op.edge, op.fresh_half, op.new_edge)
    if op.kind == "c":
        return (op.edge1, op.fresh1, op.edge2, op.fresh2, op.new_edge)
    return (op.edge_a, op.edge_b, op.edge_c)
