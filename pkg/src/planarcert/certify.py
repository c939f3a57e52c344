"""Independent verifiers and a brute-force planarity oracle.

Everything here re-derives its answers from first principles on top of the
graph substrate only: embeddings are checked by Euler-counting traced faces,
Kuratowski witnesses by path-disjointness and contraction pattern, sequences
by an own replay with brute-force triconnectivity.  No code is shared with
the producing modules, so agreement is meaningful evidence.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import permutations

from .graph import Graph

ORACLE_BUDGET = 10_000_000


class OracleBudgetError(Exception):
    """The rotation-system search space exceeds the configured budget."""


@dataclass
class VerificationReport:
    verdict: bool
    reason: str = ""
    faces_traced: int = 0
    paths_checked: int = 0

    def __bool__(self) -> bool:
        return self.verdict


def _fail(reason: str, **counts) -> VerificationReport:
    return VerificationReport(False, reason, **counts)


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------


def _trace_face_count(rotation: dict[int, list[int]]) -> int:
    """Number of faces of a rotation system (neighbor lists), all components.

    Darts are (u, v) pairs; successor of dart (u, v) is the rotation
    successor of u in v's list.
    """
    index: dict[tuple[int, int], int] = {}
    for v, nbrs in rotation.items():
        pos: dict[int, int] = {}
        for i, w in enumerate(nbrs):
            pos[w] = i
        index[v] = pos  # type: ignore[assignment]
    faces = 0
    seen: set[tuple[int, int]] = set()
    for u, nbrs in rotation.items():
        for w in nbrs:
            d = (u, w)
            if d in seen:
                continue
            faces += 1
            while d not in seen:
                seen.add(d)
                u2, w2 = d
                nxt = rotation[w2]
                i = index[w2][u2]  # type: ignore[index]
                d = (w2, nxt[(i + 1) % len(nxt)])
    return faces


def _components(g: Graph) -> list[list[int]]:
    out = []
    seen: set[int] = set()
    for s in g.vertices():
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        q = deque([s])
        while q:
            v = q.popleft()
            for e in g.incident_edges(v):
                w = g.other_end(e, v)
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    q.append(w)
        out.append(comp)
    return out


def verify_embedding(g: Graph, rotation: dict[int, list[int]]) -> VerificationReport:
    """Pass iff rotation permutes each vertex's neighbors and face tracing
    gives n - m + f = 2 on every connected component (genus zero)."""
    if set(rotation) != set(g.vertices()):
        return _fail("rotation vertex set differs from the graph")
    for v in g.vertices():
        if sorted(rotation[v]) != sorted(g.neighbors(v)):
            return _fail(f"rotation at {v} is not a permutation of its neighbors")
    total_faces = 0
    for comp in _components(g):
        sub = {v: rotation[v] for v in comp}
        n = len(comp)
        m = sum(len(r) for r in sub.values()) // 2
        f = _trace_face_count(sub) if m else 1
        total_faces += f
        if n - m + f != 2:
            return _fail(
                f"component with {n} vertices has genus > 0 (f={f}, expected {m - n + 2})",
                faces_traced=f,
            )
    return VerificationReport(True, faces_traced=total_faces)


# ---------------------------------------------------------------------------
# Kuratowski witnesses
# ---------------------------------------------------------------------------


def verify_kuratowski(g: Graph, kind: str, branch: list[int], paths: list[list[int]]) -> VerificationReport:
    """Pass iff the paths exist in g, are internally disjoint, avoid branch
    vertices except at their ends, and contract to K5 or K3,3."""
    branch_set = set(branch)
    if kind == "K5":
        if len(branch) != 5 or len(branch_set) != 5:
            return _fail("K5 needs 5 distinct branch vertices")
        if len(paths) != 10:
            return _fail(f"K5 needs 10 paths, got {len(paths)}")
    elif kind == "K3,3":
        if len(branch) != 6 or len(branch_set) != 6:
            return _fail("K3,3 needs 6 distinct branch vertices")
        if len(paths) != 9:
            return _fail(f"K3,3 needs 9 paths, got {len(paths)}")
    else:
        return _fail(f"unknown witness kind {kind!r}")

    interior_seen: set[int] = set()
    endpoint_pairs = []
    for k, p in enumerate(paths):
        if len(p) < 2:
            return _fail(f"path {k} has fewer than 2 vertices")
        if len(set(p)) != len(p):
            return _fail(f"path {k} repeats a vertex")
        for u, v in zip(p, p[1:]):
            if not g.has_pair(u, v):
                return _fail(f"path {k}: edge {u}-{v} not in the graph")
        if p[0] not in branch_set or p[-1] not in branch_set:
            return _fail(f"path {k} does not join branch vertices")
        inner = p[1:-1]
        for v in inner:
            if v in branch_set:
                return _fail(f"path {k} passes through branch vertex {v}")
            if v in interior_seen:
                return _fail(f"paths share interior vertex {v}")
        interior_seen.update(inner)
        a, b = p[0], p[-1]
        if a == b:
            return _fail(f"path {k} is a closed walk")
        endpoint_pairs.append((min(a, b), max(a, b)))

    if len(set(endpoint_pairs)) != len(endpoint_pairs):
        return _fail("two paths join the same pair of branch vertices")
    if kind == "K5":
        want = {(min(a, b), max(a, b)) for i, a in enumerate(branch) for b in branch[i + 1:]}
        if set(endpoint_pairs) != want:
            return _fail("paths do not realize all 10 branch pairs")
    else:
        left, right = set(branch[:3]), set(branch[3:])
        want = {(min(a, b), max(a, b)) for a in left for b in right}
        if set(endpoint_pairs) != want:
            return _fail("paths do not realize the 3x3 bipartite pattern")
    return VerificationReport(True, paths_checked=len(paths))


# ---------------------------------------------------------------------------
# sequences (own replay; shares only the graph substrate)
# ---------------------------------------------------------------------------


def _bf_connected_without(g: Graph, banned: set[int]) -> bool:
    verts = [v for v in g.vertices() if v not in banned]
    if len(verts) <= 1:
        return True
    seen = {verts[0]}
    q = deque([verts[0]])
    while q:
        v = q.popleft()
        for e in g.incident_edges(v):
            w = g.other_end(e, v)
            if w not in banned and w not in seen:
                seen.add(w)
                q.append(w)
    return len(seen) == len(verts)


def bruteforce_triconnected(g: Graph) -> bool:
    """Definition-level check: connected, no cut vertex, no separation pair."""
    if g.n < 4 or not g.is_simple():
        return False
    if not _bf_connected_without(g, set()):
        return False
    verts = sorted(g.vertices())
    for x in verts:
        if not _bf_connected_without(g, {x}):
            return False
    for i, x in enumerate(verts):
        for y in verts[i + 1:]:
            if not _bf_connected_without(g, {x, y}):
                return False
    return True


def verify_sequence(g: Graph, seq) -> VerificationReport:
    """Replay the sequence with full prefix checks against g.

    Expensive (brute-force triconnectivity per prefix); meant for small
    graphs.  The canonical flag may understate (False is always acceptable)
    but never overstate.
    """
    from .cseq import BASE_EDGE_PAIRS, BASE_VERTEX_LABELS  # data constants only

    state = Graph()
    vmap: dict[int, int] = {}
    emap: dict[int, int] = {}
    for lab in BASE_VERTEX_LABELS:
        vmap[lab] = state.add_vertex()
    for lab, (u, v) in enumerate(BASE_EDGE_PAIRS):
        emap[lab] = state.add_edge(vmap[u], vmap[v])

    def subdivide(edge_label, vertex_label, fresh_label):
        e = emap[edge_label]
        u, v = state.endpoints(e)
        labs = sorted(lab for lab, vid in vmap.items() if vid in (u, v))
        kept = vmap[labs[0]]
        x = state.subdivide(e)
        vmap[vertex_label] = x
        ea, eb = state.incident_edges(x)
        if state.other_end(ea, x) == kept:
            emap[edge_label], emap[fresh_label] = ea, eb
        else:
            emap[edge_label], emap[fresh_label] = eb, ea
        return x

    saw_a = False
    for i, op in enumerate(seq.ops):
        try:
            if op.kind == "a":
                saw_a = True
                x, y = vmap[op.x], vmap[op.y]
                if x == y or state.has_pair(x, y):
                    return _fail(f"op {i}: endpoints adjacent or equal")
                emap[op.new_edge] = state.add_edge(x, y)
            elif op.kind == "b":
                if saw_a and seq.canonical:
                    return _fail(f"op {i}: non-a op after an a op in a canonical sequence")
                u, v = state.endpoints(emap[op.edge])
                if vmap[op.y] in (u, v):
                    return _fail(f"op {i}: connection vertex lies on the edge")
                x = subdivide(op.edge, op.new_vertex, op.fresh_half)
                emap[op.new_edge] = state.add_edge(x, vmap[op.y])
            elif op.kind == "c":
                if saw_a and seq.canonical:
                    return _fail(f"op {i}: non-a op after an a op in a canonical sequence")
                if op.edge1 == op.edge2:
                    return _fail(f"op {i}: the two edges coincide")
                x = subdivide(op.edge1, op.v1, op.fresh1)
                y = subdivide(op.edge2, op.v2, op.fresh2)
                emap[op.new_edge] = state.add_edge(x, y)
            elif op.kind == "d":
                if saw_a and seq.canonical:
                    return _fail(f"op {i}: non-a op after an a op in a canonical sequence")
                a, b, c = vmap[op.a], vmap[op.b], vmap[op.c]
                if len({a, b, c}) != 3:
                    return _fail(f"op {i}: claw attachments not distinct")
                x = state.add_vertex()
                vmap[op.center] = x
                emap[op.edge_a] = state.add_edge(x, a)
                emap[op.edge_b] = state.add_edge(x, b)
                emap[op.edge_c] = state.add_edge(x, c)
            else:
                return _fail(f"op {i}: unknown kind {op.kind!r}")
        except KeyError as exc:
            return _fail(f"op {i}: stale label {exc}")
        if not state.is_simple():
            return _fail(f"op {i}: state not simple")
        if not bruteforce_triconnected(state):
            return _fail(f"op {i}: state not triconnected")

    if seq.canonical:
        a_created = {op.new_edge for op in seq.ops if op.kind == "a"}
        for ev in seq.genealogy:
            if ev.parent in a_created:
                return _fail("canonical flag wrong: an a-created edge was subdivided")

    if seq.vertex_to_input is None:
        return _fail("sequence carries no vertex map")
    to_input = {vid: seq.vertex_to_input[lab] for lab, vid in vmap.items()}
    mapped = {(min(to_input[u], to_input[v]), max(to_input[u], to_input[v]))
              for u, v in state.edge_pairs()}
    if set(to_input.values()) != set(g.vertices()) or mapped != set(g.edge_pairs()):
        return _fail("final graph differs from the target")
    return VerificationReport(True)


# ---------------------------------------------------------------------------
# exhaustive oracle
# ---------------------------------------------------------------------------


def oracle_budget(g: Graph) -> int:
    """Size of the search space: one cyclic order per vertex, (deg-1)! each."""
    prod = 1
    for v in g.vertices():
        prod *= math.factorial(max(g.degree(v) - 1, 1))
    return prod


def _rotation_choices(g: Graph) -> tuple[list[int], list[list[list[int]]]]:
    """Per-vertex candidate rotations; one neighbor is pinned first to
    enumerate each cyclic order once."""
    verts = sorted(g.vertices(), key=lambda v: (-g.degree(v), v))
    choices: list[list[list[int]]] = []
    for v in verts:
        nbrs = sorted(g.neighbors(v))
        if len(nbrs) <= 2:
            choices.append([nbrs])
        else:
            first = nbrs[0]
            choices.append([[first, *rest] for rest in permutations(nbrs[1:])])
    return verts, choices


def oracle_embedding(g: Graph, budget: int = ORACLE_BUDGET) -> dict[int, list[int]] | None:
    """Some genus-zero rotation system found by exhaustive search, or None.

    Callers decompose first: g must be connected and simple.  Graphs with
    m > 3n - 6 are rejected without enumeration, since no rotation system of
    such a graph can reach f = m - n + 2.

    The search works on integer darts (edge ends): each vertex contributes
    the (deg-1)! cyclic orders of its darts; the face count of a full
    assignment is read off a successor array with visit stamps, so one
    candidate costs O(m) with no allocation.
    """
    n, m = g.n, g.m
    if n >= 3 and m > 3 * n - 6:
        return None
    if n <= 2 or m <= 2:
        return {v: sorted(g.neighbors(v)) for v in g.vertices()}
    if oracle_budget(g) > budget:
        raise OracleBudgetError(
            f"search space {oracle_budget(g)} exceeds budget {budget}"
        )
    target = m - n + 2
    edge_ids = sorted(g.edges())
    ends: list[int] = []
    for e in edge_ids:
        u, v = g.endpoints(e)
        ends.append(u)
        ends.append(v)
    darts_at: dict[int, list[int]] = {v: [] for v in g.vertices()}
    for d, v in enumerate(ends):
        darts_at[v].append(d)
    verts = sorted(g.vertices(), key=lambda v: (-g.degree(v), v))
    per_vertex: list[list[tuple[int, ...]]] = []
    for v in verts:
        ds = darts_at[v]
        if len(ds) <= 2:
            per_vertex.append([tuple(ds)])
        else:
            per_vertex.append([(ds[0], *rest) for rest in permutations(ds[1:])])
    succ = [0] * (2 * m)  # rotation successor per dart
    stamp = [-1] * (2 * m)
    state = {"tick": 0}

    def apply(order: tuple[int, ...]) -> None:
        k = len(order)
        for i in range(k):
            succ[order[i]] = order[(i + 1) % k]

    def faces_ok() -> bool:
        state["tick"] += 1
        tick = state["tick"]
        count = 0
        for d0 in range(2 * m):
            if stamp[d0] == tick:
                continue
            count += 1
            if count > target:
                return False
            d = d0
            while stamp[d] != tick:
                stamp[d] = tick
                d = succ[d ^ 1]
        return count == target

    def rec(i: int) -> bool:
        if i == len(verts):
            return faces_ok()
        for opt in per_vertex[i]:
            apply(opt)
            if rec(i + 1):
                return True
        return False

    if not rec(0):
        return None
    rotation = {}
    for v in g.vertices():
        ds = darts_at[v]
        if not ds:
            rotation[v] = []
            continue
        out = [ds[0]]
        d = succ[ds[0]]
        while d != ds[0]:
            out.append(d)
            d = succ[d]
        rotation[v] = [ends[d ^ 1] for d in out]
    return rotation


def oracle_planarity(g: Graph, budget: int = ORACLE_BUDGET) -> bool:
    """True iff some rotation system of g traces to Euler genus zero."""
    return oracle_embedding(g, budget) is not None


def face_degree_multiset(rotation: dict[int, list[int]]) -> list[int]:
    """Sorted list of face sizes of a rotation system (dart counts)."""
    index: dict[int, dict[int, int]] = {}
    for v, nbrs in rotation.items():
        index[v] = {w: i for i, w in enumerate(nbrs)}
    sizes = []
    seen: set[tuple[int, int]] = set()
    for u, nbrs in rotation.items():
        for w in nbrs:
            d = (u, w)
            if d in seen:
                continue
            size = 0
            while d not in seen:
                seen.add(d)
                size += 1
                u2, w2 = d
                nxt = rotation[w2]
                i = index[w2][u2]
                d = (w2, nxt[(i + 1) % len(nxt)])
            sizes.append(size)
    return sorted(sizes)
