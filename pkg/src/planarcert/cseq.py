"""Construction sequences of simple triconnected graphs from K4.

Four operation types grow a triconnected graph: add an edge between
non-adjacent vertices (a), subdivide an edge and connect the new vertex to a
third vertex (b), subdivide two edges and connect the new vertices (c), add a
new vertex joined to three old ones (d).  A sequence is *canonical* when all
type-a operations come last; edges added by type-a ops are then never
subdivided.

Vertices and edges are named by integer labels.  When an edge is subdivided,
the half incident to the endpoint with the smaller label keeps the parent
edge label and the other half gets a fresh one; the genealogy records every
such event so any intermediate edge can be expanded into the path of final
edges it turned into.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import decomposition
from .graph import Graph, InternalInvariantError, PreconditionError


class ReplayError(Exception):
    def __init__(self, index: int, message: str) -> None:
        super().__init__(f"op {index}: {message}")
        self.index = index


class LabelError(Exception):
    pass


# ---------------------------------------------------------------------------
# data model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OpAddEdge:
    """Type a: add edge xy between non-adjacent vertices."""

    x: int
    y: int
    new_edge: int

    kind = "a"

    def attachments(self):
        return (self.x, self.y)


@dataclass(frozen=True)
class OpSubdivideConnect:
    """Type b: subdivide `edge` by `new_vertex` and connect it to y."""

    edge: int
    y: int
    new_vertex: int
    fresh_half: int
    new_edge: int

    kind = "b"

    def attachments(self):
        return (self.edge, self.y)


@dataclass(frozen=True)
class OpTwoSubdivide:
    """Type c: subdivide edges e and f, join the two new vertices."""

    edge1: int
    edge2: int
    v1: int
    v2: int
    fresh1: int
    fresh2: int
    new_edge: int

    kind = "c"

    def attachments(self):
        return (self.edge1, self.edge2)


@dataclass(frozen=True)
class OpAddClaw:
    """Type d: add center vertex joined to old vertices a, b, c."""

    a: int
    b: int
    c: int
    center: int
    edge_a: int
    edge_b: int
    edge_c: int

    kind = "d"

    def attachments(self):
        return (self.a, self.b, self.c)


ConstructionOp = OpAddEdge | OpSubdivideConnect | OpTwoSubdivide | OpAddClaw


@dataclass(frozen=True)
class SubdivisionEvent:
    """One edge-subdivision: parent label split at `vertex` (op index `time`).

    The retained half (keeps `parent`'s label) stays incident to `kept_end`;
    the fresh half joins `vertex` to `other_end`.
    """

    time: int
    parent: int
    vertex: int
    fresh: int
    kept_end: int
    other_end: int


BASE_VERTEX_LABELS = (0, 1, 2, 3)
BASE_EDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass
class ConstructionSequence:
    ops: list[ConstructionOp] = field(default_factory=list)
    genealogy: list[SubdivisionEvent] = field(default_factory=list)
    canonical: bool = True
    # vertex label -> vertex id of the graph the sequence was computed from
    vertex_to_input: dict[int, int] | None = None

    def events_by_parent(self) -> dict[int, list[SubdivisionEvent]]:
        out: dict[int, list[SubdivisionEvent]] = {}
        for ev in self.genealogy:
            out.setdefault(ev.parent, []).append(ev)
        for evs in out.values():
            evs.sort(key=lambda ev: ev.time)
        return out

    def first_type_a_index(self) -> int:
        for i, op in enumerate(self.ops):
            if op.kind == "a":
                return i
        return len(self.ops)


# ---------------------------------------------------------------------------
# replay
# ---------------------------------------------------------------------------


class Replayer:
    """Applies a sequence op by op, tracking label-to-entity maps.

    The replay graph's vertex ids coincide with vertex labels as long as the
    sequence assigns labels densely in creation order (all sequences built by
    this module do); the maps are authoritative either way.
    """

    def __init__(self, seq: ConstructionSequence) -> None:
        self.seq = seq
        self.graph = Graph()
        self.vertex_of_label: dict[int, int] = {}
        self.edge_of_label: dict[int, int] = {}
        self._vlabel_of: dict[int, int] = {}
        self.time = 0
        for lab in BASE_VERTEX_LABELS:
            self._bind_vertex(lab, self.graph.add_vertex())
        for lab, (u, v) in enumerate(BASE_EDGE_PAIRS):
            self.edge_of_label[lab] = self.graph.add_edge(
                self.vertex_of_label[u], self.vertex_of_label[v]
            )

    # -- helpers ----------------------------------------------------------

    def _bind_vertex(self, label: int, vid: int) -> None:
        self.vertex_of_label[label] = vid
        self._vlabel_of[vid] = label

    def _vertex(self, label: int, i: int) -> int:
        try:
            return self.vertex_of_label[label]
        except KeyError:
            raise ReplayError(i, f"stale vertex label {label}") from None

    def _edge(self, label: int, i: int) -> int:
        try:
            return self.edge_of_label[label]
        except KeyError:
            raise ReplayError(i, f"stale edge label {label}") from None

    def _label_of_vertex(self, vid: int) -> int:
        try:
            return self._vlabel_of[vid]
        except KeyError:
            raise InternalInvariantError(f"vertex id {vid} has no label") from None

    def _subdivide(self, edge_label: int, vertex_label: int, fresh_label: int, i: int) -> int:
        e = self._edge(edge_label, i)
        u, v = self.graph.endpoints(e)
        lu, lv = self._label_of_vertex(u), self._label_of_vertex(v)
        x = self.graph.subdivide(e)
        self._bind_vertex(vertex_label, x)
        kept_label, other_label = (lu, lv) if lu < lv else (lv, lu)
        kept_vertex = self.vertex_of_label[kept_label]
        ea, eb = self.graph.incident_edges(x)
        if self.graph.other_end(ea, x) == kept_vertex:
            kept_half, fresh_half = ea, eb
        else:
            kept_half, fresh_half = eb, ea
        self.edge_of_label[edge_label] = kept_half
        self.edge_of_label[fresh_label] = fresh_half
        return x

    # -- stepping ---------------------------------------------------------

    def step(self) -> None:
        i = self.time
        op = self.seq.ops[i]
        g = self.graph
        if op.kind == "a":
            x, y = self._vertex(op.x, i), self._vertex(op.y, i)
            if x == y:
                raise ReplayError(i, "endpoints coincide")
            if g.has_pair(x, y):
                raise ReplayError(i, f"vertices {op.x},{op.y} already adjacent")
            self.edge_of_label[op.new_edge] = g.add_edge(x, y)
        elif op.kind == "b":
            e = self._edge(op.edge, i)
            a, b = g.endpoints(e)
            y = self._vertex(op.y, i)
            if y in (a, b):
                raise ReplayError(i, "connection vertex lies on the subdivided edge")
            x = self._subdivide(op.edge, op.new_vertex, op.fresh_half, i)
            self.edge_of_label[op.new_edge] = g.add_edge(x, y)
        elif op.kind == "c":
            if op.edge1 == op.edge2:
                raise ReplayError(i, "the two subdivided edges coincide")
            e1, e2 = self._edge(op.edge1, i), self._edge(op.edge2, i)
            if set(g.endpoints(e1)) == set(g.endpoints(e2)):
                raise ReplayError(i, "subdivided edges are parallel")
            x = self._subdivide(op.edge1, op.v1, op.fresh1, i)
            y = self._subdivide(op.edge2, op.v2, op.fresh2, i)
            self.edge_of_label[op.new_edge] = g.add_edge(x, y)
        elif op.kind == "d":
            a, b, c = (self._vertex(l, i) for l in (op.a, op.b, op.c))
            if len({a, b, c}) != 3:
                raise ReplayError(i, "claw attachments not distinct")
            x = g.add_vertex()
            self._bind_vertex(op.center, x)
            self.edge_of_label[op.edge_a] = g.add_edge(x, a)
            self.edge_of_label[op.edge_b] = g.add_edge(x, b)
            self.edge_of_label[op.edge_c] = g.add_edge(x, c)
        else:  # pragma: no cover
            raise ReplayError(i, f"unknown op kind {op.kind!r}")
        self.time += 1

    def run(self, upto: int | None = None, check_triconnected: bool = False) -> Graph:
        upto = len(self.seq.ops) if upto is None else upto
        while self.time < upto:
            self.step()
            if not self.graph.is_simple():
                raise ReplayError(self.time - 1, "intermediate graph not simple")
            if check_triconnected and not decomposition.is_triconnected(self.graph):
                raise ReplayError(self.time - 1, "intermediate graph not triconnected")
        return self.graph


def replay(seq: ConstructionSequence, check_triconnected: bool = False) -> Graph:
    """Replay from K4; raises ReplayError naming the offending op index."""
    return Replayer(seq).run(check_triconnected=check_triconnected)


def replay_matches(seq: ConstructionSequence, g: Graph) -> bool:
    """True iff replay(seq) equals g under the sequence's vertex map."""
    if seq.vertex_to_input is None:
        raise PreconditionError("sequence has no recorded vertex map")
    r = Replayer(seq)
    r.run()
    to_input = {}
    for lab, vid in r.vertex_of_label.items():
        to_input[vid] = seq.vertex_to_input[lab]
    if set(to_input.values()) != set(g.vertices()):
        return False
    mapped = set()
    for u, v in r.graph.edge_pairs():
        a, b = to_input[u], to_input[v]
        mapped.add((min(a, b), max(a, b)))
    return mapped == set(g.edge_pairs())


# ---------------------------------------------------------------------------
# forward building (used by compute_sequence and the random generator)
# ---------------------------------------------------------------------------


class SequenceBuilder:
    """Grows a sequence forward, assigning labels in creation order."""

    def __init__(self) -> None:
        self.seq = ConstructionSequence()
        self.replayer = Replayer(self.seq)
        self.next_vertex_label = 4
        self.next_edge_label = 6
        self._saw_non_a = False
        self._a_after_non_a_ok = True

    @property
    def graph(self) -> Graph:
        return self.replayer.graph

    def _vlabel(self) -> int:
        self.next_vertex_label += 1
        return self.next_vertex_label - 1

    def _elabel(self) -> int:
        self.next_edge_label += 1
        return self.next_edge_label - 1

    def _push(self, op: ConstructionOp) -> None:
        self.seq.ops.append(op)
        self.replayer.step()

    def add_edge(self, x: int, y: int) -> OpAddEdge:
        op = OpAddEdge(x, y, self._elabel())
        self._push(op)
        return op

    def subdivide_connect(self, edge: int, y: int) -> OpSubdivideConnect:
        t = len(self.seq.ops)
        op = OpSubdivideConnect(edge, y, self._vlabel(), self._elabel(), self._elabel())
        self._record_subdivision(t, edge, op.new_vertex, op.fresh_half)
        self._push(op)
        return op

    def two_subdivide(self, edge1: int, edge2: int) -> OpTwoSubdivide:
        t = len(self.seq.ops)
        v1, v2 = self._vlabel(), self._vlabel()
        f1, f2 = self._elabel(), self._elabel()
        op = OpTwoSubdivide(edge1, edge2, v1, v2, f1, f2, self._elabel())
        self._record_subdivision(t, edge1, v1, f1)
        self._record_subdivision(t, edge2, v2, f2)
        self._push(op)
        return op

    def add_claw(self, a: int, b: int, c: int) -> OpAddClaw:
        op = OpAddClaw(a, b, c, self._vlabel(), self._elabel(), self._elabel(), self._elabel())
        self._push(op)
        return op

    def _record_subdivision(self, time: int, parent: int, vertex: int, fresh: int) -> None:
        r = self.replayer
        e = r.edge_of_label[parent]
        u, v = r.graph.endpoints(e)
        lu, lv = r._label_of_vertex(u), r._label_of_vertex(v)
        kept, other = (lu, lv) if lu < lv else (lv, lu)
        self.seq.genealogy.append(SubdivisionEvent(time, parent, vertex, fresh, kept, other))

    def finish(self, vertex_to_input: dict[int, int] | None = None) -> ConstructionSequence:
        ops = self.seq.ops
        first_a = next((i for i, op in enumerate(ops) if op.kind == "a"), len(ops))
        self.seq.canonical = all(op.kind == "a" for op in ops[first_a:])
        self.seq.vertex_to_input = vertex_to_input
        return self.seq

    def edge_label_of_pair(self, u_label: int, v_label: int) -> int:
        r = self.replayer
        e = r.graph.find_edge(r.vertex_of_label[u_label], r.vertex_of_label[v_label])
        if e is None:
            raise LabelError(f"no edge between labels {u_label} and {v_label}")
        for lab, eid in r.edge_of_label.items():
            if eid == e:
                return lab
        raise InternalInvariantError("edge without label")


# ---------------------------------------------------------------------------
# reverse-greedy sequence computation
# ---------------------------------------------------------------------------

STAGE1_PATIENCE = 25


def _flows_ok(h: Graph, pairs) -> bool:
    """All given non-adjacent vertex pairs admit 3 internally disjoint paths."""
    from .flow import disjoint_path_count

    for a, b in pairs:
        if a == b or h.has_pair(a, b):
            continue
        if disjoint_path_count(h, a, b, 3) < 3:
            return False
    return True


def _deletion_keeps_triconnectivity(h: Graph, u: int, v: int) -> bool:
    """Whether h (triconnected) minus its edge uv is still triconnected.

    Any separation pair of the smaller graph must separate u from v, since
    re-adding the edge restores connectivity; one flow check settles it.
    """
    e = h.find_edge(u, v)
    h.remove_edge(e)
    ok = _flows_ok(h, [(u, v)])
    h.add_edge(u, v)
    return ok


def compute_sequence(g: Graph, stage1_patience: int = STAGE1_PATIENCE) -> ConstructionSequence:
    """Construction sequence for a simple triconnected graph, by reverse greedy.

    Stage 1 peels edges whose deletion keeps the graph triconnected (these
    become the trailing type-a block); stage 2 undoes operations preferring
    d, then b, then c, falling back to a (which makes the result
    non-canonical).  Every accepted reversal is validated before it is taken:
    a new separation pair would have to separate the modified spot, so a
    constant number of 3-disjoint-path checks per candidate suffices and all
    prefixes of the result are simple and triconnected by construction.
    """
    if not g.is_simple() or not decomposition.is_triconnected(g):
        raise PreconditionError("compute_sequence needs a simple triconnected graph")
    h = g.copy()
    stage1: list[tuple[int, int]] = []
    fails = 0
    while fails < stage1_patience:
        found = False
        for u, v in _sorted_pairs(h):
            if h.degree(u) < 4 or h.degree(v) < 4:
                continue
            if _deletion_keeps_triconnectivity(h, u, v):
                h.remove_edge(h.find_edge(u, v))
                stage1.append((u, v))
                found = True
                fails = 0
                break
            fails += 1
            if fails >= stage1_patience:
                break
        if not found:
            break

    stage2: list[tuple] = []
    used_a = False
    while h.n > 4 or h.m > 6:
        step = _reverse_step(h)
        if step is None:
            raise InternalInvariantError("no reverse operation applies; contradicts Theorem 4")
        stage2.append(step)
        if step[0] == "a":
            used_a = True
    if not (h.n == 4 and h.m == 6 and h.is_simple()):
        raise InternalInvariantError("reduction did not reach K4")

    builder = SequenceBuilder()
    label_of = {v: lab for lab, v in zip(BASE_VERTEX_LABELS, sorted(h.vertices()))}

    def elab(a: int, b: int) -> int:
        return builder.edge_label_of_pair(label_of[a], label_of[b])

    for step in reversed(stage2):
        kind = step[0]
        if kind == "d":
            _, vid, (a, b, c) = step
            op = builder.add_claw(label_of[a], label_of[b], label_of[c])
            label_of[vid] = op.center
        elif kind == "b":
            _, xid, (a, b), y = step
            op = builder.subdivide_connect(elab(a, b), label_of[y])
            label_of[xid] = op.new_vertex
        elif kind == "c":
            _, xid, (a, b), yid, (c, d) = step
            op = builder.two_subdivide(elab(a, b), elab(c, d))
            label_of[xid] = op.v1
            label_of[yid] = op.v2
        else:
            _, u, v = step
            builder.add_edge(label_of[u], label_of[v])
    for u, v in reversed(stage1):
        builder.add_edge(label_of[u], label_of[v])

    vertex_to_input = {lab: vid for vid, lab in label_of.items()}
    seq = builder.finish(vertex_to_input)
    seq.canonical = not used_a
    return seq


def _sorted_pairs(h: Graph) -> list[tuple[int, int]]:
    return sorted((min(u, v), max(u, v)) for u, v in h.edge_pairs())


def _reverse_step(h: Graph):
    """Undo one forward op on h in place; returns its forward description.

    Candidate validation uses the locality of new separation pairs: deleting
    a degree-3 vertex v can only expose a pair separating two of v's
    neighbors, deleting an edge only a pair separating its endpoints, and a
    suppressed vertex rides along with its surviving neighbors.
    """
    # type d: delete a degree-3 vertex whose neighbors keep 3 disjoint paths
    for v in sorted(h.vertices()):
        if h.degree(v) != 3:
            continue
        a, b, c = nbrs = sorted(h.neighbors(v))
        if h.degree(a) < 4 or h.degree(b) < 4 or h.degree(c) < 4:
            continue
        trial = h.copy()
        trial.remove_vertex(v)
        if _flows_ok(trial, [(a, b), (a, c), (b, c)]):
            h.remove_vertex(v)
            return ("d", v, tuple(nbrs))
    # type b: delete edge xy with deg(x) = 3, suppress x
    for u, v in _sorted_pairs(h):
        for x, y in ((u, v), (v, u)):
            if h.degree(x) != 3 or h.degree(y) < 4:
                continue
            rest = sorted(w for w in h.neighbors(x) if w != y)
            if len(rest) != 2 or h.has_pair(*rest):
                continue
            trial = h.copy()
            trial.remove_edge(trial.find_edge(x, y))
            trial.suppress(x)
            if _flows_ok(trial, [(y, rest[0]), (y, rest[1])]):
                h.remove_edge(h.find_edge(x, y))
                h.suppress(x)
                return ("b", x, tuple(rest), y)
    # type c: delete edge xy with both degrees 3, suppress both
    for u, v in _sorted_pairs(h):
        if h.degree(u) != 3 or h.degree(v) != 3:
            continue
        ru = sorted(w for w in h.neighbors(u) if w != v)
        rv = sorted(w for w in h.neighbors(v) if w != u)
        if len(ru) != 2 or len(rv) != 2:
            continue
        if h.has_pair(*ru) or h.has_pair(*rv) or set(ru) == set(rv):
            continue
        trial = h.copy()
        trial.remove_edge(trial.find_edge(u, v))
        trial.suppress(u)
        trial.suppress(v)
        if _flows_ok(trial, [(p, q) for p in ru for q in rv]):
            h.remove_edge(h.find_edge(u, v))
            h.suppress(u)
            h.suppress(v)
            return ("c", u, tuple(ru), v, tuple(rv))
    # type a fallback: delete any edge keeping triconnectivity
    for u, v in _sorted_pairs(h):
        if h.degree(u) < 4 or h.degree(v) < 4:
            continue
        if _deletion_keeps_triconnectivity(h, u, v):
            h.remove_edge(h.find_edge(u, v))
            return ("a", u, v)
    return None


# ---------------------------------------------------------------------------
# label queries
# ---------------------------------------------------------------------------


def resolve_vertex_label(seq: ConstructionSequence, label: int, t: int) -> int:
    """Vertex id denoted by `label` in the replay state after t ops."""
    r = Replayer(seq)
    r.run(upto=t)
    if label not in r.vertex_of_label:
        raise LabelError(f"vertex label {label} not alive at time {t}")
    return r.vertex_of_label[label]


def resolve_edge_label(seq: ConstructionSequence, label: int, t: int) -> int:
    """Edge id denoted by `label` in the replay state after t ops."""
    r = Replayer(seq)
    r.run(upto=t)
    if label not in r.edge_of_label:
        raise LabelError(f"edge label {label} not alive at time {t}")
    return r.edge_of_label[label]


def expand_label_between(
    seq: ConstructionSequence,
    events: dict[int, list[SubdivisionEvent]],
    label: int,
    t: int,
    ends: tuple[int, int],
) -> list[int]:
    """Final-graph path (vertex labels) that edge `label` with endpoints
    `ends` at time t was subdivided into by ops at index >= t."""

    def rec(lab: int, time: int, p: int, q: int) -> list[int]:
        ev = None
        for cand in events.get(lab, ()):
            if cand.time >= time:
                ev = cand
                break
        if ev is None:
            return [p, q]
        if {ev.kept_end, ev.other_end} != {p, q}:
            raise InternalInvariantError(
                f"genealogy endpoints {ev.kept_end},{ev.other_end} do not match {p},{q}"
            )
        left = rec(lab, ev.time + 1, ev.kept_end, ev.vertex)
        right = rec(ev.fresh, ev.time + 1, ev.vertex, ev.other_end)
        path = left + right[1:]
        if p == ev.kept_end:
            return path
        return path[::-1]

    return rec(label, t, ends[0], ends[1])


def expand_label(seq: ConstructionSequence, label: int, t: int) -> list[int]:
    """Path of final-graph vertices the time-t edge `label` expands to."""
    r = Replayer(seq)
    r.run(upto=t)
    if label not in r.edge_of_label:
        raise LabelError(f"edge label {label} not alive at time {t}")
    u, v = r.graph.endpoints(r.edge_of_label[label])
    ends = (r._label_of_vertex(u), r._label_of_vertex(v))
    return expand_label_between(seq, seq.events_by_parent(), label, t, ends)


# ---------------------------------------------------------------------------
# textual dump
# ---------------------------------------------------------------------------


def dump(seq: ConstructionSequence) -> str:
    """One op per line, then genealogy lines; see README for the grammar."""
    lines = [f"base {' '.join(map(str, BASE_VERTEX_LABELS))}"]
    for op in seq.ops:
        if op.kind == "a":
            lines.append(f"a {op.x} {op.y} new {op.new_edge}")
        elif op.kind == "b":
            lines.append(
                f"b {op.edge} {op.y} new {op.new_vertex} {op.fresh_half} {op.new_edge}"
            )
        elif op.kind == "c":
            lines.append(
                f"c {op.edge1} {op.edge2} new {op.v1} {op.v2} "
                f"{op.fresh1} {op.fresh2} {op.new_edge}"
            )
        else:
            lines.append(
                f"d {op.a} {op.b} {op.c} new {op.center} "
                f"{op.edge_a} {op.edge_b} {op.edge_c}"
            )
    for ev in seq.genealogy:
        lines.append(
            f"sub {ev.time} {ev.parent} at {ev.vertex} keep {ev.kept_end} "
            f"fresh {ev.fresh} to {ev.other_end}"
        )
    lines.append(f"canonical {'true' if seq.canonical else 'false'}")
    return "\n".join(lines)
