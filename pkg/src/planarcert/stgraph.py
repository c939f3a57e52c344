"""Dynamic plane st-graph: an embedded acyclic orientation with one source
and one sink whose in/out edges are consecutive around every vertex.

Each face boundary consists of two directed paths from the face's source to
its sink; every vertex other than the global source and sink lies on exactly
two faces in which it is neither source nor sink (its side faces).  The
structure supports O(1) co-faciality queries and two modifications, edge
subdivision and chord insertion, the latter costing time proportional to the
smaller side of the split face.

Dart encoding: edge e contributes dart 2e sitting at its tail and dart 2e+1
at its head.  The face trace leaving dart d continues with rot_next[d ^ 1],
so the corner between rotation-consecutive darts (p, q) at a vertex belongs
to the face of dart p ^ 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, InternalInvariantError, PreconditionError
from .order import OrderList

SMALL_THRESHOLD = 11


class PoleBudgetExceeded(Exception):
    """query_vertex_vertex was asked about a vertex with too many pole faces."""


@dataclass
class AuxGraph:
    """One node per pole vertex touched by pending edges; one edge per face
    whose source and sink both qualify."""

    vertices: list[int] = field(default_factory=list)
    edges: list[tuple[int, int, int]] = field(default_factory=list)  # (u, v, face)

    def degree(self, v: int) -> int:
        return sum(1 for a, b, _ in self.edges if v in (a, b))


class PlaneStGraph:
    def __init__(self) -> None:
        self.g = Graph()
        self.rot_next: dict[int, int] = {}
        self.rot_prev: dict[int, int] = {}
        self.first_dart: dict[int, int] = {}
        self.dart_face: dict[int, int] = {}
        self.face_source: dict[int, int] = {}
        self.face_sink: dict[int, int] = {}
        self.face_size: dict[int, int] = {}
        self.face_anchor: dict[int, int] = {}       # one dart on the face
        self.face_source_corner: dict[int, int] = {}  # first dart of the pole corner
        self.face_sink_corner: dict[int, int] = {}
        self.side_faces: dict[int, list[int]] = {}
        self.side_corners: dict[int, list[int]] = {}  # first darts, aligned with side_faces
        self.pole_faces: dict[int, set[int]] = {}
        self.order = OrderList()
        self.source = -1
        self.sink = -1
        self._next_face = 0

    # -- dart helpers -------------------------------------------------------

    def tail(self, e: int) -> int:
        return self.g.endpoints(e)[0]

    def head(self, e: int) -> int:
        return self.g.endpoints(e)[1]

    def dart_vertex(self, d: int) -> int:
        return self.g.endpoints(d // 2)[d & 1]

    def face_next(self, d: int) -> int:
        return self.rot_next[d ^ 1]

    def edge_faces(self, e: int) -> tuple[int, int]:
        return self.dart_face[2 * e], self.dart_face[2 * e + 1]

    def faces(self) -> list[int]:
        return list(self.face_source)

    def pole_count(self, v: int) -> int:
        return len(self.pole_faces[v])

    def face_contains(self, f: int, v: int) -> bool:
        return (
            self.face_source[f] == v
            or self.face_sink[f] == v
            or f in self.side_faces.get(v, ())
        )

    # -- rotation surgery ---------------------------------------------------

    def _rot_insert_after(self, p: int, d: int) -> None:
        q = self.rot_next[p]
        self.rot_next[p] = d
        self.rot_prev[d] = p
        self.rot_next[d] = q
        self.rot_prev[q] = d

    def _rot_replace(self, old: int, new: int, v: int) -> None:
        p, q = self.rot_prev[old], self.rot_next[old]
        if p == old:  # single-dart circle
            self.rot_next[new] = self.rot_prev[new] = new
        else:
            self.rot_next[p] = new
            self.rot_prev[new] = p
            self.rot_next[new] = q
            self.rot_prev[q] = new
        del self.rot_next[old], self.rot_prev[old]
        if self.first_dart[v] == old:
            self.first_dart[v] = new

    def rotation(self, v: int) -> list[int]:
        """Darts at v in stored cyclic order."""
        d0 = self.first_dart[v]
        out = [d0]
        d = self.rot_next[d0]
        while d != d0:
            out.append(d)
            d = self.rot_next[d]
        return out

    def neighbors_in_order(self, v: int) -> list[int]:
        return [self.dart_vertex(d ^ 1) for d in self.rotation(v)]

    # -- initialization -----------------------------------------------------

    @classmethod
    def init_k4(cls) -> "PlaneStGraph":
        """K4 on vertices 0..3, edges low->high, order 0<1<2<3; the source 0
        and sink 3 share face {0,1,3} at initialization."""
        h = cls()
        for _ in range(4):
            h.g.add_vertex()
        pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        for u, v in pairs:
            h.g.add_edge(u, v)
        neighbor_order = {0: [1, 2, 3], 1: [0, 3, 2], 2: [0, 1, 3], 3: [0, 2, 1]}
        pair_index = {p: e for e, p in enumerate(pairs)}
        for v, nbrs in neighbor_order.items():
            darts = []
            for w in nbrs:
                e = pair_index[(min(v, w), max(v, w))]
                darts.append(2 * e if v == h.tail(e) else 2 * e + 1)
            for i, d in enumerate(darts):
                h.rot_next[d] = darts[(i + 1) % 3]
                h.rot_prev[darts[(i + 1) % 3]] = d
            h.first_dart[v] = darts[0]
        for v in range(4):
            h.order.append(v)
            h.side_faces[v] = []
            h.side_corners[v] = []
            h.pole_faces[v] = set()
        h.source, h.sink = 0, 3
        # derive all face records from one full trace
        seen: set[int] = set()
        for d0 in range(12):
            if d0 in seen:
                continue
            cyc = []
            d = d0
            while d not in seen:
                seen.add(d)
                cyc.append(d)
                d = h.face_next(d)
            h._install_face(h._new_face_id(), cyc)
        return h

    def _new_face_id(self) -> int:
        f = self._next_face
        self._next_face += 1
        return f

    def _corners(self, cyc: list[int]):
        """Corners (arriving dart, leaving dart, vertex) along a face cycle."""
        k = len(cyc)
        for i, d in enumerate(cyc):
            x = d ^ 1
            q = cyc[(i + 1) % k]
            yield x, q, self.dart_vertex(x)

    def _install_face(self, f: int, cyc: list[int], skip: set[int] = frozenset()) -> None:
        """Record face f with boundary cycle cyc, updating per-vertex data.

        Vertices in `skip` get their dart_face set but no pole/side updates
        (the caller handles them)."""
        src = snk = -1
        for d in cyc:
            self.dart_face[d] = f
        for x, q, v in self._corners(cyc):
            t = (x & 1, q & 1)
            if t == (0, 0):
                src = v
                self.face_source_corner[f] = x
            elif t == (1, 1):
                snk = v
                self.face_sink_corner[f] = x
            if v in skip:
                continue
            if t == (0, 0) or t == (1, 1):
                self.pole_faces[v].add(f)
            else:
                self.side_faces[v].append(f)
                self.side_corners[v].append(x)
        if src == -1 or snk == -1:
            raise InternalInvariantError("face without source or sink")
        self.face_source[f] = src
        self.face_sink[f] = snk
        self.face_size[f] = len(cyc)
        self.face_anchor[f] = cyc[0]

    # -- queries ------------------------------------------------------------

    def query_vertex_edge(self, a: int, e: int) -> int | None:
        """A face containing vertex a and edge e, or None.  O(1)."""
        for d in (2 * e, 2 * e + 1):
            f = self.dart_face[d]
            if self.face_contains(f, a):
                return f
        return None

    def query_vertex_vertex(self, a: int, b: int) -> int | None:
        """A face containing a and b, or None; needs pole_count(a) <= 11."""
        if self.pole_count(a) > SMALL_THRESHOLD:
            raise PoleBudgetExceeded(f"vertex {a} is a pole of {self.pole_count(a)} faces")
        for f in sorted(self.pole_faces[a]) + self.side_faces[a]:
            if self.face_contains(f, b):
                return f
        return None

    def query_vertex_vertex_slow(self, a: int, b: int) -> int | None:
        """Same contract without the pole budget; costs the smaller pole set."""
        if self.pole_count(b) < self.pole_count(a):
            a, b = b, a
        for f in sorted(self.pole_faces[a]) + self.side_faces[a]:
            if self.face_contains(f, b):
                return f
        return None

    def query_three_vertices(self, a: int, b: int, c: int) -> int | None:
        """A face containing all three, or None.  O(1): any such face has one
        of them as a non-pole, so checking their side faces is complete."""
        for v in (a, b, c):
            for f in self.side_faces[v]:
                if all(self.face_contains(f, w) for w in (a, b, c)):
                    return f
        return None

    def query_edge_edge(self, e: int, f_edge: int) -> int | None:
        """A common face of two edges, or None.  O(1)."""
        other = set(self.edge_faces(f_edge))
        for cand in self.edge_faces(e):
            if cand in other:
                return cand
        return None

    # -- modifications ------------------------------------------------------

    def subdivide_edge(self, e: int) -> tuple[int, int, int]:
        """Split directed edge u->v into u->x->v; returns (x, u->x, x->v).

        x slots into the order right after u; its side faces are e's faces.
        """
        u, v = self.g.endpoints(e)
        fl, fr = self.dart_face[2 * e], self.dart_face[2 * e + 1]
        self.g.remove_edge(e)
        x = self.g.add_vertex()
        e1 = self.g.add_edge(u, x)
        e2 = self.g.add_edge(x, v)
        self._rot_replace(2 * e, 2 * e1, u)
        self._rot_replace(2 * e + 1, 2 * e2 + 1, v)
        d_mid_in, d_mid_out = 2 * e1 + 1, 2 * e2
        self.rot_next[d_mid_in] = d_mid_out
        self.rot_next[d_mid_out] = d_mid_in
        self.rot_prev[d_mid_in] = d_mid_out
        self.rot_prev[d_mid_out] = d_mid_in
        self.first_dart[x] = d_mid_in
        del self.dart_face[2 * e], self.dart_face[2 * e + 1]
        self.dart_face[2 * e1] = self.dart_face[2 * e2] = fl
        self.dart_face[2 * e1 + 1] = self.dart_face[2 * e2 + 1] = fr
        self.face_size[fl] += 1
        self.face_size[fr] += 1
        for f, repl in ((fl, 2 * e1), (fr, 2 * e2 + 1)):
            if self.face_anchor[f] // 2 == e:
                self.face_anchor[f] = repl
        for f in (fl, fr):
            for store in (self.face_source_corner, self.face_sink_corner):
                if store[f] // 2 == e:
                    store[f] = self._fix_corner_dart(store[f], e1, e2)
        for w in (u, v):
            sc = self.side_corners[w]
            for i, d in enumerate(sc):
                if d // 2 == e:
                    sc[i] = self._fix_corner_dart(d, e1, e2)
        self.side_faces[x] = [fl, fr]
        self.side_corners[x] = [d_mid_in, d_mid_out]
        self.pole_faces[x] = set()
        self.order.insert_after(u, x)
        return x, e1, e2

    def _fix_corner_dart(self, d: int, e1: int, e2: int) -> int:
        # dart of the removed edge -> the corresponding dart of its halves
        return 2 * e1 if d & 1 == 0 else 2 * e2 + 1

    def insert_edge(self, a: int, b: int, f: int) -> int:
        """Add chord ab inside face f; directed from the order-smaller endpoint.

        Splits f; the smaller side is traced, relabeled and given a new face
        id, so the cost is proportional to the smaller side's boundary.
        """
        if a == b:
            raise PreconditionError("chord endpoints coincide")
        p_a = self._corner_at(f, a)
        p_b = self._corner_at(f, b)
        tail, head = (a, b) if self.order.less(a, b) else (b, a)
        e_new = self.g.add_edge(tail, head)
        d_tail, d_head = 2 * e_new, 2 * e_new + 1
        d_a = d_tail if a == tail else d_head
        d_b = d_head if a == tail else d_tail
        self._rot_insert_after(p_a, d_a)
        self._rot_insert_after(p_b, d_b)

        cyc = self._lockstep_trace(d_a, d_b)
        s_f, t_f = self.face_source[f], self.face_sink[f]
        new_f = self._new_face_id()
        # the chord's two darts lie on opposite sides; S holds exactly one
        if cyc[0] == d_a:
            kept_dart = d_b
            corner_s = {a: p_a, b: d_b}          # first darts of S's corners
            corner_kept = {a: d_a, b: p_b}       # first darts of f's corners
        else:
            kept_dart = d_a
            corner_s = {b: p_b, a: d_a}
            corner_kept = {b: d_b, a: p_a}
        # scrub the small side's old per-vertex references to f, then install
        for x, q, v in self._corners(cyc):
            if v in (a, b):
                continue  # endpoints handled below
            if (x & 1) == (q & 1):
                self.pole_faces[v].discard(f)
            else:
                i = self.side_faces[v].index(f)
                del self.side_faces[v][i]
                del self.side_corners[v][i]
        for v, p in ((a, p_a), (b, p_b)):
            if f in self.pole_faces[v]:
                self.pole_faces[v].discard(f)
            else:
                i = self.side_faces[v].index(f)
                del self.side_faces[v][i]
                del self.side_corners[v][i]
        self._install_face(new_f, cyc, skip={a, b})
        self.dart_face[kept_dart] = f
        # f keeps the larger side: fix its size, poles and corner pointers
        self.face_size[f] = self.face_size[f] - (len(cyc) - 1) + 1
        self.face_anchor[f] = kept_dart
        src_s, snk_s = self.face_source[new_f], self.face_sink[new_f]
        if src_s == tail and snk_s == head:
            new_poles = (s_f, t_f)
        elif src_s == s_f and snk_s == t_f:
            new_poles = (tail, head)
        elif src_s == s_f and snk_s == head:
            new_poles = (tail, t_f)
        elif src_s == tail and snk_s == t_f:
            new_poles = (s_f, head)
        else:
            raise InternalInvariantError("face split produced unexpected poles")
        self.face_source[f], self.face_sink[f] = new_poles
        for v in (a, b):
            self._record_corner(v, new_f, corner_s[v])
            self._record_corner(v, f, corner_kept[v])
        for pole, store in ((new_poles[0], self.face_source_corner),
                            (new_poles[1], self.face_sink_corner)):
            if pole in (a, b):
                store[f] = corner_kept[pole]
        return e_new

    def _record_corner(self, v: int, f: int, x: int) -> None:
        """Classify the corner with first dart x at v and file it under f."""
        q = self.rot_next[x]
        if (x & 1) == (q & 1):
            self.pole_faces[v].add(f)
            if (x & 1) == 0:
                self.face_source_corner[f] = x
            else:
                self.face_sink_corner[f] = x
        else:
            self.side_faces[v].append(f)
            self.side_corners[v].append(x)

    def _corner_at(self, f: int, v: int) -> int:
        """First dart of face f's corner at v."""
        if self.face_source.get(f) == v:
            return self.face_source_corner[f]
        if self.face_sink.get(f) == v:
            return self.face_sink_corner[f]
        try:
            i = self.side_faces[v].index(f)
        except (ValueError, KeyError):
            raise PreconditionError(f"vertex {v} does not lie on face {f}") from None
        return self.side_corners[v][i]

    def _lockstep_trace(self, d1: int, d2: int) -> list[int]:
        """Trace the face cycles through d1 and d2 in lockstep; return the
        one that closes first (the smaller side)."""
        c1, c2 = [d1], [d2]
        n1, n2 = self.face_next(d1), self.face_next(d2)
        while True:
            if n1 == d1:
                return c1
            c1.append(n1)
            n1 = self.face_next(n1)
            if n2 == d2:
                return c2
            c2.append(n2)
            n2 = self.face_next(n2)

    # -- derived outputs ----------------------------------------------------

    def face_cycle(self, f: int) -> list[int]:
        d0 = self.face_anchor[f]
        cyc = [d0]
        d = self.face_next(d0)
        while d != d0:
            cyc.append(d)
            d = self.face_next(d)
        return cyc

    def face_vertices(self, f: int) -> list[int]:
        return [self.dart_vertex(d) for d in self.face_cycle(f)]

    def face_boundary(self, f: int) -> tuple[list[int], list[int]]:
        """The two source->sink vertex paths whose concatenation bounds f."""
        cyc = self.face_cycle(f)
        verts = [self.dart_vertex(d) for d in cyc]
        src, snk = self.face_source[f], self.face_sink[f]
        i = verts.index(src)
        verts = verts[i:] + verts[:i]
        j = verts.index(snk)
        forward = verts[: j + 1]
        backward = [src] + verts[:j:-1] + [snk]
        return forward, backward

    def rotation_system(self) -> dict[int, list[int]]:
        """Per-vertex cyclic neighbor order (the embedding certificate)."""
        return {v: self.neighbors_in_order(v) for v in self.g.vertices()}

    def aux_graph_build(self, eprime: list[tuple[int, int]]) -> AuxGraph:
        """Auxiliary pole graph for the pending-edge endpoints eprime."""
        touched = set()
        for u, v in eprime:
            touched.add(u)
            touched.add(v)
        nodes = sorted(v for v in touched if self.pole_faces[v])
        nodeset = set(nodes)
        aux = AuxGraph(vertices=nodes)
        for f in sorted(self.face_source):
            s, t = self.face_source[f], self.face_sink[f]
            if s in nodeset and t in nodeset:
                aux.edges.append((s, t, f))
        return aux

    def small_candidates(self, eprime: list[tuple[int, int]]) -> list[int]:
        """Pending-edge endpoints that are poles of at most 11 faces."""
        touched = set()
        for u, v in eprime:
            touched.add(u)
            touched.add(v)
        return sorted(v for v in touched if self.pole_count(v) <= SMALL_THRESHOLD)

    # -- audit --------------------------------------------------------------

    def audit(self) -> None:
        """Full structural check by independent face tracing; raises on the
        first violated clause."""
        g = self.g
        n, m = g.n, g.m
        # rotation circles cover each vertex's darts exactly once, bimodally
        all_darts = set()
        for v in g.vertices():
            darts = self.rotation(v)
            if sorted(darts) != sorted(self._expected_darts(v)):
                raise InternalInvariantError(f"rotation at {v} does not match incidence")
            all_darts.update(darts)
            flips = 0
            for i, d in enumerate(darts):
                if (d & 1) != (darts[(i + 1) % len(darts)] & 1):
                    flips += 1
            outs = sum(1 for d in darts if d & 1 == 0)
            if outs == len(darts) or outs == 0:
                if flips != 0:
                    raise InternalInvariantError(f"vertex {v}: flip count {flips}")
            elif flips != 2:
                raise InternalInvariantError(f"vertex {v} not bimodal ({flips} flips)")
        if len(all_darts) != 2 * m:
            raise InternalInvariantError("dart count mismatch")
        # acyclicity via the total order; single source and sink
        # (a source carries only tail darts, even ids; a sink only head darts)
        sources = [v for v in g.vertices() if all(d & 1 == 0 for d in self.rotation(v))]
        sinks = [v for v in g.vertices() if all(d & 1 for d in self.rotation(v))]
        for e, (u, v) in g.edge_items():
            if not self.order.less(u, v):
                raise InternalInvariantError(f"edge {e} violates the vertex order")
        if sources != [self.source] or sinks != [self.sink]:
            raise InternalInvariantError(f"sources {sources} sinks {sinks} wrong")
        self.order.check()
        # trace every face; compare against stored records
        seen: set[int] = set()
        traced = 0
        for d0 in sorted(all_darts):
            if d0 in seen:
                continue
            cyc = [d0]
            seen.add(d0)
            d = self.face_next(d0)
            while d != d0:
                seen.add(d)
                cyc.append(d)
                d = self.face_next(d)
            traced += 1
            fids = {self.dart_face[d] for d in cyc}
            if len(fids) != 1:
                raise InternalInvariantError(f"face through dart {d0} has mixed ids {fids}")
            f = fids.pop()
            if self.face_size[f] != len(cyc):
                raise InternalInvariantError(f"face {f} size mismatch")
            flips = []
            for x, q, v in self._corners(cyc):
                t = (x & 1, q & 1)
                if t == (0, 0):
                    if self.face_source[f] != v:
                        raise InternalInvariantError(f"face {f} source mismatch")
                    flips.append(v)
                elif t == (1, 1):
                    if self.face_sink[f] != v:
                        raise InternalInvariantError(f"face {f} sink mismatch")
                    flips.append(v)
                else:
                    if f not in self.side_faces[v]:
                        raise InternalInvariantError(f"face {f} missing from sides of {v}")
            if len(flips) != 2:
                raise InternalInvariantError(f"face {f} has {len(flips)} poles")
            if self.dart_face[self.face_anchor[f]] != f:
                raise InternalInvariantError(f"face {f} anchor is stale")
        if traced != m - n + 2:
            raise InternalInvariantError(f"Euler violation: {traced} != {m - n + 2}")
        # per-vertex data against the trace
        for v in g.vertices():
            expect_sides = 0 if v in (self.source, self.sink) else 2
            if len(self.side_faces[v]) != expect_sides:
                raise InternalInvariantError(f"vertex {v} has {len(self.side_faces[v])} sides")
            for f, x in zip(self.side_faces[v], self.side_corners[v]):
                if self.dart_face[x ^ 1] != f or self.dart_vertex(x) != v:
                    raise InternalInvariantError(f"side corner of {v} on {f} is stale")
            expect_poles = g.degree(v) if v in (self.source, self.sink) else g.degree(v) - 2
            if len(self.pole_faces[v]) != expect_poles:
                raise InternalInvariantError(f"pole count wrong at {v}")
            for f in self.pole_faces[v]:
                if v not in (self.face_source[f], self.face_sink[f]):
                    raise InternalInvariantError(f"{v} recorded as pole of {f} wrongly")
        for f in self.faces():
            for store, pole in (
                (self.face_source_corner, self.face_source[f]),
                (self.face_sink_corner, self.face_sink[f]),
            ):
                x = store[f]
                if self.dart_face[x ^ 1] != f or self.dart_vertex(x) != pole:
                    raise InternalInvariantError(f"pole corner of face {f} is stale")
        self.g.check_consistency()

    def _expected_darts(self, v: int) -> list[int]:
        out = []
        for e in self.g.incident_edges(v):
            u, w = self.g.endpoints(e)
            if u == v:
                out.append(2 * e)
            if w == v:
                out.append(2 * e + 1)
        return out

    def dump(self) -> str:
        """Debug dump: faces with poles, per-vertex sides, vertex order."""
        lines = []
        for f in sorted(self.face_source):
            lines.append(
                f"face {f}: src {self.face_source[f]} snk {self.face_sink[f]} "
                f"verts {self.face_vertices(f)}"
            )
        for v in sorted(self.g.vertices()):
            lines.append(
                f"vertex {v}: sides {sorted(self.side_faces[v])} "
                f"poles {sorted(self.pole_faces[v])}"
            )
        lines.append("order " + " ".join(map(str, self.order.iter_keys())))
        return "\n".join(lines)
