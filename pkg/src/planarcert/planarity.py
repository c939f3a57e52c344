"""The planarity pipeline: decompose, test each simple triconnected component
by incrementally embedding its construction sequence, and merge embeddings,
or extract a Kuratowski subdivision on the first non-co-facial operation.

The incremental state is a plane st-graph that stays simple and triconnected
after every operation, so the embedding is unique up to flipping and one
co-faciality query decides whether the next operation preserves planarity.
Trailing edge-addition ops of a canonical sequence are batched: they are
sorted by endpoints, and each is tested through an endpoint that is a pole
of few faces, falling back to the slow query when none qualifies.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import certify, cseq, decomposition, kuratowski
from .decomposition import BOND, POLYGON, TRICONNECTED
from .graph import Graph, InternalInvariantError, PreconditionError, dedupe_multiedges
from .kuratowski import KuratowskiSubdivision
from .stgraph import SMALL_THRESHOLD, PlaneStGraph


@dataclass
class Certificate:
    planar: bool
    embedding: dict[int, list[int]] | None = None
    witness: KuratowskiSubdivision | None = None


# ---------------------------------------------------------------------------
# incremental embedding driver for one component
# ---------------------------------------------------------------------------


class EmbeddingDriver:
    """Feeds a construction sequence into a plane st-graph, maintaining
    label-to-entity maps both ways."""

    def __init__(self, seq: cseq.ConstructionSequence) -> None:
        self.seq = seq
        self.h = PlaneStGraph.init_k4()
        # base K4 labels and st-graph ids coincide by construction
        self.v_of_label = {i: i for i in range(4)}
        self.label_of_v = {i: i for i in range(4)}
        self.e_of_label = {i: i for i in range(6)}

    def vertex(self, label: int) -> int:
        return self.v_of_label[label]

    def edge(self, label: int) -> int:
        return self.e_of_label[label]

    def check_attachments(self, op) -> int | None:
        """The face all attachments share, or None; dispatches queries (1)-(3)."""
        h = self.h
        if op.kind == "a":
            return h.query_vertex_vertex_slow(self.vertex(op.x), self.vertex(op.y))
        if op.kind == "b":
            return h.query_vertex_edge(self.vertex(op.y), self.edge(op.edge))
        if op.kind == "c":
            return h.query_edge_edge(self.edge(op.edge1), self.edge(op.edge2))
        return h.query_three_vertices(
            self.vertex(op.a), self.vertex(op.b), self.vertex(op.c)
        )

    def _bind_subdivision(self, op_edge: int, fresh: int, x_label: int,
                          x: int, e_tail: int, e_head: int) -> None:
        tail, head = self.h.g.endpoints(e_tail)[0], self.h.g.endpoints(e_head)[1]
        self.v_of_label[x_label] = x
        self.label_of_v[x] = x_label
        if self.label_of_v[tail] < self.label_of_v[head]:
            self.e_of_label[op_edge], self.e_of_label[fresh] = e_tail, e_head
        else:
            self.e_of_label[op_edge], self.e_of_label[fresh] = e_head, e_tail

    def apply_op(self, op, f: int) -> None:
        """Realize op inside face f as subdivisions plus chord insertions."""
        h = self.h
        if op.kind == "a":
            self.e_of_label[op.new_edge] = h.insert_edge(
                self.vertex(op.x), self.vertex(op.y), f
            )
        elif op.kind == "b":
            x, e1, e2 = h.subdivide_edge(self.edge(op.edge))
            self._bind_subdivision(op.edge, op.fresh_half, op.new_vertex, x, e1, e2)
            self.e_of_label[op.new_edge] = h.insert_edge(x, self.vertex(op.y), f)
        elif op.kind == "c":
            x, e1, e2 = h.subdivide_edge(self.edge(op.edge1))
            self._bind_subdivision(op.edge1, op.fresh1, op.v1, x, e1, e2)
            y, e3, e4 = h.subdivide_edge(self.edge(op.edge2))
            self._bind_subdivision(op.edge2, op.fresh2, op.v2, y, e3, e4)
            self.e_of_label[op.new_edge] = h.insert_edge(x, y, f)
        else:
            a, b, c = self.vertex(op.a), self.vertex(op.b), self.vertex(op.c)
            # claw = insert ab (transient parallel allowed), subdivide, add xc
            e_ab = h.insert_edge(a, b, f)
            f_c = h.query_vertex_edge(c, e_ab)
            if f_c is None:
                raise InternalInvariantError("claw conversion lost its face")
            x, e1, e2 = h.subdivide_edge(e_ab)
            self.v_of_label[op.center] = x
            self.label_of_v[x] = op.center
            tail = h.g.endpoints(e1)[0]
            if tail == a:
                self.e_of_label[op.edge_a], self.e_of_label[op.edge_b] = e1, e2
            else:
                self.e_of_label[op.edge_a], self.e_of_label[op.edge_b] = e2, e1
            self.e_of_label[op.edge_c] = h.insert_edge(x, c, f_c)

    def rotation_by_labels(self) -> dict[int, list[int]]:
        return {
            self.label_of_v[v]: [self.label_of_v[w] for w in self.h.neighbors_in_order(v)]
            for v in self.h.g.vertices()
        }


# ---------------------------------------------------------------------------
# nonplanarity: extraction, expansion through the genealogy
# ---------------------------------------------------------------------------


def _mid_label(drv: EmbeddingDriver, op, edge_id: int, reduced: str | None) -> int:
    """Label of the subdivision vertex the given attachment edge acquires."""
    if reduced == "claw":
        return op.center
    if op.kind == "b":
        return op.new_vertex
    return op.v1 if edge_id == drv.edge(op.edge1) else op.v2


def _candidate_pairs(drv: EmbeddingDriver, op):
    """Attachment-pair ladder for extraction, most direct shapes first.

    Besides the operation's own attachments, an edge attachment may be
    entered at one of its endpoints with the witness's connecting path
    tunneling through the midpoint; those pairs cover Kuratowski subdivisions
    in which a midpoint is interior to a branch path rather than a branch
    vertex.  Returns (pairs, reduced) where reduced marks the claw recipe.
    """
    h = drv.h
    if op.kind == "a":
        return [(("vertex", drv.vertex(op.x)), ("vertex", drv.vertex(op.y)))], None
    if op.kind == "b":
        base = (("edge", drv.edge(op.edge)), ("vertex", drv.vertex(op.y)))
    elif op.kind == "c":
        base = (("edge", drv.edge(op.edge1)), ("edge", drv.edge(op.edge2)))
    else:
        pairs = []
        for la, lb in ((op.a, op.b), (op.a, op.c), (op.b, op.c)):
            pairs.append((("vertex", drv.vertex(la)), ("vertex", drv.vertex(lb))))
        if any(not _co_facial(h, pa, pb) for pa, pb in pairs):
            return [p for p in pairs if not _co_facial(h, *p)], None
        att1, att2, _e = kuratowski.claw_reduction(
            h, drv.vertex(op.a), drv.vertex(op.b), drv.vertex(op.c)
        )
        return [pf for pf in _expand_forms(h, att1, att2)], "claw"
    return _expand_forms(h, *base), None


def _expand_forms(h, att1, att2):
    def forms(att):
        if att[0] == "vertex":
            return [att]
        e = att[1]
        p, q = h.g.endpoints(e)
        return [att, ("tunnel", p, e), ("tunnel", q, e)]

    out = []
    for fa in forms(att1):
        for fb in forms(att2):
            if not _co_facial(h, fa, fb):
                out.append((fa, fb))
    return out


def _co_facial(h, att1, att2) -> bool:
    """Whether the two (possibly tunneled) attachments share a face of h."""
    def key(att):
        return ("vertex", att[1]) if att[0] == "tunnel" else att

    a, b = key(att1), key(att2)
    if a[0] == "vertex" and b[0] == "vertex":
        return h.query_vertex_vertex_slow(a[1], b[1]) is not None
    if a[0] == "vertex":
        return h.query_vertex_edge(a[1], b[1]) is not None
    if b[0] == "vertex":
        return h.query_vertex_edge(b[1], a[1]) is not None
    return h.query_edge_edge(a[1], b[1]) is not None


_ROLE_RANK = {"edge": 0, "tunnel": 1, "vertex": 2}


def _nonplanar_witness(drv: EmbeddingDriver, op, op_index: int, g: Graph) -> KuratowskiSubdivision:
    h = drv.h
    pairs, reduced = _candidate_pairs(drv, op)
    attempts = []
    for att1, att2 in pairs:
        roles = [(att1, att2), (att2, att1)]
        roles.sort(key=lambda r: _ROLE_RANK[r[0][0]])
        attempts.extend(roles)
    raw = ra = rb = None
    for ra, rb in attempts:
        raw = kuratowski.extract_on_state(h, ra, rb)
        if raw is not None:
            break
    if raw is None:
        raise InternalInvariantError("no routable Kuratowski quadruple found")

    # name every scratch-graph vertex: midpoints of subdivided attachment
    # edges carry the op's created labels
    label_of = dict(drv.label_of_v)
    mids = raw.midpoints  # type: ignore[attr-defined]
    for tag, w in mids.items():
        att = ra if tag == "a" else rb
        label_of[w] = _mid_label(drv, op, att[1], reduced)

    branch = [label_of[v] for v in raw.branch_vertices]

    def t_stub(att):
        """Label path from the branch entry toward the added edge."""
        if att[0] == "edge":
            return []  # branch sits at the midpoint itself
        if att[0] == "tunnel":
            return [_mid_label(drv, op, att[2], reduced)]
        if op.kind == "d" and reduced is None:
            return [op.center]
        return []

    b_branch = branch[3] if raw.kind == "K3,3" else branch[1]
    stub_a, stub_b = t_stub(ra), t_stub(rb)
    if op.kind == "d" and reduced is None:
        stub_b = []  # the center appears once, contributed by the a side
    t_path = [branch[0], *stub_a, *reversed(stub_b), b_branch]
    label_paths = []
    for p in raw.paths:
        if p == ["T"]:
            label_paths.append(t_path)
        else:
            label_paths.append([label_of[v] for v in p])

    return _expand_witness(drv, op, op_index, raw.kind, branch, label_paths, g)


def _created_pairs(op, seq: cseq.ConstructionSequence, op_index: int) -> dict[tuple[int, int], int]:
    """Edge labels of everything op adds to H', keyed by endpoint labels."""
    out: dict[tuple[int, int], int] = {}

    def put(u, v, lab):
        out[(min(u, v), max(u, v))] = lab

    for ev in seq.genealogy:
        if ev.time == op_index:
            put(ev.kept_end, ev.vertex, ev.parent)
            put(ev.vertex, ev.other_end, ev.fresh)
    if op.kind == "a":
        put(op.x, op.y, op.new_edge)
    elif op.kind == "b":
        put(op.new_vertex, op.y, op.new_edge)
    elif op.kind == "c":
        put(op.v1, op.v2, op.new_edge)
    else:
        put(op.center, op.a, op.edge_a)
        put(op.center, op.b, op.edge_b)
        put(op.center, op.c, op.edge_c)
    return out


def _expand_witness(drv: EmbeddingDriver, op, op_index: int, kind: str,
                    branch: list[int], paths: list[list[int]], g: Graph) -> KuratowskiSubdivision:
    """Expand every H'-edge of the witness into its final-graph path via the
    genealogy, then map labels to the component's vertex ids."""
    seq = drv.seq
    events = seq.events_by_parent()
    base_pairs: dict[tuple[int, int], int] = {}
    for lab, e in drv.e_of_label.items():
        u, v = drv.h.g.endpoints(e)
        lu, lv = drv.label_of_v[u], drv.label_of_v[v]
        base_pairs[(min(lu, lv), max(lu, lv))] = lab
    new_pairs = _created_pairs(op, seq, op_index)

    def expand_path(p: list[int]) -> list[int]:
        out = [p[0]]
        for u, v in zip(p, p[1:]):
            key = (min(u, v), max(u, v))
            if key in new_pairs:
                lab, t = new_pairs[key], op_index + 1
            else:
                lab, t = base_pairs[key], op_index
            piece = cseq.expand_label_between(seq, events, lab, t, (u, v))
            out.extend(piece[1:])
        return out

    to_input = seq.vertex_to_input
    final_paths = [[to_input[x] for x in expand_path(p)] for p in paths]
    final_branch = [to_input[x] for x in branch]
    witness = KuratowskiSubdivision(kind, final_branch, final_paths)
    report = certify.verify_kuratowski(g, witness.kind, witness.branch_vertices, witness.paths)
    if not report:
        raise InternalInvariantError(f"extracted witness failed verification: {report.reason}")
    return witness


# ---------------------------------------------------------------------------
# per-component test
# ---------------------------------------------------------------------------


def test_component(g: Graph, seq: cseq.ConstructionSequence | None = None) -> Certificate:
    """Certifying planarity test for a simple triconnected graph, n >= 4.

    A precomputed construction sequence for g may be passed in (the random
    generator records one); otherwise it is computed here.
    """
    if seq is None:
        seq = cseq.compute_sequence(g)
    drv = EmbeddingDriver(seq)
    ops = seq.ops
    phase2_start = seq.first_type_a_index() if seq.canonical else len(ops)
    for i in range(phase2_start):
        op = ops[i]
        f = drv.check_attachments(op)
        if f is None:
            return Certificate(False, witness=_nonplanar_witness(drv, op, i, g))
        drv.apply_op(op, f)

    if phase2_start < len(ops):
        h = drv.h
        pending = []
        for i in range(phase2_start, len(ops)):
            op = ops[i]
            u, v = drv.vertex(op.x), drv.vertex(op.y)
            pending.append(((min(u, v), max(u, v)), i))
        from .graph import bucket_sort_pairs

        order = {p: j for j, p in enumerate(
            bucket_sort_pairs([p for p, _ in pending], max(h.g.vertices()))
        )}
        pending.sort(key=lambda item: order[item[0]])
        small = {w for p, _ in pending for w in p if h.pole_count(w) <= SMALL_THRESHOLD}
        for (u, v), i in pending:
            op = ops[i]
            if u in small:
                f = h.query_vertex_vertex(u, v)
            elif v in small:
                f = h.query_vertex_vertex(v, u)
            else:
                f = h.query_vertex_vertex_slow(u, v)
            if f is None:
                return Certificate(False, witness=_nonplanar_witness(drv, op, i, g))
            drv.apply_op(op, f)
            for w in (u, v):
                if w in small and h.pole_count(w) > SMALL_THRESHOLD:
                    small.discard(w)

    rotation = {}
    to_input = seq.vertex_to_input
    for v in drv.h.g.vertices():
        lab = drv.label_of_v[v]
        rotation[to_input[lab]] = [
            to_input[drv.label_of_v[w]] for w in drv.h.neighbors_in_order(v)
        ]
    return Certificate(True, embedding=rotation)


# ---------------------------------------------------------------------------
# canonical embeddings for bonds and polygons, and the merge
# ---------------------------------------------------------------------------


def _edge_rotation_of(comp_graph: Graph, rotation: dict[int, list[int]]) -> dict[int, list[int]]:
    out = {}
    for v, nbrs in rotation.items():
        out[v] = [comp_graph.find_edge(v, w) for w in nbrs]
    return out


def _polygon_edge_rotation(g: Graph) -> dict[int, list[int]]:
    return {v: sorted(g.incident_edges(v)) for v in g.vertices()}


def _bond_edge_rotation(g: Graph) -> dict[int, list[int]]:
    x, y = sorted(g.vertices())
    edges = sorted(g.edges())
    return {x: edges, y: edges[::-1]}


def _splice(rot_a: dict[int, list[int]], rot_b: dict[int, list[int]],
            ea: int, eb: int, endpoints: tuple[int, int]) -> dict[int, list[int]]:
    """Substitute component B for the virtual edge ea of A (partner eb)."""
    merged = {}
    for v, lst in rot_a.items():
        merged[v] = list(lst)
    for v, lst in rot_b.items():
        if v not in endpoints:
            merged[v] = list(lst)
    for v in endpoints:
        ia = rot_a[v].index(ea)
        ib = rot_b[v].index(eb)
        around_b = rot_b[v][ib + 1:] + rot_b[v][:ib]
        merged[v] = rot_a[v][:ia] + around_b + rot_a[v][ia + 1:]
    return merged


def merge_embeddings(components, rotations: list[dict[int, list[int]]]) -> dict[int, list[int]]:
    """Splice the per-component edge rotations along partner virtual edges.

    Components must all be planar-embedded with the same handedness; the
    result is an edge rotation of the reassembled graph.
    """
    merged_rot: dict[int, dict[int, list[int]]] = {
        i: rotations[i] for i in range(len(components))
    }
    alias = list(range(len(components)))

    def find(i: int) -> int:
        while alias[i] != i:
            alias[i] = alias[alias[i]]
            i = alias[i]
        return i

    for i, comp in enumerate(components):
        for e, (j, f) in sorted(comp.virtual_links.items()):
            ri, rj = find(i), find(j)
            if ri == rj:
                continue
            u, v = comp.graph.endpoints(e)
            combined = _splice(merged_rot[ri], merged_rot[rj], e, f, (u, v))
            merged_rot[ri] = combined
            alias[rj] = ri
    roots = {find(i) for i in range(len(components))}
    if len(roots) > 1:
        raise InternalInvariantError("virtual matching does not connect the components")
    return merged_rot[roots.pop()]


# ---------------------------------------------------------------------------
# full pipeline
# ---------------------------------------------------------------------------


def _is_cycle_graph(g: Graph) -> bool:
    return g.n >= 3 and g.m == g.n and all(g.degree(v) == 2 for v in g.vertices())


def test_block(block: Graph) -> tuple[dict[int, list[int]] | None, KuratowskiSubdivision | None]:
    """Edge rotation of one biconnected block, or a Kuratowski witness."""
    if block.m <= 2 or _is_cycle_graph(block):
        rot = {v: sorted(block.incident_edges(v)) for v in block.vertices()}
        return rot, None
    comps = decomposition.triconnected_components(block)
    rotations = []
    for idx, tc in enumerate(comps):
        if tc.kind == BOND:
            rotations.append(_bond_edge_rotation(tc.graph))
        elif tc.kind == POLYGON:
            rotations.append(_polygon_edge_rotation(tc.graph))
        else:
            cert = test_component(tc.graph)
            if not cert.planar:
                lifted = kuratowski.lift_to_input(cert.witness, comps, idx, block)
                return None, lifted
            rotations.append(_edge_rotation_of(tc.graph, cert.embedding))
    return merge_embeddings(comps, rotations), None


def test_planarity(g: Graph) -> Certificate:
    """Certifying planarity test for any finite graph.

    Multi-edges and self-loops are collapsed first (they do not affect
    planarity); the certificate refers to the simple support graph, whose
    edges all exist in the input.
    """
    g0 = dedupe_multiedges(g)
    rotation: dict[int, list[int]] = {v: [] for v in g0.vertices()}
    blocks = decomposition.biconnected_components(g0)
    edge_rots: list[dict[int, list[int]]] = []
    for block in blocks:
        rot, witness = test_block(block)
        if witness is not None:
            report = certify.verify_kuratowski(g0, witness.kind, witness.branch_vertices, witness.paths)
            if not report:
                raise InternalInvariantError(f"lifted witness failed: {report.reason}")
            return Certificate(False, witness=witness)
        edge_rots.append(rot)
    # blocks interleave freely at cut vertices
    for block, rot in zip(blocks, edge_rots):
        for v, edges in rot.items():
            rotation[v].extend(edges)
    neighbor_rotation = {
        v: [g0.other_end(e, v) for e in edges] for v, edges in rotation.items()
    }
    report = certify.verify_embedding(g0, neighbor_rotation)
    if not report:
        raise InternalInvariantError(f"merged embedding failed verification: {report.reason}")
    return Certificate(True, embedding=neighbor_rotation)
