"""Internally disjoint paths via unit-vertex-capacity augmentation.

Every vertex except sources/sinks is split into an in-node and an out-node
joined by a capacity-1 arc; undirected edges become a pair of arcs.  Up to
``limit`` augmenting BFS passes are run, so each call costs O(limit*(n+m)).
"""

from __future__ import annotations

from collections import deque

from .graph import Graph


class _Net:
    """Residual network over split vertices; nodes are small ints."""

    def __init__(self, vertices: list[int]) -> None:
        self.index = {v: i for i, v in enumerate(vertices)}
        self.vertices = vertices
        n = len(vertices)
        # node 2i = v_in, 2i+1 = v_out, plus source S and sink T appended
        self.S = 2 * n
        self.T = 2 * n + 1
        self.arcs: list[list[int]] = [[] for _ in range(2 * n + 2)]  # arc ids per node
        self.arc_to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, a: int, b: int, c: int) -> None:
        self.arcs[a].append(len(self.arc_to))
        self.arc_to.append(b)
        self.cap.append(c)
        self.arcs[b].append(len(self.arc_to))
        self.arc_to.append(a)
        self.cap.append(0)

    def split(self, v: int) -> None:
        i = self.index[v]
        self.add_arc(2 * i, 2 * i + 1, 1)

    def augment_once(self) -> bool:
        """One BFS augmentation from S to T; True if a path was pushed."""
        parent_arc = [-1] * len(self.arcs)
        parent_arc[self.S] = -2
        q = deque([self.S])
        while q:
            a = q.popleft()
            if a == self.T:
                break
            for arc in self.arcs[a]:
                if self.cap[arc] > 0:
                    b = self.arc_to[arc]
                    if parent_arc[b] == -1:
                        parent_arc[b] = arc
                        q.append(b)
        if parent_arc[self.T] == -1:
            return False
        node = self.T
        while node != self.S:
            arc = parent_arc[node]
            self.cap[arc] -= 1
            self.cap[arc ^ 1] += 1
            node = self.arc_to[arc ^ 1]
        return True


def _build(g: Graph, allowed: set[int], source: int, sinks: list[int], sink_cap: int) -> _Net:
    verts = sorted(v for v in allowed if v != source)
    net = _Net(verts)
    sinkset = set(sinks)
    for v in verts:
        if v not in sinkset:
            net.split(v)
    for e, (u, v) in g.edge_items():
        if u == v:
            continue
        for a, b in ((u, v), (v, u)):
            if a == source and b in net.index:
                net.add_arc(net.S, 2 * net.index[b], 1)
            elif a in net.index and b in net.index and a not in sinkset:
                net.add_arc(2 * net.index[a] + 1, 2 * net.index[b], 1)
    for t in sinks:
        if t in net.index:
            i = net.index[t]
            net.add_arc(2 * i + 1, net.T, sink_cap)
            net.add_arc(2 * i, 2 * i + 1, sink_cap)
    return net


def disjoint_path_count(g: Graph, s: int, t: int, limit: int) -> int:
    """Number of internally disjoint s-t paths, capped at limit.

    Assumes simple g; paths of length one are not counted twice.
    """
    allowed = set(g.vertices())
    net = _build(g, allowed, s, [t], limit)
    flow = 0
    while flow < limit and net.augment_once():
        flow += 1
    return flow


def disjoint_paths_to_targets(
    g: Graph,
    start: int,
    targets: list[int],
    allowed: set[int],
    blocked: set[int] = frozenset(),
) -> list[list[int]] | None:
    """One internally disjoint path from start to each target, or None.

    Paths live inside ``allowed`` minus ``blocked``; interiors avoid targets.
    Returns vertex sequences, aligned with ``targets``.
    """
    usable = {v for v in allowed if v not in blocked}
    usable.add(start)
    usable.update(targets)
    net = _build(g, usable, start, targets, 1)
    got = 0
    while got < len(targets) and net.augment_once():
        got += 1
    if got < len(targets):
        return None
    # walk saturated arcs from S; each step follows the unique unit of flow
    succ: dict[int, int] = {}
    starts: list[int] = []
    out_flow: dict[int, list[int]] = {}
    for node in range(len(net.arcs)):
        for arc in net.arcs[node]:
            if arc % 2 == 0 and net.cap[arc ^ 1] > 0:  # forward arc carrying flow
                out_flow.setdefault(node, []).append(arc)
    paths: list[list[int]] = []
    for arc0 in out_flow.get(net.S, []):
        path = [start]
        node = net.arc_to[arc0]
        while node != net.T:
            v = net.vertices[node // 2]
            if node % 2 == 0:  # in-node: record vertex, hop to out-node
                path.append(v)
            arcs = out_flow.get(node)
            if not arcs:
                break
            arc = arcs.pop()
            node = net.arc_to[arc]
        paths.append(path)
    # align with requested target order
    by_end = {p[-1]: p for p in paths}
    if set(by_end) != set(targets):
        return None
    return [by_end[t] for t in targets]
