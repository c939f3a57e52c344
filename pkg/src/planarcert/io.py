"""File formats: edge-list graphs and certificate files (text, JSON, DOT).

Graph files: one ``u v`` pair per line, ``#`` comments, vertices implicitly
0..max id; an optional header line ``n <count>`` declares isolated vertices.
Certificate files start with ``planar`` or ``nonplanar K5`` / ``nonplanar
K3,3``; see the README for the full grammar.
"""

from __future__ import annotations

import json

from .graph import Graph
from .kuratowski import KuratowskiSubdivision
from .planarity import Certificate


class ParseError(Exception):
    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"parse error at line {line_no}: {message}")
        self.line_no = line_no


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format; duplicate pairs collapse to one edge."""
    declared_n = 0
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(line_no, "header must be 'n <count>'")
            declared_n = max(declared_n, int(parts[1]))
            continue
        if len(parts) != 2:
            raise ParseError(line_no, f"expected two endpoints, got {len(parts)} fields")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(line_no, f"non-integer endpoint in {line!r}") from None
        if u < 0 or v < 0:
            raise ParseError(line_no, "vertex ids must be non-negative")
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        pairs.append(key)
    return Graph.from_edges(pairs, n=declared_n)


def serialize_graph(g: Graph) -> str:
    lines = [f"n {max(g.vertices(), default=-1) + 1}"]
    for u, v in sorted(g.edge_pairs()):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def serialize_certificate(cert: Certificate, fmt: str = "text") -> str:
    if fmt == "json":
        return _certificate_json(cert)
    if fmt == "dot":
        return _certificate_dot(cert)
    if cert.planar:
        lines = ["planar"]
        for v in sorted(cert.embedding):
            lines.append(f"{v}: " + " ".join(map(str, cert.embedding[v])))
    else:
        w = cert.witness
        lines = [f"nonplanar {w.kind}", " ".join(map(str, w.branch_vertices))]
        for p in w.paths:
            lines.append(" ".join(map(str, p)))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    stripped = text.strip()
    if stripped.startswith("{"):
        return _certificate_from_json(stripped)
    lines = [ln for ln in stripped.splitlines()]
    if not lines:
        raise ParseError(1, "empty certificate")
    head = lines[0].split()
    if head[0] == "planar":
        rotation: dict[int, list[int]] = {}
        for line_no, ln in enumerate(lines[1:], start=2):
            if not ln.strip():
                continue
            if ":" not in ln:
                raise ParseError(line_no, "rotation line needs 'v: w1 w2 ...'")
            left, right = ln.split(":", 1)
            try:
                rotation[int(left)] = [int(tok) for tok in right.split()]
            except ValueError:
                raise ParseError(line_no, "non-integer vertex id") from None
        return Certificate(True, embedding=rotation)
    if head[0] != "nonplanar" or len(head) != 2 or head[1] not in ("K5", "K3,3"):
        raise ParseError(1, "first line must be 'planar' or 'nonplanar K5|K3,3'")
    if len(lines) < 2:
        raise ParseError(2, "missing branch vertex line")
    try:
        branch = [int(t) for t in lines[1].split()]
        paths = [[int(t) for t in ln.split()] for ln in lines[2:] if ln.strip()]
    except ValueError as exc:
        raise ParseError(2, f"non-integer id: {exc}") from None
    return Certificate(False, witness=KuratowskiSubdivision(head[1], branch, paths))


def _certificate_json(cert: Certificate) -> str:
    if cert.planar:
        doc = {
            "kind": "planar",
            "rotation": {str(v): nbrs for v, nbrs in sorted(cert.embedding.items())},
        }
    else:
        w = cert.witness
        doc = {
            "kind": "nonplanar",
            "subtype": w.kind,
            "branch_vertices": w.branch_vertices,
            "paths": w.paths,
        }
    return json.dumps(doc, indent=2) + "\n"


def _certificate_from_json(text: str) -> Certificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, f"bad JSON: {exc.msg}") from None
    if doc.get("kind") == "planar":
        rotation = {int(v): list(map(int, nbrs)) for v, nbrs in doc["rotation"].items()}
        return Certificate(True, embedding=rotation)
    if doc.get("kind") == "nonplanar":
        return Certificate(
            False,
            witness=KuratowskiSubdivision(
                doc["subtype"],
                [int(v) for v in doc["branch_vertices"]],
                [[int(v) for v in p] for p in doc["paths"]],
            ),
        )
    raise ParseError(1, "JSON certificate needs kind planar/nonplanar")


def _certificate_dot(cert: Certificate) -> str:
    out = ["graph certificate {"]
    if cert.planar:
        emitted = set()
        for v in sorted(cert.embedding):
            out.append(f'  // rotation {v}: {" ".join(map(str, cert.embedding[v]))}')
        for v in sorted(cert.embedding):
            for w in cert.embedding[v]:
                if (min(v, w), max(v, w)) not in emitted:
                    emitted.add((min(v, w), max(v, w)))
                    out.append(f"  {v} -- {w};")
    else:
        w = cert.witness
        out.append(f'  // nonplanar witness {w.kind}')
        for b in w.branch_vertices:
            out.append(f"  {b} [shape=doublecircle];")
        for p in w.paths:
            for u, v in zip(p, p[1:]):
                out.append(f'  {u} -- {v} [color=red, penwidth=2];')
    out.append("}")
    return "\n".join(out) + "\n"
