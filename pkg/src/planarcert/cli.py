"""Command-line front end.

Subcommands: test (verdict and optional certificate), verify (check a
certificate against a graph), cseq (construction-sequence dump), gen
(graph generators), oracle (exhaustive small-graph planarity), bench
(sequence vs embedding-phase timings, optionally with a figure).

Exit codes: 0 planar / verified, 1 nonplanar / refuted, 2 usage or input
errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import bench as bench_mod
from . import certify, cseq, decomposition, generators, io as gio, planarity
from .graph import Graph, PreconditionError


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_graph(path: str) -> Graph:
    return gio.parse_graph(_read(path))


def _fail(msg: str) -> int:
    print(msg, file=sys.stderr)
    return 2


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_test(args) -> int:
    try:
        g = _load_graph(args.graph)
    except (OSError, gio.ParseError) as exc:
        return _fail(str(exc))
    if args.jobs > 1:
        cert = _test_parallel(g, args.jobs)
    else:
        cert = planarity.test_planarity(g)
    if args.certify:
        sys.stdout.write(gio.serialize_certificate(cert, args.format))
    else:
        print("planar" if cert.planar else f"nonplanar {cert.witness.kind}")
    return 0 if cert.planar else 1


def _component_graphs(g: Graph) -> list[Graph]:
    comps = certify._components(g)
    out = []
    for verts in comps:
        vs = set(verts)
        edges = {e: pair for e, pair in g.edge_items() if pair[0] in vs}
        out.append(Graph.with_members(sorted(vs), edges))
    return out


def _test_parallel(g: Graph, jobs: int) -> planarity.Certificate:
    """Test connected components in a process pool; deterministic merge."""
    from concurrent.futures import ProcessPoolExecutor

    parts = _component_graphs(g)
    if len(parts) <= 1:
        return planarity.test_planarity(g)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        certs = list(pool.map(planarity.test_planarity, parts))
    rotation: dict[int, list[int]] = {}
    for cert in certs:
        if not cert.planar:
            return cert
        rotation.update(cert.embedding)
    for v in g.vertices():
        rotation.setdefault(v, [])
    return planarity.Certificate(True, embedding=rotation)


def cmd_verify(args) -> int:
    try:
        g = _load_graph(args.graph)
        cert = gio.parse_certificate(_read(args.certificate))
    except (OSError, gio.ParseError) as exc:
        return _fail(str(exc))
    if cert.planar:
        report = certify.verify_embedding(g, cert.embedding)
    else:
        w = cert.witness
        report = certify.verify_kuratowski(g, w.kind, w.branch_vertices, w.paths)
    if report:
        print("certificate verified")
        return 0
    print(f"certificate rejected: {report.reason}")
    return 1


def cmd_cseq(args) -> int:
    try:
        g = _load_graph(args.graph)
    except (OSError, gio.ParseError) as exc:
        return _fail(str(exc))
    if g.n < 4:
        return _fail("input needs at least 4 vertices")
    if not decomposition.is_connected(g):
        return _fail("input is not connected")
    cuts = decomposition.cut_vertices(g)
    if cuts:
        return _fail(f"cut vertex {cuts[0]}")
    pair = decomposition.find_separation_pair(g)
    if pair is not None:
        return _fail(f"separation pair {pair[0]} {pair[1]}")
    seq = cseq.compute_sequence(g)
    sys.stdout.write(cseq.dump(seq) + "\n")
    if args.validate:
        report = certify.verify_sequence(g, seq)
        if not report:
            print(f"validation failed: {report.reason}", file=sys.stderr)
            return 1
        print("validated", file=sys.stderr)
    return 0


def cmd_gen(args) -> int:
    t = args.type
    try:
        if t == "k4":
            g = generators.k4()
        elif t == "wheel":
            g = generators.wheel(args.n)
        elif t == "complete":
            g = generators.complete(args.n)
        elif t == "complete-bipartite":
            g = generators.complete_bipartite((args.n + 1) // 2, args.n // 2)
        elif t == "petersen":
            g = generators.petersen()
        elif t == "hypercube":
            g = generators.hypercube(args.n)
        elif t == "random-planar":
            _need_seed(args)
            g = generators.random_planar(args.n, args.seed)
        elif t == "random-3conn":
            _need_seed(args)
            base, _ = generators.random_triconnected(args.n, args.seed)
            extra = max(0, args.m - base.m) if args.m else 0
            g, _ = generators.random_triconnected(args.n, args.seed, extra_edges=extra)
        elif t == "random-planar-3conn":
            _need_seed(args)
            g, _ = generators.random_planar_triconnected(args.n, args.seed,
                                                         extra_edges=max(0, args.m))
        elif t == "random":
            _need_seed(args)
            if not args.m:
                return _fail("random graphs need --m")
            g = generators.random_graph(args.n, args.m, args.seed)
        else:  # pragma: no cover
            return _fail(f"unknown type {t}")
    except PreconditionError as exc:
        return _fail(str(exc))
    except ValueError as exc:
        return _fail(str(exc))
    sys.stdout.write(gio.serialize_graph(g))
    return 0


def _need_seed(args) -> None:
    if args.seed is None:
        raise PreconditionError("random generators need --seed")


def cmd_oracle(args) -> int:
    try:
        g = _load_graph(args.graph)
    except (OSError, gio.ParseError) as exc:
        return _fail(str(exc))
    try:
        verdict = all(
            certify.oracle_planarity(block, budget=args.budget)
            for block in decomposition.biconnected_components(g)
        )
    except certify.OracleBudgetError:
        return _fail("oracle budget exceeded; try a smaller input or raise --budget")
    print("true" if verdict else "false")
    return 0


def cmd_bench(args) -> int:
    sizes = []
    try:
        sizes = [int(tok) for tok in args.sizes.split(",") if tok]
    except ValueError:
        return _fail("sizes must be a comma-separated integer list")
    if not sizes or sizes != sorted(sizes):
        return _fail("sizes must be ascending")
    rows = bench_mod.run_bench(sizes, args.seed, cseq_max_n=args.cseq_max_n)
    table = bench_mod.format_table(rows)
    sys.stdout.write(table)
    if args.report_dir:
        os.makedirs(args.report_dir, exist_ok=True)
        with open(os.path.join(args.report_dir, "bench.tsv"), "w") as fh:
            fh.write(table)
        bench_mod.render_figure(rows, os.path.join(args.report_dir, "bench.png"))
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="planarcert",
        description="Certifying planarity test via construction sequences.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="test a graph file; exit 0 planar, 1 nonplanar")
    p.add_argument("graph")
    p.add_argument("--certify", action="store_true", help="emit the certificate")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--seed-independent", action="store_true",
                   help="assert run-to-run determinism (always on; flag kept for scripts)")
    p.add_argument("--jobs", type=int, default=1, help="parallel component tests")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("verify", help="verify a certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cseq", help="print the construction sequence of a triconnected graph")
    p.add_argument("graph")
    p.add_argument("--validate", action="store_true",
                   help="replay with full prefix checks afterwards")
    p.set_defaults(func=cmd_cseq)

    p = sub.add_parser("gen", help="generate a graph file on stdout")
    p.add_argument("--type", required=True, choices=(
        "k4", "wheel", "complete", "complete-bipartite", "petersen",
        "hypercube", "random-planar", "random-3conn", "random-planar-3conn",
        "random"))
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="exhaustive rotation-system planarity check")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=certify.ORACLE_BUDGET)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="time sequence computation and the embedding phase")
    p.add_argument("--sizes", required=True, help="comma-separated ascending sizes")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cseq-max-n", type=int, default=bench_mod.CSEQ_MAX_N,
                   help="skip sequence computation above this size")
    p.add_argument("--report-dir", help="write bench.tsv and bench.png here")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
