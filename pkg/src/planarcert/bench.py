"""Benchmark harness: sequence computation vs the embedding phase.

The embedding phase is timed on generator-recorded sequences, so its scaling
can be measured far beyond the practical range of the quadratic sequence
computation, which is timed only up to a cutoff.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import cseq, generators, planarity

CSEQ_MAX_N = 1200


@dataclass
class BenchRow:
    n: int
    m: int
    t_sequence: float | None
    t_embed: float


def run_bench(sizes: list[int], seed: int, cseq_max_n: int = CSEQ_MAX_N,
              extra_fraction: float = 0.15) -> list[BenchRow]:
    rows = []
    for i, n in enumerate(sizes):
        g, seq = generators.random_planar_triconnected(
            n, seed + i, extra_edges=max(1, int(n * extra_fraction))
        )
        t_seq = None
        if n <= cseq_max_n:
            t0 = time.perf_counter()
            cseq.compute_sequence(g)
            t_seq = time.perf_counter() - t0
        t0 = time.perf_counter()
        cert = planarity.test_component(g, seq=seq)
        t_embed = time.perf_counter() - t0
        if not cert.planar:
            raise RuntimeError("generated triconnected graph tested nonplanar")
        rows.append(BenchRow(n, g.m, t_seq, t_embed))
    return rows


def format_table(rows: list[BenchRow]) -> str:
    lines = ["n\tm\tt_sequence_s\tt_embed_s"]
    for r in rows:
        seq = f"{r.t_sequence:.4f}" if r.t_sequence is not None else "-"
        lines.append(f"{r.n}\t{r.m}\t{seq}\t{r.t_embed:.4f}")
    return "\n".join(lines) + "\n"


def render_figure(rows: list[BenchRow], path: str) -> None:
    """Log-log wall time against size, written to an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    ns = [r.n for r in rows]
    ax.plot(ns, [r.t_embed for r in rows], "o-", label="embedding phase")
    seq_pts = [(r.n, r.t_sequence) for r in rows if r.t_sequence is not None]
    if seq_pts:
        ax.plot([p[0] for p in seq_pts], [p[1] for p in seq_pts], "s--",
                label="sequence computation")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("vertices")
    ax.set_ylabel("wall time [s]")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
