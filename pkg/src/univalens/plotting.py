"""Optional matplotlib figures: trajectory projections and blow-up dual graphs."""

from __future__ import annotations

import math


def _pyplot():
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as exc:  # pragma: no cover - depends on the environment
        raise RuntimeError("plotting needs matplotlib (pip install univalens[plot])") from exc
    return plt


def plot_trajectory(result, path: str) -> None:
    """Real and imaginary parts of each state component against the path parameter."""
    plt = _pyplot()
    if not result.samples:
        raise RuntimeError("no samples to plot")
    dim = len(result.samples[0][1])
    fig, axes = plt.subplots(dim, 2, figsize=(9, 2.6 * dim), squeeze=False)
    s = list(range(len(result.samples)))
    names = "xyzuvw"
    for k in range(dim):
        vals = [y[k] for _, y in result.samples]
        axes[k][0].plot(s, [v.real for v in vals])
        axes[k][0].set_ylabel(f"Re {names[k]}")
        axes[k][1].plot(s, [v.imag for v in vals])
        axes[k][1].set_ylabel(f"Im {names[k]}")
    axes[-1][0].set_xlabel("sample")
    axes[-1][1].set_xlabel("sample")
    fig.suptitle(f"outcome: {result.outcome.value}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_dual_graph(tree, path: str) -> None:
    """Exceptional divisors on a circle, joined when they meet; labels carry self-intersections."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5, 5))
    n = max(len(tree.exceptional), 1)
    pos = {e.id: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
           for i, e in enumerate(tree.exceptional)}
    for a, b in tree.dual_graph_edges():
        ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color="0.4")
    for e in tree.exceptional:
        x, y = pos[e.id]
        ax.scatter([x], [y], s=300, facecolors="white" if not e.invariant else "C0", edgecolors="C0")
        ax.annotate(f"E{e.id} ({e.self_intersection})", (x, y), textcoords="offset points", xytext=(8, 8))
    ax.set_axis_off()
    ax.set_title(f"dual graph, {tree.n_blowups} blow-ups")
    fig.savefig(path)
    plt.close(fig)
