"""Figure rendering for the CLI report path: a decomposition drawn as the
edge-colored adjacency matrix of K_{n x g}, one color per factor."""

from __future__ import annotations

from .core import Decomposition


def render_decomposition(dec: Decomposition, path: str, dpi: int = 150) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    inst = dec.instance
    n, g = inst.n, inst.g
    size = n * g

    def vid(v) -> int:
        return (v.part - 1) * g + (v.symbol - 1)

    grid = np.full((size, size), np.nan)
    for idx, f in enumerate(dec.factors, start=1):
        for e in f.edges:
            i, j = vid(e.u), vid(e.v)
            grid[i, j] = idx
            grid[j, i] = idx

    fig, ax = plt.subplots(figsize=(max(4.0, size / 8), max(4.0, size / 8)))
    cmap = plt.get_cmap("turbo", len(dec.factors))
    cmap.set_bad("white")
    ax.imshow(grid, cmap=cmap, interpolation="nearest", vmin=1, vmax=len(dec.factors))
    for p in range(1, n):
        ax.axhline(p * g - 0.5, color="black", linewidth=0.6)
        ax.axvline(p * g - 0.5, color="black", linewidth=0.6)
    ticks = [p * g + (g - 1) / 2 for p in range(n)]
    ax.set_xticks(ticks)
    ax.set_yticks(ticks)
    ax.set_xticklabels([str(p) for p in range(1, n + 1)])
    ax.set_yticklabels([str(p) for p in range(1, n + 1)])
    ax.tick_params(length=0)
    ax.set_title(f"K_{{{n}x{g}}}: {len(dec.factors)} classes at distance {dec.distance}")
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
