"""Figure rendering for the report path.  Headless: Agg only, SVG output."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_orbit_figure(path: str, lam: float, orbit, gaps) -> str:
    """Render the boundary-torus leaf trace and the gap spectrum to SVG."""
    fig, (ax_torus, ax_gaps) = plt.subplots(1, 2, figsize=(9, 4.2))

    # leaf of slope lam on the unit torus, drawn as wrapped segments
    turns = min(len(orbit), 64)
    u = np.linspace(0.0, turns, 4096)
    ax_torus.plot(u % 1.0, (lam * u) % 1.0, ",", color="#1f5fa8", markersize=1)
    ax_torus.plot(
        [math.modf(x)[0] for x in orbit],
        [0.0] * len(orbit),
        "|",
        color="#c23b22",
        markersize=10,
    )
    ax_torus.set_xlim(0, 1)
    ax_torus.set_ylim(0, 1)
    ax_torus.set_xlabel("u mod 1")
    ax_torus.set_ylabel(f"{lam:.6g} u mod 1")
    ax_torus.set_title("boundary-torus leaf and section orbit")

    ax_gaps.step(range(len(gaps)), sorted(gaps), where="post", color="#1f5fa8")
    ax_gaps.set_xlabel("gap rank")
    ax_gaps.set_ylabel("gap length")
    ax_gaps.set_title("circle-orbit gap spectrum")

    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path
