"""Seeded random connected graphs for sweeps and cross-validation runs."""

from __future__ import annotations

import random

from .graphs import Graph, GraphError


def random_connected_graphs(
    count: int,
    seed: int,
    max_vertices: int = 8,
    max_edges: int = 11,
) -> list[Graph]:
    """Deterministic sample of small connected graphs.

    Rejection sampling: draw a vertex count and an edge probability, build
    the Erdos-Renyi draw, keep it when it is connected and fits the edge
    budget.  The same seed always yields the same list.
    """

    if count < 0:
        raise ValueError("count must be nonnegative")
    if max_vertices < 3:
        raise ValueError("max_vertices must be at least 3")
    rng = random.Random(seed)
    out: list[Graph] = []
    while len(out) < count:
        n = rng.randint(3, max_vertices)
        p = rng.uniform(0.25, 0.75)
        edges = tuple(
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p
        )
        if not edges or len(edges) > max_edges:
            continue
        try:
            out.append(Graph(n, edges))
        except GraphError:
            continue
    return out
