"""Shared fixtures: fixture graphs plus cached per-session analyses."""

from pathlib import Path

import pytest

from toriclab.bases import analyze_graph, fiber_bundle
from toriclab.graphs import load_graph
from toriclab.robustness import robustness_verdict

FIXTURES = Path(__file__).parent / "fixtures"

STRUCTURAL = (
    "k4",
    "c4",
    "domino",
    "bowtie",
    "tri_edge_tri",
    "tri_square_tri_adjacent",
    "tri_square_tri_opposite",
    "hexchord",
    "triangle_per_corner",
    "octagon_three_chords",
)


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.txt"


@pytest.fixture(scope="session")
def graph_of():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_graph(str(fixture_path(name)))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def analysis_of(graph_of):
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = analyze_graph(graph_of(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def bundle_of(graph_of, analysis_of):
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = fiber_bundle(graph_of(name), analysis_of(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def verdict_of(graph_of, analysis_of, bundle_of):
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = robustness_verdict(
                graph_of(name), analysis_of(name), bundle_of(name)
            )
        return cache[name]

    return get
