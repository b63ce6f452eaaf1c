"""Distinguished sets from walks, cross-checked against the fiber machinery."""

import pytest

from toriclab.bases import (
    analyze_graph,
    circuits,
    ensure_tractable,
    fiber_bundle,
    graver,
    indispensable_subset,
    universal_groebner,
    universal_markov,
)
from toriclab.binomials import basis_set_from_json
from toriclab.corpus import random_connected_graphs
from toriclab.errors import ScaleGuardError
from toriclab.graphs import parse_graph

# circuits, graver, universal Groebner, universal Markov, indispensable
EXPECTED_COUNTS = {
    "k4": (3, 3, 3, 3, 0),
    "c4": (1, 1, 1, 1, 1),
    "domino": (3, 3, 3, 2, 2),
    "bowtie": (1, 1, 1, 1, 1),
    "tri_edge_tri": (1, 1, 1, 1, 1),
    "tri_square_tri_adjacent": (3, 4, 4, 2, 2),
    "tri_square_tri_opposite": (3, 4, 4, 4, 4),
    "hexchord": (3, 3, 3, 2, 2),
    "triangle_per_corner": (9, 10, 9, 6, 6),
    "octagon_three_chords": (7, 7, 7, 3, 3),
}


@pytest.mark.parametrize("name", sorted(EXPECTED_COUNTS))
def test_set_counts(analysis_of, bundle_of, name):
    a = analysis_of(name)
    counts = (
        len(a.circuits),
        len(a.graver),
        len(a.universal_groebner),
        len(a.universal_markov),
        len(bundle_of(name).indispensable),
    )
    assert counts == EXPECTED_COUNTS[name]


@pytest.mark.parametrize("name", sorted(EXPECTED_COUNTS))
def test_set_inclusions(analysis_of, bundle_of, name):
    a = analysis_of(name)
    gr = a.graver.element_set()
    assert a.circuits.element_set() <= gr
    assert a.universal_markov.element_set() <= a.universal_groebner.element_set() <= gr
    assert bundle_of(name).indispensable.element_set() <= a.universal_markov.element_set()


def test_k4_exact_elements(analysis_of):
    a = analysis_of("k4")
    assert [b.render() for b in a.graver.elements] == [
        "e3*e4 - e5*e6",
        "e1*e2 - e5*e6",
        "e1*e2 - e3*e4",
    ]
    assert a.graver.elements == a.universal_markov.elements
    assert a.graver.elements == a.universal_groebner.elements


def test_circuit_shapes(analysis_of):
    shapes = [ann["shape"] for ann in analysis_of("tri_square_tri_opposite").circuits.annotations]
    assert shapes.count("even-cycle") == 1
    assert shapes.count("path-joined") == 2

    shapes = [ann["shape"] for ann in analysis_of("triangle_per_corner").circuits.annotations]
    assert shapes.count("shared-vertex") == 3
    assert shapes.count("path-joined") == 6

    shapes = [ann["shape"] for ann in analysis_of("domino").circuits.annotations]
    assert shapes == ["even-cycle"] * 3


def test_annotations_record_minimality(analysis_of):
    a = analysis_of("triangle_per_corner")
    for b, ann in zip(a.graver.elements, a.graver.annotations):
        e = a.element_for(b)
        assert ann["minimal"] == (e.minimality_failures == ())
        assert ann["mixed"] == e.mixed
    failures = {tuple(ann["minimality_failures"]) for ann in a.graver.annotations}
    assert ("M1",) in failures
    assert any("M4" in f for f in failures)


def test_convenience_wrappers(graph_of):
    g = graph_of("c4")
    assert len(circuits(g)) == 1
    assert len(graver(g)) == 1
    assert len(universal_groebner(g)) == 1
    assert len(universal_markov(g)) == 1
    assert len(indispensable_subset(g)) == 1


def test_basis_sets_round_trip_through_json(analysis_of):
    a = analysis_of("tri_square_tri_adjacent")
    for s in (a.circuits, a.graver, a.universal_groebner, a.universal_markov):
        again = basis_set_from_json(s.to_json())
        assert again.elements == s.elements
        assert again.annotations == s.annotations


def test_analysis_is_deterministic(graph_of):
    g = graph_of("triangle_per_corner")
    a1 = analyze_graph(g)
    a2 = analyze_graph(g)
    assert a1.graver.elements == a2.graver.elements
    assert a1.circuits.to_json() == a2.circuits.to_json()


def test_bundle_betti_structure(bundle_of):
    k4 = bundle_of("k4")
    betti = [fg for fg in k4.graphs if fg.is_betti]
    assert len(betti) == 1 and betti[0].beta0 == 2
    assert len(k4.minimal_markov) == 2

    opp = bundle_of("tri_square_tri_opposite")
    betti = [fg for fg in opp.graphs if fg.is_betti]
    assert len(betti) == 4
    assert all(fg.indispensable_degree for fg in betti)


def test_tractability_guard():
    # a path on 22 vertices has 21 edges and no cycles at all
    lines = "\n".join(f"{i} {i + 1}" for i in range(1, 22))
    g = parse_graph(lines)
    with pytest.raises(ScaleGuardError):
        analyze_graph(g)
    a = analyze_graph(g, force=True)
    assert len(a.graver) == 0
    ensure_tractable(g, force=True)


def test_random_graphs_keep_inclusions_and_cross_checks():
    for g in random_connected_graphs(25, seed=20250815):
        a = analyze_graph(g)
        gr = a.graver.element_set()
        assert a.circuits.element_set() <= gr
        assert a.universal_markov.element_set() <= a.universal_groebner.element_set() <= gr
        # raises internally if the fiber side disagrees with the walk side
        bundle = fiber_bundle(g, a)
        assert bundle.indispensable.element_set() <= a.universal_markov.element_set()
