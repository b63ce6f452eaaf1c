"""Brute-force toric oracle: fibers, bounded Graver, fiber graphs, Buchberger."""

import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toriclab.bases import graph_config
from toriclab.binomials import binomial_from_vector, make_binomial
from toriclab.errors import ScaleGuardError
from toriclab.oracle import (
    ConfigError,
    NegativeEntryError,
    OrderError,
    WeightOrder,
    analyze_config,
    buchberger,
    candidate_degrees,
    config_from_rows,
    fiber,
    fiber_graphs,
    graver_bounded,
    indispensability_report,
    primitivity_check,
    sample_groebner,
    universal_markov_fibers,
)

N5_ROWS = json.loads(
    (Path(__file__).parent / "fixtures" / "matrix" / "n5.json").read_text()
)["matrix"]


def test_config_validation():
    with pytest.raises(NegativeEntryError):
        config_from_rows([[1, -1], [0, 1]])
    with pytest.raises(ConfigError):
        config_from_rows([[1, 0], [1]])
    with pytest.raises(ConfigError):
        config_from_rows([[1, 0], [1, 0]])  # zero column
    with pytest.raises(ConfigError):
        config_from_rows([])


def test_fiber_enumeration_total_degree():
    cfg = config_from_rows([[1, 1, 1]])
    assert fiber(cfg, (2,)) == (
        (0, 0, 2),
        (0, 1, 1),
        (0, 2, 0),
        (1, 0, 1),
        (1, 1, 0),
        (2, 0, 0),
    )
    assert fiber(cfg, (0,)) == ((0, 0, 0),)


def test_fiber_of_k4_square_degree(graph_of):
    cfg = graph_config(graph_of("k4"))
    members = fiber(cfg, (1, 1, 1, 1))
    as_sets = {tuple(i for i, x in enumerate(m) if x) for m in members}
    assert as_sets == {(0, 1), (2, 3), (4, 5)}


def test_fiber_respects_multiplicity():
    cfg = config_from_rows([[2, 1]])
    assert fiber(cfg, (4,)) == ((0, 4), (1, 2), (2, 0))


@pytest.mark.parametrize(
    "name, count",
    [("c4", 1), ("k4", 3), ("domino", 3), ("bowtie", 1), ("hexchord", 3)],
)
def test_graver_bounded_counts(graph_of, name, count):
    cfg = graph_config(graph_of(name))
    assert len(graver_bounded(cfg, box=2)) == count


def test_graver_bounded_matches_walk_enumeration(graph_of, analysis_of):
    for name in ("tri_square_tri_opposite", "triangle_per_corner"):
        cfg = graph_config(graph_of(name))
        oracle = {(b.plus, b.minus) for b in graver_bounded(cfg, box=2)}
        walks = analysis_of(name).graver.element_set()
        assert oracle == walks


def test_graver_box_one_n5():
    cfg = config_from_rows(N5_ROWS)
    quads = graver_bounded(cfg, box=1)
    assert [b.render("x") for b in quads] == [
        "x5*x6 - x7*x8",
        "x3*x4 - x7*x8",
        "x3*x4 - x5*x6",
        "x1*x2 - x7*x8",
        "x1*x2 - x5*x6",
        "x1*x2 - x3*x4",
    ]


def test_graver_bounded_guards_scale():
    cfg = config_from_rows([[1] * 24])
    with pytest.raises(ScaleGuardError):
        graver_bounded(cfg, box=2)


def test_k4_fiber_graph_betti(graph_of):
    cfg = graph_config(graph_of("k4"))
    graver = graver_bounded(cfg, box=2)
    graphs, minimal = fiber_graphs(cfg, candidate_degrees(graver))
    betti = [fg for fg in graphs if fg.is_betti]
    assert len(betti) == 1
    fg = betti[0]
    assert fg.degree == (1, 1, 1, 1)
    assert len(fg.components) == 3
    assert fg.beta0 == 2
    assert not fg.indispensable_degree
    assert len(minimal) == 2
    markov = universal_markov_fibers(cfg, graphs)
    assert len(markov) == 3
    report = indispensability_report(cfg, graphs)
    assert report.indispensable == ()


def test_c4_fiber_graph_indispensable(graph_of):
    cfg = graph_config(graph_of("c4"))
    graphs, minimal = fiber_graphs(cfg, candidate_degrees(graver_bounded(cfg, 2)))
    (fg,) = [g for g in graphs if g.is_betti]
    assert fg.indispensable_degree
    assert [len(c) for c in fg.components] == [1, 1]
    assert len(minimal) == 1


def test_n5_analysis_matches_known_structure():
    cfg = config_from_rows(N5_ROWS)
    ana = analyze_config(cfg, box=2)
    assert len(ana.graver) == 6
    assert len(ana.universal_markov) == 6
    assert len(ana.minimal_markov) == 3
    betti = [fg for fg in ana.graphs if fg.is_betti]
    assert [(fg.degree, fg.beta0) for fg in betti] == [((1, 1, 1, 1, 2), 3)]
    assert ana.indispensable.indispensable == ()
    # the minimal basis is one spanning tree over the four quadric monomials
    monomials = set()
    for b in ana.minimal_markov:
        monomials.add(b.plus)
        monomials.add(b.minus)
    assert len(monomials) == 4


def test_primitivity_check(graph_of):
    cfg = graph_config(graph_of("c4"))
    square = make_binomial((1, 1, 0, 0), (0, 0, 1, 1), cfg.degree)
    assert primitivity_check(cfg, square)
    doubled = make_binomial((2, 2, 0, 0), (0, 0, 2, 2), cfg.degree)
    assert not primitivity_check(cfg, doubled)


def test_weight_order_validation_and_orientation():
    with pytest.raises(OrderError):
        WeightOrder((1, 0, 2))
    with pytest.raises(OrderError):
        WeightOrder((1, -2, 2))
    order = WeightOrder((1, 2, 5))
    lead, trail = order.orient((0, 0, 1), (1, 1, 0))
    assert lead == (0, 0, 1) and trail == (1, 1, 0)
    # ties go to the lexicographically larger monomial
    tied = WeightOrder((1, 1, 2))
    lead, trail = tied.orient((1, 1, 0), (0, 0, 1))
    assert lead == (1, 1, 0)


def test_weight_order_rejects_cancelling_pair():
    order = WeightOrder((1, 1))
    assert order.orient((1, 0), (1, 0)) is None


def test_buchberger_k4_reduced_basis(graph_of):
    cfg = graph_config(graph_of("k4"))
    g1 = make_binomial((1, 1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 1), cfg.degree)
    g2 = make_binomial((0, 0, 1, 1, 0, 0), (0, 0, 0, 0, 1, 1), cfg.degree)
    # e5*e6 heaviest: its S-pair produces the third quadric
    order = WeightOrder((1, 1, 1, 1, 9, 9))
    pairs = buchberger([g1, g2], order)
    assert len(pairs) == 2
    leads = {p for p, _ in pairs}
    assert leads == {(0, 0, 0, 0, 1, 1), (0, 0, 1, 1, 0, 0)} or leads == {
        (0, 0, 0, 0, 1, 1),
        (1, 1, 0, 0, 0, 0),
    }
    # normal forms are fully tail-reduced
    for _, trail in pairs:
        assert all(not _lead_divides(p, trail) for p, _ in pairs)


def _lead_divides(lead, mono):
    return all(a <= b for a, b in zip(lead, mono))


def test_sampled_groebner_covers_k4_ugb(graph_of, analysis_of):
    cfg = graph_config(graph_of("k4"))
    generators = analysis_of("k4").universal_markov.elements
    samples = sample_groebner(cfg, generators, samples=40, seed=7)
    union = set()
    for s in samples:
        assert len(s.elements) == 2  # every reduced basis of K4 has two elements
        union.update((b.plus, b.minus) for b in s.elements)
    assert union == analysis_of("k4").universal_groebner.element_set()


def test_sample_groebner_deterministic(graph_of, analysis_of):
    cfg = graph_config(graph_of("domino"))
    gens = analysis_of("domino").universal_markov.elements
    a = sample_groebner(cfg, gens, samples=6, seed=123)
    b = sample_groebner(cfg, gens, samples=6, seed=123)
    assert a == b
    c = sample_groebner(cfg, gens, samples=6, seed=124)
    assert a != c


@given(st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_candidate_degree_order_is_linear_extension(seed):
    # any degree listed after another is never componentwise below it
    vecs = [
        binomial_from_vector(v, lambda e: (sum(e),))
        for v in [(1, -1, 0), (2, 0, -2), (0, 1, -1), (1, 1, -2)]
    ]
    degrees = candidate_degrees(vecs)
    for i, d in enumerate(degrees):
        for later in degrees[i + 1 :]:
            assert not all(x <= y for x, y in zip(later, d))
