"""Robustness decisions for graph toric ideals, with witnesses.

Generalized robustness (the universal Groebner basis equals the universal
Markov basis, equivalently both equal the Graver basis) is decided three
independent ways: by comparing the computed sets, by chord conditions on
every primitive walk, and by conditions on circuits alone.  Disagreement
between the checkers is an internal invariant breach.  Robustness additionally
requires the ideal to have a unique minimal generating system, i.e. every
universal Markov element must be indispensable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .bases import FiberBundle, GraphAnalysis, analyze_graph, fiber_bundle
from .errors import InternalInvariantError
from .graphs import Graph, block_decomposition, has_four_cycle
from .walks import classify_chords, cross_effectively, find_F4s


@dataclass(frozen=True)
class CriterionReport:
    name: str
    holds: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds, "witness": self.witness}


def check_generalized_robust_sets(analysis: GraphAnalysis) -> CriterionReport:
    """Direct comparison: the Graver basis must equal the universal Markov basis."""

    missing = analysis.graver.element_set() - analysis.universal_markov.element_set()
    if not missing:
        return CriterionReport("markov-equals-graver", True)
    for b, ann in zip(analysis.graver.elements, analysis.graver.annotations):
        if (b.plus, b.minus) in missing:
            return CriterionReport(
                "markov-equals-graver",
                False,
                {
                    "binomial": b.to_json(),
                    "minimality_failures": list(ann["minimality_failures"]),
                },
            )
    raise InternalInvariantError("set difference lost its witness")


def check_generalized_robust_conditions(analysis: GraphAnalysis) -> CriterionReport:
    """Chord test: every primitive walk must be free of M1 and M2 failures."""

    for e in analysis.elements:
        codes = [c for c in e.minimality_failures if c in ("M1", "M2")]
        if codes:
            return CriterionReport(
                "primitive-chord-conditions",
                False,
                {"binomial": e.binomial.to_json(), "codes": codes},
            )
    return CriterionReport("primitive-chord-conditions", True)


def _first_bad_chord(graph: Graph, element) -> dict | None:
    for r in classify_chords(graph, element.walk):
        if r.kind != "odd":
            return {"chord": graph.edge_label(r.chord), "kind": r.kind}
    return None


def _first_bad_crossing(graph: Graph, element) -> dict | None:
    reports = classify_chords(graph, element.walk)
    odd = [r for r in reports if r.kind == "odd"]
    completed = {
        frozenset(rec.chords) for rec in find_F4s(graph, element.walk, reports)
    }
    for r1, r2 in combinations(odd, 2):
        if cross_effectively(r1.span, r2.span):
            if frozenset((r1.chord, r2.chord)) not in completed:
                return {
                    "chords": [
                        graph.edge_label(r1.chord),
                        graph.edge_label(r2.chord),
                    ]
                }
    return None


def circuit_rule_violations(graph: Graph, analysis: GraphAnalysis) -> dict[str, dict]:
    """First witness for each violated circuit rule, keyed R1/R2/R3.

    R1: no circuit has an even chord or a bridge.  R2: odd chords of a
    circuit crossing effectively must form a four-cycle with two walk edges.
    R3: no two circuits share exactly one edge, meet in no further vertices,
    and have that edge on a cycle of both.
    """

    circuit_elements = [analysis.element_for(b) for b in analysis.circuits.elements]
    violations: dict[str, dict] = {}

    for e in circuit_elements:
        if "R1" not in violations and "M1" in e.minimality_failures:
            witness = {"rule": "R1", "binomial": e.binomial.to_json()}
            detail = _first_bad_chord(graph, e)
            if detail:
                witness.update(detail)
            violations["R1"] = witness
        if "R2" not in violations and "M2" in e.minimality_failures:
            witness = {"rule": "R2", "binomial": e.binomial.to_json()}
            detail = _first_bad_crossing(graph, e)
            if detail:
                witness.update(detail)
            violations["R2"] = witness

    decs = [
        block_decomposition(graph, e.walk.edges) for e in circuit_elements
    ]
    for i, j in combinations(range(len(circuit_elements)), 2):
        e1, e2 = circuit_elements[i], circuit_elements[j]
        shared = set(e1.walk.edges) & set(e2.walk.edges)
        if len(shared) != 1:
            continue
        edge = next(iter(shared))
        endpoints = set(graph.edges[edge])
        if set(e1.walk.vertices) & set(e2.walk.vertices) != endpoints:
            continue
        cyclic1 = decs[i].is_cyclic(decs[i].block_of_edge[edge])
        cyclic2 = decs[j].is_cyclic(decs[j].block_of_edge[edge])
        if cyclic1 and cyclic2:
            violations["R3"] = {
                "rule": "R3",
                "binomials": [
                    e1.binomial.to_json(),
                    e2.binomial.to_json(),
                ],
                "edge": graph.edge_label(edge),
            }
            break
    return violations


def check_generalized_robust_circuits(
    graph: Graph, analysis: GraphAnalysis
) -> CriterionReport:
    """Circuit test: rules R1, R2 and R3 must all hold."""

    name = "circuit-conditions"
    violations = circuit_rule_violations(graph, analysis)
    for rule in ("R1", "R2", "R3"):
        if rule in violations:
            return CriterionReport(name, False, violations[rule])
    return CriterionReport(name, True)


def check_unique_generation(
    analysis: GraphAnalysis, bundle: FiberBundle
) -> CriterionReport:
    """Every universal Markov element must be indispensable."""

    name = "unique-minimal-generation"
    dispensable = (
        analysis.universal_markov.element_set()
        - bundle.indispensable.element_set()
    )
    if not dispensable:
        return CriterionReport(name, True)
    for b in analysis.universal_markov.elements:
        if (b.plus, b.minus) in dispensable:
            return CriterionReport(name, False, {"binomial": b.to_json()})
    raise InternalInvariantError("set difference lost its witness")


@dataclass(frozen=True)
class RobustnessVerdict:
    generalized_robust: bool
    robust: bool
    criteria: tuple[CriterionReport, ...]

    def to_json(self) -> dict:
        return {
            "generalized_robust": self.generalized_robust,
            "robust": self.robust,
            "criteria": [c.to_json() for c in self.criteria],
        }


def robustness_verdict(
    graph: Graph,
    analysis: GraphAnalysis | None = None,
    bundle: FiberBundle | None = None,
    force: bool = False,
) -> RobustnessVerdict:
    if analysis is None:
        analysis = analyze_graph(graph, force=force)
    sets_rep = check_generalized_robust_sets(analysis)
    cond_rep = check_generalized_robust_conditions(analysis)
    circ_rep = check_generalized_robust_circuits(graph, analysis)
    if not (sets_rep.holds == cond_rep.holds == circ_rep.holds):
        raise InternalInvariantError(
            f"generalized robustness checkers disagree on {graph.digest()}: "
            f"sets={sets_rep.holds} conditions={cond_rep.holds} "
            f"circuits={circ_rep.holds}"
        )
    if bundle is None:
        bundle = fiber_bundle(graph, analysis)
    unique_rep = check_unique_generation(analysis, bundle)
    generalized = sets_rep.holds
    return RobustnessVerdict(
        generalized,
        generalized and unique_rep.holds,
        (sets_rep, cond_rep, circ_rep, unique_rep),
    )


def _division_free_witness(analysis: GraphAnalysis) -> dict | None:
    terms = [
        (b, side, mono)
        for b in analysis.universal_groebner.elements
        for side, mono in (("plus", b.plus), ("minus", b.minus))
    ]
    for b1, side1, m1 in terms:
        for b2, side2, m2 in terms:
            if b1 is b2:
                continue
            if all(x <= y for x, y in zip(m1, m2)):
                return {
                    "divisor": {"binomial": b1.to_json(), "term": side1},
                    "multiple": {"binomial": b2.to_json(), "term": side2},
                }
    return None


@dataclass(frozen=True)
class ImplicationSuite:
    """Structural consequences checked on one graph."""

    digest: str
    implications: tuple[CriterionReport, ...]
    observations: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.implications)

    def to_json(self) -> dict:
        return {
            "digest": self.digest,
            "ok": self.ok,
            "implications": [c.to_json() for c in self.implications],
            "observations": dict(self.observations),
        }


def implication_suite(
    graph: Graph,
    analysis: GraphAnalysis | None = None,
    bundle: FiberBundle | None = None,
    force: bool = False,
) -> ImplicationSuite:
    if analysis is None:
        analysis = analyze_graph(graph, force=force)
    if bundle is None:
        bundle = fiber_bundle(graph, analysis)
    verdict = robustness_verdict(graph, analysis, bundle)
    sets_rep, cond_rep, circ_rep, unique_rep = verdict.criteria

    agree = CriterionReport(
        "checkers-agree",
        sets_rep.holds == cond_rep.holds == circ_rep.holds,
    )
    rob_gen = CriterionReport(
        "robust-implies-generalized",
        (not verdict.robust) or verdict.generalized_robust,
    )
    if verdict.robust:
        witness = _division_free_witness(analysis)
        division = CriterionReport(
            "robust-implies-division-free", witness is None, witness
        )
    else:
        division = CriterionReport("robust-implies-division-free", True)
    four_cycle = has_four_cycle(graph)
    if four_cycle:
        square_free = CriterionReport("no-four-cycle-unique-generation", True)
    else:
        ok = unique_rep.holds and (
            verdict.generalized_robust == verdict.robust
        )
        square_free = CriterionReport(
            "no-four-cycle-unique-generation",
            ok,
            None
            if ok
            else {
                "unique_generation": unique_rep.holds,
                "generalized_robust": verdict.generalized_robust,
                "robust": verdict.robust,
            },
        )

    observations = {
        "generalized_robust": verdict.generalized_robust,
        "robust": verdict.robust,
        "markov_equals_graver": sets_rep.holds,
        "ugb_equals_markov": analysis.universal_groebner.element_set()
        == analysis.universal_markov.element_set(),
        "indispensable_equals_markov": unique_rep.holds,
        "has_four_cycle": four_cycle,
    }
    return ImplicationSuite(
        graph.digest(),
        (agree, rob_gen, division, square_free),
        observations,
    )
