#!/usr/bin/env python3
"""Tour the bundled fixture graphs and print what distinguishes each one.

Runs the full pipeline (walk enumeration, fiber graphs, robustness verdict)
on every graph under tests/fixtures and prints a table plus, for the graphs
that fail some robustness condition, the first recorded witness.
"""

import argparse
import sys
from pathlib import Path

from toriclab import (
    analyze_graph,
    circuit_rule_violations,
    fiber_bundle,
    implication_suite,
    load_graph,
    robustness_verdict,
)

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def describe(name: str, path: Path, verbose: bool) -> None:
    graph = load_graph(str(path))
    analysis = analyze_graph(graph)
    bundle = fiber_bundle(graph, analysis)
    verdict = robustness_verdict(graph, analysis, bundle)
    suite = implication_suite(graph, analysis, bundle)

    flags = []
    if verdict.robust:
        flags.append("robust")
    elif verdict.generalized_robust:
        flags.append("generalized")
    if suite.observations["indispensable_equals_markov"]:
        flags.append("unique-gen")
    print(
        f"{name:<26} v={graph.vertex_count:<2} e={len(graph.edges):<2} "
        f"C={len(analysis.circuits):<2} Gr={len(analysis.graver):<2} "
        f"U={len(analysis.universal_groebner):<2} "
        f"M={len(analysis.universal_markov):<2} "
        f"ind={len(bundle.indispensable):<2} "
        f"[{' '.join(flags) if flags else '-'}]"
    )
    if not verbose:
        return
    for rule, witness in sorted(circuit_rule_violations(graph, analysis).items()):
        detail = {k: v for k, v in witness.items() if k not in ("rule",)}
        print(f"    circuit rule {rule} fails: {detail}")
    for rep in verdict.criteria:
        if not rep.holds and rep.witness:
            print(f"    {rep.name}: {rep.witness}")
    for binomial in analysis.graver.elements:
        element = analysis.element_for(binomial)
        if element.minimality_failures:
            print(
                f"    {binomial.render()} fails "
                f"{','.join(element.minimality_failures)}"
            )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("names", nargs="*", help="fixture names (default: all)")
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="print failure witnesses"
    )
    args = parser.parse_args()

    paths = sorted(FIXTURES.glob("*.txt"))
    if args.names:
        paths = [FIXTURES / f"{n}.txt" for n in args.names]
    missing = [p for p in paths if not p.exists()]
    if missing:
        print(f"unknown fixtures: {[p.stem for p in missing]}", file=sys.stderr)
        return 2
    for path in paths:
        describe(path.stem, path, args.verbose)
    return 0


if __name__ == "__main__":
    sys.exit(main())
