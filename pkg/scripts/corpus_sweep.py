#!/usr/bin/env python3
"""Sweep a seeded random corpus and tally robustness phenomena.

For every graph the three generalized-robustness checkers run side by side
(any split aborts the sweep), the structural implications are asserted, and
every ``--oracle-every``-th graph is additionally cross-checked against the
brute-force bounded enumeration.  Ends with frequency counts, the observed
separations between the robustness classes, and the worst runtimes.
"""

import argparse
import sys
import time
from dataclasses import dataclass

from toriclab import (
    analyze_graph,
    fiber_bundle,
    graph_config,
    graver_bounded,
    implication_suite,
    random_connected_graphs,
    robustness_verdict,
)


@dataclass(frozen=True)
class SweepConfig:
    count: int = 300
    seed: int = 0
    max_vertices: int = 8
    max_edges: int = 11
    oracle_every: int = 10
    box: int = 2


@dataclass
class Tally:
    total: int = 0
    generalized: int = 0
    robust: int = 0
    unique_generation: int = 0
    gen_not_robust: int = 0
    unique_not_robust: int = 0
    oracle_checks: int = 0


def sweep(config: SweepConfig) -> int:
    tally = Tally()
    slowest: list[tuple[float, str]] = []
    t_start = time.perf_counter()

    for index, graph in enumerate(
        random_connected_graphs(
            config.count, config.seed, config.max_vertices, config.max_edges
        )
    ):
        t0 = time.perf_counter()
        analysis = analyze_graph(graph)
        bundle = fiber_bundle(graph, analysis)
        verdict = robustness_verdict(graph, analysis, bundle)
        suite = implication_suite(graph, analysis, bundle)
        if not suite.ok:
            print(f"implication failure on {graph.digest()}", file=sys.stderr)
            print(suite.to_json(), file=sys.stderr)
            return 1

        tally.total += 1
        unique = suite.observations["indispensable_equals_markov"]
        tally.generalized += verdict.generalized_robust
        tally.robust += verdict.robust
        tally.unique_generation += unique
        if verdict.generalized_robust and not verdict.robust:
            tally.gen_not_robust += 1
        if unique and not verdict.robust:
            tally.unique_not_robust += 1

        if config.oracle_every and index % config.oracle_every == 0:
            bounded = graver_bounded(graph_config(graph), config.box)
            if {(b.plus, b.minus) for b in bounded} != analysis.graver.element_set():
                print(f"oracle mismatch on {graph.digest()}", file=sys.stderr)
                return 1
            tally.oracle_checks += 1

        slowest.append((time.perf_counter() - t0, graph.digest()))
        slowest.sort(reverse=True)
        del slowest[3:]

    elapsed = time.perf_counter() - t_start
    print(f"swept {tally.total} graphs in {elapsed:.1f}s (seed {config.seed})")
    print(f"  generalized robust : {tally.generalized}")
    print(f"  robust             : {tally.robust}")
    print(f"  unique generation  : {tally.unique_generation}")
    print(f"  generalized, not robust : {tally.gen_not_robust}")
    print(f"  unique gen, not robust  : {tally.unique_not_robust}")
    print(f"  oracle cross-checks     : {tally.oracle_checks}, all matched")
    worst = ", ".join(f"{d} ({s * 1000:.0f} ms)" for s, d in slowest)
    print(f"  slowest instances  : {worst}")
    return 0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    defaults = SweepConfig()
    parser.add_argument("--count", type=int, default=defaults.count)
    parser.add_argument("--seed", type=int, default=defaults.seed)
    parser.add_argument("--max-vertices", type=int, default=defaults.max_vertices)
    parser.add_argument("--max-edges", type=int, default=defaults.max_edges)
    parser.add_argument(
        "--oracle-every",
        type=int,
        default=defaults.oracle_every,
        help="brute-force cross-check frequency, 0 disables",
    )
    parser.add_argument("--box", type=int, default=defaults.box)
    args = parser.parse_args()
    return sweep(
        SweepConfig(
            count=args.count,
            seed=args.seed,
            max_vertices=args.max_vertices,
            max_edges=args.max_edges,
            oracle_every=args.oracle_every,
            box=args.box,
        )
    )


if __name__ == "__main__":
    sys.exit(main())
