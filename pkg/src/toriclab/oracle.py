"""Generic toric machinery for a nonnegative integer configuration.

Everything here works from the matrix alone and knows nothing about graphs.
It exists so the combinatorial computations elsewhere in the package can be
checked against an independent implementation: bounded-box Graver
enumeration, fiber graphs with their connected components, minimal and
universal Markov bases, indispensability, and random-order reduced Groebner
bases via a binomial Buchberger loop.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .binomials import (
    BasisSet,
    Binomial,
    make_basis_set,
    make_binomial,
)
from .errors import InternalInvariantError, ScaleGuardError

# Hard cap on the number of exponent vectors graver_bounded will materialize.
_MAX_BOX_ROWS = 5_000_000


class ConfigError(ValueError):
    pass


class NegativeEntryError(ConfigError):
    """The matrix has a negative entry; only nonnegative gradings are supported."""


class OrderError(ValueError):
    """A term-order weight vector was rejected."""


@dataclass(frozen=True)
class ToricConfig:
    """A nonnegative integer matrix, one column per variable.

    Columns must be nonzero so every fiber is finite.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows or not self.rows[0]:
            raise ConfigError("configuration matrix must be nonempty")
        width = len(self.rows[0])
        for row in self.rows:
            if len(row) != width:
                raise ConfigError("configuration matrix rows have unequal lengths")
            for entry in row:
                if not isinstance(entry, int) or isinstance(entry, bool):
                    raise ConfigError("configuration entries must be integers")
                if entry < 0:
                    raise NegativeEntryError(
                        "configuration entries must be nonnegative"
                    )
        for j in range(width):
            if all(row[j] == 0 for row in self.rows):
                raise ConfigError(f"column {j + 1} of the configuration is zero")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(row[j] for row in self.rows) for j in range(self.ncols)
        )

    def degree(self, exponents: Sequence[int]) -> tuple[int, ...]:
        if len(exponents) != self.ncols:
            raise ConfigError(
                f"expected {self.ncols} exponents, got {len(exponents)}"
            )
        return tuple(
            sum(row[j] * exponents[j] for j in range(self.ncols))
            for row in self.rows
        )

    def to_json(self) -> dict:
        return {"matrix": [list(row) for row in self.rows]}


def config_from_rows(rows: Sequence[Sequence[int]]) -> ToricConfig:
    return ToricConfig(tuple(tuple(int(x) for x in row) for row in rows))


def fiber(config: ToricConfig, degree: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors with the given grading degree, lex ascending."""

    target = tuple(int(x) for x in degree)
    if len(target) != config.nrows:
        raise ConfigError(f"degree must have {config.nrows} entries")
    if any(x < 0 for x in target):
        return ()
    m = config.ncols
    cols = config.columns
    # coverable[i][r] says some column j >= i has a nonzero entry in row r.
    coverable = [[False] * config.nrows for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        for r in range(config.nrows):
            coverable[i][r] = coverable[i + 1][r] or cols[i][r] > 0

    out: list[tuple[int, ...]] = []
    current = [0] * m

    def rec(i: int, residual: list[int]) -> None:
        if i == m:
            if all(r == 0 for r in residual):
                out.append(tuple(current))
            return
        if any(r > 0 and not coverable[i][rr] for rr, r in enumerate(residual)):
            return
        col = cols[i]
        cap = min(
            residual[r] // col[r] for r in range(config.nrows) if col[r] > 0
        )
        for k in range(cap + 1):
            current[i] = k
            rec(i + 1, [residual[r] - k * col[r] for r in range(config.nrows)])
        current[i] = 0

    rec(0, list(target))
    return tuple(out)


def graver_bounded(config: ToricConfig, box: int) -> tuple[Binomial, ...]:
    """Primitive kernel elements whose exponents are bounded by ``box``.

    Enumerates every exponent vector in {0..box}^m, groups them by degree,
    forms coprime same-degree pairs, and keeps the conformally minimal ones.
    Minimality inside the box equals global minimality because a proper
    conformal divisor of an in-box vector is itself in the box.
    """

    if box < 1:
        raise ValueError("box must be at least 1")
    m = config.ncols
    total = (box + 1) ** m
    if total > _MAX_BOX_ROWS:
        raise ScaleGuardError(
            f"box enumeration would need {total} exponent vectors "
            f"(limit {_MAX_BOX_ROWS}); reduce the box or the variable count"
        )
    exps = np.indices((box + 1,) * m, dtype=np.int32).reshape(m, -1).T
    matrix = np.array(config.rows, dtype=np.int32)
    degs = exps @ matrix.T
    _, inverse, counts = np.unique(
        degs, axis=0, return_inverse=True, return_counts=True
    )
    order = np.argsort(inverse.reshape(-1), kind="stable")
    boundaries = np.cumsum(counts)

    candidates: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    start = 0
    for gi in range(len(counts)):
        end = int(boundaries[gi])
        if counts[gi] >= 2:
            members = exps[order[start:end]]
            for i in range(len(members)):
                ui = members[i]
                for j in range(i + 1, len(members)):
                    vj = members[j]
                    if np.any(np.minimum(ui, vj)):
                        continue
                    ut = tuple(int(x) for x in ui)
                    vt = tuple(int(x) for x in vj)
                    candidates.add((ut, vt) if ut > vt else (vt, ut))
        start = end

    ranked = sorted(candidates, key=lambda pv: (sum(pv[0]) + sum(pv[1]), pv))
    accepted: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for plus, minus in ranked:
        dominated = False
        for ap, am in accepted:
            straight = all(x <= y for x, y in zip(ap, plus)) and all(
                x <= y for x, y in zip(am, minus)
            )
            crossed = all(x <= y for x, y in zip(am, plus)) and all(
                x <= y for x, y in zip(ap, minus)
            )
            if straight or crossed:
                dominated = True
                break
        if not dominated:
            accepted.append((plus, minus))
    return tuple(
        make_binomial(plus, minus, config.degree) for plus, minus in accepted
    )


def _degree_sort_key(degree: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(degree), degree)


@dataclass(frozen=True)
class FiberGraph:
    """One fiber together with its components under lower-degree moves."""

    degree: tuple[int, ...]
    fiber: tuple[tuple[int, ...], ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def beta0(self) -> int:
        return len(self.components) - 1

    @property
    def is_betti(self) -> bool:
        return len(self.components) > 1

    @property
    def indispensable_degree(self) -> bool:
        return len(self.components) == 2 and all(
            len(c) == 1 for c in self.components
        )

    def to_json(self) -> dict:
        return {
            "degree": list(self.degree),
            "fiber": [list(u) for u in self.fiber],
            "components": [list(c) for c in self.components],
            "beta0": self.beta0,
        }


def _union_find_components(
    size: int, unions: Iterator[tuple[int, int]]
) -> list[list[int]]:
    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in unions:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for i in range(size):
        groups.setdefault(find(i), []).append(i)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def fiber_graphs(
    config: ToricConfig,
    degrees: Sequence[tuple[int, ...]],
) -> tuple[tuple[FiberGraph, ...], tuple[Binomial, ...]]:
    """Process candidate degrees in a linear extension of the grading order.

    At each degree the fiber members are connected by moves coming from
    generators already discovered at smaller degrees.  Every fiber with more
    than one component contributes spanning-tree edges: a star rooted at the
    lexicographically least monomial of the lexicographically least
    component, with each other component represented by its least monomial.
    The collected edges form a minimal Markov basis.
    """

    ranked = sorted(set(tuple(int(x) for x in d) for d in degrees),
                    key=_degree_sort_key)
    discovered: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    minimal: list[Binomial] = []
    graphs: list[FiberGraph] = []

    for deg in ranked:
        members = fiber(config, deg)
        if not members:
            continue
        index = {u: i for i, u in enumerate(members)}

        def unions() -> Iterator[tuple[int, int]]:
            for i, u in enumerate(members):
                for p, q in discovered:
                    if all(x >= y for x, y in zip(u, p)):
                        v = tuple(x - y + z for x, y, z in zip(u, p, q))
                        j = index.get(v)
                        if j is None:
                            raise InternalInvariantError(
                                "generator move left the fiber"
                            )
                        yield i, j
                    if all(x >= y for x, y in zip(u, q)):
                        v = tuple(x - y + z for x, y, z in zip(u, q, p))
                        j = index.get(v)
                        if j is None:
                            raise InternalInvariantError(
                                "generator move left the fiber"
                            )
                        yield i, j

        components = _union_find_components(len(members), unions())
        graphs.append(
            FiberGraph(deg, members, tuple(tuple(c) for c in components))
        )
        if len(components) > 1:
            root_rep = members[components[0][0]]
            for comp in components[1:]:
                rep = members[comp[0]]
                b = make_binomial(rep, root_rep, config.degree)
                minimal.append(b)
                discovered.append((b.plus, b.minus))

    return tuple(graphs), tuple(
        sorted(minimal, key=lambda b: b.sort_key())
    )


def candidate_degrees(graver: Sequence[Binomial]) -> tuple[tuple[int, ...], ...]:
    return tuple(
        sorted({b.degree for b in graver}, key=_degree_sort_key)
    )


def universal_markov_fibers(
    config: ToricConfig, graphs: Sequence[FiberGraph]
) -> BasisSet:
    """Every difference joining two distinct components of a Betti fiber."""

    items: list[tuple[Binomial, dict]] = []
    for fg in graphs:
        if not fg.is_betti:
            continue
        for ci in range(len(fg.components)):
            for cj in range(ci + 1, len(fg.components)):
                for iu in fg.components[ci]:
                    for iv in fg.components[cj]:
                        b = make_binomial(
                            fg.fiber[iu], fg.fiber[iv], config.degree
                        )
                        items.append((b, {}))
    return make_basis_set("markov", config.ncols, items)


@dataclass(frozen=True)
class IndispensabilityReport:
    degrees: tuple[tuple[int, ...], ...]
    indispensable: tuple[Binomial, ...]

    def to_json(self, prefix: str = "e") -> dict:
        return {
            "degrees": [list(d) for d in self.degrees],
            "elements": [b.to_json(prefix) for b in self.indispensable],
        }


def indispensability_report(
    config: ToricConfig, graphs: Sequence[FiberGraph]
) -> IndispensabilityReport:
    """Binomials present in every minimal Markov basis.

    A degree contributes exactly when its fiber has precisely two
    components, both singletons; the element is then forced.
    """

    degrees: list[tuple[int, ...]] = []
    elements: list[Binomial] = []
    for fg in graphs:
        if fg.indispensable_degree:
            degrees.append(fg.degree)
            u = fg.fiber[fg.components[0][0]]
            v = fg.fiber[fg.components[1][0]]
            elements.append(make_binomial(u, v, config.degree))
    return IndispensabilityReport(
        tuple(degrees), tuple(sorted(elements, key=lambda b: b.sort_key()))
    )


def _subvectors_below(bound: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All vectors 0 <= w <= bound except the zero vector."""

    positions = [i for i, x in enumerate(bound) if x > 0]
    current = [0] * len(bound)

    def rec(k: int) -> Iterator[tuple[int, ...]]:
        if k == len(positions):
            if any(current):
                yield tuple(current)
            return
        i = positions[k]
        for val in range(bound[i] + 1):
            current[i] = val
            yield from rec(k + 1)
        current[i] = 0

    yield from rec(0)


def _fiber_within(
    config: ToricConfig, degree: tuple[int, ...], bound: tuple[int, ...]
) -> Iterator[tuple[int, ...]]:
    """Fiber members z with z <= bound componentwise."""

    for z in fiber(config, degree):
        if all(x <= y for x, y in zip(z, bound)):
            yield z


def primitivity_check(config: ToricConfig, binomial: Binomial) -> bool:
    """True when no other binomial in the ideal divides term by term.

    Searches for nonzero w <= plus and z <= minus with equal degrees,
    other than (plus, minus) itself.
    """

    u, v = binomial.plus, binomial.minus
    for w in _subvectors_below(u):
        d = config.degree(w)
        for z in _fiber_within(config, d, v):
            if z == v and w == u:
                continue
            return False
    return True


@dataclass(frozen=True)
class WeightOrder:
    """Weighted total order on monomials: weight first, lex tie-break."""

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.weights:
            raise OrderError("weight vector must be nonempty")
        for w in self.weights:
            if not isinstance(w, int) or isinstance(w, bool) or w <= 0:
                raise OrderError(
                    "weights must be strictly positive integers"
                )

    def key(self, mono: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        return (
            sum(w * x for w, x in zip(self.weights, mono)),
            mono,
        )

    def orient(
        self, p: tuple[int, ...], q: tuple[int, ...]
    ) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        if p == q:
            return None
        return (p, q) if self.key(p) > self.key(q) else (q, p)


_Pair = tuple[tuple[int, ...], tuple[int, ...]]


def _divides(d: tuple[int, ...], mono: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(d, mono))


def _reduce_step(
    mono: tuple[int, ...], basis: Sequence[_Pair], skip: int = -1
) -> tuple[int, ...] | None:
    for k, (lead, trail) in enumerate(basis):
        if k == skip:
            continue
        if _divides(lead, mono):
            return tuple(x - a + b for x, a, b in zip(mono, lead, trail))
    return None


def _normal_form(
    p: tuple[int, ...],
    q: tuple[int, ...],
    basis: Sequence[_Pair],
    order: WeightOrder,
) -> _Pair | None:
    while True:
        if p == q:
            return None
        if order.key(p) < order.key(q):
            p, q = q, p
        r = _reduce_step(p, basis)
        if r is not None:
            p = r
            continue
        r = _reduce_step(q, basis)
        if r is not None:
            q = r
            continue
        return (p, q)


def buchberger(
    generators: Sequence[Binomial], order: WeightOrder
) -> tuple[_Pair, ...]:
    """Reduced Groebner basis of a binomial ideal, as (lead, trail) pairs.

    All S-pairs and reductions of binomials stay binomial, so the loop works
    on exponent pairs only.  The reduced basis is unique for the order.
    """

    basis: list[_Pair] = []
    for g in generators:
        oriented = order.orient(g.plus, g.minus)
        if oriented is not None and oriented not in basis:
            basis.append(oriented)

    pending = deque(
        (i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))
    )
    while pending:
        i, j = pending.popleft()
        (lf, tf), (lg, tg) = basis[i], basis[j]
        lcm = tuple(max(a, b) for a, b in zip(lf, lg))
        if all(a + b == c for a, b, c in zip(lf, lg, lcm)):
            # Disjoint leading terms; the S-pair reduces to zero.
            continue
        sp = tuple(c - a + b for c, a, b in zip(lcm, lf, tf))
        sq = tuple(c - a + b for c, a, b in zip(lcm, lg, tg))
        nf = _normal_form(sp, sq, basis, order)
        if nf is not None and nf not in basis:
            basis.append(nf)
            new = len(basis) - 1
            pending.extend((k, new) for k in range(new))

    # Minimalize: drop entries whose lead another lead divides.
    ranked = sorted(range(len(basis)), key=lambda k: order.key(basis[k][0]))
    kept: list[_Pair] = []
    for k in ranked:
        lead = basis[k][0]
        if any(_divides(other[0], lead) for other in kept):
            continue
        kept.append(basis[k])

    # Tail-reduce each element against the other leads.
    reduced: list[_Pair] = []
    for idx, (lead, trail) in enumerate(kept):
        while True:
            r = _reduce_step(trail, kept, skip=idx)
            if r is None:
                break
            trail = r
            if trail == lead:
                raise InternalInvariantError(
                    "tail reduction collapsed a basis element"
                )
        reduced.append((lead, trail))
    return tuple(sorted(reduced))


@dataclass(frozen=True)
class GroebnerSample:
    weights: tuple[int, ...]
    elements: tuple[Binomial, ...]

    def to_json(self, prefix: str = "e") -> dict:
        return {
            "weights": list(self.weights),
            "elements": [b.to_json(prefix) for b in self.elements],
        }


def sample_groebner(
    config: ToricConfig,
    generators: Sequence[Binomial],
    samples: int,
    seed: int,
    weight_range: tuple[int, int] = (1, 100),
) -> tuple[GroebnerSample, ...]:
    """Reduced Groebner bases for seeded random positive weight orders."""

    rng = random.Random(seed)
    low, high = weight_range
    out = []
    for _ in range(samples):
        weights = tuple(rng.randint(low, high) for _ in range(config.ncols))
        order = WeightOrder(weights)
        pairs = buchberger(generators, order)
        elements = tuple(
            sorted(
                (make_binomial(p, q, config.degree) for p, q in pairs),
                key=lambda b: b.sort_key(),
            )
        )
        out.append(GroebnerSample(weights, elements))
    return tuple(out)


@dataclass(frozen=True)
class OracleAnalysis:
    """Everything the brute-force side computes for one configuration."""

    config: ToricConfig
    box: int
    graver: tuple[Binomial, ...]
    graphs: tuple[FiberGraph, ...]
    minimal_markov: tuple[Binomial, ...]
    universal_markov: BasisSet
    indispensable: IndispensabilityReport

    def to_json(self, prefix: str = "e") -> dict:
        return {
            "box": self.box,
            "graver": [b.to_json(prefix) for b in self.graver],
            "fibers": [g.to_json() for g in self.graphs if g.is_betti],
            "minimal_markov": [b.to_json(prefix) for b in self.minimal_markov],
            "universal_markov": self.universal_markov.to_json(prefix),
            "indispensable": self.indispensable.to_json(prefix),
        }


def analyze_config(config: ToricConfig, box: int = 2) -> OracleAnalysis:
    graver = graver_bounded(config, box)
    graphs, minimal = fiber_graphs(config, candidate_degrees(graver))
    universal = universal_markov_fibers(config, graphs)
    report = indispensability_report(config, graphs)
    return OracleAnalysis(
        config, box, graver, graphs, minimal, universal, report
    )
