"""Axiom verification for covector sets and activation-pattern sets.

Covector sets are checked against the four oriented-matroid covector axioms
(zero, symmetry, composition, elimination).  Pattern sets are checked against
the six properties realized by activation fans: complete graph, relabeling
symmetry, composition, per-point elimination, boundary patterns, and
acyclicity of comparability graphs.  Failures carry a witness that reproduces
the violation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable

from .classify import Covector, compose, separation
from .fan import ActivationPattern, complete_pattern

# Full symmetric-group check is factorial; above this N a seeded sample is used.
_FULL_SYMMETRY_LIMIT = 5


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    witness: object = None


@dataclass(frozen=True)
class AxiomReport:
    results: tuple[AxiomResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.passed]

    def result(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def om_axioms_check(covectors: Iterable[Covector]) -> AxiomReport:
    covs = set(tuple(c) for c in covectors)
    if not covs:
        raise ValueError("empty covector set")
    M = len(next(iter(covs)))
    results = []

    zero = (0,) * M
    results.append(AxiomResult("zero", zero in covs, None if zero in covs else zero))

    bad = next((c for c in sorted(covs) if tuple(-x for x in c) not in covs), None)
    results.append(AxiomResult("symmetry", bad is None, bad))

    bad = None
    for c in sorted(covs):
        for d in sorted(covs):
            if compose(c, d) not in covs:
                bad = (c, d, compose(c, d))
                break
        if bad:
            break
    results.append(AxiomResult("composition", bad is None, bad))

    bad = None
    for c in sorted(covs):
        for d in sorted(covs):
            sep = separation(c, d)
            for i in sorted(sep):
                cd = compose(c, d)
                ok = any(
                    z[i] == 0 and all(z[j] == cd[j] for j in range(M) if j not in sep)
                    for z in covs
                )
                if not ok:
                    bad = (c, d, i)
                    break
            if bad:
                break
        if bad:
            break
    results.append(AxiomResult("elimination", bad is None, bad))

    return AxiomReport(tuple(results))


def pattern_compose(G: ActivationPattern, H: ActivationPattern) -> ActivationPattern:
    """Per point: G's set if disjoint from H's, else the intersection."""
    if (G.M, G.N) != (H.M, H.N):
        raise ValueError("pattern shapes differ")
    nbrs = []
    for a, b in zip(G.neighbors, H.neighbors):
        both = a & b
        nbrs.append(a if not both else both)
    return ActivationPattern(G.M, G.N, tuple(nbrs))


@dataclass(frozen=True)
class ComparabilityGraph:
    n_terms: int
    directed: frozenset[tuple[int, int]]
    undirected: frozenset[frozenset[int]]


def comparability_graph(G: ActivationPattern, H: ActivationPattern, p_index: int) -> ComparabilityGraph:
    """Edges j -> k for j active in G and k active in H at the point;
    undirected when both j and k are active in both patterns."""
    a, b = G.neighbors[p_index], H.neighbors[p_index]
    both = a & b
    directed = set()
    undirected = set()
    for j in a:
        for k in b:
            if j == k:
                continue
            if j in both and k in both:
                undirected.add(frozenset((j, k)))
            else:
                directed.add((j, k))
    return ComparabilityGraph(G.N, frozenset(directed), frozenset(undirected))


def is_acyclic(cg: ComparabilityGraph) -> bool:
    """Acyclicity after contracting undirected edges; a directed edge inside a
    contracted class is itself a cycle."""
    parent = list(range(cg.n_terms + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in cg.undirected:
        x, y = sorted(e)
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    arcs = set()
    for j, k in cg.directed:
        a, b = find(j), find(k)
        if a == b:
            return False
        arcs.add((a, b))
    # Kahn's algorithm on the contracted digraph.
    nodes = {x for arc in arcs for x in arc}
    indeg = {x: 0 for x in nodes}
    out: dict[int, list[int]] = {x: [] for x in nodes}
    for a, b in arcs:
        indeg[b] += 1
        out[a].append(b)
    queue = [x for x in nodes if indeg[x] == 0]
    seen = 0
    while queue:
        x = queue.pop()
        seen += 1
        for y in out[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    return seen == len(nodes)


def pattern_axioms_check(
    patterns: Iterable[ActivationPattern],
    maximal_only: bool = False,
    rng_seed: int = 0,
) -> AxiomReport:
    """Check the six activation-pattern properties on an enumerated set.

    With ``maximal_only`` the checks requiring non-maximal members (complete
    graph, boundary, elimination) are skipped; composition, symmetry and
    comparability remain meaningful on the degree-one patterns alone.
    """
    pats = list(patterns)
    if not pats:
        raise ValueError("empty pattern set")
    M, N = pats[0].M, pats[0].N
    keys = {p.key() for p in pats}
    results = []

    def have(p: ActivationPattern) -> bool:
        return p.key() in keys

    if not maximal_only:
        K = complete_pattern(M, N)
        results.append(AxiomResult("complete_graph", have(K), None if have(K) else K))

    # Relabeling symmetry: every term permutation maps the set onto itself.
    if N <= _FULL_SYMMETRY_LIMIT:
        perms = list(permutations(range(1, N + 1)))
    else:
        rng = random.Random(rng_seed)
        base = list(range(1, N + 1))
        perms = [tuple(base)]
        for _ in range(24):
            sample = base[:]
            rng.shuffle(sample)
            perms.append(tuple(sample))
    bad = None
    for perm in perms:
        mapping = {i + 1: perm[i] for i in range(N)}
        for p in pats:
            q = p.relabel(mapping)
            if not have(q):
                bad = (p, perm)
                break
        if bad:
            break
    results.append(AxiomResult("symmetry", bad is None, bad))

    bad = None
    for p in pats:
        for q in pats:
            r = pattern_compose(p, q)
            if not have(r):
                bad = (p, q, r)
                break
        if bad:
            break
    results.append(AxiomResult("composition", bad is None, bad))

    if not maximal_only:
        bad = None
        for p in pats:
            for q in pats:
                for k in range(M):
                    want = p.neighbors[k] | q.neighbors[k]
                    if not any(f.neighbors[k] == want for f in pats):
                        bad = (p, q, k)
                        break
                if bad:
                    break
            if bad:
                break
        results.append(AxiomResult("elimination", bad is None, bad))

        bad = None
        for size in range(1, N + 1):
            for S in combinations(range(1, N + 1), size):
                p = ActivationPattern(M, N, (frozenset(S),) * M)
                if not have(p):
                    bad = S
                    break
            if bad:
                break
        results.append(AxiomResult("boundary", bad is None, bad))

    bad = None
    for p in pats:
        for q in pats:
            for k in range(M):
                cg = comparability_graph(p, q, k)
                if not is_acyclic(cg):
                    bad = (p, q, k, cg)
                    break
            if bad:
                break
        if bad:
            break
    results.append(AxiomResult("comparability", bad is None, bad))

    return AxiomReport(tuple(results))
