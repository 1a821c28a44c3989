"""Activation patterns, activation cones, and enumeration of the activation fan.

A pattern records, for each data point, the set of terms attaining the max.
Its cone in parameter space R^{N(d+1)} is cut out by the homogeneous rows
(a_{i*} - a_i) + <s_{i*} - s_i, p> >= 0 over edges (p, i*) and competitors i.

Full-dimensional cones correspond exactly to degree-one patterns whose system
is strictly feasible.  Enumeration walks canonical set partitions of the data
into at most N groups (term labels are interchangeable, so each unordered
partition is LP-checked once and then expanded to all injective labelings),
pruning with the necessary condition that the groups have pairwise disjoint
convex hulls before any LP runs.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterator, Optional, Sequence

from .geometry import (
    ConeDescriptor,
    ConstraintSystem,
    exact_rank,
    lp_feasible,
    max_slack,
    relint_point,
)
from .rationals import Rat, Vec, dot, vec, zeros
from .tropical import SignomialParams, TropicalRationalParams, eval_signomial


class CapExceededError(RuntimeError):
    """Enumeration hit the configured candidate cap."""


@dataclass(frozen=True)
class Dataset:
    points: tuple[Vec, ...]
    d: int

    def __post_init__(self):
        if not self.points:
            raise ValueError("dataset needs at least one point")
        for p in self.points:
            if len(p) != self.d:
                raise ValueError(f"point of length {len(p)} in dimension {self.d}")

    @property
    def M(self) -> int:
        return len(self.points)


def dataset(points, d: int | None = None) -> Dataset:
    pts = tuple(vec(p) for p in points)
    return Dataset(pts, len(pts[0]) if d is None else d)


@dataclass(frozen=True)
class ActivationPattern:
    """Bipartite graph on data positions x term indices; terms are 1-based."""

    M: int
    N: int
    neighbors: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.neighbors) != self.M:
            raise ValueError("one neighbor set per data point required")
        for nb in self.neighbors:
            if not nb:
                raise ValueError("every data point must activate at least one term")
            if not all(1 <= i <= self.N for i in nb):
                raise ValueError("term index out of range")

    def key(self) -> tuple[tuple[int, ...], ...]:
        """Canonical sort key: per-point neighbor sets in ascending order."""
        return tuple(tuple(sorted(nb)) for nb in self.neighbors)

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nb) for nb in self.neighbors)

    def is_degree_one(self) -> bool:
        return all(len(nb) == 1 for nb in self.neighbors)

    def assignment(self) -> tuple[int, ...]:
        if not self.is_degree_one():
            raise ValueError("assignment is only defined for degree-one patterns")
        return tuple(next(iter(nb)) for nb in self.neighbors)

    def union(self, other: "ActivationPattern") -> "ActivationPattern":
        if (self.M, self.N) != (other.M, other.N):
            raise ValueError("pattern shapes differ")
        return ActivationPattern(
            self.M, self.N, tuple(a | b for a, b in zip(self.neighbors, other.neighbors))
        )

    def relabel(self, perm: dict[int, int]) -> "ActivationPattern":
        return ActivationPattern(
            self.M, self.N, tuple(frozenset(perm[i] for i in nb) for nb in self.neighbors)
        )


def pattern_from_assignment(assign: Sequence[int], N: int) -> ActivationPattern:
    return ActivationPattern(len(assign), N, tuple(frozenset((t,)) for t in assign))


def complete_pattern(M: int, N: int) -> ActivationPattern:
    full = frozenset(range(1, N + 1))
    return ActivationPattern(M, N, (full,) * M)


@dataclass(frozen=True)
class FanCone:
    pattern: ActivationPattern
    descriptor: ConeDescriptor
    relint: Vec


def _as_signomial(theta) -> SignomialParams:
    if isinstance(theta, TropicalRationalParams):
        return theta.merged()
    if isinstance(theta, SignomialParams):
        return theta
    raise TypeError("expected signomial or tropical rational parameters")


def pattern_of(theta, data: Dataset) -> ActivationPattern:
    """Activation pattern of the parameters on the data; rational parameters
    are flattened with numerator terms first."""
    sig = _as_signomial(theta)
    if sig.d != data.d:
        raise ValueError(f"parameters in dimension {sig.d}, data in dimension {data.d}")
    nbrs = tuple(eval_signomial(sig, p)[1] for p in data.points)
    return ActivationPattern(data.M, sig.n, nbrs)


def theta_from_vector(v: Sequence[Fraction], N: int, d: int) -> SignomialParams:
    """Inverse of the block layout (a_1, s_1, ..., a_N, s_N)."""
    if len(v) != N * (d + 1):
        raise ValueError("parameter vector has wrong length")
    terms = []
    for i in range(N):
        block = v[i * (d + 1) : (i + 1) * (d + 1)]
        terms.append((block[0], tuple(block[1:])))
    return SignomialParams(tuple(terms), d)


def _edge_row(N: int, d: int, p: Vec, i_star: int, i: int) -> Vec:
    """Row of (a_{i*} - a_i) + <s_{i*} - s_i, p> as a vector over R^{N(d+1)}."""
    row = [Fraction(0)] * (N * (d + 1))
    base = (i_star - 1) * (d + 1)
    row[base] += 1
    for j, x in enumerate(p):
        row[base + 1 + j] += x
    base = (i - 1) * (d + 1)
    row[base] -= 1
    for j, x in enumerate(p):
        row[base + 1 + j] -= x
    return tuple(row)


def cone_constraints(G: ActivationPattern, data: Dataset) -> ConstraintSystem:
    """Nonstrict H-description of the activation cone of G (no strict rows).

    Row order is (point, edge term ascending, competitor ascending); the count
    is sum_p deg(p) * (N - 1).
    """
    if G.M != data.M:
        raise ValueError("pattern and dataset sizes differ")
    N, d = G.N, data.d
    rows = []
    for p, nb in zip(data.points, G.neighbors):
        for i_star in sorted(nb):
            for i in range(1, N + 1):
                if i != i_star:
                    rows.append(_edge_row(N, d, p, i_star, i))
    return ConstraintSystem(tuple(rows), (), N * (d + 1))


def cone_of_graph(H: ActivationPattern, data: Dataset) -> FanCone:
    """The fan cone cut out by H's inequalities, labeled by its closure pattern.

    The closure pattern is read off at a relative-interior point, where the
    activation pattern of the cone is attained exactly; the per-row slack LPs
    behind the relative-interior construction are what decides edge validity.
    """
    system = cone_constraints(H, data)
    point, _ = relint_point(system)
    closure = pattern_of(theta_from_vector(point, H.N, data.d), data)
    csys = cone_constraints(closure, data)
    implied = frozenset(r for r, f in enumerate(csys.nonstrict) if dot(f, point) == 0)
    dim = csys.ambient_dim - exact_rank([csys.nonstrict[r] for r in sorted(implied)])
    return FanCone(closure, ConeDescriptor(csys, dim, implied), point)


# ---------------------------------------------------------------------------
# Convex-hull separation pruning


def _bbox_disjoint(pts: Sequence[Vec], A: Sequence[int], B: Sequence[int], d: int) -> bool:
    for j in range(d):
        if max(pts[a][j] for a in A) < min(pts[b][j] for b in B):
            return True
        if max(pts[b][j] for b in B) < min(pts[a][j] for a in A):
            return True
    return False


def _hulls_disjoint(data: Dataset, A: Sequence[int], B: Sequence[int], memo: dict) -> bool:
    key = (frozenset(A), frozenset(B)) if len(A) <= len(B) else (frozenset(B), frozenset(A))
    hit = memo.get(key)
    if hit is not None:
        return hit
    pts = data.points
    if _bbox_disjoint(pts, A, B, data.d):
        memo[key] = True
        return True
    # Strict separation u.a - c > 0 > u.b - c as a homogeneous strict system in (u, c).
    rows = [pts[a] + (Fraction(-1),) for a in A]
    rows += [tuple(-x for x in pts[b]) + (Fraction(1),) for b in B]
    opt, _ = max_slack(data.d + 1, (), tuple(rows))
    memo[key] = opt > 0
    return opt > 0


def _parts_admissible(data: Dataset, parts: Sequence[Sequence[int]], changed: int, memo: dict) -> bool:
    """Pairwise hull-disjointness against the part that just changed."""
    for t, other in enumerate(parts):
        if t != changed and not _hulls_disjoint(data, parts[changed], other, memo):
            return False
    return True


# ---------------------------------------------------------------------------
# Enumeration of maximal cones


def _leaf_system(data: Dataset, parts: Sequence[Sequence[int]]) -> tuple[int, tuple[Vec, ...]]:
    """Strict system of the canonical labeling, gauge-fixed so the last used
    term's block is zero (the all-ones lineality direction makes this lossless)."""
    r = len(parts)
    d = data.d
    dim = (r - 1) * (d + 1)
    rows = []
    for t_star, part in enumerate(parts):
        for k in part:
            p = data.points[k]
            for t in range(r):
                if t == t_star:
                    continue
                row = [Fraction(0)] * dim
                if t_star < r - 1:
                    base = t_star * (d + 1)
                    row[base] += 1
                    for j, x in enumerate(p):
                        row[base + 1 + j] += x
                if t < r - 1:
                    base = t * (d + 1)
                    row[base] -= 1
                    for j, x in enumerate(p):
                        row[base + 1 + j] -= x
                rows.append(tuple(row))
    return dim, tuple(rows)


@dataclass(frozen=True)
class _CanonicalCone:
    """One strictly feasible unordered partition plus a strict witness.

    ``witness_blocks`` holds one (a, s) block per part under the canonical
    labeling part t -> term t+1; ``pad_a`` is a constant low enough that
    padding terms (a, 0) never reach the max on any data point.
    """

    parts: tuple[tuple[int, ...], ...]
    witness_blocks: tuple[Vec, ...]
    pad_a: Fraction


def _check_leaf(data: Dataset, parts: Sequence[Sequence[int]]) -> Optional[_CanonicalCone]:
    r = len(parts)
    dim, rows = _leaf_system(data, parts)
    if rows:
        opt, x = max_slack(dim, (), rows)
        if opt <= 0:
            return None
    else:
        x = ()
    d = data.d
    blocks = [tuple(x[t * (d + 1) : (t + 1) * (d + 1)]) for t in range(r - 1)]
    blocks.append(zeros(d + 1))
    mu = []
    for t, part in enumerate(parts):
        a, s = blocks[t][0], blocks[t][1:]
        for k in part:
            mu.append(a + dot(s, data.points[k]))
    pad_a = min(mu) - 1
    return _CanonicalCone(tuple(tuple(p) for p in parts), tuple(blocks), pad_a)


def _dfs_partitions(
    data: Dataset,
    N: int,
    start_parts: list[list[int]],
    next_point: int,
    memo: dict,
    budget: list[int],
    out: list[_CanonicalCone],
):
    M = data.M
    max_parts = min(N, M)
    stack_parts = start_parts

    def recurse(k: int):
        if k == M:
            budget[0] -= 1
            if budget[0] < 0:
                raise CapExceededError("candidate cap exceeded during fan enumeration")
            cone = _check_leaf(data, stack_parts)
            if cone is not None:
                out.append(cone)
            return
        for t in range(len(stack_parts)):
            stack_parts[t].append(k)
            if _parts_admissible(data, stack_parts, t, memo):
                recurse(k + 1)
            stack_parts[t].pop()
        if len(stack_parts) < max_parts:
            stack_parts.append([k])
            recurse(k + 1)
            stack_parts.pop()

    recurse(next_point)


def _canonical_prefixes(data: Dataset, N: int, depth: int, memo: dict) -> list[list[list[int]]]:
    prefixes: list[list[list[int]]] = []

    def recurse(parts: list[list[int]], k: int):
        if k == depth:
            prefixes.append([list(p) for p in parts])
            return
        for t in range(len(parts)):
            parts[t].append(k)
            if _parts_admissible(data, parts, t, memo):
                recurse(parts, k + 1)
            parts[t].pop()
        if len(parts) < min(N, data.M):
            parts.append([k])
            recurse(parts, k + 1)
            parts.pop()

    recurse([], 0)
    return prefixes


def _chunk_worker(args) -> list[_CanonicalCone]:
    data, N, prefix, depth, cap = args
    out: list[_CanonicalCone] = []
    _dfs_partitions(data, N, prefix, depth, {}, [cap], out)
    return out


def _enumerate_canonical(
    data: Dataset, N: int, cap: Optional[int], workers: int, progress: Optional[Callable[[str], None]]
) -> list[_CanonicalCone]:
    budget = cap if cap is not None else sys.maxsize
    if progress:
        progress(f"enumerating canonical partitions of {data.M} points into <= {N} groups")
    if workers <= 1:
        out: list[_CanonicalCone] = []
        _dfs_partitions(data, N, [], 0, {}, [budget], out)
        return out
    depth = 1
    memo: dict = {}
    prefixes = _canonical_prefixes(data, N, depth, memo)
    while depth < data.M and len(prefixes) < 4 * workers:
        depth += 1
        prefixes = _canonical_prefixes(data, N, depth, memo)
    import multiprocessing as mp

    tasks = [(data, N, prefix, depth, budget) for prefix in prefixes]
    with mp.Pool(workers) as pool:
        chunks = pool.map(_chunk_worker, tasks)
    out = []
    for chunk in chunks:
        out.extend(chunk)
    return out


class _FanIndex:
    """Enumerated maximal cones of (data, N), stored as canonical partitions."""

    def __init__(self, data: Dataset, N: int, reps: list[_CanonicalCone]):
        self.data = data
        self.N = N
        self.reps = reps

    def iter_assignments(self) -> Iterator[tuple[int, ...]]:
        """All degree-one maximal patterns as 1-based term assignments, one per
        injective relabeling of each canonical partition."""
        M = self.data.M
        for rep in self.reps:
            r = len(rep.parts)
            for perm in permutations(range(1, self.N + 1), r):
                assign = [0] * M
                for t, part in enumerate(rep.parts):
                    for k in part:
                        assign[k] = perm[t]
                yield tuple(assign)

    def witness_for(self, rep: _CanonicalCone, perm: Sequence[int]) -> Vec:
        """Full-space strict witness for the relabeling part t -> term perm[t]."""
        d = self.data.d
        blocks: list[Vec] = [(rep.pad_a,) + zeros(d)] * self.N
        for t, term in enumerate(perm):
            blocks[term - 1] = rep.witness_blocks[t]
        return tuple(x for b in blocks for x in b)

    def iter_patterns_with_witness(self) -> Iterator[tuple[tuple[int, ...], Vec]]:
        M = self.data.M
        for rep in self.reps:
            r = len(rep.parts)
            for perm in permutations(range(1, self.N + 1), r):
                assign = [0] * M
                for t, part in enumerate(rep.parts):
                    for k in part:
                        assign[k] = perm[t]
                yield tuple(assign), self.witness_for(rep, perm)


_FAN_CACHE: dict[tuple[Dataset, int], _FanIndex] = {}


def fan_index(
    data: Dataset,
    N: int,
    cap: Optional[int] = None,
    workers: int = 1,
    progress: Optional[Callable[[str], None]] = None,
    use_cache: bool = True,
) -> _FanIndex:
    key = (data, N)
    if use_cache and key in _FAN_CACHE:
        return _FAN_CACHE[key]
    reps = _enumerate_canonical(data, N, cap, workers, progress)
    index = _FanIndex(data, N, reps)
    if use_cache:
        _FAN_CACHE[key] = index
    return index


def enumerate_maximal_cones(
    data: Dataset,
    N: int,
    cap: Optional[int] = None,
    workers: int = 1,
    progress: Optional[Callable[[str], None]] = None,
) -> list[ActivationPattern]:
    """All degree-one patterns with strictly feasible cones, in canonical
    lexicographic order of their assignment sequences."""
    if N < 1:
        raise ValueError("N must be at least 1")
    index = fan_index(data, N, cap=cap, workers=workers, progress=progress)
    assigns = sorted(index.iter_assignments())
    return [pattern_from_assignment(a, N) for a in assigns]


def is_maximal_pattern(G: ActivationPattern, data: Dataset) -> bool:
    """True iff every degree is 1 and the all-strict competitor system is
    strictly feasible (so the cone is full-dimensional)."""
    if not G.is_degree_one():
        return False
    assign = G.assignment()
    groups: dict[int, list[int]] = {}
    for k, t in enumerate(assign):
        groups.setdefault(t, []).append(k)
    parts = list(groups.values())
    memo: dict = {}
    for t in range(len(parts)):
        if not _parts_admissible(data, parts, t, memo):
            return False
    return _check_leaf(data, parts) is not None


def enumerate_all_cones(
    data: Dataset,
    N: int,
    cap: Optional[int] = None,
    workers: int = 1,
) -> list[FanCone]:
    """Every cone of the fan: maximal cones closed under pairwise intersection
    (iterated to a fixpoint), plus the lineality cone of the complete pattern."""
    index = fan_index(data, N, cap=cap, workers=workers)
    cones: dict[tuple, FanCone] = {}
    for assign, witness in index.iter_patterns_with_witness():
        G = pattern_from_assignment(assign, N)
        csys = cone_constraints(G, data)
        cones[G.key()] = FanCone(G, ConeDescriptor(csys, csys.ambient_dim, frozenset()), witness)
    seen_pairs: set[tuple] = set()
    while True:
        items = list(cones.values())
        grew = False
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                pk = (items[i].pattern.key(), items[j].pattern.key())
                if pk in seen_pairs:
                    continue
                seen_pairs.add(pk)
                union = items[i].pattern.union(items[j].pattern)
                if union.key() in cones:
                    continue
                cone = cone_of_graph(union, data)
                if cone.pattern.key() not in cones:
                    cones[cone.pattern.key()] = cone
                    grew = True
                if cap is not None and len(cones) > cap:
                    raise CapExceededError("cone cap exceeded")
        if not grew:
            break
    K = complete_pattern(data.M, N)
    if K.key() not in cones:
        cones[K.key()] = cone_of_graph(K, data)
    return [cones[k] for k in sorted(cones)]


def _leaf_witness_signomial(G: ActivationPattern, data: Dataset) -> SignomialParams:
    """A strict witness for a maximal pattern, via the canonical-partition LP."""
    assign = G.assignment()
    order: list[int] = []
    for t in assign:
        if t not in order:
            order.append(t)
    parts = [[k for k, tk in enumerate(assign) if tk == t] for t in order]
    cone = _check_leaf(data, parts)
    if cone is None:
        raise ValueError("pattern is not maximal")
    index = _FanIndex(data, G.N, [cone])
    return theta_from_vector(index.witness_for(cone, order), G.N, data.d)


def _flatten_signomial(sig: SignomialParams) -> Vec:
    return tuple(x for a, s in sig.terms for x in (a,) + tuple(s))


def affine_dim(data: Dataset) -> int:
    p0 = data.points[0]
    diffs = [tuple(x - y for x, y in zip(p, p0)) for p in data.points[1:]]
    return exact_rank(diffs)


def lineality_dim(data: Dataset, N: int) -> int:
    """(d+1) + (N-1)(d - dim aff(D)); the largest subspace inside every cone."""
    return (data.d + 1) + (N - 1) * (data.d - affine_dim(data))


def polytope_vertex_of(G: ActivationPattern, data: Dataset, check: bool = True) -> Vec:
    """Vertex of the activation polytope dual to a maximal cone: the sum over
    points p of the block vector placing (1, p) in the slot of p's term."""
    if check and not is_maximal_pattern(G, data):
        raise ValueError("pattern is not maximal")
    N, d = G.N, data.d
    out = [Fraction(0)] * (N * (d + 1))
    for p, nb in zip(data.points, G.neighbors):
        i = next(iter(nb))
        base = (i - 1) * (d + 1)
        out[base] += 1
        for j, x in enumerate(p):
            out[base + 1 + j] += x
    return tuple(out)
