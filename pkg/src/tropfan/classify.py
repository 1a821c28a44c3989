"""Classification fans: sign partition of terms, 0/1-loss level sets, wall
adjacency, strong connectivity, and the linear (N = 2) chamber machinery.

Terms 1..n are numerator ("positive") terms, terms n+1..n+m denominator.  A
data point whose activating terms sit entirely in the wrong block is a
mistake; mixed activation sets are ties and count as correct, which is what
makes every level set a subfan.

Wall adjacency between two maximal cones is decided by one strict LP: the
shared facet exists iff the tie hyperplane of the differing points can be made
the only binding constraint.  Two maximal cones can share a facet only when
all their differing data points are the same vector and swap the same two
terms; any other difference forces codimension >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .fan import (
    ActivationPattern,
    Dataset,
    FanCone,
    cone_constraints,
    cone_of_graph,
    complete_pattern,
    enumerate_all_cones,
    fan_index,
    lineality_dim,
    pattern_from_assignment,
)
from .geometry import exact_rank, max_slack
from .rationals import Rat, Vec, dot
from .tropical import TropicalRationalParams, classify as classify_point

Dichotomy = tuple[int, ...]  # entries in {-1, +1}
Covector = tuple[int, ...]  # entries in {-1, 0, +1}


def parse_signs(text: str) -> Dichotomy:
    """Parse "+,-,+" style strings; "0" entries are allowed for covectors."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok == "+":
            out.append(1)
        elif tok == "-":
            out.append(-1)
        elif tok == "0":
            out.append(0)
        else:
            raise ValueError(f"bad sign token {tok!r}")
    return tuple(out)


def format_signs(signs: Sequence[int]) -> str:
    return ",".join("+" if s > 0 else "-" if s < 0 else "0" for s in signs)


def separation(C: Sequence[int], D: Sequence[int]) -> frozenset[int]:
    """0-based positions where the covectors carry opposite nonzero signs."""
    return frozenset(k for k, (c, d) in enumerate(zip(C, D)) if c == -d != 0)


def compose(C: Sequence[int], D: Sequence[int]) -> Covector:
    return tuple(c if c != 0 else d for c, d in zip(C, D))


def loss_of_pattern(G: ActivationPattern, target: Sequence[int], n: int, m: int) -> int:
    """Mistake count of every parameter in G's cone: points whose activation
    set lies entirely in the block opposite their target sign."""
    if G.N != n + m:
        raise ValueError("split (n, m) inconsistent with pattern")
    if len(target) != G.M:
        raise ValueError("target length differs from pattern size")
    wrong = 0
    for nb, c in zip(G.neighbors, target):
        if c > 0 and all(i > n for i in nb):
            wrong += 1
        elif c < 0 and all(i <= n for i in nb):
            wrong += 1
    return wrong


def loss_of_theta(theta: TropicalRationalParams, target: Sequence[int], data: Dataset) -> int:
    if len(target) != data.M:
        raise ValueError("target length differs from dataset size")
    return sum(
        1 for p, c in zip(data.points, target) if classify_point(theta, p) == -c
    )


def loss(obj, target: Sequence[int], n: int | None = None, m: int | None = None,
         data: Dataset | None = None) -> int:
    if isinstance(obj, ActivationPattern):
        if n is None or m is None:
            raise ValueError("pattern loss needs the (n, m) split")
        return loss_of_pattern(obj, target, n, m)
    if data is None:
        raise ValueError("parameter loss needs the dataset")
    return loss_of_theta(obj, target, data)


def dichotomy_of_assignment(assign: Sequence[int], n: int) -> Dichotomy:
    return tuple(1 if t <= n else -1 for t in assign)


def _assignment_loss(assign: Sequence[int], target: Sequence[int], n: int) -> int:
    wrong = 0
    for t, c in zip(assign, target):
        if (c > 0) != (t <= n):
            wrong += 1
    return wrong


# ---------------------------------------------------------------------------
# Wall adjacency


def _wall_shape(a: Sequence[int], b: Sequence[int], data: Dataset):
    """Candidate wall data (diff positions, term pair) or None.

    A shared facet requires every differing position to carry the same point
    vector and to swap the same unordered pair of terms; otherwise the tie
    normals already have rank >= 2.
    """
    diffs = [k for k, (x, y) in enumerate(zip(a, b)) if x != y]
    if not diffs:
        return None
    k0 = diffs[0]
    pair = frozenset((a[k0], b[k0]))
    pvec = data.points[k0]
    for k in diffs[1:]:
        if frozenset((a[k], b[k])) != pair or data.points[k] != pvec:
            return None
    return diffs, tuple(sorted(pair))


def _wall_lp(a: Sequence[int], diffs: Sequence[int], pair: tuple[int, int],
             data: Dataset, N: int) -> bool:
    """Strict feasibility of: tie (i, j) at the differing points as an
    equality, every other competitor inequality strict.  Gauge-fixed by
    zeroing the last term block."""
    d = data.d
    dim = (N - 1) * (d + 1)
    i, j = pair

    def reduced_row(p: Vec, hi: int, lo: int) -> Vec:
        row = [Fraction(0)] * dim
        if hi < N:
            base = (hi - 1) * (d + 1)
            row[base] += 1
            for jj, x in enumerate(p):
                row[base + 1 + jj] += x
        if lo < N:
            base = (lo - 1) * (d + 1)
            row[base] -= 1
            for jj, x in enumerate(p):
                row[base + 1 + jj] -= x
        return tuple(row)

    diffset = set(diffs)
    equalities = []
    strict = []
    for k in range(data.M):
        p = data.points[k]
        if k in diffset:
            equalities.append(reduced_row(p, i, j))
            for l in range(1, N + 1):
                if l not in (i, j):
                    strict.append(reduced_row(p, i, l))
        else:
            t = a[k]
            for l in range(1, N + 1):
                if l != t:
                    strict.append(reduced_row(p, t, l))
    opt, _ = max_slack(dim, (), tuple(strict), tuple(equalities))
    return opt > 0


def wall_adjacent(
    G: ActivationPattern, H: ActivationPattern, data: Dataset, n: int, m: int
) -> tuple[bool, int]:
    """(adjacent, dimension of the intersection cone) for two maximal patterns."""
    N = n + m
    ambient = N * (data.d + 1)
    a, b = G.assignment(), H.assignment()
    if a == b:
        return False, ambient
    shape = _wall_shape(a, b, data)
    if shape is not None:
        diffs, pair = shape
        if _wall_lp(a, diffs, pair, data, N):
            return True, ambient - 1
    return False, _intersection_dim(G, H, data, N)


def _intersection_dim(G: ActivationPattern, H: ActivationPattern, data: Dataset, N: int) -> int:
    """Dimension of C(G) n C(H), with a rank sandwich before the LP route."""
    union = G.union(H)
    lo = lineality_dim(data, N)
    ties = []
    for p, nb in zip(data.points, union.neighbors):
        ordered = sorted(nb)
        for hi in ordered[1:]:
            ties.append(_full_row(p, ordered[0], hi, N, data.d))
    up = N * (data.d + 1) - exact_rank(ties)
    if up <= lo:
        return lo
    return cone_of_graph(union, data).descriptor.dimension


def _full_row(p: Vec, i_star: int, i: int, N: int, d: int) -> Vec:
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


def _adjacency_edges(assigns: list[tuple[int, ...]], data: Dataset, N: int) -> list[tuple[int, int]]:
    """All wall-adjacent index pairs within one list of maximal assignments."""
    edges = []
    for x in range(len(assigns)):
        for y in range(x + 1, len(assigns)):
            shape = _wall_shape(assigns[x], assigns[y], data)
            if shape is None:
                continue
            diffs, pair = shape
            if _wall_lp(assigns[x], diffs, pair, data, N):
                edges.append((x, y))
    return edges


def _union_find_components(count: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    parent = list(range(count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in edges:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in range(count):
        groups.setdefault(find(x), []).append(x)
    return [tuple(groups[r]) for r in sorted(groups)]


# ---------------------------------------------------------------------------
# Level sets


@dataclass(frozen=True)
class LevelSetReport:
    k: int
    patterns: tuple[ActivationPattern, ...]
    components: tuple[tuple[int, ...], ...]
    adjacency: tuple[tuple[int, int, int], ...]
    faces: tuple[FanCone, ...] | None = None

    @property
    def count(self) -> int:
        return len(self.patterns)


def level_set(
    data: Dataset,
    n: int,
    m: int,
    target: Sequence[int],
    k: int,
    cap: Optional[int] = None,
    workers: int = 1,
    progress=None,
) -> LevelSetReport:
    """All maximal patterns of loss exactly k, with wall adjacency restricted
    to the level set itself and its strongly connected components."""
    if len(target) != data.M:
        raise ValueError("target length differs from dataset size")
    N = n + m
    index = fan_index(data, N, cap=cap, workers=workers, progress=progress)
    assigns = sorted(a for a in index.iter_assignments() if _assignment_loss(a, target, n) == k)
    if progress:
        progress(f"level {k}: {len(assigns)} maximal cones; computing wall adjacency")
    edges = _adjacency_edges(assigns, data, N)
    ambient = N * (data.d + 1)
    components = _union_find_components(len(assigns), edges)
    return LevelSetReport(
        k=k,
        patterns=tuple(pattern_from_assignment(a, N) for a in assigns),
        components=tuple(components),
        adjacency=tuple((x, y, ambient - 1) for x, y in edges),
    )


def perfect_fan(
    data: Dataset,
    n: int,
    m: int,
    target: Sequence[int],
    include_faces: bool = False,
    cap: Optional[int] = None,
    workers: int = 1,
    progress=None,
) -> LevelSetReport:
    """The loss-0 level set; with ``include_faces`` the weakly compatible
    closures of pairwise intersections are attached as well."""
    report = level_set(data, n, m, target, 0, cap=cap, workers=workers, progress=progress)
    if not include_faces:
        return report
    faces: dict[tuple, FanCone] = {}
    pats = report.patterns
    for x in range(len(pats)):
        for y in range(x + 1, len(pats)):
            cone = cone_of_graph(pats[x].union(pats[y]), data)
            if _weakly_compatible(cone.pattern, target, n):
                faces.setdefault(cone.pattern.key(), cone)
    return LevelSetReport(
        k=0,
        patterns=report.patterns,
        components=report.components,
        adjacency=report.adjacency,
        faces=tuple(faces[kk] for kk in sorted(faces)),
    )


def _weakly_compatible(G: ActivationPattern, target: Sequence[int], n: int) -> bool:
    for nb, c in zip(G.neighbors, target):
        if c > 0 and not any(i <= n for i in nb):
            return False
        if c < 0 and not any(i > n for i in nb):
            return False
    return True


def connected_components(
    patterns: Sequence[ActivationPattern], data: Dataset, n: int, m: int
) -> list[tuple[int, ...]]:
    """Partition of the (maximal) patterns into classes reachable through
    codimension-1 walls, as tuples of indices into the input order."""
    assigns = [g.assignment() for g in patterns]
    edges = _adjacency_edges(assigns, data, n + m)
    return _union_find_components(len(assigns), edges)


def count_dichotomies(data: Dataset, n: int, m: int, cap: Optional[int] = None,
                      workers: int = 1) -> int:
    """Number of distinct dichotomies induced by maximal cones of the
    classification fan (the growth-function count for this dataset)."""
    index = fan_index(data, n + m, cap=cap, workers=workers)
    seen = set()
    for assign in index.iter_assignments():
        seen.add(dichotomy_of_assignment(assign, n))
    return len(seen)


# ---------------------------------------------------------------------------
# Linear case: N = 2 covectors and chamber walking


def covector_of(theta: Sequence[Fraction], data: Dataset) -> Covector:
    """Signs of <theta, (1, p)> over the dataset, theta in R^{d+1}."""
    out = []
    for p in data.points:
        v = theta[0] + dot(theta[1:], p)
        out.append((v > 0) - (v < 0))
    return tuple(out)


def covectors_linear(data: Dataset) -> list[Covector]:
    """Covectors of every cone of the N = 2 activation fan, via the
    translation {1} -> +, {2} -> -, {1, 2} -> 0."""
    cones = enumerate_all_cones(data, 2)
    covs = set()
    for cone in cones:
        cov = []
        for nb in cone.pattern.neighbors:
            cov.append(0 if len(nb) == 2 else (1 if 1 in nb else -1))
        covs.add(tuple(cov))
    return sorted(covs)


def _lifted(p: Vec) -> Vec:
    return (Fraction(1),) + tuple(p)


def _signed_rows(data: Dataset, signs: dict[int, int]) -> tuple[Vec, ...]:
    return tuple(
        tuple(s * x for x in _lifted(data.points[k])) for k, s in sorted(signs.items())
    )


def is_realizable_covector(cov: Sequence[int], data: Dataset) -> bool:
    strict = _signed_rows(data, {k: c for k, c in enumerate(cov) if c != 0})
    eq = _signed_rows(data, {k: 1 for k, c in enumerate(cov) if c == 0})
    opt, _ = max_slack(data.d + 1, (), strict, eq)
    return opt > 0 if strict else True


def _wall_relint_theta(D_cov: Covector, S: frozenset[int], i: int, data: Dataset) -> Vec:
    """Point on the wall used by the elimination step: zero on p_i (and its
    coincident copies), strictly signed like D off the separation set, and
    nonzero on as many separation coordinates as the wall allows."""
    M = data.M
    p_i = data.points[i]
    A = frozenset(k for k in range(M) if data.points[k] == p_i)
    if not A <= S | {i}:
        bad = sorted(A - (S | {i}))
        raise ValueError(f"coincident points {bad} contradict the requested wall")
    eqs = _signed_rows(data, {k: 1 for k in sorted(A)})
    fixed = {k: D_cov[k] for k in range(M) if k not in S and k not in A}
    strict = _signed_rows(data, fixed)
    opt, theta = max_slack(data.d + 1, (), strict, eqs)
    if opt <= 0 and strict:
        raise ValueError("wall is not realizable; is the start covector maximal?")

    def val(th, k):
        return th[0] + dot(th[1:], data.points[k])

    pending = [k for k in sorted(S - A) if val(theta, k) == 0]
    for k in pending:
        if val(theta, k) != 0:
            continue
        fixed_rows = list(strict)
        direction = None
        for sign in (1, -1):
            probe = tuple(sign * x for x in _lifted(data.points[k]))
            opt2, th2 = max_slack(data.d + 1, (), tuple(fixed_rows) + (probe,), eqs)
            if opt2 > 0:
                direction = th2
                break
        if direction is None:
            continue  # forced zero on the whole wall
        # Blend in a step small enough to keep every currently nonzero value's sign.
        eps = Fraction(1)
        for kk in range(M):
            cur, step = val(theta, kk), val(direction, kk)
            if cur != 0 and step != 0:
                bound = abs(cur) / (2 * abs(step))
                eps = min(eps, bound)
        theta = tuple(x + eps * y for x, y in zip(theta, direction))
    return theta


def chamber_path(start: Covector, target: Dichotomy, data: Dataset) -> list[Covector]:
    """Wall-connected sequence of maximal covectors from start to target whose
    separation from the target strictly shrinks at every step."""
    if len(start) != data.M or len(target) != data.M:
        raise ValueError("covector length differs from dataset size")
    if any(s == 0 for s in start):
        raise ValueError("start must be a maximal covector")
    if any(s == 0 for s in target):
        raise ValueError("target must be a dichotomy")
    if not is_realizable_covector(target, data):
        raise ValueError("target dichotomy is not realizable on this data")
    if not is_realizable_covector(start, data):
        raise ValueError("start covector is not realizable on this data")

    def walk(D_cov: Covector, C_cov: Covector) -> list[Covector]:
        S = separation(C_cov, D_cov)
        if not S:
            return [D_cov]
        i = min(S)
        theta_z = _wall_relint_theta(D_cov, S, i, data)
        Z = covector_of(theta_z, data)
        ZD = compose(Z, D_cov)
        ZC = compose(Z, C_cov)
        return walk(D_cov, ZD) + walk(ZC, C_cov)

    return walk(tuple(start), tuple(target))
