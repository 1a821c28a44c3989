from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from tropfan.geometry import (
    ConstraintSystem,
    cone_dim,
    describe_cone,
    exact_rank,
    implied_equalities,
    lp_feasible,
    max_slack,
    relint_point,
)
from tropfan.rationals import dot

small_rats = st.fractions(min_value=-6, max_value=6, max_denominator=3)


def rows_strategy(dim, max_rows):
    row = st.tuples(*[small_rats] * dim)
    return st.lists(row, min_size=0, max_size=max_rows).map(tuple)


# --- brute-force oracle: the slack LP optimum via basic-solution enumeration


def brute_max_slack(dim, nonstrict, strict):
    """Enumerate basic solutions of the slack LP over (x, t), boxed so every
    optimal face contains a vertex; exact and independent of the simplex.

    The box bound dwarfs any Cramer ratio of the small test systems, so
    clipping never cuts below the true optimum.
    """
    box = F(10**9)
    rows = []  # (coeffs over x + t, rhs) meaning coeffs . y <= rhs
    for f in nonstrict:
        rows.append((tuple(-c for c in f) + (F(0),), F(0)))
    for f in strict:
        rows.append((tuple(-c for c in f) + (F(1),), F(0)))
    rows.append(((F(0),) * dim + (F(1),), F(1)))
    rows.append(((F(0),) * dim + (F(-1),), F(0)))  # t >= 0
    for i in range(dim):
        unit = tuple(F(1) if j == i else F(0) for j in range(dim))
        rows.append((unit + (F(0),), box))
        rows.append((tuple(-u for u in unit) + (F(0),), box))
    nvars = dim + 1
    best = F(0)  # y = 0 always feasible
    for subset in combinations(range(len(rows)), nvars):
        mat = [list(rows[i][0]) + [rows[i][1]] for i in subset]
        sol = solve_square(mat, nvars)
        if sol is None:
            continue
        if all(dot(r[0], sol) <= r[1] for r in rows):
            best = max(best, sol[-1])
    return best


def solve_square(mat, n):
    m = [row[:] for row in mat]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pe = m[col][col]
        m[col] = [x / pe for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))


@settings(max_examples=60, deadline=None)
@given(rows_strategy(2, 3), rows_strategy(2, 3))
def test_max_slack_matches_vertex_enumeration(nonstrict, strict):
    opt, witness = max_slack(2, nonstrict, strict)
    assert opt == brute_max_slack(2, nonstrict, strict)
    for f in nonstrict:
        assert dot(f, witness) >= 0
    for f in strict:
        assert dot(f, witness) >= opt


def test_nonneg_halfline_feasible():
    system = ConstraintSystem(((F(1),),), (), 1)
    w = lp_feasible(system)
    assert w is not None and w[0] >= 0


def test_contradictory_strict_pair_infeasible():
    system = ConstraintSystem((), ((F(1),), (F(-1),)), 1)
    assert lp_feasible(system) is None


def test_running_cone_witness(two_points, running_theta4):
    """The running pattern {p1 -> 1, p2 -> 3} admits a strict witness; the
    example parameters with the second coefficient nudged off the tie are one."""
    from tropfan.fan import cone_constraints, pattern_from_assignment

    G = pattern_from_assignment((1, 3), 4)
    system = cone_constraints(G, two_points)
    strict = ConstraintSystem((), system.nonstrict, system.ambient_dim)
    witness = lp_feasible(strict)
    assert witness is not None
    nudged = (F(0), F(-1), F(1), F(-1, 10), F(0), F(0), F(-1), F(3, 2), F(1, 2), F(-2), F(0), F(2))
    for row in strict.strict:
        assert dot(row, nudged) > 0


def test_implied_equalities_pair():
    system = ConstraintSystem(((F(1),), (F(-1),)), (), 1)
    assert implied_equalities(system) == {0, 1}


def test_implied_equalities_orthant():
    system = ConstraintSystem(((F(1), F(0)), (F(0), F(1))), (), 2)
    assert implied_equalities(system) == frozenset()


def test_implied_equalities_monotone():
    base = ((F(1), F(1)), (F(-1), F(0)))
    bigger = base + ((F(0), F(-1)),)
    before = implied_equalities(ConstraintSystem(base, (), 2))
    after = implied_equalities(ConstraintSystem(bigger, (), 2))
    assert {tuple(base[i]) for i in before} <= {tuple(bigger[i]) for i in after}


@settings(max_examples=40, deadline=None)
@given(rows_strategy(3, 4))
def test_relint_point_certificates(rows):
    system = ConstraintSystem(rows, (), 3)
    point, implied = relint_point(system)
    for r, f in enumerate(rows):
        v = dot(f, point)
        assert v >= 0
        if r in implied:
            assert v == 0
        else:
            assert v > 0


@settings(max_examples=30, deadline=None)
@given(rows_strategy(2, 4))
def test_implied_equalities_match_per_row_oracle(rows):
    system = ConstraintSystem(rows, (), 2)
    implied = implied_equalities(system)
    for r, f in enumerate(rows):
        others = rows[:r] + rows[r + 1 :]
        oracle_opt = brute_max_slack(2, others, (f,))
        assert (r in implied) == (oracle_opt == 0)


def test_degenerate_cycling_instance_terminates():
    """Beale's classic degenerate program cycles under naive most-positive
    pivoting; the stall fallback must terminate it at the true optimum."""
    from tropfan.geometry import _Simplex

    def row(*fracs):
        scale = 100
        return [int(F(x) * scale) for x in fracs]

    a_rows = [
        row("1/4", -60, "-1/25", 9),
        row("1/2", -90, "-1/50", 3),
        row(0, 0, 1, 0),
    ]
    b = [0, 0, 1]
    c = row("3/4", -150, "1/50", -6)
    sx = _Simplex(a_rows, b, c)
    opt = sx.solve()
    # row and objective scaling cancel, so the classic optimum is unchanged
    assert opt == F(1, 20)


def test_pivot_exactness_guard_runs():
    """The optional per-division exactness check must accept a normal run."""
    import subprocess
    import sys

    code = (
        "from fractions import Fraction as F\n"
        "from tropfan.geometry import max_slack\n"
        "opt, x = max_slack(3, ((F(1),F(2),F(3)),), ((F(1,3),F(-1),F(5)), (F(2),F(0),F(-7))))\n"
        "print(opt > 0)\n"
    )
    proc = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"TROPFAN_CHECK_PIVOTS": "1", "PATH": "/usr/bin:/bin"},
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "True"


def test_cone_dim_empty_system():
    assert cone_dim(ConstraintSystem((), (), 12)) == 12


def test_cone_dim_hyperplane_in_dim3():
    system = ConstraintSystem(((F(1), F(0), F(0)), (F(-1), F(0), F(0))), (), 3)
    assert cone_dim(system) == 2


def test_cone_dim_never_exceeds_ambient_minus_implied_rank():
    rows = ((F(1), F(1)), (F(-1), F(-1)), (F(1), F(0)))
    desc = describe_cone(ConstraintSystem(rows, (), 2))
    normals = [rows[i] for i in desc.implied_equalities]
    assert desc.dimension <= 2 - exact_rank(normals)


def test_exact_rank():
    assert exact_rank([(F(1), F(2)), (F(2), F(4))]) == 1
    assert exact_rank([(F(1), F(2)), (F(0), F(1)), (F(3), F(1))]) == 2
    assert exact_rank([]) == 0
    assert exact_rank([(F(0), F(0))]) == 0


@settings(max_examples=30, deadline=None)
@given(rows_strategy(3, 5))
def test_rank_agrees_with_fraction_elimination(rows):
    """Bareiss rank against a plain Fraction Gaussian elimination."""
    mat = [list(r) for r in rows]
    rank = 0
    cols = 3
    row = 0
    for col in range(cols):
        piv = next((r for r in range(row, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        for r in range(row + 1, len(mat)):
            if mat[r][col] != 0:
                f = mat[r][col] / mat[row][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[row])]
        row += 1
        rank += 1
    assert exact_rank(rows) == rank
