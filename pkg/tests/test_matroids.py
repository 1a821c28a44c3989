import pytest

from tropfan.classify import covectors_linear, parse_signs
from tropfan.fan import (
    ActivationPattern,
    complete_pattern,
    dataset,
    enumerate_all_cones,
    pattern_from_assignment,
)
from tropfan.matroids import (
    ComparabilityGraph,
    comparability_graph,
    is_acyclic,
    om_axioms_check,
    pattern_axioms_check,
    pattern_compose,
)


def test_om_zero_only():
    report = om_axioms_check({(0,)})
    assert report.all_passed


def test_om_single_plus_fails():
    report = om_axioms_check({(1,)})
    assert not report.result("zero").passed
    assert not report.result("symmetry").passed


def test_om_realizable_arrangement():
    covs = covectors_linear(dataset([(1,), (2,)]))
    assert om_axioms_check(covs).all_passed


def test_om_all_line_datasets(five_line, four_line):
    for data in (five_line, four_line):
        assert om_axioms_check(covectors_linear(data)).all_passed


def test_om_witness_reproduces():
    covs = set(covectors_linear(dataset([(1,), (2,)])))
    covs.discard((0, 0))
    report = om_axioms_check(covs)
    assert not report.result("zero").passed
    assert report.result("zero").witness == (0, 0)


def test_pattern_compose_rules():
    G = ActivationPattern(1, 3, (frozenset({1, 2}),))
    H = ActivationPattern(1, 3, (frozenset({2, 3}),))
    assert pattern_compose(G, H).neighbors == (frozenset({2}),)
    G2 = ActivationPattern(1, 3, (frozenset({1}),))
    H2 = ActivationPattern(1, 3, (frozenset({3}),))
    assert pattern_compose(G2, H2).neighbors == (frozenset({1}),)


def test_pattern_compose_with_complete_graph(two_points):
    G = pattern_from_assignment((1, 3), 4)
    K = complete_pattern(2, 4)
    assert pattern_compose(G, K) == G


def test_comparability_identical_patterns():
    G = ActivationPattern(1, 3, (frozenset({1, 2}),))
    cg = comparability_graph(G, G, 0)
    assert cg.directed == frozenset()
    assert cg.undirected == {frozenset({1, 2})}
    assert is_acyclic(cg)


def test_comparability_single_arc():
    G = ActivationPattern(1, 3, (frozenset({1}),))
    H = ActivationPattern(1, 3, (frozenset({2}),))
    cg = comparability_graph(G, H, 0)
    assert cg.directed == {(1, 2)}
    assert is_acyclic(cg)


def test_comparability_fabricated_cycle_flagged():
    cg = ComparabilityGraph(2, frozenset({(1, 2), (2, 1)}), frozenset())
    assert not is_acyclic(cg)


def test_comparability_directed_edge_inside_contraction():
    cg = ComparabilityGraph(2, frozenset({(1, 2)}), frozenset({frozenset({1, 2})}))
    assert not is_acyclic(cg)


def test_pattern_axioms_single_point():
    cones = enumerate_all_cones(dataset([(0,)]), 2)
    report = pattern_axioms_check([c.pattern for c in cones])
    assert report.all_passed


def test_pattern_axioms_two_points_three_terms(two_points):
    cones = enumerate_all_cones(two_points, 3)
    report = pattern_axioms_check([c.pattern for c in cones])
    assert report.all_passed, report.failed()


def test_pattern_axioms_three_points_two_terms():
    D = dataset([(0, 0), (1, 0), (0, 1)])
    cones = enumerate_all_cones(D, 2)
    report = pattern_axioms_check([c.pattern for c in cones])
    assert report.all_passed, report.failed()


def test_pattern_axioms_negative_control_missing_complete(two_points):
    cones = enumerate_all_cones(two_points, 3)
    K = complete_pattern(2, 3)
    pats = [c.pattern for c in cones if c.pattern != K]
    report = pattern_axioms_check(pats)
    assert not report.result("complete_graph").passed
    assert report.result("complete_graph").witness == K


def test_pattern_axioms_maximal_only(two_points):
    from tropfan.fan import enumerate_maximal_cones

    pats = enumerate_maximal_cones(two_points, 3)
    report = pattern_axioms_check(pats, maximal_only=True)
    names = {r.name for r in report.results}
    assert names == {"symmetry", "composition", "comparability"}
    assert report.all_passed


def test_tom_boundary_types_on_slice():
    """Far along a coordinate direction every tropical hyperplane activates
    only that coordinate, so all constant types ({j},...,{j}) occur."""
    from fractions import Fraction as F

    from tropfan.dual import tropical_type

    apices = [(F(0), F(3)), (F(-2), F(1)), (F(5), F(5))]
    d = 2
    for j in range(1, d + 1):
        spread = max(abs(a[k]) for a in apices for k in range(d))
        x = tuple(F(4 * spread + 1) if k == j - 1 else F(0) for k in range(d))
        assert tropical_type(apices, x) == (frozenset({j}),) * len(apices)
