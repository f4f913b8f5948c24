import math
import random
from fractions import Fraction

import pytest

from homdual.errors import GraphError
from homdual.graphs import (
    BallFamily,
    bits,
    build_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    enumerate_ball_families,
    mask_of,
    path_graph,
    quotient,
)
from homdual.sparsity import (
    RootedForest,
    TdCertificate,
    closure,
    degeneracy,
    expansion_profile,
    grad_0_flow,
    grad_r,
    min_indegree_orientation,
    tree_depth,
    tree_depth_value,
    verify_td,
)

from oracles import brute_densest, brute_tree_depth


def subdivided_k4():
    """K4 with every edge subdivided once: 10 vertices, 12 edges."""
    edges = []
    mid = 4
    for u in range(4):
        for v in range(u + 1, 4):
            edges += [(u, mid), (mid, v)]
            mid += 1
    return build_graph(10, edges)


# --- rooted forests and certificates ---------------------------------------

def test_rooted_forest():
    F = RootedForest((None, 0, 1, 0))
    assert F.height_of(2) == 3 and F.height_of(0) == 1
    assert F.height() == 3
    assert F.ancestors_mask(2) == mask_of([0, 1])
    with pytest.raises(GraphError):
        RootedForest((1, 0))  # two-cycle
    with pytest.raises(GraphError):
        RootedForest((0,))  # self-parent


def test_closure():
    # a chain becomes a complete graph
    F = RootedForest((None, 0, 1))
    assert closure(F) == complete_graph(3)
    # a star of leaves stays a star
    F = RootedForest((None, 0, 0, 0))
    assert closure(F) == build_graph(4, [(0, 1), (0, 2), (0, 3)])


def test_verify_td():
    P4 = path_graph(4)
    good = TdCertificate(3, RootedForest((1, None, 1, 2)))
    assert verify_td(P4, good)
    # wrong claimed value
    assert not verify_td(P4, TdCertificate(2, RootedForest((1, None, 1, 2))))
    # closure misses the edge {2,3}
    assert not verify_td(P4, TdCertificate(3, RootedForest((1, None, 1, 1))))
    # wrong vertex count
    assert not verify_td(P4, TdCertificate(1, RootedForest((None,))))


# --- tree-depth -------------------------------------------------------------

def test_tree_depth_known_values():
    assert tree_depth(complete_graph(1)).value == 1
    assert tree_depth(path_graph(4)).value == 3
    assert tree_depth(complete_graph(4)).value == 4
    assert tree_depth(cycle_graph(6)).value == 4
    assert tree_depth(empty_graph(0)).value == 0
    assert tree_depth(empty_graph(5)).value == 1
    G, _ = disjoint_union([complete_graph(3), path_graph(2)])
    assert tree_depth(G).value == 3  # max over components


def test_tree_depth_path_formula():
    for n in range(1, 11):
        assert tree_depth(path_graph(n)).value == math.ceil(math.log2(n + 1))


def test_tree_depth_matches_forest_oracle(catalog5):
    for G in catalog5:
        cert = tree_depth(G)
        assert cert.optimal and verify_td(G, cert)
        assert cert.value == brute_tree_depth(G)


def test_tree_depth_value_cached():
    assert tree_depth_value(cycle_graph(5)) == 4
    assert tree_depth_value(cycle_graph(5)) == 4


def test_greedy_tree_depth_fallback():
    G = path_graph(20)
    cert = tree_depth(G)
    assert not cert.optimal
    assert verify_td(G, cert)
    assert cert.value >= math.ceil(math.log2(21))


# --- grads ------------------------------------------------------------------

def test_grad_0_known_values():
    assert grad_r(complete_graph(4), 0).value == Fraction(3, 2)
    assert grad_r(empty_graph(4), 0).value == 0
    assert grad_r(path_graph(2), 0).value == Fraction(1, 2)
    assert grad_r(cycle_graph(6), 0).value == 1


def test_grad_0_matches_densest_subgraph(catalog5):
    for G in catalog5:
        res = grad_r(G, 0)
        assert res.exact
        assert res.value == brute_densest(G)


def test_grad_witness_attains_value():
    for G in (complete_graph(4), cycle_graph(5), subdivided_k4()):
        for r in (0, 1):
            res = grad_r(G, r)
            q = quotient(G, res.witness)
            if q.n:
                assert Fraction(q.edge_count(), q.n) == res.value


def test_grad_1_known_values():
    # contracting opposite halves of C6 only ever yields sparser cycles
    assert grad_r(cycle_graph(6), 1).value == 1
    # radius-1 balls around branch vertices recover K4
    assert grad_r(subdivided_k4(), 1).value == Fraction(3, 2)


def test_grad_matches_naive_family_enumeration(catalog4):
    """The packing recursion agrees with plain ball-family enumeration."""
    for G in catalog4:
        for r in (0, 1):
            best = Fraction(0)
            for fam in enumerate_ball_families(G, r):
                q = quotient(G, fam)
                if q.n:
                    best = max(best, Fraction(q.edge_count(), q.n))
            assert grad_r(G, r).value == best


def test_grad_0_flow():
    assert grad_0_flow(complete_graph(4)) == Fraction(3, 2)
    assert grad_0_flow(path_graph(2)) == Fraction(1, 2)
    assert grad_0_flow(cycle_graph(5)) == 1
    assert grad_0_flow(empty_graph(3)) == 0


def test_grad_0_flow_matches_exhaustive(catalog6):
    for G in catalog6:
        assert grad_0_flow(G) == grad_r(G, 0).value


# --- orientations and degeneracy ---------------------------------------------

def test_min_indegree_orientation():
    orient, k = min_indegree_orientation(cycle_graph(5))
    assert k == 1 and orient.max_indegree() == 1
    orient, k = min_indegree_orientation(complete_graph(4))
    assert k == 2 and orient.max_indegree() == 2
    star = build_graph(6, [(0, i) for i in range(1, 6)])
    orient, k = min_indegree_orientation(star)
    assert k == 1
    orient, k = min_indegree_orientation(empty_graph(3))
    assert k == 0 and orient.arcs == ()


def test_orientation_indegree_is_ceil_grad(catalog5):
    for G in catalog5:
        orient, k = min_indegree_orientation(G)
        assert k == math.ceil(grad_0_flow(G))
        assert orient.max_indegree() == k


def test_degeneracy():
    assert degeneracy(complete_graph(4))[0] == 3
    assert degeneracy(cycle_graph(6))[0] == 2
    assert degeneracy(path_graph(5))[0] == 1
    assert degeneracy(empty_graph(2))[0] == 0
    d, order = degeneracy(complete_graph(3))
    assert sorted(order) == [0, 1, 2]


def test_degeneracy_bounded_by_grad(catalog6):
    for G in catalog6:
        d, _ = degeneracy(G)
        assert d <= math.floor(2 * grad_0_flow(G))


# --- expansion profiles ------------------------------------------------------

def test_expansion_profile_values():
    assert expansion_profile(complete_graph(4), 2) == [Fraction(3, 2)] * 3
    assert expansion_profile(empty_graph(1), 3) == [Fraction(0)] * 4
    prof = expansion_profile(subdivided_k4(), 1)
    assert prof[0] == Fraction(6, 5) and prof[1] == Fraction(3, 2)


def test_expansion_profile_monotone_random():
    rng = random.Random(11)
    for _ in range(15):
        n = rng.randint(4, 8)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.35]
        G = build_graph(n, edges)
        prof = expansion_profile(G, 2)
        assert all(a <= b for a, b in zip(prof, prof[1:]))
