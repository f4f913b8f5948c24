import pytest

from homdual.duality import (
    DualBuild,
    TruncatedPower,
    build_dual,
    lift_homomorphism,
    local_hom_check,
    local_hom_witnesses,
    locbound_equivalence,
    power_local_property,
    power_order,
    regular_partition_report,
    representatives,
    truncated_power,
    verify_duality,
)
from homdual.errors import BudgetExceededError, GraphError, SizeLimitError
from homdual.graphs import (
    build_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    path_graph,
)
from homdual.homs import VertexMap, check_homomorphism, find_homomorphism, is_isomorphic


# --- local homomorphism checks ----------------------------------------------

def test_local_hom_check():
    C5, K2 = cycle_graph(5), complete_graph(2)
    # every 4 vertices of C5 induce a forest, which is bipartite
    assert local_hom_check(C5, [0, 1, 2, 3, 4], 4, K2) == (True, None)
    # at p = 5 the whole odd cycle must map, and cannot
    ok, bad = local_hom_check(C5, [0, 1, 2, 3, 4], 5, K2)
    assert not ok and bad == frozenset(range(5))
    # under a proper 3-coloring, any 2 classes induce a bipartite subgraph
    assert local_hom_check(C5, [0, 1, 0, 1, 2], 2, K2) == (True, None)
    # a value set smaller than p means the whole graph is checked
    ok, bad = local_hom_check(complete_graph(3), [0, 0, 0], 2, K2)
    assert not ok and bad == frozenset([0])


def test_local_hom_check_errors():
    with pytest.raises(GraphError):
        local_hom_check(path_graph(3), [0, 1], 1, complete_graph(2))
    with pytest.raises(BudgetExceededError):
        local_hom_check(cycle_graph(5), [0, 1, 2, 3, 4], 5,
                        complete_graph(3), budget=1)


# --- truncated powers ---------------------------------------------------------

def test_power_order():
    assert power_order(2, 3, 2) == 12
    assert power_order(1, 5, 1) == 5
    assert power_order(3, 4, 4) == 12  # single subset: B = 1
    with pytest.raises(SizeLimitError):
        power_order(3, 40, 20)


def test_truncated_power_shape():
    TP = truncated_power(complete_graph(2), complete_graph(3), 2)
    assert TP.D.n == 12 and TP.coords == 2 and TP.block == 4
    assert check_homomorphism(TP.alpha)
    assert TP.subsets == ((0, 1), (0, 2), (1, 2))
    assert TP.subsets_through(1) == [(0, 1), (1, 2)]


def test_truncated_power_rejects_bad_parameters():
    with pytest.raises(GraphError):
        truncated_power(complete_graph(2), complete_graph(3), 0)
    with pytest.raises(GraphError):
        truncated_power(complete_graph(2), complete_graph(3), 4)
    with pytest.raises(GraphError):
        truncated_power(empty_graph(0), complete_graph(3), 2)
    with pytest.raises(SizeLimitError):
        truncated_power(complete_graph(3), complete_graph(6), 2, cap=100)


def test_encode_decode_roundtrip():
    TP = truncated_power(path_graph(3), complete_graph(3), 2)
    for z in range(TP.D.n):
        v, digits = TP.decode(z)
        assert TP.encode(v, digits) == z
        for pos, I in enumerate(TP.subsets_through(v)):
            assert TP.coordinate(z, I) == digits[pos]


def test_power_local_property():
    for U in (complete_graph(1), complete_graph(2), path_graph(3)):
        for H, p in ((complete_graph(3), 2), (complete_graph(2), 2),
                     (complete_graph(4), 3)):
            assert power_local_property(truncated_power(U, H, p))


def test_projection_of_single_vertex_base():
    # with a one-vertex base the power collapses onto the template
    for H in (complete_graph(3), cycle_graph(5), path_graph(4)):
        TP = truncated_power(complete_graph(1), H, 1)
        assert is_isomorphic(TP.D, H)


# --- lifting -------------------------------------------------------------------

def test_lift_homomorphism():
    C5, K3 = cycle_graph(5), complete_graph(3)
    TP = truncated_power(complete_graph(2), K3, 2)
    gamma = VertexMap(C5, K3, (0, 1, 0, 1, 2))
    f = lift_homomorphism(C5, gamma, TP)
    assert check_homomorphism(f)
    assert tuple(TP.alpha.image[f.image[x]] for x in range(5)) == gamma.image


def test_lift_rejects_non_homomorphism():
    C5, K3 = cycle_graph(5), complete_graph(3)
    TP = truncated_power(complete_graph(2), K3, 2)
    with pytest.raises(GraphError):
        lift_homomorphism(C5, VertexMap(C5, K3, (0, 0, 1, 1, 2)), TP)
    with pytest.raises(GraphError):
        lift_homomorphism(C5, VertexMap(C5, complete_graph(4), (0, 1, 0, 1, 2)), TP)


def test_local_hom_witnesses():
    C5, K3, K2 = cycle_graph(5), complete_graph(3), complete_graph(2)
    gamma = VertexMap(C5, K3, (0, 1, 0, 1, 2))
    subsets = [(0, 1), (0, 2), (1, 2)]
    wit = local_hom_witnesses(C5, gamma, 2, K2, subsets)
    assert set(wit) == set(subsets)
    for I, g in wit.items():
        for u, v in C5.edges():
            if u in g and v in g:
                assert K2.has_edge(g[u], g[v])


# --- the power / local-homomorphism equivalence ---------------------------------

def test_locbound_equivalence_examples():
    assert locbound_equivalence(cycle_graph(5), complete_graph(2),
                                complete_graph(3), 2) == (True, True)
    assert locbound_equivalence(empty_graph(2), complete_graph(1),
                                complete_graph(2), 2) == (True, True)
    # an odd cycle with large odd girth does not fit a bipartite-local bound
    assert locbound_equivalence(complete_graph(3), complete_graph(1),
                                complete_graph(3), 2) == (False, False)
    # a triangle against a bipartite base still fits at p = 2: pairs of
    # color classes only ever induce single edges
    assert locbound_equivalence(complete_graph(3), complete_graph(2),
                                complete_graph(3), 2) == (True, True)


def test_locbound_sides_agree(catalog4):
    for G in catalog4:
        if G.n > 3:
            continue
        for U in (complete_graph(1), complete_graph(2)):
            for H in (complete_graph(2), complete_graph(3)):
                lhs, rhs = locbound_equivalence(G, U, H, 2)
                assert lhs == rhs, (G, U, H)


# --- representatives and the dual pipeline --------------------------------------

def test_representatives_known_sets():
    reps = representatives(1, 5)
    assert len(reps) == 1 and is_isomorphic(reps[0], complete_graph(1))
    reps = representatives(2, 5)
    assert [r.n for r in reps] == [1, 2]
    assert is_isomorphic(reps[1], complete_graph(2))
    reps = representatives(3, 6)
    assert len(reps) == 3
    for r, expect in zip(reps, (1, 2, 3)):
        assert is_isomorphic(r, complete_graph(expect))


def test_build_dual_degenerate():
    build = build_dual([complete_graph(1)], [complete_graph(2)])
    assert build.p == 2
    assert build.base.n == 1  # only K1 avoids an edge
    assert build.provenance["template_size"] == 2
    assert build.D.n == 2 and build.D.edge_count() == 0


def test_build_dual_rejects_bad_forbidden_sets():
    with pytest.raises(GraphError):
        build_dual([complete_graph(1)], [])
    disconnected, _ = disjoint_union([path_graph(2), path_graph(2)])
    with pytest.raises(GraphError):
        build_dual([complete_graph(1)], [disconnected])


def test_build_dual_triangle_free_small():
    corpus = [path_graph(n) for n in range(1, 5)] + [cycle_graph(4), cycle_graph(5)]
    f_set = [complete_graph(3)]
    build = build_dual(corpus, f_set)
    assert build.p == 3
    assert find_homomorphism(complete_graph(3), build.D).status == "absent"
    report = verify_duality(corpus, f_set, build.D)
    assert report.verdict and all(report.forbidden_ok)
    assert all(item["consistent"] for item in report.items)


def test_verify_duality_catches_bad_dual():
    # a dual containing the forbidden graph itself cannot pass
    report = verify_duality([path_graph(2)], [complete_graph(3)],
                            complete_graph(3))
    assert not report.verdict
    assert report.forbidden_ok == (False,)
    assert report.to_dict()["verdict"] == "fail"


def test_verify_duality_flags_inconsistent_member():
    # K3 is a forbidden member, and maps into any graph with a triangle
    corpus = [complete_graph(3), path_graph(2)]
    report = verify_duality(corpus, [complete_graph(4)], complete_graph(3))
    by_index = {item["index"]: item for item in report.items}
    assert by_index[0]["forb_member"] and by_index[0]["hom_to_dual"]
    assert by_index[0]["consistent"]
    witness = by_index[1]["witness"]
    assert witness is not None and len(witness) == 2


# --- regular partitions ----------------------------------------------------------

def test_regular_partition_report():
    from homdual.coloring import make_coloring

    P4 = path_graph(4)
    c = make_coloring(P4, [0, 1, 2, 0])
    reps = [complete_graph(1), complete_graph(2)]
    rep = regular_partition_report(P4, c, 2, reps)
    assert rep["ok"] and not rep["unmatched"]
    assert all(e["representative"] is not None for e in rep["entries"])
    # a representative set with no edge cannot cover the path's components
    rep = regular_partition_report(P4, c, 2, [complete_graph(1)])
    assert not rep["ok"] and rep["unmatched"]
    with pytest.raises(GraphError):
        regular_partition_report(P4, make_coloring(P4, [0, 1, 0, 1]), 2, reps)
