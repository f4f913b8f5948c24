import itertools
import random

import pytest

from homdual.coloring import (
    Coloring,
    centered_from_td,
    find_low_td_coloring,
    make_coloring,
    product_centered,
    verify_low_td,
    verify_p_centered,
)
from homdual.errors import GraphError, SizeLimitError
from homdual.graphs import (
    build_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    mask_of,
    path_graph,
)
from homdual.sparsity import tree_depth


def test_make_coloring_densifies():
    G = path_graph(3)
    c = make_coloring(G, [7, 2, 7])
    assert c.colors == (0, 1, 0) and c.k == 2
    assert c.class_mask(0) == mask_of([0, 2])


def test_coloring_rejects_gaps():
    with pytest.raises(AssertionError):
        Coloring(path_graph(2), (0, 2), 3)


def test_verify_p_centered():
    P4 = path_graph(4)
    proper = make_coloring(P4, [0, 1, 0, 1])
    assert verify_p_centered(P4, proper, 2) == (True, None)
    # the same coloring is not 3-centered: the whole path repeats both colors
    ok, counter = verify_p_centered(P4, proper, 3)
    assert not ok and counter is not None
    cols = [proper.colors[v] for v in range(4) if counter >> v & 1]
    assert len(set(cols)) < 3 and all(cols.count(c) > 1 for c in set(cols))
    # rainbow is p-centered for every p
    rainbow = make_coloring(P4, [0, 1, 2, 3])
    for p in range(1, 6):
        assert verify_p_centered(P4, rainbow, p)[0]


def test_verify_p_centered_monotone_in_p():
    """Passing at p implies passing at every smaller p."""
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 6)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.5]
        G = build_graph(n, edges)
        c = make_coloring(G, [rng.randrange(3) for _ in range(n)])
        results = [verify_p_centered(G, c, p)[0] for p in range(1, n + 2)]
        assert all(a or not b for a, b in zip(results, results[1:]))


def test_verify_p_centered_size_cap():
    with pytest.raises(SizeLimitError):
        verify_p_centered(empty_graph(17), make_coloring(empty_graph(17), [0] * 17), 2)


def test_centered_from_td_small():
    P3 = path_graph(3)
    cert = tree_depth(P3)
    c = centered_from_td(P3, cert)
    assert c.k == cert.value == 2
    for p in range(1, 5):
        assert verify_p_centered(P3, c, p)[0]
    K4 = complete_graph(4)
    c = centered_from_td(K4, tree_depth(K4))
    assert c.k == 4  # levels of a clique witness form a rainbow


def test_centered_from_td_rejects_bad_certificate():
    P4 = path_graph(4)
    cert = tree_depth(path_graph(3))
    with pytest.raises(GraphError):
        centered_from_td(P4, cert)


def test_centered_from_td_all_small_graphs(catalog5):
    for G in catalog5:
        cert = tree_depth(G)
        c = centered_from_td(G, cert)
        assert c.k == cert.value or G.n == 0
        for p in range(1, G.n + 1):
            assert verify_p_centered(G, c, p)[0], (G, p)


def test_verify_low_td():
    P4 = path_graph(4)
    ok, report = verify_low_td(P4, make_coloring(P4, [0, 1, 2, 0]), 2)
    assert ok and report.violation is None
    ok, report = verify_low_td(P4, make_coloring(P4, [0, 1, 0, 1]), 2)
    assert not ok
    assert report.violation.td == 3 and report.violation.classes == (0, 1)
    # a single class holding an edge already fails at i = 1
    ok, report = verify_low_td(P4, make_coloring(P4, [0, 0, 1, 2]), 2)
    assert not ok and len(report.violation.classes) == 1


def test_find_low_td_coloring_known_sizes():
    res = find_low_td_coloring(path_graph(4), 2)
    assert res.exhaustive and res.coloring.k == 3
    star = build_graph(5, [(0, i) for i in range(1, 5)])
    res = find_low_td_coloring(star, 2)
    assert res.coloring.k == 2
    # cliques force a rainbow at every threshold
    for p in (1, 2, 4):
        res = find_low_td_coloring(complete_graph(4), p)
        assert res.coloring.k == 4
    res = find_low_td_coloring(empty_graph(3), 3)
    assert res.coloring.k == 1
    assert find_low_td_coloring(path_graph(4), 2, k_max=2) is None


def test_find_low_td_coloring_is_minimal():
    """Cross-check minimality against plain enumeration of all colorings."""
    for G in (path_graph(4), cycle_graph(5), complete_graph(3),
              build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])):
        for p in (1, 2, 3):
            res = find_low_td_coloring(G, p)
            best = None
            for k in range(1, G.n + 1):
                for colors in itertools.product(range(k), repeat=G.n):
                    if len(set(colors)) != k:
                        continue
                    if verify_low_td(G, make_coloring(G, list(colors)), p)[0]:
                        best = k
                        break
                if best is not None:
                    break
            assert res.coloring.k == best, (G, p)


def test_find_low_td_coloring_greedy_fallback():
    G = cycle_graph(14)  # above the exhaustive cutoff
    res = find_low_td_coloring(G, 2)
    assert res is not None and not res.exhaustive
    assert verify_low_td(G, res.coloring, 2)[0]


def test_product_centered():
    for G in (path_graph(4), cycle_graph(6), complete_graph(4)):
        for p in (2, 3):
            base = find_low_td_coloring(G, p).coloring
            c = product_centered(G, base, p)
            assert verify_p_centered(G, c, p)[0], (G, p)
    with pytest.raises(GraphError):
        P4 = path_graph(4)
        product_centered(P4, make_coloring(P4, [0, 1, 0, 1]), 2)


def test_product_centered_disconnected():
    G, _ = disjoint_union([path_graph(3), complete_graph(3)])
    base = find_low_td_coloring(G, 2).coloring
    c = product_centered(G, base, 2)
    assert verify_p_centered(G, c, 2)[0]
