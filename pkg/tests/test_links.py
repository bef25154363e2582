import itertools

import pytest

from coxspine.graphs import (collapse, collapses_onto, make_graph,
                             standard_zero_star)
from coxspine.links import (classify, join_decompositions, kn_ball,
                            kn_neighbors, link_graph, link_to_dot,
                            link_to_json, linked, negative_link,
                            positive_link, positive_link_bounded,
                            positive_link_depth1)
from coxspine.spine import KIND_F_STAR, KIND_OTHER, KIND_ZERO_STAR
from coxspine.words import conj_gen

N = 4


def test_zero_star_links():
    zs = standard_zero_star(N)
    minus = negative_link(zs)
    assert len(minus) == N
    assert all(classify(g) == KIND_F_STAR for g in minus)
    assert not any(linked(a, b) for a, b in itertools.combinations(minus, 2))


def test_f_star_links():
    zs = standard_zero_star(N)
    fs = collapse(zs, [zs.edges[0]])
    assert negative_link(fs) == []
    d1 = positive_link_depth1(fs)
    stars = [g for g in d1 if classify(g) == KIND_ZERO_STAR]
    assert len(stars) == 2 ** (N - 2)


def test_positive_link_closure_is_collapse_set():
    zs = standard_zero_star(N)
    plus = positive_link(zs)
    assert plus
    for g in plus:
        assert collapses_onto(g, zs)
    for g in positive_link_depth1(zs):
        assert collapses_onto(g, zs)


def test_positive_link_bounded_monotone():
    zs = standard_zero_star(N)
    d1 = positive_link_bounded(zs, 1)
    d2 = positive_link_bounded(zs, 2)
    assert len(d1) <= len(d2)


def test_linked_matches_definitional_search():
    zs = standard_zero_star(N)
    pool = kn_neighbors(zs) + [zs]
    for a, b in itertools.permutations(pool, 2):
        assert linked(a, b) == (collapses_onto(a, b) or collapses_onto(b, a))


def test_kn_ball_contains_center_and_grows():
    zs = standard_zero_star(N)
    b1 = kn_ball(zs, 1)
    b2 = kn_ball(zs, 2)
    assert len(b1) == len(kn_neighbors(zs)) + 1
    assert len(b2) > len(b1)


def test_classify_structural():
    zs = standard_zero_star(N)
    assert classify(zs) == KIND_ZERO_STAR
    fs = collapse(zs, [zs.edges[0]])
    assert classify(fs) == KIND_F_STAR
    path = make_graph(4, [conj_gen(i) for i in range(1, 5)],
                      [(0, 1), (1, 2), (2, 3)])
    assert classify(path) == KIND_OTHER


def test_join_decompositions_abstract():
    # complete bipartite K_{2,2}: complement has two components
    edges = [(0, 2), (0, 3), (1, 2), (1, 3)]
    decs = join_decompositions(4, edges)
    assert decs == [(frozenset({0, 1}), frozenset({2, 3}))]
    # path on 3 vertices is the join of its middle vertex with the ends
    assert join_decompositions(3, [(0, 1), (1, 2)]) == \
        [(frozenset({0, 2}), frozenset({1}))]
    # path on 4 vertices has a connected complement, hence no join
    assert join_decompositions(4, [(0, 1), (1, 2), (2, 3)]) == []


def test_link_graph_join_is_polarity_split():
    zs = standard_zero_star(N)
    lg = link_graph(zs)
    plus = frozenset(i for i, p in enumerate(lg.polarity) if p == "plus")
    minus = frozenset(i for i, p in enumerate(lg.polarity) if p == "minus")
    decs = join_decompositions(len(lg.vertices), lg.edges)
    assert len(decs) == 1
    assert set(map(frozenset, decs[0])) == {plus, minus}


def test_link_serialization():
    zs = standard_zero_star(N)
    lg = link_graph(zs)
    data = link_to_json(lg)
    assert len(data["vertices"]) == len(lg.vertices)
    assert link_to_dot(lg).startswith("graph link")
