import itertools

import pytest

from coxspine.graphs import InvariantError, standard_zero_star
from coxspine.splittings import (FreeSplitting, as_marked_graph,
                                 canonical_splitting, collapse_splitting,
                                 common_refinement, compatible,
                                 enumerate_splittings, equivalent_splittings,
                                 from_marked_graph, is_F_one_edge,
                                 is_spine_vertex, make_splitting,
                                 neighbor_stream, one_edge_collapses,
                                 rigidity_profile, splitting_from_json,
                                 splitting_from_partition, splitting_key,
                                 splitting_to_dot, splitting_to_json,
                                 two_edge_refinements)
from coxspine.words import conj_gen

N = 4
C = [conj_gen(i) for i in range(1, N + 1)]


def f_one_edge():
    return make_splitting(N, [(C[0], C[1], C[2]), (C[3],)], [(0, 1)])


def balanced():
    return make_splitting(N, [(C[0], C[1]), (C[2], C[3])], [(0, 1)])


def test_validate():
    with pytest.raises(InvariantError):  # no edge
        make_splitting(N, [tuple(C)], [])
    with pytest.raises(InvariantError):  # trivial leaf
        make_splitting(N, [tuple(C), ()], [(0, 1)])
    with pytest.raises(InvariantError):  # missing core
        make_splitting(N, [(C[0], C[1]), (C[2],)], [(0, 1)])


def test_marked_graph_roundtrip():
    zs = standard_zero_star(N)
    s = from_marked_graph(zs)
    assert is_spine_vertex(s)
    assert as_marked_graph(s) == zs
    assert not is_spine_vertex(f_one_edge())
    with pytest.raises(InvariantError):
        as_marked_graph(f_one_edge())


def test_collapse_splitting():
    s = from_marked_graph(standard_zero_star(N))
    t = collapse_splitting(s, [s.edges[0]])
    assert len(t.edges) == N - 1
    with pytest.raises(InvariantError):
        collapse_splitting(s, s.edges)  # point


def test_canonical_invariance_under_moves():
    # basis change inside a vertex keeps the class
    s = f_one_edge()
    moved = make_splitting(
        N, [(conj_gen(1, (2,)), C[1], C[2]), (C[3],)], [(0, 1)])
    assert equivalent_splittings(s, moved)
    # global conjugation keeps the class
    conj = make_splitting(
        N, [(conj_gen(1, (4,)), conj_gen(2, (4,)), conj_gen(3, (4,))),
            (C[3],)], [(0, 1)])
    assert equivalent_splittings(s, conj)
    assert not equivalent_splittings(s, balanced())
    c = canonical_splitting(moved)
    assert canonical_splitting(c) == c


def test_one_edge_collapses_and_partition_roundtrip():
    s = f_one_edge()
    (p,) = one_edge_collapses(s)
    assert equivalent_splittings(splitting_from_partition(p), s)


def test_enumerate_counts():
    assert len(enumerate_splittings(N, 1)) == 7  # 4 + 3 core bipartitions
    u2 = enumerate_splittings(N, 2)
    assert all(len(s.edges) <= 2 for s in u2)
    assert len(u2) > 7


def test_compatibility():
    p1 = one_edge_collapses(f_one_edge())[0]
    p2 = one_edge_collapses(balanced())[0]
    crossing = one_edge_collapses(
        make_splitting(N, [(C[0], C[2]), (C[1], C[3])], [(0, 1)]))[0]
    assert compatible(p1, p1)
    assert compatible(p1, p2)  # {1,2,3}|{4} nests with {1,2}|{3,4}
    assert not compatible(p2, crossing)
    refs = two_edge_refinements(p1, p2)
    assert refs
    for r in refs:
        assert set(one_edge_collapses(r)) == {p1, p2}


def test_common_refinement_unique():
    p1 = one_edge_collapses(f_one_edge())[0]
    p2 = one_edge_collapses(balanced())[0]
    r = common_refinement(N, [p1, p2])
    assert set(one_edge_collapses(r)) == {p1, p2}
    with pytest.raises(ValueError):
        common_refinement(N, [p1, p1])


def test_profiles():
    assert is_F_one_edge(f_one_edge())
    assert not is_F_one_edge(balanced())
    pf = rigidity_profile(f_one_edge())
    assert tuple(pf) == (True, True, True)
    pb = rigidity_profile(balanced())
    assert pb.infinite_link and not pb.star_adjacent
    assert pb.pinned_two_path is None
    spine = rigidity_profile(from_marked_graph(standard_zero_star(N)))
    assert not spine.infinite_link


def test_neighbor_stream():
    got = list(neighbor_stream(f_one_edge(), 25))
    keys = {splitting_key(s) for s in got}
    assert len(got) == len(keys) == 25
    base_part = one_edge_collapses(f_one_edge())[0]
    for s in got[:5]:
        assert base_part in one_edge_collapses(s)
    with pytest.raises(ValueError):
        next(neighbor_stream(from_marked_graph(standard_zero_star(N)), 1))


def test_serialization():
    s = f_one_edge()
    assert splitting_from_json(splitting_to_json(s)) == s
    assert splitting_to_dot(s).startswith("graph splitting")
