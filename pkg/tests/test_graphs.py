import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxspine.graphs import (CollapseError, InvariantError, act,
                             all_edge_partitions, canonical_key,
                             canonical_lift, canonicalize, collapse,
                             collapses_onto, edge_partition, equivalent,
                             factor_partition, graph_from_json, graph_to_dot,
                             graph_to_json, make_graph, one_edge_blowups,
                             partition_contains, standard_zero_star)
from coxspine.words import (compose, conj_gen, identity, inner, sigma,
                            transposition)

N = 4


def zs(n=N):
    return standard_zero_star(n)


def test_standard_zero_star_shape():
    g = zs()
    assert g.num_vertices == N + 1
    assert len(g.edges) == N
    assert sorted(c.core for c in g.labels if c is not None) == [1, 2, 3, 4]


def test_validate_rejects_bad_graphs():
    c = [conj_gen(i) for i in range(1, 5)]
    with pytest.raises(InvariantError):  # unlabeled degree-2 vertex
        make_graph(4, [None, c[0], c[1], c[2], c[3]],
                   [(0, 1), (0, 2), (2, 3), (3, 4)])
    with pytest.raises(InvariantError):  # disconnected
        make_graph(4, c, [(0, 1), (0, 1), (2, 3)])
    with pytest.raises(InvariantError):  # duplicate core
        make_graph(4, [c[0], c[0], c[1], c[2], None],
                   [(0, 4), (1, 4), (2, 4), (3, 4)])


def _moves(n):
    out = [sigma(n, j, i) for i in range(1, n + 1)
           for j in range(1, n + 1) if i != j]
    out += [transposition(n, i, j)
            for i, j in itertools.combinations(range(1, n + 1), 2)]
    return out


@given(st.lists(st.sampled_from(_moves(N)), max_size=3),
       st.lists(st.integers(1, N), max_size=4))
@settings(max_examples=40, deadline=None)
def test_inner_action_preserves_class(ms, w):
    g = zs()
    f = identity(N)
    for m in ms:
        f = compose(f, m)
    g = act(f, g)
    h = act(inner(N, tuple(w)), g)
    assert equivalent(g, h)
    assert canonical_key(g) == canonical_key(h)


def test_canonicalize_idempotent():
    g = act(sigma(N, 2, 1), zs())
    c = canonicalize(g)
    assert canonicalize(c) == c


def test_branch_twist_equivalence():
    # conjugating one branch at a labeled vertex by its label is a twist
    c = [conj_gen(i) for i in range(1, 5)]
    g = make_graph(4, [None, c[0], c[1], c[2], c[3]],
                   [(0, 1), (0, 2), (0, 3), (3, 4)])
    twisted = make_graph(
        4, [None, c[0], c[1], c[2], conj_gen(4, (3,))],
        [(0, 1), (0, 2), (0, 3), (3, 4)])
    assert equivalent(g, twisted)


def test_collapse_zero_star_gives_f_star():
    g = zs()
    h = collapse(g, [g.edges[0]])
    assert h.num_vertices == N
    assert sum(1 for c in h.labels if c is None) == 0


def test_collapse_rejects_label_merge():
    c = [conj_gen(i) for i in range(1, 5)]
    g = make_graph(4, [c[0], c[1], c[2], c[3], None],
                   [(0, 1), (1, 4), (2, 4), (3, 4)])
    with pytest.raises(CollapseError):
        collapse(g, [(0, 1)])
    with pytest.raises(CollapseError):
        collapse(g, list(g.edges))  # collapsing everything leaves a point


def test_blowup_collapse_roundtrip():
    g = zs()
    center = next(v for v, c in enumerate(g.labels) if c is None)
    for h in one_edge_blowups(g, center):
        assert h.num_vertices == g.num_vertices + 1
        assert collapses_onto(h, g)
        assert partition_contains(h, g)


def test_fstar_blowups_count():
    g = collapse(zs(), [zs().edges[0]])
    center = max(range(g.num_vertices), key=g.degree)
    from coxspine.spine import classify_kind
    stars = [h for h in one_edge_blowups(g, center)
             if classify_kind(h) == "zero-star"]
    assert len(stars) == 2 ** (N - 2)


def test_partition_containment_matches_forest_search():
    g = zs()
    pool = [g] + one_edge_blowups(g, 0)
    pool += [collapse(g, [e]) for e in g.edges]
    for a, b in itertools.permutations(pool, 2):
        assert partition_contains(a, b) == collapses_onto(a, b)


def test_factor_partition_canonical_under_moves():
    c = [conj_gen(i) for i in range(1, 5)]
    p = factor_partition(4, [c[0], c[1]], [c[2], c[3]])
    # conjugate one side label by the other label of the same side
    q = factor_partition(4, [conj_gen(1, (2,)), c[1]], [c[2], c[3]])
    # global conjugation
    r = factor_partition(4, [conj_gen(1, (3,)), conj_gen(2, (3,))],
                         [conj_gen(3), conj_gen(4, (3,))])
    assert p == q == r
    assert p != factor_partition(4, [c[0], c[2]], [c[1], c[3]])


def test_edge_partitions_distinct_and_lift():
    g = one_edge_blowups(zs(), 0)[0]
    parts = list(all_edge_partitions(g).values())
    assert len(set(parts)) == len(parts)
    forest = [g.edges[0]]
    y = collapse(g, forest)
    h = [y.edges[0]]
    lift = canonical_lift(g, y, h)
    assert {edge_partition(g, e) for e in lift} == \
        {edge_partition(y, e) for e in h}


def test_json_roundtrip_and_dot():
    g = act(sigma(N, 2, 1), zs())
    assert graph_from_json(graph_to_json(g)) == g
    assert graph_to_dot(g).startswith("graph")
