import itertools

import pytest

from coxspine.graphs import (act, canonical_key, collapse, standard_zero_star)
from coxspine.spine import (KIND_F_STAR, KIND_OTHER, KIND_ZERO_STAR,
                            BudgetExceeded, arc_existence, ball,
                            bounded_twistor_sets, classify_kind, count_arcs,
                            first_term_complexity, ln_neighbors,
                            second_term_all, second_term_complexity,
                            spine_vertex, star_fixing_automorphisms,
                            twist_vector, twist_vectors,
                            verify_star_rigidity)
from coxspine.words import conj_gen, sigma, compose, identity


def test_classify_kind():
    zs = standard_zero_star(4)
    assert classify_kind(zs) == KIND_ZERO_STAR
    fs = collapse(zs, [zs.edges[0]])
    assert classify_kind(fs) == KIND_F_STAR
    import coxspine.graphs as G
    path = G.make_graph(4, [conj_gen(i) for i in range(1, 5)],
                        [(0, 1), (1, 2), (2, 3)])
    assert classify_kind(path) == KIND_OTHER


def test_ln_neighbor_counts():
    for n in (4, 5):
        zs = spine_vertex(standard_zero_star(n))
        nbrs = ln_neighbors(zs)
        assert len(nbrs) == n
        assert all(v.kind == KIND_F_STAR for v in nbrs)
        back = ln_neighbors(nbrs[0])
        assert len(back) == 2 ** (n - 2)
        assert zs.key in [v.key for v in back]


def test_ball_sizes():
    assert len(ball(standard_zero_star(5), 1).vertices) == 6
    assert len(ball(standard_zero_star(5), 2).vertices) == 41


def test_ball_budget():
    with pytest.raises(BudgetExceeded):
        ball(standard_zero_star(4), 3, max_vertices=5)


def test_ball_threads_identical(ball4):
    b8 = ball(standard_zero_star(4), 4, threads=8)
    assert b8.vertices == ball4.vertices
    assert b8.edges == ball4.edges


def test_twist_vector_complementary():
    n = 6
    base = spine_vertex(standard_zero_star(n))
    f = identity(n)
    for j in (1, 4):
        f = compose(sigma(n, j, 6), f)
    xp = act(f, standard_zero_star(n))
    tvs = twist_vectors(base, 6, xp)
    assert len(tvs) == 2
    assert tvs[0].alphas == (1, 0, 0, 1, 0, 0)
    a, b = tvs
    assert all(x + y == 1 for i, (x, y) in
               enumerate(zip(a.alphas, b.alphas), start=1) if i != 6)


def test_first_term_complexity_tie():
    n = 5
    base = spine_vertex(standard_zero_star(n))
    f = compose(sigma(n, 1, 5), compose(sigma(n, 2, 5), identity(n)))
    xp = act(f, standard_zero_star(n))
    k, sets = first_term_complexity(base, 5, xp)
    assert k == 2
    assert set(sets) == {frozenset({1, 2}), frozenset({3, 4})}


def test_second_term_matches_oracle(ball4):
    base = ball4.vertices[0]
    for v in ball4.vertices:
        if v.kind != KIND_ZERO_STAR:
            continue
        l, sets = second_term_all(base, v)
        size, osets = bounded_twistor_sets(base, v)
        assert size == l
        assert set(osets) == set(sets)
        if l <= 1 or len(sets) == 1:
            lv, sv = second_term_complexity(base, v)
            assert lv == l and sv == sets[0]


def test_count_arcs_excludes_center(ball4):
    y0 = ball4.adjacency[0][0]
    y1 = ball4.adjacency[0][1]
    with_center = count_arcs(ball4, y0, y1, 2, exclude_center=False)
    without = count_arcs(ball4, y0, y1, 2)
    assert with_center == without + 1


def test_arc_existence_validation(ball4):
    base = ball4.vertices[0]
    y1 = ball4.adjacency[0][0]
    xp = next(v for i in ball4.adjacency[y1]
              if i != 0 and (v := ball4.vertices[i]).kind == KIND_ZERO_STAR)
    with pytest.raises(ValueError):
        arc_existence(base, 1, xp, 1, xp, 2)  # i == j
    with pytest.raises(ValueError):
        arc_existence(base, 1, xp, 2, xp, 1)  # t == i


def test_star_fixing_contains_identity(ball4):
    autos = star_fixing_automorphisms(ball4, limit=5)
    assert tuple(range(len(ball4.vertices))) in autos


def test_star_rigidity(ball4):
    rep = verify_star_rigidity(ball4)
    assert rep["fixed"] is True
