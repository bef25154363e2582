"""Verification suites shared by the CLI and the acceptance tests.

Every suite returns a deterministic report dict:
  {"suite": str, "n": int, "params": dict, "checks": int, "passed": int,
   "counterexamples": list}
with passed == checks iff counterexamples is empty.  No timing data is
included, so reports are bit-identical across thread counts and re-runs.
"""

from __future__ import annotations

import functools
import itertools
import random

from . import links as links_mod
from . import splittings as split_mod
from .graphs import (MarkedGraph, act, all_edge_partitions, canonical_key,
                     canonicalize, canonical_lift, collapse, CollapseError,
                     edge_partition, one_edge_blowups, standard_zero_star)
from .spine import (KIND_F_STAR, KIND_ZERO_STAR, Ball, arc_existence, ball,
                    bounded_twistor_sets, count_arcs, first_term_complexity,
                    ln_neighbors, second_term_all, spine_vertex,
                    verify_star_rigidity)
from .words import conj_gen, sigma, transposition, compose, identity


def _report(suite, n, params, checks, counterexamples):
    cx = sorted(map(repr, counterexamples))
    return {"suite": suite, "n": n, "params": params, "checks": checks,
            "passed": checks - len(cx), "counterexamples": cx}


@functools.lru_cache(maxsize=8)
def _ball_cached(n, radius):
    return ball(standard_zero_star(n), radius)


def shared_ball(n, radius, threads=1) -> Ball:
    """Ball around the standard base star; thread count does not change
    the result, so the cache is keyed on (n, radius) only."""
    if threads > 1:
        return ball(standard_zero_star(n), radius, threads=threads)
    return _ball_cached(n, radius)


def _collapse_index(n):
    """Map i -> ball index of the f star collapsing the x_i leaf edge."""
    zs = standard_zero_star(n)
    out = {}
    for e in zs.edges:
        leaf = next(v for v in e if zs.labels[v] is not None)
        out[zs.labels[leaf].core] = spine_vertex(collapse(zs, [e]))
    return out


# ---------------------------------------------------------------------------
# suite: degree-law

def suite_degree_law(n, *, threads=1, seed=0, samples=40):
    params = {"radius": 4}
    bad = []
    checks = 0
    expected = {KIND_ZERO_STAR: n, KIND_F_STAR: 2 ** (n - 2)}
    if n <= 5:
        b = shared_ball(n, 4, threads)
        for i, v in enumerate(b.vertices):
            if b.distances[i] >= b.radius:
                continue
            checks += 1
            deg = len(b.adjacency[i])
            if deg != expected[v.kind]:
                bad.append(("degree", i, v.kind, deg))
    else:
        params.update({"seed": seed, "samples": samples})
        rng = random.Random(seed)
        cur = spine_vertex(standard_zero_star(n))
        for _ in range(samples):
            steps = rng.randrange(0, 4)
            v = cur
            for _ in range(steps):
                v = rng.choice(ln_neighbors(v))
            checks += 1
            deg = len(ln_neighbors(v))
            if deg != expected[v.kind]:
                bad.append(("degree", v.key, v.kind, deg))
    return _report("degree-law", n, params, checks, bad)


# ---------------------------------------------------------------------------
# suite: complexity-bounds

def suite_complexity_bounds(n, *, threads=1):
    b = shared_ball(n, 4, threads)
    base = b.vertices[0]
    ys = _collapse_index(n)
    y_index = {i: b.index_of(v) for i, v in ys.items()}
    bad = []
    checks = 0
    for idx, v in enumerate(b.vertices):
        if v.kind != KIND_ZERO_STAR:
            continue
        checks += 1
        try:
            l, sets = second_term_all(base, v)
        except ValueError as exc:
            bad.append(("no-presentation", idx, str(exc)))
            continue
        if l > 2 or len(sets) != 1:
            bad.append(("bound-or-uniqueness", idx, l, sorted(map(sorted, sets))))
            continue
        # oracle: bounded brute-force minimizer must agree
        size, osets = bounded_twistor_sets(base, v)
        if size != l or set(osets) != set(sets):
            bad.append(("oracle-mismatch", idx, l, size))
            continue
        if idx == 0:
            if l != 0:
                bad.append(("center", idx, l))
            continue
        adjacent_is = sorted(i for i, yi in y_index.items()
                             if yi in b.adjacency[idx])
        if adjacent_is:
            if l != 1 or sets[0] not in [frozenset((i,)) for i in adjacent_is]:
                bad.append(("adjacent-set", idx, l, sorted(sets[0]),
                            adjacent_is))
        elif l == 1:
            bad.append(("spurious-one", idx, sorted(sets[0])))
    return _report("complexity-bounds", n, {"radius": 4}, checks, bad)


# ---------------------------------------------------------------------------
# suite: arc-counts

def suite_arc_counts(n, *, threads=1):
    b = shared_ball(n, 4, threads)
    base = b.vertices[0]
    ys = _collapse_index(n)
    y_index = {i: b.index_of(v) for i, v in ys.items()}
    bad = []
    checks = 0
    for i in range(1, n + 1):
        yi = y_index[i]
        xps = [j for j in b.adjacency[yi]
               if j != 0 and b.vertices[j].kind == KIND_ZERO_STAR]
        for xp_idx in xps:
            xp = b.vertices[xp_idx]
            k, sets = first_term_complexity(base, i, xp)
            for j in range(1, n + 1):
                if j == i:
                    continue
                plain = any(j not in s for s in sets)
                want = (2 ** (n - k - 2) - 1) if plain else (2 ** (k - 1) - 1)
                got = count_arcs(b, xp_idx, y_index[j], 5)
                checks += 1
                if got != want:
                    bad.append(("count", i, xp_idx, j, k, plain, want, got))
                # existence dichotomy against short paths
                for z_idx in b.adjacency[y_index[j]]:
                    z = b.vertices[z_idx]
                    if z_idx == 0 or z.kind != KIND_ZERO_STAR:
                        continue
                    kz, zsets = first_term_complexity(base, j, z)
                    if kz != 1 or len(zsets) != 1 or z_idx == xp_idx:
                        continue
                    (t,) = sorted(zsets[0])
                    try:
                        predicted = arc_existence(base, i, xp, j, z, t)
                    except ValueError:
                        continue
                    checks += 1
                    observed = count_arcs(b, xp_idx, z_idx, 4) > 0
                    if predicted != observed:
                        bad.append(("dichotomy", i, xp_idx, j, z_idx, t,
                                    predicted, observed))
    return _report("arc-counts", n, {"radius": 4}, checks, bad)


# ---------------------------------------------------------------------------
# suite: bounded-minimizer (three independent twistors stay out of reach
# of every two-twistor presentation)

def suite_bounded_minimizer(n=5, *, threads=1):
    base = spine_vertex(standard_zero_star(n))
    bad = []
    checks = 0
    zs = standard_zero_star(n)
    # conjugate three labels by three pairwise distinct non-core letters
    for trip in itertools.combinations(range(1, n + 1), 3):
        rest = [m for m in range(1, n + 1) if m not in trip]
        conjs = [rest[0], trip[0], trip[1]]
        labels = []
        for c in zs.labels:
            if c is None:
                labels.append(None)
            elif c.core == trip[0]:
                labels.append(conj_gen(c.core, (conjs[0],)))
            elif c.core == trip[1]:
                labels.append(conj_gen(c.core, (conjs[1],)))
            elif c.core == trip[2]:
                labels.append(conj_gen(c.core, (conjs[2],)))
            else:
                labels.append(c)
        z = MarkedGraph(zs.n, tuple(labels), zs.edges)
        checks += 1
        size, sets = bounded_twistor_sets(base, z, max_size=2, word_cap=4)
        if size is not None:
            bad.append(("fits-two-twistors", trip, size,
                        sorted(map(sorted, sets))))
    return _report("bounded-minimizer", n, {"max_size": 2, "word_cap": 4},
                   checks, bad)


# ---------------------------------------------------------------------------
# suite: ball-rigidity

def suite_ball_rigidity(n=4, *, threads=1):
    b = shared_ball(n, 4, threads)
    rep = verify_star_rigidity(b)
    bad = [] if rep["fixed"] else [("moved", rep["moved"])]
    return _report("ball-rigidity", n,
                   {"radius": 4, "inner_radius": 2,
                    "searched": rep["searched"]}, 1, bad)


# ---------------------------------------------------------------------------
# suite: link-bounds

@functools.lru_cache(maxsize=4)
def _kn_ball2(n):
    return tuple(links_mod.kn_ball(standard_zero_star(n), 2))


def suite_link_bounds(n=4, *, threads=1):
    bad = []
    checks = 0
    for g in _kn_ball2(n):
        plus = links_mod.positive_link(g)
        minus = links_mod.negative_link(g)
        leaves = sum(1 for v in range(g.num_vertices) if g.degree(v) == 1)
        if plus:
            checks += 1
            if len(links_mod.positive_link_depth1(g)) < 2:
                bad.append(("depth1-too-small", canonical_key(g)))
            edgy = any(links_mod.linked(a, b)
                       for a, b in itertools.combinations(plus, 2))
            if not edgy:
                checks += 1
                if not 2 <= len(plus) <= 3:
                    bad.append(("plus-size", canonical_key(g), len(plus)))
                elif (len(plus) == 3) != (leaves == n):
                    bad.append(("plus-leaves", canonical_key(g), len(plus),
                                leaves))
        if minus:
            edgy = any(links_mod.linked(a, b)
                       for a, b in itertools.combinations(minus, 2))
            if not edgy:
                checks += 1
                trivial = sum(1 for c in g.labels if c is None)
                if trivial != 1:
                    bad.append(("trivial-count", canonical_key(g), trivial))
                elif not 3 <= len(minus) <= n:
                    bad.append(("minus-size", canonical_key(g), len(minus)))
                elif (len(minus) == n) != \
                        (links_mod.classify(g) == KIND_ZERO_STAR):
                    bad.append(("minus-star", canonical_key(g), len(minus)))
    return _report("link-bounds", n, {"radius": 2}, checks, bad)


# ---------------------------------------------------------------------------
# suite: partition-lift

def _random_graph(n, rng):
    g = standard_zero_star(n)
    f = identity(n)
    for _ in range(rng.randrange(0, 4)):
        i, j = rng.sample(range(1, n + 1), 2)
        move = sigma(n, j, i) if rng.random() < 0.7 else transposition(n, i, j)
        f = compose(move, f)
    g = act(f, g)
    for _ in range(rng.randrange(0, 3)):
        v = rng.randrange(g.num_vertices)
        options = one_edge_blowups(g, v)
        if options:
            g = rng.choice(options)
    return canonicalize(g)


def _random_forest(g, rng):
    edges = list(g.edges)
    rng.shuffle(edges)
    forest = []
    for e in edges:
        cand = forest + [e]
        try:
            collapse(g, cand)
        except CollapseError:
            continue
        forest.append(e)
        if rng.random() < 0.5:
            break
    return forest


def suite_partition_lift(n, *, threads=1, seed=0, instances=500):
    rng = random.Random(seed)
    bad = []
    checks = 0
    if n == 4:
        for g in _kn_ball2(4):
            checks += 1
            parts = list(all_edge_partitions(g).values())
            if len(set(parts)) != len(parts):
                bad.append(("dup-partition", canonical_key(g)))
    done = 0
    while done < instances:
        x = _random_graph(n, rng)
        checks += 1
        parts = list(all_edge_partitions(x).values())
        if len(set(parts)) != len(parts):
            bad.append(("dup-partition", canonical_key(x)))
        forest = _random_forest(x, rng)
        if not forest:
            continue
        y = collapse(x, forest)
        if not y.edges:
            continue
        h = _random_forest(y, rng)
        if not h:
            continue
        done += 1
        checks += 1
        lift = canonical_lift(x, y, h)
        want = {edge_partition(y, e) for e in h}
        matches = [set(sub) for sub in
                   itertools.combinations(x.edges, len(h))
                   if {edge_partition(x, e) for e in sub} == want]
        if len(matches) != 1 or matches[0] != set(lift):
            bad.append(("lift-mismatch", canonical_key(x), sorted(h)))
    return _report("partition-lift", n,
                   {"seed": seed, "instances": instances}, checks, bad)


# ---------------------------------------------------------------------------
# suite: join-uniqueness

def suite_join_uniqueness(n=4, *, threads=1):
    bad = []
    checks = 0
    for g in _kn_ball2(n):
        lg = links_mod.link_graph(g)
        plus = frozenset(i for i, p in enumerate(lg.polarity) if p == "plus")
        minus = frozenset(i for i, p in enumerate(lg.polarity)
                          if p == "minus")
        if not plus or not minus:
            continue
        checks += 1
        decs = links_mod.join_decompositions(len(lg.vertices), lg.edges)
        ok = (len(decs) == 1
              and set(map(frozenset, decs[0])) == {plus, minus})
        if not ok:
            bad.append(("join", canonical_key(g), len(decs)))
    return _report("join-uniqueness", n, {"radius": 2}, checks, bad)


# ---------------------------------------------------------------------------
# suite: common-refinement

def suite_common_refinement(n=4, *, threads=1, max_edges=3):
    universe = split_mod.enumerate_splittings(n, max_edges)
    by_collapses = {}
    for s in universe:
        key = frozenset(split_mod.one_edge_collapses(s))
        by_collapses.setdefault(key, []).append(s)
    bad = []
    checks = 0
    for s in universe:
        checks += 1
        parts = split_mod.one_edge_collapses(s)
        k = len(s.edges)
        if len(set(parts)) != k:
            bad.append(("collapse-collision", split_mod.splitting_key(s)))
            continue
        if not all(split_mod.compatible(a, b)
                   for a, b in itertools.combinations(parts, 2)):
            bad.append(("incompatible", split_mod.splitting_key(s)))
            continue
        if k > 1:
            try:
                r = split_mod.common_refinement(n, parts)
            except (ValueError, RuntimeError) as exc:
                bad.append(("refinement-error", split_mod.splitting_key(s),
                            str(exc)))
                continue
            if not split_mod.equivalent_splittings(r, s):
                bad.append(("refinement-mismatch",
                            split_mod.splitting_key(s)))
                continue
        # uniqueness over the whole bounded universe
        same = by_collapses[frozenset(parts)]
        if len(same) != 1:
            bad.append(("non-unique", split_mod.splitting_key(s), len(same)))
    return _report("common-refinement", n, {"max_edges": max_edges},
                   checks, bad)


# ---------------------------------------------------------------------------
# suite: splitting-profiles

def suite_splitting_profiles(n, *, threads=1, stream_count=100):
    bad = []
    checks = 0
    universe = split_mod.enumerate_splittings(n, 2)
    for s in universe:
        checks += 1
        p = split_mod.rigidity_profile(s)
        triple = (p.infinite_link, p.star_adjacent,
                  p.pinned_two_path) == (True, True, True)
        if triple != split_mod.is_F_one_edge(s):
            bad.append(("profile", split_mod.splitting_key(s), tuple(p)))
    streamed = [s for s in universe
                if len(s.edges) == 1 and split_mod.is_F_one_edge(s)]
    streamed += [s for s in universe
                 if len(s.edges) == 1 and not split_mod.is_F_one_edge(s)][:1]
    for s in streamed:
        checks += 1
        got = list(itertools.islice(
            split_mod.neighbor_stream(s, stream_count), stream_count))
        keys = {split_mod.splitting_key(x) for x in got}
        if len(keys) < stream_count:
            bad.append(("stream-short", split_mod.splitting_key(s),
                        len(keys)))
    # spine vertices have finite, fully enumerable links
    zs = standard_zero_star(4)
    sv = split_mod.from_marked_graph(zs)
    checks += 1
    try:
        next(split_mod.neighbor_stream(sv, 1))
        bad.append(("spine-streamed", split_mod.splitting_key(sv)))
    except ValueError:
        if not links_mod.kn_neighbors(zs):
            bad.append(("spine-link-empty", canonical_key(zs)))
    return _report("splitting-profiles", n, {"stream_count": stream_count},
                   checks, bad)


SUITES = {
    "degree-law": suite_degree_law,
    "complexity-bounds": suite_complexity_bounds,
    "arc-counts": suite_arc_counts,
    "bounded-minimizer": suite_bounded_minimizer,
    "ball-rigidity": suite_ball_rigidity,
    "link-bounds": suite_link_bounds,
    "partition-lift": suite_partition_lift,
    "join-uniqueness": suite_join_uniqueness,
    "common-refinement": suite_common_refinement,
    "splitting-profiles": suite_splitting_profiles,
}


def run_suite(name, n, **kwargs):
    if name not in SUITES:
        raise ValueError("unknown suite %r; choose from %s"
                         % (name, ", ".join(sorted(SUITES))))
    return SUITES[name](n, **kwargs)
