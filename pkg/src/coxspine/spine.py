"""Local exploration of the bipartite graph of star-shaped marked graphs.

Vertices are marked graphs of two star shapes: an (n+1)-vertex star with
an unlabeled center ("zero star") and an n-vertex star whose center is
labeled ("f star").  Adjacency is a one-edge collapse.  This module
builds balls around a base zero star, computes the two twist-complexity
invariants of nearby zero stars, counts short injective arcs, and
searches for abstract graph automorphisms fixing the star of the base.

Complexity invariants are computed relative to the standard base star
(all conjugators empty); indices always refer to label cores.
"""

from __future__ import annotations

import functools
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .graphs import (MarkedGraph, canonical_key, canonicalize, collapse,
                     one_edge_blowups, standard_zero_star)
from .words import conj_gen, conjugate_cg, invert, multiply

KIND_ZERO_STAR = "zero-star"
KIND_F_STAR = "f-star"
KIND_OTHER = "other"

DEFAULT_VERTEX_BUDGET = 10 ** 6


class BudgetExceeded(RuntimeError):
    """A resource cap was hit before the computation finished."""

    def __init__(self, message, seen=None):
        super().__init__(message)
        self.seen = seen


def classify_kind(g: MarkedGraph) -> str:
    m = g.num_vertices
    leaves = sum(1 for v in range(m) if g.degree(v) == 1)
    if m == g.n + 1 and leaves == g.n:
        return KIND_ZERO_STAR
    if m == g.n and leaves == g.n - 1:
        return KIND_F_STAR
    return KIND_OTHER


@dataclass(frozen=True)
class SpineVertex:
    graph: MarkedGraph  # canonical representative
    kind: str

    @property
    def key(self):
        return canonical_key(self.graph)


def spine_vertex(g) -> SpineVertex:
    if isinstance(g, SpineVertex):
        return g
    rep = canonicalize(g)
    return SpineVertex(rep, classify_kind(rep))


def ln_neighbors(v) -> list:
    """Neighbors within the bipartite star graph.

    A zero star collapses each of its n edges to an f star; an f star
    blows up its center, and the blow-ups that are again stars are its
    neighbors (2^{n-2} of them).
    """
    v = spine_vertex(v)
    g = v.graph
    if v.kind == KIND_ZERO_STAR:
        out = {}
        for e in g.edges:
            sv = spine_vertex(collapse(g, [e]))
            out[sv.key] = sv
        return [out[k] for k in sorted(out)]
    if v.kind == KIND_F_STAR:
        center = max(range(g.num_vertices), key=g.degree)
        return [SpineVertex(h, KIND_ZERO_STAR)
                for h in one_edge_blowups(g, center)
                if classify_kind(h) == KIND_ZERO_STAR]
    raise ValueError("vertex of kind %r has no place in the star graph" % v.kind)


@dataclass(frozen=True)
class Ball:
    radius: int
    vertices: tuple  # SpineVertex, index 0 is the center, ordered by (distance, key)
    distances: tuple
    edges: tuple  # sorted (i, j) index pairs, i < j

    @functools.cached_property
    def _index(self):
        return {v.key: i for i, v in enumerate(self.vertices)}

    def index_of(self, v) -> int:
        if isinstance(v, int):
            if not 0 <= v < len(self.vertices):
                raise ValueError("index out of range: %d" % v)
            return v
        key = canonical_key(v.graph if isinstance(v, SpineVertex) else v)
        if key not in self._index:
            raise ValueError("vertex not in ball")
        return self._index[key]

    def __contains__(self, v):
        try:
            self.index_of(v)
        except ValueError:
            return False
        return True

    @functools.cached_property
    def adjacency(self):
        adj = [[] for _ in self.vertices]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return [tuple(sorted(us)) for us in adj]


def ball(center, radius: int, *, max_vertices: int = DEFAULT_VERTEX_BUDGET,
         threads: int = 1) -> Ball:
    """Closed ball by breadth-first search with global canonical dedup.

    The graph is bipartite by kind, so every edge joins consecutive
    levels and expanding interior levels already yields the full
    induced adjacency.  Output is deterministic: levels are sorted by
    canonical key and the thread pool merges results in frontier order.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    cv = spine_vertex(center)
    if cv.kind == KIND_OTHER:
        raise ValueError("center must be a zero star or an f star")
    verts = [cv]
    dists = [0]
    index = {cv.key: 0}
    edges = set()
    level = [0]
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for d in range(radius):
            expand = [verts[i] for i in level]
            if pool is not None:
                results = list(pool.map(ln_neighbors, expand))
            else:
                results = [ln_neighbors(v) for v in expand]
            found = {}
            arcs = []
            for i, nbrs in zip(level, results):
                for nb in nbrs:
                    arcs.append((i, nb.key))
                    if nb.key not in index and nb.key not in found:
                        found[nb.key] = nb
            level = []
            for k in sorted(found):
                if len(verts) >= max_vertices:
                    raise BudgetExceeded(
                        "vertex budget %d exceeded at radius %d"
                        % (max_vertices, d + 1), seen=len(verts))
                index[k] = len(verts)
                verts.append(found[k])
                dists.append(d + 1)
                level.append(index[k])
            for i, k in arcs:
                j = index[k]
                if j != i:
                    edges.add((min(i, j), max(i, j)))
            if not level:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    return Ball(radius, tuple(verts), tuple(dists), tuple(sorted(edges)))


def ball_to_json(b: Ball) -> dict:
    from .graphs import graph_to_json
    return {
        "radius": b.radius,
        "vertices": [{"index": i, "distance": b.distances[i],
                      "kind": v.kind, "graph": graph_to_json(v.graph)}
                     for i, v in enumerate(b.vertices)],
        "edges": [list(e) for e in b.edges],
    }


def ball_to_dot(b: Ball) -> str:
    lines = ["graph ball {"]
    for i, v in enumerate(b.vertices):
        shape = "circle" if v.kind == KIND_ZERO_STAR else "box"
        lines.append('  b%d [label="%d:%s" shape=%s];' % (i, i, v.kind, shape))
    for a, c in b.edges:
        lines.append("  b%d -- b%d;" % (a, c))
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# complexity invariants (relative to the standard base star)


class TwistVector(NamedTuple):
    base_index: int
    alphas: tuple  # n bits, alphas[base_index - 1] == 0


@functools.lru_cache(maxsize=64)
def _standard_key(n):
    return canonical_key(standard_zero_star(n))


def _check_base(base) -> int:
    g = base.graph if isinstance(base, SpineVertex) else base
    if canonical_key(g) != _standard_key(g.n):
        raise ValueError("complexity invariants require the standard base star")
    return g.n


def _zero_star_labels(z) -> dict:
    g = canonicalize(z.graph if isinstance(z, SpineVertex) else z)
    if classify_kind(g) != KIND_ZERO_STAR:
        raise ValueError("expected a zero star")
    return {c.core: c for c in g.labels if c is not None}


def _alternating_words(letters, max_len):
    """Reduced words over a 1- or 2-letter involutive alphabet."""
    yield ()
    for start in letters:
        word = []
        cur = start
        other = [t for t in letters if t != start]
        for _ in range(max_len):
            word.append(cur)
            yield tuple(word)
            if not other:
                break
            cur = other[0] if cur == start else start


def _candidate_conjugators(labels, twistors, max_len):
    """Global conjugators that could move `labels` into a presentation
    whose conjugator words use only the given twistor letters.

    Solved from one label: if core m is not a twistor, its expanded label
    w x_m w^-1 must equal the conjugate of the stored v x_m v^-1, so the
    conjugator lies in (twistor word) * x_m^{0 or 1} * v^-1.
    """
    m0 = min(core for core in labels if core not in twistors)
    v = labels[m0].conj
    seen = set()
    for w in _alternating_words(twistors, max_len):
        for tail in ((), (m0,)):
            u = multiply(w, multiply(tail, invert(v)))
            if u not in seen:
                seen.add(u)
                yield u


def twist_vectors(base, i: int, xp) -> list:
    """All bit-vector presentations of a zero star adjacent to the f star
    obtained from the base by collapsing its i-th edge.  There are two,
    complementary to each other off index i."""
    n = _check_base(base)
    if not 1 <= i <= n:
        raise ValueError("index out of range: %d" % i)
    labels = _zero_star_labels(xp)
    out = set()
    for u in _candidate_conjugators(labels, (i,), 1):
        conj = {core: conjugate_cg(c, u) for core, c in labels.items()}
        if all(cc.conj in ((), (i,)) for cc in conj.values()):
            out.add(tuple(1 if conj[m].conj else 0 for m in range(1, n + 1)))
    if not out:
        raise ValueError("zero star is not adjacent to the collapse at %d" % i)
    return [TwistVector(i, a)
            for a in sorted(out, key=lambda a: (sum(a), a))]


def twist_vector(base, i: int, xp) -> TwistVector:
    """The presentation with the fewer conjugated labels (ties broken
    lexicographically)."""
    return twist_vectors(base, i, xp)[0]


def first_term_complexity(base, i: int, xp):
    """(k, realizing sets): k = min(m, n-1-m) over the two presentations;
    the realizing sets are the supports of the minimizing presentations
    (one set unless m = n-1-m)."""
    tvs = twist_vectors(base, i, xp)
    k = sum(tvs[0].alphas)
    sets = tuple(frozenset(m for m, a in enumerate(tv.alphas, start=1) if a)
                 for tv in tvs if sum(tv.alphas) == k)
    return k, sets


def _shape_conjs(core, j, k):
    # conjugator shapes reachable by at most two passes of the two twistors
    raw = ((), (j,), (k,), (k, j), (k, j, k))
    return {conj_gen(core, s).conj for s in raw}


def _matches(labels, u, allowed):
    return all(conjugate_cg(c, u).conj in allowed[core]
               for core, c in labels.items())


def second_term_all(base, z):
    """(l, realizing sets) for a zero star with a presentation using at
    most two twistor letters, by shape matching.

    l = 0 means z is the base; l = 1 means some presentation conjugates
    each label by at most one letter x_i; l = 2 matches the two-twistor
    conjugator shapes.  Raises if no such presentation exists (the zero
    star is then farther than two star-hops from the base).
    """
    n = _check_base(base)
    labels = _zero_star_labels(z)
    g = canonicalize(z.graph if isinstance(z, SpineVertex) else z)
    if canonical_key(g) == _standard_key(n):
        return 0, (frozenset(),)
    ones = []
    for i in range(1, n + 1):
        try:
            twist_vectors(base, i, g)
        except ValueError:
            continue
        ones.append(frozenset((i,)))
    if ones:
        return 1, tuple(sorted(ones, key=sorted))
    twos = set()
    for j, k in itertools.combinations(range(1, n + 1), 2):
        hit = False
        for order in ((j, k), (k, j)):
            allowed = {core: _shape_conjs(core, *order) for core in labels}
            for u in _candidate_conjugators(labels, (j, k), 3):
                if _matches(labels, u, allowed):
                    hit = True
                    break
            if hit:
                break
        if hit:
            twos.add(frozenset((j, k)))
    if twos:
        return 2, tuple(sorted(twos, key=sorted))
    raise ValueError("no presentation with at most two twistors")


def second_term_complexity(base, z):
    """(l, the unique realizing set); raises if the realizing set is not
    unique."""
    l, sets = second_term_all(base, z)
    if len(sets) != 1:
        raise ValueError("realizing set is not unique: %r" % (sets,))
    return l, sets[0]


def bounded_twistor_sets(base, z, max_size=2, word_cap=4):
    """Brute-force minimizer: smallest twistor sets J (|J| <= max_size)
    admitting a presentation whose conjugators are words over J of
    length <= word_cap.  Returns (size, sets) or (None, ()) if nothing
    fits within the caps."""
    n = _check_base(base)
    labels = _zero_star_labels(z)
    for size in range(max_size + 1):
        found = []
        for J in itertools.combinations(range(1, n + 1), size):
            js = set(J)
            hit = False
            for u in _candidate_conjugators(labels, J, word_cap):
                if all(len(cc.conj) <= word_cap and set(cc.conj) <= js
                       for cc in (conjugate_cg(c, u)
                                  for c in labels.values())):
                    hit = True
                    break
            if hit:
                found.append(frozenset(J))
        if found:
            return size, tuple(sorted(found, key=sorted))
    return None, ()


# ---------------------------------------------------------------------------
# arc counting


def count_arcs(b: Ball, src, dst, max_len: int, *, exclude_center=True,
               exclude=()) -> int:
    """Injective paths of length 1..max_len between two distinct ball
    vertices, avoiding the excluded vertices, by depth-first search."""
    s = b.index_of(src)
    t = b.index_of(dst)
    banned = {b.index_of(v) for v in exclude}
    if exclude_center:
        banned.add(0)
    if s == t:
        raise ValueError("endpoints must be distinct")
    if s in banned or t in banned:
        raise ValueError("endpoint is excluded")
    adj = b.adjacency
    count = 0
    visited = {s}

    def dfs(v, used):
        nonlocal count
        for u in adj[v]:
            if u in banned or u in visited:
                continue
            if u == t:
                count += 1
                continue
            if used + 1 < max_len:
                visited.add(u)
                dfs(u, used + 1)
                visited.remove(u)

    dfs(s, 0)
    return count


def arc_existence(base, i: int, xp, j: int, z, t: int) -> bool:
    """Short-path existence predicate between two zero stars near the base.

    Requires: xp is adjacent to the i-collapse with a realizing
    presentation leaving label j plain, and z is adjacent to the
    j-collapse with first-term complexity 1 realized by {t}, t distinct
    from i.  Returns whether t avoids xp's realizing set, which matches
    the existence of an injective path of length <= 4 avoiding the base.

    t == i is rejected: any intermediate star on such a path must carry
    a conjugated label outside {i, j}, which a {t} = {i} zero star never
    does, so the predicate would not match path existence there.
    """
    if i == j:
        raise ValueError("requires distinct collapse indices")
    if t == i:
        raise ValueError("t == i is not an admissible configuration")
    n = _check_base(base)
    gx = canonicalize(xp.graph if isinstance(xp, SpineVertex) else xp)
    if canonical_key(gx) == _standard_key(n):
        raise ValueError("xp must differ from the base")
    k, sets = first_term_complexity(base, i, xp)
    avoid = [S for S in sets if j not in S]
    if len(avoid) != 1:
        raise ValueError("no realizing presentation leaves label %d plain" % j)
    kz, zsets = first_term_complexity(base, j, z)
    if kz != 1 or frozenset((t,)) not in zsets:
        raise ValueError("z must have first-term complexity 1 realized by {%d}" % t)
    return t not in avoid[0]


# ---------------------------------------------------------------------------
# abstract-graph automorphisms fixing the star of the center


def _refine_colors(adj, init):
    colors = list(init)
    classes = len(set(colors))
    while True:
        sig = [(colors[v], tuple(sorted(colors[u] for u in adj[v])))
               for v in range(len(adj))]
        relabel = {s: c for c, s in enumerate(sorted(set(sig)))}
        colors = [relabel[s] for s in sig]
        if len(relabel) == classes:
            return colors
        classes = len(relabel)


def _star_colors(b: Ball):
    """Stable colors after individualizing the center and its neighbors."""
    adj = b.adjacency
    star = sorted(adj[0])
    init = []
    for v in range(len(b.vertices)):
        if v == 0:
            init.append((0, 0))
        elif v in star:
            init.append((1, star.index(v)))
        else:
            init.append((2, b.distances[v]))
    return _refine_colors(adj, init)


def _search(adj, colors, order, image, node_budget):
    """Backtracking completion of a partial automorphism; returns a full
    map or None.  `image` maps assigned vertices; `order` lists the
    unassigned ones."""
    used = set(image.values())
    nodes = 0

    def consistent(v, w):
        if colors[v] != colors[w]:
            return False
        for u in adj[v]:
            if u in image and image[u] not in adj[w]:
                return False
        # degree within refined colors is equal, so checking mapped
        # neighbors in one direction plus the reverse count suffices
        mapped_nb = sum(1 for u in adj[v] if u in image)
        hit_nb = sum(1 for x in adj[w] if x in used)
        return mapped_nb == hit_nb

    def rec(pos):
        nonlocal nodes
        if pos == len(order):
            return dict(image)
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded("automorphism search budget exceeded",
                                 seen=nodes)
        v = order[pos]
        for w in range(len(adj)):
            if w in used or not consistent(v, w):
                continue
            image[v] = w
            used.add(w)
            res = rec(pos + 1)
            if res is not None:
                return res
            del image[v]
            used.remove(w)
        return None

    return rec(0)


def _star_pins(b: Ball):
    pins = {0: 0}
    for v in b.adjacency[0]:
        pins[v] = v
    return pins


def _assignment_order(b: Ball, pinned):
    free = [v for v in range(len(b.vertices)) if v not in pinned]
    return sorted(free, key=lambda v: (b.distances[v], v))


def star_fixing_automorphisms(b: Ball, *, limit=100, node_budget=10 ** 7):
    """Up to `limit` adjacency-preserving self-maps of the ball fixing
    the center and its neighbors pointwise (the identity is always
    first).  The full group can be huge; use verify_star_rigidity for
    the fixed-interior check."""
    colors = _star_colors(b)
    pins = _star_pins(b)
    order = _assignment_order(b, pins)
    adj = b.adjacency
    found = []
    nodes = 0

    def rec(pos, image, used):
        nonlocal nodes
        if len(found) >= limit:
            return
        if pos == len(order):
            found.append(tuple(image[v] for v in range(len(adj))))
            return
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded("automorphism enumeration budget exceeded",
                                 seen=nodes)
        v = order[pos]
        for w in range(len(adj)):
            if w in used or colors[v] != colors[w]:
                continue
            ok = all(image.get(u, -1) in adj[w] for u in adj[v] if u in image)
            if ok:
                mapped = sum(1 for u in adj[v] if u in image)
                hit = sum(1 for x in adj[w] if x in used)
                ok = mapped == hit
            if ok:
                image[v] = w
                used.add(w)
                rec(pos + 1, image, used)
                del image[v]
                used.remove(w)

    rec(0, dict(pins), set(pins.values()))
    return found


def verify_star_rigidity(b: Ball, *, inner_radius=2, node_budget=10 ** 7):
    """Check that every automorphism of the ball fixing the star of the
    center pointwise also fixes the inner ball pointwise.

    Color refinement with the star individualized settles most vertices
    (a refinement-stable singleton is fixed by every such automorphism);
    for each unsettled inner vertex a targeted backtracking search looks
    for an automorphism moving it.  Returns a report dict; "fixed" is
    the verdict.
    """
    colors = _star_colors(b)
    pins = _star_pins(b)
    order = _assignment_order(b, pins)
    classes = {}
    for v in range(len(b.vertices)):
        classes.setdefault(colors[v], []).append(v)
    searched = 0
    for v in range(len(b.vertices)):
        if b.distances[v] > inner_radius or v in pins:
            continue
        for w in classes[colors[v]]:
            if w == v:
                continue
            searched += 1
            image = dict(pins)
            image[v] = w
            rest = [u for u in order if u != v]
            witness = _search(b.adjacency, colors, rest, image, node_budget)
            if witness is not None:
                return {"fixed": False, "moved": (v, w), "witness": witness,
                        "searched": searched}
    return {"fixed": True, "moved": None, "witness": None,
            "searched": searched}
