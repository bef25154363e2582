"""Free splittings of W_n: trees whose vertices carry conjugate-generator
sets generating the vertex groups.

A FreeSplitting stores one label set per vertex; the vertex group is the
subgroup those labels generate, so equivalence allows global conjugation,
branch twists by vertex-group elements, and basis changes inside a vertex
(conjugating one label by another of the same vertex).  One-edge
splittings are represented by their FactorPartition, which carries the
same data.
"""

from __future__ import annotations

import functools
import heapq
import itertools
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .graphs import (FactorPartition, InvariantError, MarkedGraph,
                     factor_partition, make_graph, minimize_conjugation)
from .words import ConjGen, conj_gen, conjugate_cg


@dataclass(frozen=True)
class FreeSplitting:
    n: int
    groups: tuple  # one sorted ConjGen tuple per vertex (may be empty)
    edges: tuple   # sorted tuple of sorted pairs


def _norm_edge(e):
    a, b = e
    if a == b:
        raise InvariantError("loop edge at %r" % a)
    return (a, b) if a < b else (b, a)


def make_splitting(n, groups, edges) -> FreeSplitting:
    groups = tuple(tuple(sorted(g)) for g in groups)
    s = FreeSplitting(n, groups, tuple(sorted(_norm_edge(e) for e in edges)))
    validate_splitting(s)
    return s


def validate_splitting(s: FreeSplitting):
    m = len(s.groups)
    if len(s.edges) < 1:
        raise InvariantError("a splitting needs at least one edge")
    if len(s.edges) != m - 1:
        raise InvariantError("not a tree: %d vertices, %d edges"
                             % (m, len(s.edges)))
    adj = _adjacency(m, s.edges)
    seen = {0}
    stack = [0]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != m:
        raise InvariantError("edge set is disconnected")
    cores = sorted(c.core for g in s.groups for c in g)
    if cores != list(range(1, s.n + 1)):
        raise InvariantError("labels must cover cores 1..%d exactly once"
                             % s.n)
    for v, g in enumerate(s.groups):
        deg = len(adj[v])
        if not g and deg < 3:
            raise InvariantError("trivial vertex %d has degree %d < 3"
                                 % (v, deg))
        for c in g:
            if not isinstance(c, ConjGen):
                raise InvariantError("label %r is not a ConjGen" % (c,))


def _adjacency(m, edges):
    adj = {v: [] for v in range(m)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def total_length(s: FreeSplitting) -> int:
    return sum(2 * len(c.conj) + 1 for g in s.groups for c in g)


# ---------------------------------------------------------------------------
# conversions to and from marked graphs

def from_marked_graph(g: MarkedGraph) -> FreeSplitting:
    groups = [() if c is None else (c,) for c in g.labels]
    return make_splitting(g.n, groups, g.edges)


def is_spine_vertex(s: FreeSplitting) -> bool:
    return all(len(g) <= 1 for g in s.groups)


def as_marked_graph(s: FreeSplitting) -> MarkedGraph:
    if not is_spine_vertex(s):
        raise InvariantError("splitting has a non-cyclic vertex group")
    labels = [g[0] if g else None for g in s.groups]
    return make_graph(s.n, labels, s.edges)


# ---------------------------------------------------------------------------
# collapses

def collapse_splitting(s: FreeSplitting, forest) -> FreeSplitting:
    forest = {_norm_edge(e) for e in forest}
    for e in forest:
        if e not in s.edges:
            raise InvariantError("not an edge: %r" % (e,))
    m = len(s.groups)
    parent = list(range(m))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in forest:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(v) for v in range(m)})
    index = {r: i for i, r in enumerate(roots)}
    groups = [[] for _ in roots]
    for v in range(m):
        groups[index[find(v)]].extend(s.groups[v])
    edges = {(index[find(a)], index[find(b)])
             for a, b in s.edges if (a, b) not in forest}
    return make_splitting(s.n, groups, edges)


def one_edge_collapses(s: FreeSplitting) -> list:
    """The FactorPartition of each edge, in edge order."""
    adj = _adjacency(len(s.groups), s.edges)
    out = []
    for a, b in s.edges:
        side = _branch(adj, b, a)
        left = [c for v in side for c in s.groups[v]]
        right = [c for v in range(len(s.groups)) if v not in side
                 for c in s.groups[v]]
        out.append(factor_partition(s.n, left, right))
    return out


def _branch(adj, away_from, start):
    seen = {away_from, start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    seen.discard(away_from)
    return seen


def splitting_from_partition(p: FactorPartition) -> FreeSplitting:
    n = sum(len(side) for side in p.sides)
    return make_splitting(n, p.sides, [(0, 1)])


# ---------------------------------------------------------------------------
# canonical form: best-first minimization over twists and basis changes,
# with global conjugation folded into state normalization

_SPLIT_SLACK = 4
_SPLIT_CAP = 20000


def _centroids(m, edges):
    if m == 1:
        return [0]
    adj = _adjacency(m, edges)
    best = None
    out = []
    for r in range(m):
        worst = 0
        for u in adj[r]:
            worst = max(worst, len(_branch(adj, r, u)))
        if best is None or worst < best:
            best, out = worst, [r]
        elif worst == best:
            out.append(r)
    return out


def _encode_state(groups, edges):
    m = len(groups)
    adj = _adjacency(m, edges)

    def rec(v, p):
        kids = sorted(rec(u, v) for u in adj[v] if u != p)
        return (tuple(sorted(groups[v])), tuple(kids))

    return min(rec(c, -1) for c in _centroids(m, edges))


def _decode_code(n, code):
    groups = []
    edges = []

    def rec(node):
        idx = len(groups)
        groups.append(node[0])
        for child in node[1]:
            cidx = rec(child)
            edges.append((idx, cidx))
        return idx

    rec(code)
    return make_splitting(n, groups, edges)


def _norm_code(n, groups, edges):
    """Minimal encoding over the global-conjugation plateau."""
    flat = []
    shape = []
    for g in groups:
        shape.append(len(g))
        flat.extend(g)
    best = None
    for assign in minimize_conjugation(flat, range(1, n + 1)):
        rebuilt = []
        pos = 0
        for k in shape:
            rebuilt.append(tuple(sorted(assign[pos:pos + k])))
            pos += k
        code = _encode_state(rebuilt, edges)
        if best is None or code < best:
            best = code
    return best


def _code_total(code):
    payload, kids = code
    return (sum(2 * len(c.conj) + 1 for c in payload)
            + sum(_code_total(k) for k in kids))


def _state_moves(s: FreeSplitting):
    adj = _adjacency(len(s.groups), s.edges)
    out = []
    for v, g in enumerate(s.groups):
        # basis change: conjugate one label by another of the same vertex
        for i, c in enumerate(g):
            for j, d in enumerate(g):
                if i == j:
                    continue
                new = list(g)
                new[i] = conjugate_cg(c, d.expand())
                out.append(tuple(x if k != v else tuple(new)
                                 for k, x in enumerate(s.groups)))
        # twist: conjugate one branch at v by a vertex-group label
        for d in g:
            for u in adj[v]:
                branch = _branch(adj, v, u)
                new_groups = []
                for k, x in enumerate(s.groups):
                    if k in branch:
                        new_groups.append(tuple(conjugate_cg(c, d.expand())
                                                for c in x))
                    else:
                        new_groups.append(x)
                out.append(tuple(new_groups))
    return out


@functools.lru_cache(maxsize=100000)
def _canonical_code(n, code):
    start = code
    seen = {start}
    heap = [(_code_total(start), start)]
    best = (_code_total(start), start)
    while heap:
        t, cur = heapq.heappop(heap)
        if t > best[0] + _SPLIT_SLACK:
            continue
        if (t, cur) < best:
            best = (t, cur)
        s = _decode_code(n, cur)
        for cand_groups in _state_moves(s):
            ck = _norm_code(n, cand_groups, s.edges)
            if ck in seen:
                continue
            ct = _code_total(ck)
            if ct > best[0] + _SPLIT_SLACK:
                continue
            seen.add(ck)
            heapq.heappush(heap, (ct, ck))
        if len(seen) > _SPLIT_CAP:
            raise RuntimeError("splitting canonical search exceeded cap")
    return best[1]


def canonical_splitting(s: FreeSplitting) -> FreeSplitting:
    code = _canonical_code(s.n, _norm_code(s.n, s.groups, s.edges))
    return _decode_code(s.n, code)


def splitting_key(s: FreeSplitting):
    return _canonical_code(s.n, _norm_code(s.n, s.groups, s.edges))


def equivalent_splittings(a: FreeSplitting, b: FreeSplitting) -> bool:
    return a.n == b.n and splitting_key(a) == splitting_key(b)


# ---------------------------------------------------------------------------
# enumeration of the bounded splitting universe

def _tree_shapes(m):
    if m == 2:
        return [((0, 1),)]
    pairs = list(itertools.combinations(range(m), 2))
    out = []
    for edges in itertools.combinations(pairs, m - 1):
        adj = _adjacency(m, edges)
        seen = {0}
        stack = [0]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) == m:
            out.append(edges)
    return out


def enumerate_splittings(n: int, max_edges: int) -> list:
    """All classes of splittings with <= max_edges edges reachable from
    plain-generator label arrangements.  Collapses of members are again
    such arrangements, so the list is collapse-closed."""
    out = {}
    for k in range(1, max_edges + 1):
        m = k + 1
        for edges in _tree_shapes(m):
            for assign in itertools.product(range(m), repeat=n):
                groups = [[] for _ in range(m)]
                for core, v in enumerate(assign, start=1):
                    groups[v].append(conj_gen(core))
                try:
                    s = make_splitting(n, groups, edges)
                except InvariantError:
                    continue
                key = splitting_key(s)
                if key not in out:
                    out[key] = _decode_code(n, key)
    return [out[k] for k in sorted(out)]


# ---------------------------------------------------------------------------
# compatibility and common refinements of one-edge splittings

_STATE_SLACK = 4
_STATE_CAP = 20000


@functools.lru_cache(maxsize=10000)
def _partition_states(n, sides, slack=_STATE_SLACK):
    """All presentations of a partition reachable by basis changes and
    global conjugation within a length slack of the minimum seen."""

    def total(st):
        return sum(2 * len(c.conj) + 1 for side in st for c in side)

    def key(st):
        return tuple(sorted(tuple(sorted(side)) for side in st))

    def moves(st):
        out = []
        for si, side in enumerate(st):
            for i, c in enumerate(side):
                for j, d in enumerate(side):
                    if i == j:
                        continue
                    new = list(side)
                    new[i] = conjugate_cg(c, d.expand())
                    out.append(tuple(s if k != si else tuple(new)
                                     for k, s in enumerate(st)))
        for t in range(1, n + 1):
            out.append(tuple(tuple(conjugate_cg(c, (t,)) for c in side)
                             for side in st))
        return out

    start = key(sides)
    seen = {start}
    heap = [(total(start), start)]
    best = total(start)
    while heap:
        t, cur = heapq.heappop(heap)
        if t > best + slack:
            continue
        best = min(best, t)
        for cand in moves(cur):
            ck = key(cand)
            if ck in seen:
                continue
            ct = total(ck)
            if ct > best + slack:
                continue
            seen.add(ck)
            heapq.heappush(heap, (ct, ck))
        if len(seen) > _STATE_CAP:
            raise RuntimeError("partition state search exceeded cap")
    return sorted(st for st in seen if total(st) <= best + slack)


def two_edge_refinements(p1: FactorPartition, p2: FactorPartition) -> list:
    """All two-edge splittings whose one-edge collapses are {p1, p2}.

    Searches bounded presentations of p1 for a side split realizing p2;
    completeness holds within the documented length slack.
    """
    if p1 == p2:
        return []
    n = sum(len(side) for side in p1.sides)
    out = {}
    for sides in _partition_states(n, p1.sides):
        for xi in (0, 1):
            x, y = sides[xi], sides[1 - xi]
            if len(y) < 2:
                continue
            for r in range(1, len(y)):
                for bpart in itertools.combinations(y, r):
                    cpart = tuple(c for c in y if c not in bpart)
                    if factor_partition(n, x + bpart, cpart) != p2:
                        continue
                    s = make_splitting(n, (x, bpart, cpart),
                                       ((0, 1), (1, 2)))
                    key = splitting_key(s)
                    if key not in out:
                        out[key] = _decode_code(n, key)
    return [out[k] for k in sorted(out)]


def compatible(p1: FactorPartition, p2: FactorPartition) -> bool:
    """Two one-edge splittings are compatible iff they are equal or some
    two-edge splitting collapses onto both."""
    return p1 == p2 or bool(two_edge_refinements(p1, p2))


def common_refinement(n: int, parts) -> FreeSplitting:
    """The unique splitting whose one-edge collapses are exactly `parts`
    (pairwise distinct, pairwise compatible one-edge splittings)."""
    parts = list(parts)
    k = len(parts)
    if k == 0:
        raise ValueError("need at least one partition")
    if len(set(parts)) != k:
        raise ValueError("partitions must be pairwise distinct")
    if k == 1:
        return canonical_splitting(splitting_from_partition(parts[0]))
    want = parts
    found = {}
    shapes = _tree_shapes(k + 1)
    for anchor in range(k):
        for sides in _partition_states(n, parts[anchor].sides):
            basis = tuple(sorted(sides[0] + sides[1]))
            cuts = []
            realizable = True
            for p in parts:
                cs = []
                for r in range(1, len(basis)):
                    for sub in itertools.combinations(basis, r):
                        rest = tuple(c for c in basis if c not in sub)
                        if factor_partition(n, sub, rest) == p:
                            cs.append(frozenset(sub))
                if not cs:
                    realizable = False
                    break
                cuts.append(cs)
            if not realizable:
                continue
            for combo in itertools.product(*cuts):
                sig = {}
                for c in basis:
                    sig.setdefault(tuple(c in cut for cut in combo),
                                   []).append(c)
                blocks = list(sig.values())
                if len(blocks) > k + 1:
                    continue
                for edges in shapes:
                    for slots in itertools.permutations(range(k + 1),
                                                        len(blocks)):
                        groups = [[] for _ in range(k + 1)]
                        for b, v in zip(blocks, slots):
                            groups[v] = b
                        try:
                            s = make_splitting(n, groups, edges)
                        except InvariantError:
                            continue
                        if set(one_edge_collapses(s)) != set(want):
                            continue
                        key = splitting_key(s)
                        if key not in found:
                            found[key] = _decode_code(n, key)
    if not found:
        raise ValueError("no common refinement within search bounds")
    if len(found) > 1:
        raise RuntimeError("common refinement is not unique: %d classes"
                           % len(found))
    return next(iter(found.values()))


# ---------------------------------------------------------------------------
# the distinguished one-edge shape and its rigidity profile

def is_F_one_edge(s: FreeSplitting) -> bool:
    """One edge with a singleton side (sides of sizes 1 and n-1)."""
    if len(s.edges) != 1:
        return False
    sizes = sorted(len(g) for g in s.groups)
    return sizes == [1, s.n - 1]


class Profile(NamedTuple):
    infinite_link: bool
    star_adjacent: bool
    pinned_two_path: Optional[bool]


def rigidity_profile(s: FreeSplitting) -> Profile:
    """Three link-theoretic marks of a splitting.

    infinite_link: the vertex has infinitely many neighbors (true exactly
    off the spine, where some vertex group has rank >= 2).
    star_adjacent: a leaf-labeled star collapses onto s, decided by shape
    (one edge with a singleton side).
    pinned_two_path: for the distinguished one-edge shape, two of its
    two-edge refinements lie at distance two with s as the only middle
    vertex; None when not evaluated.
    """
    a = not is_spine_vertex(s)
    b = len(s.edges) == 1 and min(len(g) for g in s.groups) == 1
    c = None
    if a and is_F_one_edge(s):
        c = _pinned_two_path(s)
    return Profile(a, b, c)


def _pinned_two_path(s: FreeSplitting) -> bool:
    s = canonical_splitting(s)
    big, small = sorted(s.groups, key=len, reverse=True)
    b = sorted(big)
    n = s.n
    s1 = make_splitting(n, ((b[0], b[1]), tuple(b[2:]), small),
                        ((0, 1), (1, 2)))
    s2 = make_splitting(n, ((b[0], b[2]), (b[1],) + tuple(b[3:]), small),
                        ((0, 1), (1, 2)))
    if splitting_key(s1) == splitting_key(s2):
        return False
    # the only common one-edge collapse is s itself
    c1 = set(one_edge_collapses(s1))
    c2 = set(one_edge_collapses(s2))
    p_s = one_edge_collapses(s)[0]
    if c1 & c2 != {p_s}:
        return False
    # no common refinement: the other two collapses must be incompatible
    q1 = next(iter(c1 - {p_s}))
    q2 = next(iter(c2 - {p_s}))
    return not compatible(q1, q2)


# ---------------------------------------------------------------------------
# neighbor streaming off the spine

def neighbor_stream(s: FreeSplitting, count: int, *, max_steps: int = 10 ** 6):
    """Yield `count` distinct classes adjacent to s, built by blowing a
    rank >= 2 vertex into a star over varying bases of its group."""
    s = canonical_splitting(s)
    target = None
    for v, g in enumerate(s.groups):
        if len(g) >= 2:
            target = v
            break
    if target is None:
        raise ValueError("every vertex group is cyclic; the link is finite")
    base = tuple(sorted(s.groups[target]))
    seen_bases = {base}
    queue = [base]
    emitted = set()
    steps = 0
    while queue and len(emitted) < count:
        cur = queue.pop(0)
        steps += 1
        if steps > max_steps:
            raise RuntimeError("neighbor stream exceeded step budget")
        groups = [g if v != target else () for v, g in enumerate(s.groups)]
        m = len(groups)
        edges = list(s.edges)
        for c in cur:
            groups.append((c,))
            edges.append((target, m))
            m += 1
        cand = make_splitting(s.n, groups, edges)
        key = splitting_key(cand)
        if key not in emitted:
            emitted.add(key)
            yield _decode_code(s.n, key)
        for i, c in enumerate(cur):
            for j, d in enumerate(cur):
                if i == j:
                    continue
                new = list(cur)
                new[i] = conjugate_cg(c, d.expand())
                nb = tuple(sorted(new))
                if nb not in seen_bases:
                    seen_bases.add(nb)
                    queue.append(nb)


# ---------------------------------------------------------------------------
# serialization

def splitting_to_json(s: FreeSplitting) -> dict:
    verts = []
    for v, g in enumerate(s.groups):
        verts.append({"id": v,
                      "labels": [{"core": c.core, "conj": list(c.conj)}
                                 for c in g]})
    return {"n": s.n, "vertices": verts, "edges": [list(e) for e in s.edges]}


def splitting_from_json(data: dict) -> FreeSplitting:
    verts = sorted(data["vertices"], key=lambda r: r["id"])
    ids = {r["id"]: i for i, r in enumerate(verts)}
    groups = [[conj_gen(c["core"], c["conj"]) for c in r["labels"]]
              for r in verts]
    edges = [(ids[a], ids[b]) for a, b in data["edges"]]
    return make_splitting(data["n"], groups, edges)


def splitting_to_dot(s: FreeSplitting) -> str:
    lines = ["graph splitting {"]
    for v, g in enumerate(s.groups):
        text = ",".join(str(c) for c in g) or "1"
        lines.append('  v%d [label="%s"];' % (v, text))
    for a, b in s.edges:
        lines.append("  v%d -- v%d;" % (a, b))
    lines.append("}")
    return "\n".join(lines)
