"""Marked graphs of groups: labeled trees, moves, and canonical forms.

A marked graph is a finite tree with exactly n vertices labeled by
ConjGen values (one per core index 1..n) and every unlabeled vertex of
degree >= 3.  Two marked graphs are equivalent when they differ by a
label-preserving tree isomorphism, a global conjugation of all labels,
or a branch twist: at a labeled vertex v, any branch of v may have all
its labels conjugated by v's label.  Twisting every branch at once is a
global conjugation, so the twist orbit is finite modulo conjugation.

Canonical forms are computed by minimizing total label length over
global conjugations (exact: the objective is a sum of convex
distance-to-axis functions on a tree, so letter-by-letter descent finds
the global minimum and the minimizer set is connected), enumerating the
twist orbit, and encoding the tree AHU-style from its centroid with
labels embedded.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .words import ConjGen, Word, conj_gen, conjugate_cg, parse_conj_gen, apply_word


class InvariantError(ValueError):
    """A structure violates the marked-graph invariants."""


class CollapseError(ValueError):
    """A collapse move is illegal."""


def _norm_edge(e):
    a, b = e
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class MarkedGraph:
    n: int
    labels: tuple  # one Optional[ConjGen] per vertex, vertex ids 0..m-1
    edges: tuple   # sorted tuple of sorted pairs

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    def adjacency(self):
        adj = {v: [] for v in range(len(self.labels))}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def labeled_vertices(self):
        return [v for v, c in enumerate(self.labels) if c is not None]

    def degree(self, v) -> int:
        return sum(1 for e in self.edges if v in e)


def make_graph(n: int, labels: Iterable[Optional[ConjGen]], edges) -> MarkedGraph:
    g = MarkedGraph(n, tuple(labels), tuple(sorted(_norm_edge(e) for e in edges)))
    validate(g)
    return g


def validate(g: MarkedGraph):
    m = g.num_vertices
    if len(g.edges) != m - 1:
        raise InvariantError("not a tree: %d vertices, %d edges" % (m, len(g.edges)))
    adj = g.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != m:
        raise InvariantError("not connected")
    cores = sorted(c.core for c in g.labels if c is not None)
    if cores != list(range(1, g.n + 1)):
        raise InvariantError("label cores must be exactly 1..n, got %r" % cores)
    for v, c in enumerate(g.labels):
        if c is None and len(adj[v]) < 3:
            raise InvariantError(
                "unlabeled vertex %d has degree %d < 3" % (v, len(adj[v])))


def standard_zero_star(n: int) -> MarkedGraph:
    """Star with an unlabeled center and leaf i labeled x_i."""
    if n < 2:
        raise ValueError("n >= 2 required")
    labels = [None] + [conj_gen(i) for i in range(1, n + 1)]
    edges = [(0, i) for i in range(1, n + 1)]
    return make_graph(n, labels, edges)


# ---------------------------------------------------------------------------
# global-conjugation minimization

def _total_len(labels):
    return sum(2 * len(c.conj) + 1 for c in labels if c is not None)


def _conj_labels(labels, w: Word):
    return tuple(None if c is None else conjugate_cg(c, w) for c in labels)


def _label_sort_key(labels):
    return tuple(sorted(c.expand() for c in labels if c is not None))


def minimize_conjugation(labels, alphabet):
    """All label assignments of minimal total length reachable by global
    conjugation.  Descent is exact (convexity on the Cayley tree); the
    minimizer plateau is connected and enumerated by BFS."""
    cur = tuple(labels)
    best = _total_len(cur)
    improved = True
    while improved:
        improved = False
        for t in alphabet:
            cand = _conj_labels(cur, (t,))
            tl = _total_len(cand)
            if tl < best:
                cur, best, improved = cand, tl, True
                break
    plateau = {cur}
    frontier = [cur]
    while frontier:
        nxt = []
        for state in frontier:
            for t in alphabet:
                cand = _conj_labels(state, (t,))
                if _total_len(cand) == best and cand not in plateau:
                    plateau.add(cand)
                    nxt.append(cand)
        frontier = nxt
        if len(plateau) > 100000:
            raise RuntimeError("conjugation plateau unexpectedly large")
    return sorted(plateau, key=_label_sort_key)


# ---------------------------------------------------------------------------
# tree encoding (AHU with labels, rooted at the centroid)

def _label_key(c: Optional[ConjGen]):
    return (0, 0, ()) if c is None else (1, c.core, c.conj)


def _centroids(adj, m):
    if m == 1:
        return [0]
    deg = {v: len(us) for v, us in adj.items()}
    leaves = [v for v in adj if deg[v] <= 1]
    removed = len(leaves)
    layer = leaves
    while removed < m:
        nxt = []
        for v in layer:
            for u in adj[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        removed += len(nxt)
        layer = nxt
    return sorted(layer)


def _encode_rooted(g: MarkedGraph, adj, root):
    def enc(v, parent):
        kids = sorted(enc(u, v) for u in adj[v] if u != parent)
        return (_label_key(g.labels[v]), tuple(kids))
    return enc(root, None)


def encode(g: MarkedGraph):
    """Canonical nested-tuple encoding, invariant under tree isomorphism."""
    adj = g.adjacency()
    return min(_encode_rooted(g, adj, r) for r in _centroids(adj, g.num_vertices))


def decode(n: int, code) -> MarkedGraph:
    """Rebuild the canonical representative graph from an encoding."""
    labels = []
    edges = []

    def build(node):
        key, kids = node
        vid = len(labels)
        labels.append(None if key[0] == 0 else ConjGen(key[1], key[2]))
        for kid in kids:
            edges.append((vid, build(kid)))
        return vid

    build(code)
    return make_graph(n, labels, edges)


# ---------------------------------------------------------------------------
# twist orbit and canonical form

def _branch(adj, v, u):
    """Vertices of the component of tree - v containing u."""
    seen = {u}
    stack = [u]
    while stack:
        w = stack.pop()
        for x in adj[w]:
            if x != v and x not in seen:
                seen.add(x)
                stack.append(x)
    return seen


def _twist_neighbors(g_n, labels, edges):
    adj = {v: [] for v in range(len(labels))}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    out = []
    for v, c in enumerate(labels):
        if c is None:
            continue
        w = c.expand()
        for u in adj[v]:
            branch = _branch(adj, v, u)
            if not any(labels[x] is not None for x in branch):
                continue
            out.append(tuple(
                conjugate_cg(lc, w) if (x in branch and lc is not None) else lc
                for x, lc in enumerate(labels)))
    return out


_TWIST_ORBIT_CAP = 1 << 14


@functools.lru_cache(maxsize=200000)
def canonical_form(g: MarkedGraph):
    """(key, graph): canonical encoding and representative of g's class."""
    alphabet = range(1, g.n + 1)

    def normalize(labels):
        best_code = None
        best_labels = None
        for assign in minimize_conjugation(labels, alphabet):
            code = encode(MarkedGraph(g.n, assign, g.edges))
            if best_code is None or code < best_code:
                best_code, best_labels = code, assign
        return best_code, best_labels

    code0, rep0 = normalize(g.labels)
    seen = {code0: rep0}
    frontier = [rep0]
    best = code0
    while frontier:
        nxt = []
        for labels in frontier:
            for cand in _twist_neighbors(g.n, labels, g.edges):
                code, rep = normalize(cand)
                if code not in seen:
                    seen[code] = rep
                    nxt.append(rep)
                    if code < best:
                        best = code
        frontier = nxt
        if len(seen) > _TWIST_ORBIT_CAP:
            raise RuntimeError("twist orbit exceeded cap")
    return best, decode(g.n, best)


def canonicalize(g: MarkedGraph) -> MarkedGraph:
    return canonical_form(g)[1]


def canonical_key(g: MarkedGraph):
    return canonical_form(g)[0]


def equivalent(x: MarkedGraph, y: MarkedGraph) -> bool:
    return x.n == y.n and canonical_key(x) == canonical_key(y)


# ---------------------------------------------------------------------------
# moves

def collapse(g: MarkedGraph, forest) -> MarkedGraph:
    """Quotient of g by a forest of edges; labels are carried along."""
    forest = {_norm_edge(e) for e in forest}
    if not forest <= set(g.edges):
        raise CollapseError("forest contains non-edges")
    if len(forest) == len(g.edges):
        raise CollapseError("collapse would reduce the graph to a point")
    parent = list(range(g.num_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in forest:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    classes = {}
    for v in range(g.num_vertices):
        classes.setdefault(find(v), []).append(v)
    new_id = {root: i for i, root in enumerate(sorted(classes))}
    labels = [None] * len(classes)
    for root, members in classes.items():
        found = [g.labels[v] for v in members if g.labels[v] is not None]
        if len(found) > 1:
            raise CollapseError("collapsed component contains two labeled vertices")
        if found:
            labels[new_id[root]] = found[0]
    edges = [(new_id[find(a)], new_id[find(b)])
             for a, b in g.edges if _norm_edge((a, b)) not in forest]
    try:
        return make_graph(g.n, labels, edges)
    except InvariantError as exc:
        raise CollapseError("quotient violates invariants: %s" % exc) from exc


def _subsets(items, rmin, rmax):
    for r in range(rmin, rmax + 1):
        yield from itertools.combinations(items, r)


def one_edge_blowups(g: MarkedGraph, v: int):
    """All classes obtained by inserting one new edge at v.

    A subset S of the edge-ends at v moves to the new endpoint; when v is
    labeled, the label may stay or move, and each moved branch may carry a
    twist by v's label (twists of branches left at v, or when the label
    moves, are already quotiented out by equivalence).
    """
    adj = g.adjacency()
    nb = sorted(adj[v])
    deg = len(nb)
    m = g.num_vertices
    c = g.labels[v]
    results = {}

    def emit(moved, new_label, old_label, twisted):
        labels = list(g.labels)
        labels[v] = old_label
        labels.append(new_label)
        if twisted:
            w = c.expand()
            for u in twisted:
                for x in _branch(adj, v, u):
                    if labels[x] is not None:
                        labels[x] = conjugate_cg(labels[x], w)
        edges = []
        moved_set = set(moved)
        for a, b in g.edges:
            if a == v and b in moved_set:
                edges.append((m, b))
            elif b == v and a in moved_set:
                edges.append((a, m))
            else:
                edges.append((a, b))
        edges.append((v, m))
        try:
            cand = make_graph(g.n, labels, edges)
        except InvariantError:
            return
        key, rep = canonical_form(cand)
        results.setdefault(key, rep)

    if c is None:
        for s in _subsets(nb, 2, deg - 2):
            emit(s, None, None, ())
    else:
        for s in _subsets(nb, 2, deg):
            for t in _subsets(s, 0, len(s)):
                emit(s, None, c, t)
        for s in _subsets(nb, 0, deg - 2):
            emit(s, c, None, ())
    return [results[k] for k in sorted(results)]


def act(f, g: MarkedGraph) -> MarkedGraph:
    """Precompose the marking: relabel every ConjGen by its image under f."""
    labels = [None if c is None else parse_conj_gen(apply_word(f, c.expand()))
              for c in g.labels]
    return canonicalize(MarkedGraph(g.n, tuple(labels), g.edges))


# ---------------------------------------------------------------------------
# factor partitions

@dataclass(frozen=True)
class FactorPartition:
    """An unordered pair of ConjGen sets presenting W_n = <left> * <right>,
    canonical under global conjugation and basis changes within each side."""

    sides: tuple  # pair of sorted ConjGen tuples, pair itself sorted

    def core_sets(self):
        return tuple(frozenset(c.core for c in side) for side in self.sides)


def _partition_state_key(sides):
    return tuple(sorted(tuple(sorted(side)) for side in sides))


def _partition_moves(sides):
    out = []
    for si, side in enumerate(sides):
        for i, c in enumerate(side):
            for j, d in enumerate(side):
                if i == j:
                    continue
                new_side = list(side)
                new_side[i] = conjugate_cg(c, d.expand())
                out.append(tuple(s if k != si else tuple(new_side)
                                 for k, s in enumerate(sides)))
    return out


_PARTITION_SLACK = 4
_PARTITION_CAP = 50000


@functools.lru_cache(maxsize=200000)
def _canonical_partition(n, sides):
    """Best-first minimization over global conjugation and within-side
    basis changes; bounded by a length slack above the best state found."""

    def total(sides):
        return sum(2 * len(c.conj) + 1 for side in sides for c in side)

    def norm(sides):
        flat = []
        shape = []
        for side in sides:
            shape.append(len(side))
            flat.extend(side)
        best = None
        for assign in minimize_conjugation(flat, range(1, n + 1)):
            rebuilt = []
            pos = 0
            for k in shape:
                rebuilt.append(tuple(sorted(assign[pos:pos + k])))
                pos += k
            key = _partition_state_key(rebuilt)
            if best is None or key < best:
                best = key
        return best

    start = norm(sides)
    seen = {start}
    import heapq
    heap = [(total(start), start)]
    best_total = total(start)
    best_key = start
    while heap:
        t, state = heapq.heappop(heap)
        if t > best_total + _PARTITION_SLACK:
            continue
        if (t, state) < (best_total, best_key):
            best_total, best_key = t, state
        for cand in _partition_moves(state):
            ck = norm(cand)
            if ck in seen:
                continue
            ct = total(ck)
            if ct > best_total + _PARTITION_SLACK:
                continue
            seen.add(ck)
            heapq.heappush(heap, (ct, ck))
        if len(seen) > _PARTITION_CAP:
            raise RuntimeError("partition search exceeded cap")
    return FactorPartition(best_key)


def factor_partition(n, left, right) -> FactorPartition:
    left = tuple(sorted(left))
    right = tuple(sorted(right))
    if not left or not right:
        raise ValueError("both sides must be nonempty")
    cores = sorted(c.core for c in left + right)
    if cores != list(range(1, n + 1)):
        raise ValueError("sides must cover cores 1..n exactly once")
    return _canonical_partition(n, _partition_state_key((left, right)))


def edge_partition(g: MarkedGraph, e) -> FactorPartition:
    """Free factor decomposition induced by removing edge e."""
    a, b = _norm_edge(e)
    if (a, b) not in g.edges:
        raise ValueError("not an edge: %r" % (e,))
    adj = g.adjacency()
    side_a = _branch(adj, b, a)
    left = [g.labels[v] for v in side_a if g.labels[v] is not None]
    right = [g.labels[v] for v in range(g.num_vertices)
             if v not in side_a and g.labels[v] is not None]
    return factor_partition(g.n, left, right)


def all_edge_partitions(g: MarkedGraph):
    return {e: edge_partition(g, e) for e in g.edges}


def canonical_lift(x: MarkedGraph, y: MarkedGraph, h):
    """The unique edge set of x whose partitions match those of forest h in y."""
    x_parts = all_edge_partitions(x)
    lift = set()
    for e in h:
        p = edge_partition(y, e)
        matches = [f for f, q in x_parts.items() if q == p]
        if len(matches) != 1:
            raise ValueError(
                "expected exactly one matching edge for %r, found %d"
                % (e, len(matches)))
        lift.add(matches[0])
    return lift


def collapses_onto(y: MarkedGraph, x: MarkedGraph) -> bool:
    """True iff some forest collapse of y is equivalent to x (definitional
    search; the partition-containment shortcut is checked against this in
    tests)."""
    k = y.num_vertices - x.num_vertices
    if k < 0:
        return False
    if k == 0:
        return equivalent(y, x)
    target = canonical_key(x)
    for forest in itertools.combinations(y.edges, k):
        try:
            q = collapse(y, forest)
        except CollapseError:
            continue
        if canonical_key(q) == target:
            return True
    return False


def partition_contains(y: MarkedGraph, x: MarkedGraph) -> bool:
    """Partition-set containment test for 'y collapses onto x'."""
    if y.num_vertices < x.num_vertices:
        return False
    yp = set(all_edge_partitions(y).values())
    return set(all_edge_partitions(x).values()) <= yp


# ---------------------------------------------------------------------------
# serialization

def graph_to_json(g: MarkedGraph) -> dict:
    verts = []
    for v, c in enumerate(g.labels):
        label = None if c is None else {"core": c.core, "conj": list(c.conj)}
        verts.append({"id": v, "label": label})
    return {"n": g.n, "vertices": verts, "edges": [list(e) for e in g.edges]}


def graph_from_json(data: dict) -> MarkedGraph:
    n = data["n"]
    verts = sorted(data["vertices"], key=lambda r: r["id"])
    ids = {r["id"]: i for i, r in enumerate(verts)}
    labels = []
    for r in verts:
        if r["label"] is None:
            labels.append(None)
        else:
            labels.append(conj_gen(r["label"]["core"], r["label"]["conj"]))
    edges = [(ids[a], ids[b]) for a, b in data["edges"]]
    return make_graph(n, labels, edges)


def graph_to_dot(g: MarkedGraph) -> str:
    lines = ["graph marked {"]
    for v, c in enumerate(g.labels):
        text = "•" if c is None else str(c)
        lines.append('  v%d [label="%s"];' % (v, text))
    for a, b in g.edges:
        lines.append("  v%d -- v%d;" % (a, b))
    lines.append("}")
    return "\n".join(lines)
