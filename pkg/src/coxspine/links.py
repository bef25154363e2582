"""Positive and negative links of marked-graph classes, join analysis,
and the link-structural classification of the two star shapes.

The negative link of a class holds its forest collapses; the positive
link holds the classes that collapse onto it.  Every positive vertex is
adjacent to every negative one, so the link always splits as a join;
for interior vertices that join decomposition is unique, which is what
join_decompositions lets callers check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import (CollapseError, MarkedGraph, canonical_key, canonicalize,
                     collapse, graph_to_json, one_edge_blowups,
                     partition_contains)
from .spine import KIND_F_STAR, KIND_OTHER, KIND_ZERO_STAR, BudgetExceeded

# a legal tree has at most n labeled vertices plus n - 1 unlabeled ones
# of degree >= 3, so closures of blow-ups terminate at 2n - 1 vertices
_MAX_VERTICES = lambda n: 2 * n - 1


def negative_link(g: MarkedGraph) -> list:
    """All distinct classes of nonempty legal forest collapses."""
    g = canonicalize(g)
    out = {}
    for r in range(1, len(g.edges) + 1):
        for forest in itertools.combinations(g.edges, r):
            try:
                q = canonicalize(collapse(g, forest))
            except CollapseError:
                continue
            out.setdefault(canonical_key(q), q)
    return [out[k] for k in sorted(out)]


def positive_link_depth1(g: MarkedGraph) -> list:
    """All distinct one-edge blow-ups over all vertices."""
    g = canonicalize(g)
    out = {}
    for v in range(g.num_vertices):
        for h in one_edge_blowups(g, v):
            out.setdefault(canonical_key(h), h)
    return [out[k] for k in sorted(out)]


def positive_link_bounded(g: MarkedGraph, depth: int, *,
                          max_classes: int = 10 ** 5) -> list:
    """Closure of one-edge blow-ups up to the given iteration depth.

    Iterated blow-ups reach exactly the classes that collapse onto g
    (a multi-edge refinement factors into one-edge steps), so at depth
    >= n - 1 this is the full positive link.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    g = canonicalize(g)
    seen = {}
    frontier = [g]
    for _ in range(depth):
        nxt = []
        for h in frontier:
            for b in positive_link_depth1(h):
                k = canonical_key(b)
                if k not in seen:
                    seen[k] = b
                    nxt.append(b)
                    if len(seen) > max_classes:
                        raise BudgetExceeded("positive link budget exceeded",
                                             seen=len(seen))
        frontier = nxt
        if not frontier:
            break
    return [seen[k] for k in sorted(seen)]


def positive_link(g: MarkedGraph, *, max_classes: int = 10 ** 5) -> list:
    return positive_link_bounded(g, _MAX_VERTICES(g.n), max_classes=max_classes)


def linked(a: MarkedGraph, b: MarkedGraph) -> bool:
    """Adjacency in the collapse complex: one class collapses onto the
    other, decided by partition containment (a complete invariant for
    collapse relations; the forest search collapses_onto is the oracle
    in tests)."""
    ka, kb = canonical_key(a), canonical_key(b)
    if ka == kb:
        return False
    if a.num_vertices > b.num_vertices:
        return partition_contains(a, b)
    if b.num_vertices > a.num_vertices:
        return partition_contains(b, a)
    return False


def kn_neighbors(g: MarkedGraph) -> list:
    """Full link in the collapse complex: collapses plus refinements."""
    out = {canonical_key(h): h for h in negative_link(g)}
    for h in positive_link(g):
        out.setdefault(canonical_key(h), h)
    return [out[k] for k in sorted(out)]


def kn_ball(g: MarkedGraph, radius: int, *, max_classes: int = 10 ** 5) -> list:
    """All classes within the given collapse-complex distance of g."""
    g = canonicalize(g)
    seen = {canonical_key(g): g}
    frontier = [g]
    for _ in range(radius):
        nxt = []
        for h in frontier:
            for b in kn_neighbors(h):
                k = canonical_key(b)
                if k not in seen:
                    seen[k] = b
                    nxt.append(b)
                    if len(seen) > max_classes:
                        raise BudgetExceeded("ball budget exceeded",
                                             seen=len(seen))
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


@dataclass(frozen=True)
class LinkGraph:
    vertices: tuple  # canonical MarkedGraph values
    polarity: tuple  # "plus" or "minus" per vertex
    edges: tuple     # sorted (i, j) index pairs


def link_graph(g: MarkedGraph, *, max_classes: int = 10 ** 5) -> LinkGraph:
    plus = positive_link(g, max_classes=max_classes)
    minus = negative_link(g)
    verts = plus + minus
    polarity = ("plus",) * len(plus) + ("minus",) * len(minus)
    edges = set()
    for i in range(len(plus)):
        for j in range(len(plus), len(verts)):
            edges.add((i, j))
    for side in (range(len(plus)), range(len(plus), len(verts))):
        for i, j in itertools.combinations(side, 2):
            if linked(verts[i], verts[j]):
                edges.add((i, j))
    return LinkGraph(tuple(verts), polarity, tuple(sorted(edges)))


def join_decompositions(num_vertices: int, edges) -> list:
    """All nontrivial join bipartitions of an abstract graph.

    A bipartition is a join iff every cross pair is adjacent, i.e. iff
    it unites connected components of the complement graph.
    """
    edge_set = {(min(a, b), max(a, b)) for a, b in edges}
    comp_adj = {v: [] for v in range(num_vertices)}
    for a, b in itertools.combinations(range(num_vertices), 2):
        if (a, b) not in edge_set:
            comp_adj[a].append(b)
            comp_adj[b].append(a)
    components = []
    left = set(range(num_vertices))
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in comp_adj[v]:
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        components.append(frozenset(comp))
        left -= comp
    out = []
    for r in range(1, len(components) // 2 + 1):
        for group in itertools.combinations(components, r):
            a = frozenset().union(*group)
            b = frozenset(range(num_vertices)) - a
            if len(group) * 2 == len(components) and min(a) > min(b):
                continue  # avoid double-counting the symmetric split
            if a and b:
                out.append((a, b) if min(a) < min(b) else (b, a))
    return sorted(out, key=lambda p: sorted(p[0]))


def classify(g: MarkedGraph) -> str:
    """Kind from link structure alone (no vertex counting): a zero star
    has an edgeless negative link of full size n; an f star has an
    empty negative link and a zero star among its one-edge blow-ups."""

    def edgeless_of_size_n(h, minus):
        if len(minus) != h.n:
            return False
        return not any(linked(a, b)
                       for a, b in itertools.combinations(minus, 2))

    minus = negative_link(g)
    if edgeless_of_size_n(g, minus):
        return KIND_ZERO_STAR
    if not minus:
        for h in positive_link_depth1(g):
            if edgeless_of_size_n(h, negative_link(h)):
                return KIND_F_STAR
    return KIND_OTHER


def link_to_json(lg: LinkGraph) -> dict:
    return {
        "vertices": [{"index": i, "polarity": lg.polarity[i],
                      "graph": graph_to_json(v)}
                     for i, v in enumerate(lg.vertices)],
        "edges": [list(e) for e in lg.edges],
    }


def link_to_dot(lg: LinkGraph) -> str:
    lines = ["graph link {"]
    for i, pol in enumerate(lg.polarity):
        color = "green" if pol == "plus" else "red"
        lines.append('  l%d [label="%d:%s" color=%s];' % (i, i, pol, color))
    for a, b in lg.edges:
        lines.append("  l%d -- l%d;" % (a, b))
    lines.append("}")
    return "\n".join(lines)
