"""The web graph: every vertex blown up into a wheel-like web.

Vertex ids of the web graph are tuples: ``("c", v)`` for the centre of the
web of ``v`` and ``("p", h)`` for the circle vertex sitting on half-edge
``h``.  Edge ids are ``("s", h)`` for spokes, ``("r", v, k)`` for circle
edges and ``("t", e)`` for the through-edge carrying original edge ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Sequence

import networkx as nx

from .core import (
    StarGraph,
    Walk,
    WalkError,
    arrival,
    chords_cross,
    departure,
    require_valid,
    transversal_count,
    visits,
)
from .planarity import OrdinaryGraph


@dataclass(frozen=True)
class Web:
    center: tuple
    circle: tuple  # circle vertices in rotation order
    spokes: tuple
    rim: tuple


@dataclass(frozen=True)
class WebGraph:
    star: StarGraph
    graph: OrdinaryGraph
    webs: dict  # original vertex -> Web
    through_edge: dict  # original edge -> web-graph edge
    vertex_map: dict  # web-graph vertex -> original vertex
    edge_map: dict  # web-graph edge -> ("edge", e) or ("vertex", v)

    def web_of(self, x) -> Hashable:
        """Original vertex whose web contains web-graph vertex ``x``."""
        return self.vertex_map[x]

    def web_subgraph(self, v) -> OrdinaryGraph:
        w = self.webs[v]
        es = {e: self.graph.edges[e] for e in w.spokes + w.rim}
        return OrdinaryGraph((w.center,) + w.circle, es)


def build_web_graph(g: StarGraph) -> WebGraph:
    require_valid(g)
    vertices, edges = [], {}
    webs, vmap, emap, through = {}, {}, {}, {}
    for v in sorted(g.rotations):
        rot = g.rotations[v]
        d = len(rot)
        c = ("c", v)
        circle = tuple(("p", h) for h in rot)
        vertices.append(c)
        vertices.extend(circle)
        vmap[c] = v
        spokes, rim = [], []
        for h, p in zip(rot, circle):
            vmap[p] = v
            s = ("s", h)
            edges[s] = (c, p)
            spokes.append(s)
        if d == 1:
            rim_pairs = [(circle[0], circle[0])]
        elif d == 2:
            rim_pairs = [(circle[0], circle[1]), (circle[1], circle[0])]
        else:
            rim_pairs = [(circle[k], circle[(k + 1) % d]) for k in range(d)]
        for k, pr in enumerate(rim_pairs):
            r = ("r", v, k)
            edges[r] = pr
            rim.append(r)
        for e_id in spokes + rim:
            emap[e_id] = ("vertex", v)
        webs[v] = Web(c, circle, tuple(spokes), tuple(rim))
    for e in sorted(g.edges):
        a, b = g.edges[e]
        t = ("t", e)
        edges[t] = (("p", a), ("p", b))
        through[e] = t
        emap[t] = ("edge", e)
    return WebGraph(g, OrdinaryGraph(vertices, edges), webs, through, vmap, emap)


def suppressed_core(w: WebGraph) -> nx.MultiGraph:
    """Delete circle edges and smooth circle vertices; should give back G."""
    m = nx.MultiGraph()
    for v in w.webs:
        m.add_node(("c", v))
    for e, t in w.through_edge.items():
        (pa, pb) = w.graph.edges[t]
        m.add_edge(("c", w.vertex_map[pa]), ("c", w.vertex_map[pb]), key=e)
    return m


# ---------------------------------------------------------------------------
# Walks in the web graph and their projection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphWalk:
    """A walk in an ordinary graph given by its start vertex and edges."""

    start: Hashable
    edges: tuple

    def vertices(self, g: OrdinaryGraph) -> list:
        seq, at = [self.start], self.start
        for e in self.edges:
            a, b = g.edges[e]
            if at == a:
                at = b
            elif at == b:
                at = a
            else:
                raise WalkError(f"edge {e!r} is not incident to {at!r}")
            seq.append(at)
        return seq

    def end(self, g: OrdinaryGraph):
        return self.vertices(g)[-1]

    def reversed(self, g: OrdinaryGraph) -> GraphWalk:
        return GraphWalk(self.end(g), tuple(reversed(self.edges)))

    def then(self, g: OrdinaryGraph, other: GraphWalk) -> GraphWalk:
        if self.end(g) != other.start:
            raise WalkError("walks do not meet")
        return GraphWalk(self.start, self.edges + other.edges)


@dataclass(frozen=True)
class ProjectedWalk:
    walk: Walk  # closed iff the two ends fall in one web and a step survives
    start: Hashable  # original vertices of the two ends
    end: Hashable


def project_walk(w: WebGraph, path: GraphWalk) -> ProjectedWalk:
    """Image under the projection; spokes and circle edges are erased."""
    seq = path.vertices(w.graph)
    steps = []
    for k, e in enumerate(path.edges):
        kind, ref = w.edge_map[e]
        if kind != "edge":
            continue
        _, h = seq[k]  # circle vertex ("p", h) we leave from
        a, _ = w.star.edges[ref]
        steps.append((ref, h != a))
    start, end = w.vertex_map[seq[0]], w.vertex_map[seq[-1]]
    closed = bool(steps) and start == end
    return ProjectedWalk(Walk(tuple(steps), closed), start, end)


class LemmaKind(str, Enum):
    NO_TRANSVERSAL = "NO_TRANSVERSAL"
    CLOSED_SEPARATED_ENDS = "CLOSED_SEPARATED_ENDS"
    CLOSED_ALTERNATING_ENDS = "CLOSED_ALTERNATING_ENDS"


@dataclass(frozen=True)
class LemmaVerdict:
    kind: LemmaKind
    predicted: tuple  # (kind, original vertex) per predicted crossing
    projections: tuple[ProjectedWalk, ProjectedWalk]

    @property
    def predicted_count(self) -> int:
        return len(self.predicted)

    def agrees(self, g: StarGraph) -> bool:
        a, b = (p.walk for p in self.projections)
        return transversal_count(g, a, b) == self.predicted_count


def _interior(g: OrdinaryGraph, p: GraphWalk) -> tuple[set, set]:
    vs = p.vertices(g)
    return set(vs[1:-1]), set(p.edges)


def _passages(g: StarGraph, pw: ProjectedWalk) -> list[tuple]:
    """(vertex, h_in, h_out) for every pass through a web, closing pass excluded."""
    out = []
    for vis in visits(g, Walk(pw.walk.steps, closed=False)):
        out.append((vis.vertex, vis.h_in, vis.h_out))
    return out


def _closing(g: StarGraph, pw: ProjectedWalk) -> tuple | None:
    if not pw.walk.closed:
        return None
    return (pw.start, arrival(g, pw.walk.steps[-1]), departure(g, pw.walk.steps[0]))


def check_projection_lemma(w: WebGraph, p1: GraphWalk, p2: GraphWalk) -> LemmaVerdict:
    """Predict the transversal intersections of two projected web-graph paths.

    Passes through a web by internally disjoint paths never alternate, so a
    crossing can only come from a path that closes up in a web: either the
    other path runs through that web between its two ends, or both paths
    close in the same web with interleaved directions.
    """
    i1, e1 = _interior(w.graph, p1)
    i2, e2 = _interior(w.graph, p2)
    if i1 & i2 or e1 & e2:
        raise WalkError("paths intersect internally")
    g = w.star
    pr = (project_walk(w, p1), project_walk(w, p2))
    pos = g.position
    predicted = []
    for i in (0, 1):
        cl = _closing(g, pr[i])
        if cl is None:
            continue
        v, s, t = cl
        for (u, a, b) in _passages(g, pr[1 - i]):
            if u == v and chords_cross(pos(s), pos(t), pos(a), pos(b)):
                predicted.append((LemmaKind.CLOSED_SEPARATED_ENDS, v))
    c1, c2 = _closing(g, pr[0]), _closing(g, pr[1])
    if c1 and c2 and c1[0] == c2[0]:
        if chords_cross(pos(c1[1]), pos(c1[2]), pos(c2[1]), pos(c2[2])):
            predicted.append((LemmaKind.CLOSED_ALTERNATING_ENDS, c1[0]))
    kind = predicted[0][0] if predicted else LemmaKind.NO_TRANSVERSAL
    return LemmaVerdict(kind, tuple(predicted), pr)


def separated_in_web(w: WebGraph, v, ends: Sequence, blocker: GraphWalk) -> bool:
    """Whether ``ends`` fall in different components of the web minus ``blocker``."""
    web = w.web_subgraph(v)
    block = set(blocker.vertices(w.graph)) - set(ends)
    m = nx.MultiGraph()
    m.add_nodes_from(x for x in web.vertices if x not in block)
    for e, (a, b) in web.edges.items():
        if a in block or b in block or e in blocker.edges:
            continue
        m.add_edge(a, b)
    a, b = ends
    if a not in m or b not in m:
        return True
    return not nx.has_path(m, a, b)
