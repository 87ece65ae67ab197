"""Constructive extraction of nonplanarity witnesses from a Kuratowski subgraph.

The Kuratowski subgraph of the web graph is read through the projection
back onto the star-graph.  Webs holding several branch vertices give a
transversal cycle pair directly from pairs of branch-vertex paths that
close up inside that web.  When every web holds at most one branch
vertex, the projected K3,3 is an immersion without transversal
crossings; an extra path in the complement (guaranteed for even graphs)
or a sequence of edge-shrinking rewirings finishes the job.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import networkx as nx

from .certificates import EmbeddedK33, VassilievObstruction
from .core import (
    StarGraph,
    Walk,
    arrival,
    check_obstruction,
    chords_cross,
    departure,
    is_walk,
    self_crossing_count,
    simplify_obstruction,
    transversal_count,
    transversal_crossings,
    visits,
    walk_end,
    walk_start,
)
from .planarity import KuratowskiSubdivision
from .webgraph import GraphWalk, WebGraph, project_walk, separated_in_web


class ExtractionError(RuntimeError):
    """No case of the analysis produced a witness.  Never expected."""


# ---------------------------------------------------------------------------
# The Kuratowski subgraph seen from the star-graph
# ---------------------------------------------------------------------------

class Gamma:
    def __init__(self, web: WebGraph, sub: KuratowskiSubdivision) -> None:
        self.web = web
        self.sub = sub
        self.branch = tuple(sub.branch_vertices)
        self.kind = sub.kind
        self._paths: dict = {}
        for p in sub.paths:
            a, b = p.vertices[0], p.vertices[-1]
            gw = GraphWalk(a, tuple(p.edges))
            self._paths[(a, b)] = gw
            self._paths[(b, a)] = gw.reversed(web.graph)
        self.occupancy: dict = defaultdict(list)
        for b in self.branch:
            self.occupancy[web.vertex_map[b]].append(b)
        self._proj_cache: dict = {}

    def adjacent(self, a, b) -> bool:
        return (a, b) in self._paths

    def path(self, a, b) -> GraphWalk:
        return self._paths[(a, b)]

    def walk_along(self, seq: Sequence) -> GraphWalk:
        gw = GraphWalk(seq[0], ())
        for a, b in zip(seq, seq[1:]):
            gw = GraphWalk(gw.start, gw.edges + self._paths[(a, b)].edges)
        return gw

    def projected(self, seq: tuple) -> Walk | None:
        """Projection of a branch-vertex path if it closes up, else None."""
        if seq not in self._proj_cache:
            pw = project_walk(self.web, self.walk_along(seq))
            self._proj_cache[seq] = pw.walk if pw.walk.closed else None
        return self._proj_cache[seq]

    def is_inside(self, gw: GraphWalk, v) -> bool:
        """Whether the path runs along spokes and circle edges of the web of ``v`` only."""
        return all(self.web.edge_map[e] == ("vertex", v) for e in gw.edges)


# ---------------------------------------------------------------------------
# Occupancy of a web
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WebOccupancy:
    web: Hashable
    internal: tuple
    internal_edges: tuple
    connected: bool
    shape: str
    separated: bool
    contains_k23: bool


def _shape(h: nx.Graph) -> str:
    n = h.number_of_nodes()
    if n <= 1:
        return "point"
    if not nx.is_connected(h):
        return "disconnected"
    degs = sorted(d for _, d in h.degree())
    if nx.is_tree(h):
        if n == 2:
            return "edge"
        big = sum(1 for d in degs if d >= 3)
        if big == 0:
            return "path"
        return "tree-deg3" if big == 1 else "tree-2deg3"
    cycles = nx.cycle_basis(h)
    if all(d == 2 for d in degs):
        return f"cycle{n}"
    return f"cyclic{len(cycles)}"


def occupancy(gm: Gamma, v) -> WebOccupancy:
    inside = tuple(sorted(gm.occupancy.get(v, ())))
    h = nx.Graph()
    h.add_nodes_from(inside)
    edges = []
    for a, b in itertools.combinations(inside, 2):
        if gm.adjacent(a, b) and gm.is_inside(gm.path(a, b), v):
            h.add_edge(a, b)
            edges.append((a, b))
    separated = False
    if len(inside) == 2 and not edges:
        for p in gm.sub.paths:
            for seg in _segments_in_web(gm, p, v):
                if separated_in_web(gm.web, v, inside, seg):
                    separated = True
    k23 = False
    if gm.kind == "K33" and len(inside) >= 5:
        matcher = nx.algorithms.isomorphism.GraphMatcher(h, nx.complete_bipartite_graph(2, 3))
        k23 = matcher.subgraph_is_monomorphic()
    return WebOccupancy(
        v, inside, tuple(edges), h.number_of_nodes() <= 1 or nx.is_connected(h),
        _shape(h), separated, k23,
    )


def _segments_in_web(gm: Gamma, p, v) -> list[GraphWalk]:
    """Maximal stretches of a branch path inside the web of ``v``."""
    vmap = gm.web.vertex_map
    segs, cur_start, cur = [], None, []
    vs = p.vertices
    for i, e in enumerate(p.edges):
        if vmap[vs[i]] == v and vmap[vs[i + 1]] == v:
            if cur_start is None:
                cur_start = vs[i]
            cur.append(e)
        else:
            if cur:
                segs.append(GraphWalk(cur_start, tuple(cur)))
            cur_start, cur = None, []
    if cur:
        segs.append(GraphWalk(cur_start, tuple(cur)))
    return segs


def case_label(gm: Gamma, occ: WebOccupancy) -> str:
    k = len(occ.internal)
    if gm.kind == "K5":
        return {1: "K5.a", 2: "K5.b"}.get(k, "K5.c")
    reduced = "" if occ.connected else " (reduced)"
    if k == 2:
        if occ.connected:
            return "K33.a.1"
        if occ.separated:
            a, b = occ.internal
            return "K33.a.3.1" if gm.adjacent(a, b) else "K33.a.3.2"
        return "K33.a.2"
    if k == 3:
        return "K33.b" + reduced
    if k == 4:
        sub = {"tree-deg3": "c.1", "path": "c.2", "cycle4": "c.3"}.get(occ.shape, "c")
        return "K33." + sub + reduced
    if k == 5:
        sub = {"path": "d.1", "tree-deg3": "d.2"}.get(occ.shape, "d.3")
        return "K33." + sub + reduced
    sub = {
        "path": "e.1", "tree-deg3": "e.2", "tree-2deg3": "e.3",
        "cyclic1": "e.4", "cyclic2": "e.5", "cycle6": "e.6",
    }.get(occ.shape, "e")
    return "K33." + sub + reduced


# Paths named by branch labels, as in the case analysis; each pair closes
# up in the case's web after projection.
TEMPLATES = {
    "K5.a": [("1241", "1351")],
    "K5.b": [("132", "152"), ("142", "1352")],
    "K5.c": [("1241", "1351")],
    "K33.a.1": [("1452", "1632")],
    "K33.a.2": [("1452", "1632"), ("123", "143"), ("123", "1654"), ("163", "12543")],
    "K33.a.3.1": [("1452", "1632"), ("12", "34563"), ("12", "14361"), ("12341", "1652")],
    "K33.a.3.2": [("12541", "163"), ("123", "143")],
    "K33.b": [("1452", "163")],
    "K33.c.1": [("234", "254")],
    "K33.c.2": [("163", "254"), ("14", "2563")],
    "K33.c.3": [("163", "254")],
    "K33.d.1": [("365", "25"), ("25", "34"), ("165", "25")],
    "K33.d.2": [("365", "25"), ("163", "23")],
    "K33.d.3": [("163", "45")],
    "K33.e.1": [("14", "16"), ("14", "25"), ("163", "25"), ("14", "36")],
    "K33.e.2": [("23", "25"), ("23", "36"), ("23", "45"), ("36", "45")],
    "K33.e.3": [("36", "45")],
    "K33.e.4": [("36", "45")],
    "K33.e.5": [("36", "45")],
    "K33.e.6": [("14", "25")],
}


def _labelings(gm: Gamma) -> list[dict]:
    if gm.kind == "K5":
        verts = sorted(gm.branch)
        return [dict(zip("12345", perm)) for perm in itertools.permutations(verts)]
    out = []
    for odd, even in (gm.sub.sides, gm.sub.sides[::-1]):
        for po in itertools.permutations(sorted(odd)):
            for pe in itertools.permutations(sorted(even)):
                out.append({"1": po[0], "3": po[1], "5": po[2], "2": pe[0], "4": pe[1], "6": pe[2]})
    return out


def _try_pair(gm: Gamma, s1: tuple, s2: tuple) -> tuple[Walk, Walk] | None:
    w1, w2 = gm.projected(s1), gm.projected(s2)
    if w1 is None or w2 is None:
        return None
    if w1.edge_set() & w2.edge_set():
        return None
    if transversal_count(gm.web.star, w1, w2) != 1:
        return None
    return w1, w2


def _templates_in_web(gm: Gamma, v, label: str) -> tuple[Walk, Walk] | None:
    keys = [label.replace(" (reduced)", "")]
    if gm.kind == "K33" and not keys[0].startswith("K33.a"):
        keys = [k for k in TEMPLATES if k.startswith("K33.") and k[4] == keys[0][4]]
    inside = set(gm.occupancy[v])
    for lab in sorted(_labelings(gm), key=lambda d: [repr(d[k]) for k in sorted(d)]):
        for key in keys:
            for t1, t2 in TEMPLATES.get(key, ()):
                s1 = tuple(lab[c] for c in t1)
                s2 = tuple(lab[c] for c in t2)
                if any(s[0] not in inside or s[-1] not in inside for s in (s1, s2)):
                    continue
                if not all(gm.adjacent(a, b) for s in (s1, s2) for a, b in zip(s, s[1:])):
                    continue
                found = _try_pair(gm, s1, s2)
                if found:
                    return found
    return None


def _branch_sequences(gm: Gamma, v) -> list[tuple]:
    """Paths and cycles of the abstract K5/K3,3 whose ends lie in the web of ``v``."""
    inside = sorted(gm.occupancy.get(v, ()))
    nbrs = defaultdict(list)
    for a, b in gm._paths:
        nbrs[a].append(b)
    seqs = set()

    def grow(seq):
        last = seq[-1]
        for nxt in sorted(nbrs[last]):
            if nxt == seq[0] and len(seq) >= 3:
                seqs.add(tuple(seq) + (nxt,))
            elif nxt not in seq:
                if nxt in inside and nxt != seq[0]:
                    seqs.add(tuple(seq) + (nxt,))
                grow(seq + [nxt])

    for s in inside:
        grow([s])
    return sorted(seqs, key=lambda s: (len(s), [repr(x) for x in s]))


def _abstract_edges(seq: tuple) -> set:
    return {frozenset(p) for p in zip(seq, seq[1:])}


def _generic_in_web(gm: Gamma, v) -> tuple[Walk, Walk] | None:
    cands = [s for s in _branch_sequences(gm, v) if gm.projected(s) is not None]
    for i, s1 in enumerate(cands):
        e1 = _abstract_edges(s1)
        for s2 in cands[i + 1:]:
            if e1 & _abstract_edges(s2):
                continue
            found = _try_pair(gm, s1, s2)
            if found:
                return found
    return None


def _finish(g: StarGraph, pair: tuple[Walk, Walk], case: str) -> VassilievObstruction:
    c1, c2 = simplify_obstruction(g, *pair)
    crossings = transversal_crossings(g, c1, c2)
    return VassilievObstruction(c1, c2, crossings[0], case=case)


def _webs_by_occupancy(gm: Gamma, minimum: int) -> list:
    webs = [v for v, bs in gm.occupancy.items() if len(bs) >= minimum]
    return sorted(webs, key=lambda v: (len(gm.occupancy[v]), repr(v)))


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def extract_from_web(
    g: StarGraph, web: WebGraph, sub: KuratowskiSubdivision, require_obstruction: bool
) -> VassilievObstruction | EmbeddedK33:
    gm = Gamma(web, sub)
    minimum = 1 if gm.kind == "K5" else 2
    for v in _webs_by_occupancy(gm, minimum):
        occ = occupancy(gm, v)
        label = case_label(gm, occ)
        found = _templates_in_web(gm, v, label)
        if found is None:
            found = _generic_in_web(gm, v)
            label += " (search)"
        if found is not None:
            return _finish(g, found, label)
        if gm.kind == "K5":
            break
    if gm.kind == "K5" or _webs_by_occupancy(gm, 2):
        raise ExtractionError("no case of the web analysis produced a transversal pair")
    return _single_occupancy(g, gm, require_obstruction)


# ---------------------------------------------------------------------------
# Every web holds at most one branch vertex
# ---------------------------------------------------------------------------

def _projected_k33(gm: Gamma) -> tuple[tuple, tuple, dict]:
    vmap = gm.web.vertex_map
    odd, even = gm.sub.sides
    sides = (tuple(vmap[a] for a in odd), tuple(vmap[b] for b in even))
    paths = {}
    for a in odd:
        for b in even:
            pw = project_walk(gm.web, gm.path(a, b))
            paths[(vmap[a], vmap[b])] = Walk(pw.walk.steps, closed=False)
    return sides[0], sides[1], paths


def _connector(g: StarGraph, used: set, sources: Iterable, targets: Iterable) -> Walk | None:
    """Shortest path avoiding ``used`` edges from a source to a target.

    Multi-source BFS keeps sources and targets off the interior.
    """
    sources, targets = list(sources), set(targets)
    adj = defaultdict(list)
    for e in sorted(g.edges):
        if e in used:
            continue
        a, b = g.edges[e]
        u, v = g.vertex_of(a), g.vertex_of(b)
        if u == v:
            continue
        adj[u].append((e, False, v))
        adj[v].append((e, True, u))
    parent = {s: None for s in sources}
    queue = list(sources)
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        if u in targets:
            steps = []
            while parent[u] is not None:
                e, rev, prev = parent[u]
                steps.append((e, rev))
                u = prev
            return Walk(tuple(reversed(steps)), closed=False)
        for e, rev, v in adj[u]:
            if v not in parent:
                parent[v] = (e, rev, u)
                queue.append(v)
    return None


def _crossings_along(g: StarGraph, gamma: Walk, paths: dict) -> list[tuple]:
    """Transversal crossings of ``gamma`` with the paths, in order along ``gamma``.

    Entries are (gamma visit index, offset along the chord, path key,
    path visit index).  Within one visit the crossing chords are ordered by
    where they meet the arc running from the arrival to the departure.
    """
    out = []
    by_vertex = defaultdict(list)
    for key in sorted(paths, key=repr):
        for vis in visits(g, paths[key]):
            by_vertex[vis.vertex].append((key, vis))
    for gv in visits(g, gamma):
        d = g.degree(gv.vertex)
        p_in, p_out = g.position(gv.h_in), g.position(gv.h_out)
        for key, pv in by_vertex.get(gv.vertex, ()):
            a, b = g.position(pv.h_in), g.position(pv.h_out)
            if not chords_cross(p_in, p_out, a, b):
                continue
            span = (p_out - p_in) % d
            offs = [(x - p_in) % d for x in (a, b) if 0 < (x - p_in) % d < span]
            out.append((gv.index, offs[0], key, pv.index))
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def _pieces_cycles(pieces: list[tuple]) -> list[list[tuple]]:
    """Simple cycles in the multigraph whose edges are the pieces."""
    nbrs = defaultdict(list)
    for idx, (u, v, _) in enumerate(pieces):
        if u == v:
            continue
        nbrs[u].append((idx, True, v))
        nbrs[v].append((idx, False, u))
    cycles = [[(idx, True)] for idx, (u, v, _) in enumerate(pieces) if u == v]
    nodes = sorted(nbrs, key=repr)
    rank = {x: i for i, x in enumerate(nodes)}
    for s in nodes:
        path, on = [], {s}

        def dfs(at):
            for idx, fwd, nxt in nbrs[at]:
                if path and idx == path[-1][0]:
                    continue
                if nxt == s:
                    if path and path[0][0] < idx:
                        cycles.append(path + [(idx, fwd)])
                    continue
                if rank[nxt] < rank[s] or nxt in on:
                    continue
                path.append((idx, fwd))
                on.add(nxt)
                dfs(nxt)
                on.discard(nxt)
                path.pop()

        dfs(s)
    cycles.sort(key=lambda c: (len(c), sorted(i for i, _ in c)))
    return cycles


def _piece_search(g: StarGraph, pieces: list[tuple]) -> tuple[Walk, Walk] | None:
    closed = []
    for cyc in _pieces_cycles(pieces):
        steps: tuple = ()
        for idx, fwd in cyc:
            w = pieces[idx][2]
            steps += w.steps if fwd else w.reversed().steps
        w = Walk(steps)
        if steps and is_walk(g, w):
            closed.append((frozenset(i for i, _ in cyc), w))
    for i, (k1, w1) in enumerate(closed):
        for k2, w2 in closed[i + 1:]:
            if k1 & k2:
                continue
            if check_obstruction(g, w1, w2).ok:
                return w1, w2
    return None


def _oriented(paths: dict, x, y) -> Walk:
    if (x, y) in paths:
        return paths[(x, y)]
    return paths[(y, x)].reversed()


def _single_occupancy(g: StarGraph, gm: Gamma, require_obstruction: bool):
    odd, even, paths = _projected_k33(gm)
    used = {e for w in paths.values() for e in w.edge_set()}
    gamma = _connector(g, used, odd, even)
    if gamma is None:
        gamma = _connector(g, used, even, odd)
        if gamma is not None:
            odd, even = even, odd
            paths = {(b, a): w.reversed() for (a, b), w in paths.items()}
    if gamma is None:
        if require_obstruction:
            raise ExtractionError("no connecting path in the complement of the K3,3 image")
        return _immersion_reduction(g, odd, even, paths)
    return _with_connector(g, odd, even, paths, gamma)


def _with_connector(g: StarGraph, odd, even, paths: dict, gamma: Walk) -> VassilievObstruction:
    one = walk_start(g, gamma)
    total = sum(len(w) for w in paths.values()) + len(gamma)
    for _ in range(total + 1):
        crossings = _crossings_along(g, gamma, paths)
        if not crossings:
            pieces = [(a, b, w) for (a, b), w in sorted(paths.items(), key=repr)]
            pieces.append((one, walk_end(g, gamma), gamma))
            found = _piece_search(g, pieces)
            if found is None:
                raise ExtractionError("case f.2: no transversal pair among the K3,3 cycles")
            return _finish(g, found, "K33.f.2")
        g_idx, _, key, k_idx = crossings[0]
        if one in key:
            paths, gamma = _reroute(g, paths, gamma, crossings, key)
            continue
        found = _split_search(g, paths, gamma, crossings[0], with_tail=False)
        if found is None:
            found = _split_search(g, paths, gamma, crossings[0], with_tail=True)
        if found is None:
            raise ExtractionError("case f.1: no transversal pair after splitting at P")
        return _finish(g, found, "K33.f.1.2")
    raise ExtractionError("case f.1 rerouting did not terminate")


def _reroute(g: StarGraph, paths: dict, gamma: Walk, crossings: list, key) -> tuple[dict, Walk]:
    """Swap the start of ``gamma`` with the start of the path it first crosses."""
    g_p, _, _, k_p = crossings[0]
    path = paths[key]
    on_start = [c for c in crossings if c[2] == key and c[3] <= k_p]
    g_q, _, _, k_q = on_start[-1]
    new_path = Walk(gamma.steps[:g_p] + path.steps[k_p:], closed=False)
    new_gamma = Walk(path.steps[:k_q] + gamma.steps[g_q:], closed=False)
    new_paths = dict(paths)
    new_paths[key] = new_path
    before = len(crossings)
    after = len(_crossings_along(g, new_gamma, new_paths))
    if after >= before or not is_walk(g, new_path) or not is_walk(g, new_gamma):
        raise ExtractionError("case f.1 rerouting did not reduce the crossings")
    return new_paths, new_gamma


def _split_search(g: StarGraph, paths: dict, gamma: Walk, crossing: tuple, with_tail: bool):
    g_p, _, key, k_p = crossing
    one = walk_start(g, gamma)
    node_p = ("P",)
    pieces = []
    for k, w in sorted(paths.items(), key=repr):
        if k == key:
            pieces.append((k[0], node_p, Walk(w.steps[:k_p], closed=False)))
            pieces.append((node_p, k[1], Walk(w.steps[k_p:], closed=False)))
        else:
            pieces.append((k[0], k[1], w))
    pieces.append((one, node_p, Walk(gamma.steps[:g_p], closed=False)))
    if with_tail:
        pieces.append((node_p, walk_end(g, gamma), Walk(gamma.steps[g_p:], closed=False)))
    return _piece_search(g, pieces)


# ---------------------------------------------------------------------------
# K3,3 immersions: shrink until embedded or a transversal pair shows up
# ---------------------------------------------------------------------------

def _occurrences(g: StarGraph, pos: dict, paths: dict) -> dict:
    occ = defaultdict(list)
    for label, v in pos.items():
        occ[v].append(("branch", label))
    for key in sorted(paths, key=repr):
        for vis in visits(g, paths[key]):
            occ[vis.vertex].append(("visit", key, vis.index))
    return occ


def _immersion_ok(g: StarGraph, paths: dict) -> bool:
    keys = sorted(paths, key=repr)
    for k in keys:
        w = paths[k]
        if not w.steps or not is_walk(g, w) or self_crossing_count(g, w):
            return False
    for i, p in enumerate(keys):
        for q in keys[i + 1:]:
            if transversal_count(g, paths[p], paths[q]):
                return False
    return True


def _split_pieces(g: StarGraph, pos: dict, paths: dict, p_vertex) -> list[tuple]:
    at_p = [lab for lab, v in pos.items() if v == p_vertex]
    node_p = ("B", at_p[0]) if at_p else ("P",)
    pieces = []
    for (a, b), w in sorted(paths.items(), key=repr):
        cuts = [vis.index for vis in visits(g, w) if vis.vertex == p_vertex]
        bounds = [0] + cuts + [len(w)]
        for s, t in zip(bounds, bounds[1:]):
            u = ("B", a) if s == 0 else node_p
            v = ("B", b) if t == len(w) else node_p
            pieces.append((u, v, Walk(w.steps[s:t], closed=False)))
    return pieces


def _reductions(g: StarGraph, pos: dict, paths: dict, p_vertex) -> Iterable[tuple[dict, dict]]:
    # cut out a loop of a single path at P
    for key in sorted(paths, key=repr):
        w = paths[key]
        marks = [vis.index for vis in visits(g, w) if vis.vertex == p_vertex]
        if pos[key[0]] == p_vertex:
            marks = [0] + marks
        if pos[key[1]] == p_vertex:
            marks = marks + [len(w)]
        for i, j in itertools.combinations(marks, 2):
            new = dict(paths)
            new[key] = Walk(w.steps[:i] + w.steps[j:], closed=False)
            yield pos, new
    # move a branch vertex to P along two of its paths
    for z in sorted(pos, key=repr):
        if pos[z] == p_vertex:
            continue
        mine = []
        for (a, b) in sorted(paths, key=repr):
            if z in (a, b):
                other = b if a == z else a
                mine.append((other, _oriented_walk(paths, z, other)))
        for (x, wx), (y, wy) in itertools.permutations(mine, 2):
            ix = [vis.index for vis in visits(g, wx) if vis.vertex == p_vertex]
            iy = [vis.index for vis in visits(g, wy) if vis.vertex == p_vertex]
            if not ix or not iy:
                continue
            (t, wt) = next(m for m in mine if m[0] not in (x, y))
            for i in ix:
                for j in iy:
                    new_pos = dict(pos)
                    new_pos[z] = p_vertex
                    new = dict(paths)
                    _store(new, z, x, Walk(wx.steps[i:], closed=False))
                    _store(new, z, y, Walk(wy.steps[j:], closed=False))
                    tail = Walk(wx.steps[:i], closed=False).reversed()
                    _store(new, z, t, Walk(tail.steps + wt.steps, closed=False))
                    yield new_pos, new


def _oriented_walk(paths: dict, x, y) -> Walk:
    return paths[(x, y)] if (x, y) in paths else paths[(y, x)].reversed()


def _store(paths: dict, x, y, w: Walk) -> None:
    if (x, y) in paths:
        paths[(x, y)] = w
    else:
        paths[(y, x)] = w.reversed()


def _immersion_reduction(g: StarGraph, odd, even, paths: dict):
    # branch labels are the original positions; they may move later
    pos = {x: x for x in list(odd) + list(even)}
    steps = 0
    while True:
        occ = _occurrences(g, pos, paths)
        hits = sorted((v for v, o in occ.items() if len(o) >= 2), key=repr)
        if not hits:
            sides = (tuple(pos[a] for a in odd), tuple(pos[b] for b in even))
            out = {(pos[a], pos[b]): w for (a, b), w in paths.items()}
            return EmbeddedK33(sides, out, reductions=steps)
        p_vertex = hits[0]
        found = _piece_search(g, _split_pieces(g, pos, paths, p_vertex))
        if found is not None:
            return _finish(g, found, "K33 immersion")
        size = sum(len(w) for w in paths.values())
        for new_pos, new in _reductions(g, pos, paths, p_vertex):
            if sum(len(w) for w in new.values()) < size and _immersion_ok(g, new):
                pos, paths = new_pos, new
                steps += 1
                break
        else:
            raise ExtractionError(f"immersion cannot be simplified at {p_vertex!r}")
