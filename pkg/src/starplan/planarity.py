"""Certified planarity for ordinary multigraphs.

Planar graphs come back with an oriented rotation system of genus 0,
nonplanar ones with a K5 or K3,3 subdivision.  Both certificates are
checked by validators here that never call the decision procedure.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

import networkx as nx


class PlanarityError(ValueError):
    pass


class OrdinaryGraph:
    """Multigraph without rotations; loops and parallel edges allowed.

    Vertex and edge ids must be mutually comparable so that every
    traversal can run in sorted, reproducible order.
    """

    __slots__ = ("vertices", "edges", "_incident")

    def __init__(self, vertices: Iterable[Hashable], edges: Mapping[Hashable, Sequence[Hashable]]):
        self.vertices: tuple = tuple(sorted(set(vertices)))
        self.edges: dict = {e: tuple(uv) for e, uv in edges.items()}
        vs = set(self.vertices)
        for e, (u, v) in self.edges.items():
            if u not in vs or v not in vs:
                raise PlanarityError(f"edge {e!r} has an endpoint outside the vertex set")
        self._incident = None

    def incident(self, v) -> list:
        if self._incident is None:
            inc = defaultdict(list)
            for e in sorted(self.edges):
                a, b = self.edges[e]
                inc[a].append(e)
                if b != a:
                    inc[b].append(e)
            self._incident = inc
        return self._incident.get(v, [])

    def other(self, e, v):
        a, b = self.edges[e]
        return b if a == v else a

    def degree(self, v) -> int:
        return sum(2 if self.edges[e][0] == self.edges[e][1] else 1 for e in self.incident(v))

    def subgraph(self, keep_edges: Iterable) -> OrdinaryGraph:
        keep = set(keep_edges)
        es = {e: uv for e, uv in self.edges.items() if e in keep}
        return OrdinaryGraph({x for uv in es.values() for x in uv}, es)

    def components(self) -> list[list]:
        seen, comps = set(), []
        for s in self.vertices:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for e in self.incident(u):
                    w = self.other(e, u)
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def to_networkx(self) -> nx.MultiGraph:
        m = nx.MultiGraph()
        m.add_nodes_from(self.vertices)
        for e in sorted(self.edges):
            u, v = self.edges[e]
            m.add_edge(u, v, key=e)
        return m

    def __repr__(self) -> str:
        return f"OrdinaryGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


# A dart is (edge id, end index); end 0 sits at edges[e][0].
Dart = tuple


def dart_vertex(g: OrdinaryGraph, d: Dart):
    e, end = d
    return g.edges[e][end]


@dataclass(frozen=True)
class RotationSystem:
    """Oriented cyclic order of darts around every vertex."""

    rotation: Mapping[Hashable, tuple]

    def successor(self) -> dict:
        succ = {}
        for ds in self.rotation.values():
            for k, d in enumerate(ds):
                succ[d] = ds[(k + 1) % len(ds)]
        return succ


def trace_faces(rs: RotationSystem) -> list[list[Dart]]:
    """Orbits of ``d -> successor(twin(d))``."""
    succ = rs.successor()
    faces, seen = [], set()
    for d in sorted(succ):
        if d in seen:
            continue
        face, x = [], d
        while x not in seen:
            seen.add(x)
            face.append(x)
            e, end = x
            x = succ[(e, 1 - end)]
        faces.append(face)
    return faces


def check_rotation_system(g: OrdinaryGraph, rs: RotationSystem) -> None:
    expected = {(e, end) for e in g.edges for end in (0, 1)}
    seen = set()
    for v, ds in rs.rotation.items():
        for d in ds:
            if d in seen:
                raise PlanarityError(f"dart {d!r} listed twice")
            seen.add(d)
            if d not in expected:
                raise PlanarityError(f"dart {d!r} is not an edge-end of the graph")
            if dart_vertex(g, d) != v:
                raise PlanarityError(f"dart {d!r} listed at {v!r} but sits at {dart_vertex(g, d)!r}")
    if seen != expected:
        missing = sorted(expected - seen, key=repr)
        raise PlanarityError(f"rotation system misses darts, e.g. {missing[0]!r}")


def euler_genus_report(g: OrdinaryGraph, rs: RotationSystem) -> list[tuple[int, int, int]]:
    """(V, E, F) for every connected component."""
    check_rotation_system(g, rs)
    faces = trace_faces(rs)
    comp_of = {}
    for n, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = n
    counts = [[len(c), 0, 0] for c in g.components()]
    for e, (u, _) in g.edges.items():
        counts[comp_of[u]][1] += 1
    for f in faces:
        counts[comp_of[dart_vertex(g, f[0])]][2] += 1
    for c in counts:
        if c[1] == 0:
            c[2] = 1  # isolated vertex: one face, no darts
    return [tuple(c) for c in counts]


def verify_embedding(g: OrdinaryGraph, rs: RotationSystem) -> bool:
    """True iff every component satisfies V - E + F = 2."""
    return all(v - e + f == 2 for v, e, f in euler_genus_report(g, rs))


# ---------------------------------------------------------------------------
# Kuratowski subdivisions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchPath:
    vertices: tuple  # from one branch vertex to another
    edges: tuple


@dataclass(frozen=True)
class KuratowskiSubdivision:
    kind: str  # "K5" or "K33"
    branch_vertices: tuple
    paths: tuple[BranchPath, ...]
    sides: tuple | None = None  # the K3,3 bipartition

    def path_between(self, a, b) -> BranchPath:
        for p in self.paths:
            if (p.vertices[0], p.vertices[-1]) == (a, b):
                return p
            if (p.vertices[0], p.vertices[-1]) == (b, a):
                return BranchPath(tuple(reversed(p.vertices)), tuple(reversed(p.edges)))
        raise KeyError((a, b))

    def edge_set(self) -> set:
        return {e for p in self.paths for e in p.edges}


def subdivision_problems(g: OrdinaryGraph, k: KuratowskiSubdivision) -> list[str]:
    """Everything wrong with ``k`` as a Kuratowski subdivision inside ``g``."""
    problems = []
    branch = list(k.branch_vertices)
    if k.kind == "K5":
        if len(branch) != 5 or len(k.paths) != 10:
            return ["K5 needs 5 branch vertices and 10 paths"]
        wanted = {frozenset(p) for p in itertools.combinations(branch, 2)}
    elif k.kind == "K33":
        if len(branch) != 6 or len(k.paths) != 9 or k.sides is None:
            return ["K33 needs 6 branch vertices, a bipartition and 9 paths"]
        a, b = k.sides
        if sorted(list(a) + list(b), key=repr) != sorted(branch, key=repr) or len(a) != 3:
            return ["K33 bipartition does not match the branch vertices"]
        wanted = {frozenset((x, y)) for x in a for y in b}
    else:
        return [f"unknown kind {k.kind!r}"]
    if len(set(branch)) != len(branch):
        problems.append("repeated branch vertex")
    bset = set(branch)
    got = []
    inner_seen: dict = {}
    edge_seen: set = set()
    for n, p in enumerate(k.paths):
        vs, es = p.vertices, p.edges
        if len(vs) != len(es) + 1 or not es:
            problems.append(f"path {n} has inconsistent lengths")
            continue
        for i, e in enumerate(es):
            if e not in g.edges:
                problems.append(f"path {n} uses unknown edge {e!r}")
                continue
            if {vs[i], vs[i + 1]} != set(g.edges[e]) or vs[i] == vs[i + 1]:
                problems.append(f"path {n} edge {e!r} does not join {vs[i]!r}-{vs[i + 1]!r}")
            if e in edge_seen:
                problems.append(f"edge {e!r} used twice")
            edge_seen.add(e)
        if vs[0] not in bset or vs[-1] not in bset:
            problems.append(f"path {n} does not end at branch vertices")
        for x in vs[1:-1]:
            if x in bset:
                problems.append(f"path {n} passes through branch vertex {x!r}")
            if x in inner_seen:
                problems.append(f"inner vertex {x!r} shared by paths {inner_seen[x]} and {n}")
            inner_seen[x] = n
        got.append(frozenset((vs[0], vs[-1])))
    if set(got) != wanted or len(got) != len(wanted):
        problems.append("branch paths do not realise the incidence pattern")
    return problems


def is_valid_subdivision(g: OrdinaryGraph, k: KuratowskiSubdivision) -> bool:
    return not subdivision_problems(g, k)


def _subdivision_from_edges(g: OrdinaryGraph, edge_ids: Iterable) -> KuratowskiSubdivision | None:
    """Read a Kuratowski subdivision off an edge set, or None if it is not one."""
    sub = g.subgraph(edge_ids)
    deg = {v: sub.degree(v) for v in sub.vertices}
    if any(e_uv[0] == e_uv[1] for e_uv in sub.edges.values()):
        return None
    branch = sorted(v for v, d in deg.items() if d != 2)
    if len(branch) == 5 and all(deg[v] == 4 for v in branch):
        kind = "K5"
    elif len(branch) == 6 and all(deg[v] == 3 for v in branch):
        kind = "K33"
    else:
        return None
    bset = set(branch)
    paths, used = [], set()
    for b in branch:
        for e in sub.incident(b):
            if e in used:
                continue
            vs, es, at, cur = [b], [], b, e
            while True:
                used.add(cur)
                es.append(cur)
                at = sub.other(cur, at)
                vs.append(at)
                if at in bset:
                    break
                nxt = [x for x in sub.incident(at) if x != cur]
                if len(nxt) != 1:
                    return None
                cur = nxt[0]
            paths.append(BranchPath(tuple(vs), tuple(es)))
    if len(used) != len(sub.edges):
        return None  # a cycle of degree-2 vertices hangs off the core
    sides = None
    if kind == "K33":
        adj = defaultdict(set)
        for p in paths:
            adj[p.vertices[0]].add(p.vertices[-1])
            adj[p.vertices[-1]].add(p.vertices[0])
        a0 = branch[0]
        side_b = tuple(sorted(adj[a0]))
        side_a = tuple(sorted(bset - set(side_b)))
        sides = (side_a, side_b)
    k = KuratowskiSubdivision(kind, tuple(branch), tuple(paths), sides)
    return k if is_valid_subdivision(g, k) else None


# ---------------------------------------------------------------------------
# Decision
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlanarityVerdict:
    planar: bool
    rotation: RotationSystem | None = None
    kuratowski: KuratowskiSubdivision | None = None


def _normalise(g: OrdinaryGraph) -> tuple[nx.Graph, dict]:
    """Simple graph for the decision plus representative edge per vertex pair."""
    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    rep: dict = {}
    for e in sorted(g.edges):
        u, v = g.edges[e]
        if u == v:
            continue
        key = frozenset((u, v))
        if key not in rep:
            rep[key] = e
            simple.add_edge(u, v)
    return simple, rep


def _rotation_from_embedding(g: OrdinaryGraph, emb: nx.PlanarEmbedding, rep: dict) -> RotationSystem:
    def dart_at(e, v):
        a, _ = g.edges[e]
        return (e, 0 if a == v else 1)

    parallels = defaultdict(list)
    loops = defaultdict(list)
    for e in sorted(g.edges):
        u, v = g.edges[e]
        if u == v:
            loops[u].append(e)
            continue
        r = rep[frozenset((u, v))]
        if r != e:
            parallels[r].append(e)

    rotation = {}
    for v in g.vertices:
        order = []
        nbrs = list(emb.neighbors_cw_order(v)) if v in emb and emb.degree(v) else []
        for w in nbrs:
            r = rep[frozenset((v, w))]
            # parallel copies go right after the representative at its
            # first end and right before it at the second end
            copies = [dart_at(c, v) for c in parallels[r]]
            if g.edges[r][0] == v:
                order.append(dart_at(r, v))
                order.extend(copies)
            else:
                order.extend(reversed(copies))
                order.append(dart_at(r, v))
        for e in loops[v]:
            order.extend([(e, 0), (e, 1)])
        rotation[v] = tuple(order)
    return RotationSystem(rotation)


def extract_kuratowski(g: OrdinaryGraph) -> KuratowskiSubdivision:
    """Kuratowski subdivision of a nonplanar multigraph, by edge deletion."""
    simple, rep = _normalise(g)
    planar, cert = nx.check_planarity(simple, counterexample=True)
    if planar:
        raise PlanarityError("graph is planar")
    edge_ids = [rep[frozenset(uv)] for uv in cert.edges()]
    k = _subdivision_from_edges(g, edge_ids)
    if k is None:
        k = _minimise(g, edge_ids)
    return k


def _minimise(g: OrdinaryGraph, edge_ids: list) -> KuratowskiSubdivision:
    keep = sorted(edge_ids)
    for e in list(keep):
        trial = [x for x in keep if x != e]
        simple, _ = _normalise(g.subgraph(trial))
        if not nx.check_planarity(simple)[0]:
            keep = trial
    k = _subdivision_from_edges(g, keep)
    if k is None:
        raise PlanarityError("edge-minimal nonplanar subgraph is not a Kuratowski subdivision")
    return k


def decide_planarity(g: OrdinaryGraph) -> PlanarityVerdict:
    simple, rep = _normalise(g)
    planar, cert = nx.check_planarity(simple, counterexample=False)
    if planar:
        return PlanarityVerdict(True, rotation=_rotation_from_embedding(g, cert, rep))
    return PlanarityVerdict(False, kuratowski=extract_kuratowski(g))


def verdict_is_certified(g: OrdinaryGraph, verdict: PlanarityVerdict) -> bool:
    if verdict.planar:
        return verdict.rotation is not None and verify_embedding(g, verdict.rotation)
    return verdict.kuratowski is not None and is_valid_subdivision(g, verdict.kuratowski)


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

def find_kuratowski_bruteforce(g: OrdinaryGraph) -> KuratowskiSubdivision | None:
    """Search every edge subset of the simplified graph for a K5/K3,3 subdivision.

    Exponential in the edge count; meant for graphs with at most a dozen
    or so distinct vertex pairs.
    """
    _, rep = _normalise(g)
    es = sorted(rep.values())
    for size in range(9, len(es) + 1):
        for subset in itertools.combinations(es, size):
            k = _subdivision_from_edges(g, subset)
            if k is not None:
                return k
    return None
