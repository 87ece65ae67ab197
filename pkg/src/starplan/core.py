"""Star-graphs, closed walks, vertex chord diagrams and transversality.

A star-graph stores, for every vertex, one concrete sequence of half-edge
ids.  The sequence is read as an *unoriented* cyclic order: every cyclic
shift and every reversal denotes the same structure, so nothing below may
depend on which representative was stored.
"""

from __future__ import annotations

import contextlib
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

VertexId = Hashable
HalfEdgeId = Hashable
EdgeId = Hashable


class StarGraphError(ValueError):
    """Raised when an operation receives structurally invalid input."""


class WalkError(StarGraphError):
    """Raised for walks that are disconnected or reuse an edge."""


def _canonical_cycle(seq: Sequence) -> tuple:
    """Smallest rotation over both reading directions."""
    if not seq:
        return ()
    best = None
    for s in (tuple(seq), tuple(reversed(seq))):
        for k in range(len(s)):
            cand = s[k:] + s[:k]
            if best is None or cand < best:
                best = cand
    return best


class StarGraph:
    """A graph with an unoriented cyclic order of half-edges at each vertex.

    ``rotations`` maps a vertex id to its half-edge sequence and ``edges``
    maps an edge id to the pair of half-edges forming its two ends.  The
    constructor does not validate; call :func:`validate` on untrusted input.
    """

    __slots__ = ("rotations", "edges", "_vertex_of", "_position", "_edge_of", "_twin")

    def __init__(
        self,
        rotations: Mapping[VertexId, Sequence[HalfEdgeId]],
        edges: Mapping[EdgeId, Sequence[HalfEdgeId]],
    ) -> None:
        self.rotations: dict[VertexId, tuple] = {v: tuple(r) for v, r in rotations.items()}
        self.edges: dict[EdgeId, tuple] = {e: tuple(p) for e, p in edges.items()}
        self._vertex_of: dict = {}
        self._position: dict = {}
        self._edge_of: dict = {}
        self._twin: dict = {}
        for v, rot in self.rotations.items():
            for i, h in enumerate(rot):
                self._vertex_of.setdefault(h, v)
                self._position.setdefault(h, i)
        for e, pair in self.edges.items():
            if len(pair) != 2:
                continue
            a, b = pair
            self._edge_of.setdefault(a, e)
            self._edge_of.setdefault(b, e)
            self._twin.setdefault(a, b)
            self._twin.setdefault(b, a)

    # -- lookups ---------------------------------------------------------
    def vertex_of(self, h: HalfEdgeId) -> VertexId:
        return self._vertex_of[h]

    def position(self, h: HalfEdgeId) -> int:
        return self._position[h]

    def edge_of(self, h: HalfEdgeId) -> EdgeId:
        return self._edge_of[h]

    def twin(self, h: HalfEdgeId) -> HalfEdgeId:
        return self._twin[h]

    def degree(self, v: VertexId) -> int:
        return len(self.rotations[v])

    def endpoints(self, e: EdgeId) -> tuple[VertexId, VertexId]:
        a, b = self.edges[e]
        return self._vertex_of[a], self._vertex_of[b]

    @property
    def vertices(self) -> list:
        return list(self.rotations)

    def half_edges(self) -> Iterator[HalfEdgeId]:
        for rot in self.rotations.values():
            yield from rot

    # -- structural equality ----------------------------------------------
    def canonical(self) -> tuple:
        rots = tuple(sorted((v, _canonical_cycle(r)) for v, r in self.rotations.items()))
        edges = tuple(sorted((e, tuple(sorted(p))) for e, p in self.edges.items()))
        return rots, edges

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StarGraph):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __repr__(self) -> str:
        return f"StarGraph({len(self.rotations)} vertices, {len(self.edges)} edges)"

    # -- derived graphs ----------------------------------------------------
    def with_rotation(self, v: VertexId, rotation: Sequence[HalfEdgeId]) -> StarGraph:
        rots = dict(self.rotations)
        rots[v] = tuple(rotation)
        return StarGraph(rots, self.edges)

    def edge_subgraph(self, keep: Iterable[EdgeId]) -> StarGraph:
        """Sub-star-graph on the given edges; rotations are restricted in order."""
        keep = set(keep)
        hs = {h for e in keep for h in self.edges[e]}
        rots = {}
        for v, rot in self.rotations.items():
            r = tuple(h for h in rot if h in hs)
            if r:
                rots[v] = r
        return StarGraph(rots, {e: p for e, p in self.edges.items() if e in keep})


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


def validate(g: StarGraph) -> ValidationReport:
    """List every violation of the star-graph invariants."""
    report = ValidationReport()
    in_rot = Counter(h for rot in g.rotations.values() for h in rot)
    in_edge = Counter()
    for v, rot in g.rotations.items():
        if len(rot) == 0:
            report.problems.append(f"vertex {v!r} has an empty rotation")
    for e, pair in g.edges.items():
        if len(pair) != 2:
            report.problems.append(f"edge {e!r} must have exactly two ends, got {len(pair)}")
            continue
        a, b = pair
        if a == b:
            report.problems.append(
                f"edge {e!r} must join two distinct half-edge ids, got {a!r} twice"
            )
        in_edge[a] += 1
        if a != b:
            in_edge[b] += 1
    for h, n in sorted(in_rot.items(), key=repr):
        if n > 1:
            report.problems.append(f"half-edge {h!r} occurs {n} times in rotations")
        if in_edge[h] == 0:
            report.problems.append(f"half-edge {h!r} is dangling (in no edge)")
    for h, n in sorted(in_edge.items(), key=repr):
        if n > 1:
            report.problems.append(f"half-edge {h!r} belongs to {n} edges")
        if h not in in_rot:
            report.problems.append(f"half-edge {h!r} of an edge is missing from every rotation")
    return report


def require_valid(g: StarGraph) -> None:
    report = validate(g)
    if not report.ok:
        raise StarGraphError("invalid star-graph: " + "; ".join(report.problems))


def is_even(g: StarGraph) -> bool:
    return all(len(rot) % 2 == 0 for rot in g.rotations.values())


# ---------------------------------------------------------------------------
# Walks
# ---------------------------------------------------------------------------

Step = tuple  # (edge id, reversed flag)


@dataclass(frozen=True)
class Walk:
    """An edge sequence; ``(e, False)`` runs from ``edges[e][0]`` to ``edges[e][1]``.

    Closed walks are cyclic.  Open walks only have visits at their inner
    vertices; their two ends carry no chord.
    """

    steps: tuple[Step, ...]
    closed: bool = True

    def __len__(self) -> int:
        return len(self.steps)

    def edge_set(self) -> frozenset:
        return frozenset(e for e, _ in self.steps)

    def reversed(self) -> Walk:
        return Walk(tuple((e, not r) for e, r in reversed(self.steps)), self.closed)

    def rotated(self, k: int) -> Walk:
        k %= max(len(self.steps), 1)
        return Walk(self.steps[k:] + self.steps[:k], self.closed)

    @classmethod
    def from_departures(cls, g: StarGraph, hs: Sequence[HalfEdgeId], closed: bool = True) -> Walk:
        steps = []
        for h in hs:
            e = g.edge_of(h)
            steps.append((e, g.edges[e][0] != h))
        return cls(tuple(steps), closed)

    @classmethod
    def from_edges(
        cls, g: StarGraph, edges: Sequence[EdgeId], start: VertexId, closed: bool = True
    ) -> Walk:
        """Orient an edge sequence starting at ``start``."""
        steps = []
        at = start
        for e in edges:
            u, v = g.endpoints(e)
            if u == at:
                steps.append((e, False))
                at = v
            elif v == at:
                steps.append((e, True))
                at = u
            else:
                raise WalkError(f"edge {e!r} is not incident to {at!r}")
        return cls(tuple(steps), closed)


def departure(g: StarGraph, step: Step) -> HalfEdgeId:
    e, rev = step
    return g.edges[e][1 if rev else 0]


def arrival(g: StarGraph, step: Step) -> HalfEdgeId:
    e, rev = step
    return g.edges[e][0 if rev else 1]


def walk_start(g: StarGraph, w: Walk) -> VertexId:
    return g.vertex_of(departure(g, w.steps[0]))


def walk_end(g: StarGraph, w: Walk) -> VertexId:
    return g.vertex_of(arrival(g, w.steps[-1]))


def concat(*parts: Walk, closed: bool = False) -> Walk:
    steps: tuple = ()
    for p in parts:
        steps += p.steps
    return Walk(steps, closed)


@dataclass(frozen=True)
class Visit:
    """One pass of a walk through a vertex: arrive on ``h_in``, leave on ``h_out``."""

    vertex: VertexId
    h_in: HalfEdgeId
    h_out: HalfEdgeId
    index: int  # the walk leaves through steps[index]


def visits(g: StarGraph, w: Walk) -> list[Visit]:
    n = len(w.steps)
    if n == 0:
        return []
    out = []
    first = 0 if w.closed else 1
    for k in range(first, n):
        h_in = arrival(g, w.steps[k - 1])
        h_out = departure(g, w.steps[k])
        out.append(Visit(g.vertex_of(h_out), h_in, h_out, k))
    return out


def check_walk(g: StarGraph, w: Walk) -> None:
    """Raise :class:`WalkError` unless ``w`` is connected and edge-simple."""
    seen = set()
    for e, _ in w.steps:
        if e not in g.edges:
            raise WalkError(f"unknown edge {e!r}")
        if e in seen:
            raise WalkError(f"edge {e!r} traversed twice")
        seen.add(e)
    n = len(w.steps)
    if w.closed and n == 0:
        raise WalkError("closed walk without steps")
    pairs = range(n) if w.closed else range(1, n)
    for k in pairs:
        a = arrival(g, w.steps[k - 1])
        d = departure(g, w.steps[k])
        if g.vertex_of(a) != g.vertex_of(d):
            raise WalkError(
                f"steps {k - 1} and {k} do not meet: {g.vertex_of(a)!r} vs {g.vertex_of(d)!r}"
            )


def is_walk(g: StarGraph, w: Walk) -> bool:
    try:
        check_walk(g, w)
    except (WalkError, KeyError):
        return False
    return True


def vertex_sequence(g: StarGraph, w: Walk) -> list:
    if not w.steps:
        return []
    seq = [walk_start(g, w)]
    for s in w.steps:
        seq.append(g.vertex_of(arrival(g, s)))
    if w.closed:
        seq.pop()
    return seq


def is_simple(g: StarGraph, w: Walk) -> bool:
    """No vertex is visited twice (for open walks the ends count too)."""
    seq = vertex_sequence(g, w)
    return len(seq) == len(set(seq))


def revisit_count(g: StarGraph, w: Walk) -> int:
    seq = vertex_sequence(g, w)
    return len(seq) - len(set(seq))


# ---------------------------------------------------------------------------
# Chord diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Chord:
    i: int
    j: int
    owner: int
    visit: int  # index of the departing step within the owner walk


@dataclass(frozen=True)
class VertexChordDiagram:
    vertex: VertexId
    circle_size: int
    chords: tuple[Chord, ...]

    def crossings(self) -> list[tuple[Chord, Chord]]:
        out = []
        cs = self.chords
        for a in range(len(cs)):
            for b in range(a + 1, len(cs)):
                if chords_cross(cs[a].i, cs[a].j, cs[b].i, cs[b].j):
                    out.append((cs[a], cs[b]))
        return out


_fault = False


@contextlib.contextmanager
def injected_fault():
    """Test-only: treat the interleaved pattern (0,2)/(1,3) as not crossing."""
    global _fault
    prev, _fault = _fault, True
    try:
        yield
    finally:
        _fault = prev


def chords_cross(i: int, j: int, k: int, l: int) -> bool:
    """Chords (i,j) and (k,l) with four distinct ends cross iff they alternate."""
    if i > j:
        i, j = j, i
    inside_k = i < k < j
    inside_l = i < l < j
    res = inside_k != inside_l
    if _fault and res and sorted((i, j)) == [0, 2] and sorted((k, l)) == [1, 3]:
        return False
    return res


def _check_disjoint(walks: Sequence[Walk]) -> None:
    owner = {}
    for n, w in enumerate(walks):
        for e, _ in w.steps:
            if e in owner and owner[e] != n:
                raise WalkError(f"walks {owner[e]} and {n} share edge {e!r}")
            owner[e] = n


def chord_diagram(g: StarGraph, v: VertexId, walks: Sequence[Walk]) -> VertexChordDiagram:
    _check_disjoint(walks)
    chords = []
    for n, w in enumerate(walks):
        for vis in visits(g, w):
            if vis.vertex != v:
                continue
            a, b = g.position(vis.h_in), g.position(vis.h_out)
            chords.append(Chord(min(a, b), max(a, b), n, vis.index))
    used = Counter(p for c in chords for p in (c.i, c.j))
    if any(n > 1 for n in used.values()):
        raise WalkError(f"chord ends collide at vertex {v!r}")
    return VertexChordDiagram(v, g.degree(v), tuple(chords))


def chord_diagrams(g: StarGraph, walks: Sequence[Walk]) -> dict[VertexId, VertexChordDiagram]:
    """Diagrams at every vertex visited by at least one walk."""
    _check_disjoint(walks)
    per_vertex: dict = defaultdict(list)
    for n, w in enumerate(walks):
        for vis in visits(g, w):
            a, b = g.position(vis.h_in), g.position(vis.h_out)
            per_vertex[vis.vertex].append(Chord(min(a, b), max(a, b), n, vis.index))
    return {
        v: VertexChordDiagram(v, g.degree(v), tuple(cs)) for v, cs in per_vertex.items()
    }


@dataclass(frozen=True)
class Crossing:
    vertex: VertexId
    first: Chord
    second: Chord


def transversal_crossings(g: StarGraph, c1: Walk, c2: Walk) -> list[Crossing]:
    """All crossing chord pairs with one chord from each walk."""
    out = []
    diagrams = chord_diagrams(g, [c1, c2])
    for v in sorted(diagrams, key=repr):
        cs = diagrams[v].chords
        ones = [c for c in cs if c.owner == 0]
        twos = [c for c in cs if c.owner == 1]
        for a in ones:
            for b in twos:
                if chords_cross(a.i, a.j, b.i, b.j):
                    out.append(Crossing(v, a, b))
    return out


def transversal_count(g: StarGraph, c1: Walk, c2: Walk) -> int:
    return len(transversal_crossings(g, c1, c2))


def self_crossing_count(g: StarGraph, w: Walk) -> int:
    """Transversal self-intersections of a single walk."""
    total = 0
    for d in chord_diagrams(g, [w]).values():
        total += len(d.crossings())
    return total


@dataclass(frozen=True)
class ObstructionCheck:
    ok: bool
    reason: str
    count: int = 0


def check_obstruction(g: StarGraph, c1: Walk, c2: Walk) -> ObstructionCheck:
    for w in (c1, c2):
        if not w.closed:
            return ObstructionCheck(False, "not-closed")
        if not is_walk(g, w):
            return ObstructionCheck(False, "not-a-walk")
    if c1.edge_set() & c2.edge_set():
        return ObstructionCheck(False, "shared-edges")
    n = transversal_count(g, c1, c2)
    if n != 1:
        return ObstructionCheck(False, "count-not-one", n)
    return ObstructionCheck(True, "ok", 1)


def is_vassiliev_obstruction(g: StarGraph, c1: Walk, c2: Walk) -> bool:
    return check_obstruction(g, c1, c2).ok


# ---------------------------------------------------------------------------
# Making obstructions simple
# ---------------------------------------------------------------------------

def split_at(w: Walk, i: int, j: int) -> tuple[Walk, Walk]:
    """Cut a closed walk at the visits leaving through steps ``i < j``."""
    return Walk(w.steps[i:j]), Walk(w.steps[j:] + w.steps[:i])


def _revisited(g: StarGraph, w: Walk) -> dict:
    at = defaultdict(list)
    for vis in visits(g, w):
        at[vis.vertex].append(vis.index)
    return {v: idx for v, idx in at.items() if len(idx) > 1}


def _gap_pairs(g: StarGraph, v: VertexId, w: Walk, indices: list[int]) -> list[tuple[int, int]]:
    """Pairs of visits of ``w`` at ``v`` whose chords are neighbours on the circle.

    The candidates come first in the order of the reduction moves: visits
    whose chords bound an arc free of other chord ends of ``w``.
    """
    by_index = {vis.index: vis for vis in visits(g, w) if vis.vertex == v}
    ends = []  # (position, visit index)
    for k in indices:
        vis = by_index[k]
        ends.append((g.position(vis.h_in), k))
        ends.append((g.position(vis.h_out), k))
    ends.sort()
    near = []
    for a in range(len(ends)):
        p, k1 = ends[a]
        q, k2 = ends[(a + 1) % len(ends)]
        if k1 != k2:
            near.append((min(k1, k2), max(k1, k2)))
    rest = [(a, b) for a in indices for b in indices if a < b and (a, b) not in near]
    seen, out = set(), []
    for pr in sorted(set(near)) + sorted(rest):
        if pr not in seen:
            seen.add(pr)
            out.append(pr)
    return out


def simplify_obstruction(g: StarGraph, c1: Walk, c2: Walk) -> tuple[Walk, Walk]:
    """Shrink an obstruction until both closed walks are simple.

    Each move cuts one walk at two of its visits to a repeated vertex and
    keeps the half that still crosses the other walk exactly once, so the
    number of revisits strictly drops.  Vertices are tried in sorted order.
    """
    if not is_vassiliev_obstruction(g, c1, c2):
        raise StarGraphError("input pair is not a Vassiliev obstruction")
    walks = [c1, c2]
    while True:
        rev = [_revisited(g, w) for w in walks]
        if not rev[0] and not rev[1]:
            return walks[0], walks[1]
        moved = False
        targets = sorted({v for r in rev for v in r}, key=repr)
        for v in targets:
            for side in (0, 1):
                if v not in rev[side]:
                    continue
                w, other = walks[side], walks[1 - side]
                for i, j in _gap_pairs(g, v, w, rev[side][v]):
                    for half in split_at(w, i, j):
                        pair = (half, other) if side == 0 else (other, half)
                        if is_vassiliev_obstruction(g, *pair):
                            walks = list(pair)
                            moved = True
                            break
                    if moved:
                        break
                if moved:
                    break
            if moved:
                break
        if not moved:
            raise StarGraphError("no reduction move applies; obstruction cannot be simplified")
