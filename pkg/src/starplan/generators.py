"""Random and named star-graphs for tests and experiments.

All ids are strings so that every generated graph serializes as is.
Randomness comes only from ``random.Random(seed)``.
"""

from __future__ import annotations

import random
from collections import Counter
from typing import Iterable, Sequence

import networkx as nx

from .certificates import StarEmbedding
from .core import StarGraph, StarGraphError
from .oracle import CapacityError

MAX_ATTEMPTS = 1000


def g_infinity() -> StarGraph:
    """One vertex, two loops on opposite half-edges: the figure-eight curve."""
    return StarGraph({"v": ("1", "2", "3", "4")}, {"A": ("1", "3"), "B": ("2", "4")})


def g_alpha() -> StarGraph:
    """One vertex, two loops on adjacent half-edges."""
    return StarGraph({"v": ("1", "2", "3", "4")}, {"A": ("2", "3"), "B": ("4", "1")})


def k33_star_graph(seed: int | None = None) -> StarGraph:
    """K3,3 with a random rotation at each vertex (stored order if ``seed`` is None)."""
    rng = random.Random(seed)
    rots: dict = {f"a{i}": [] for i in range(3)}
    rots.update({f"b{j}": [] for j in range(3)})
    edges = {}
    for i in range(3):
        for j in range(3):
            ha, hb = f"a{i}b{j}", f"b{j}a{i}"
            rots[f"a{i}"].append(ha)
            rots[f"b{j}"].append(hb)
            edges[f"e{i}{j}"] = (ha, hb)
    if seed is not None:
        for r in rots.values():
            rng.shuffle(r)
    return StarGraph(rots, edges)


def _connected(rots: dict, edges: dict) -> bool:
    owner = {h: v for v, r in rots.items() for h in r}
    m = nx.MultiGraph()
    m.add_nodes_from(rots)
    for a, b in edges.values():
        m.add_edge(owner[a], owner[b])
    return nx.is_connected(m)


def _configuration(n_vertices: int, menu: list, rng: random.Random) -> StarGraph:
    for _ in range(MAX_ATTEMPTS):
        if len(menu) == n_vertices:
            degrees = list(menu)
        else:
            degrees = [rng.choice(menu) for _ in range(n_vertices)]
        if sum(degrees) % 2:
            continue
        rots = {f"v{i}": [f"v{i}.{k}" for k in range(d)] for i, d in enumerate(degrees)}
        pool = [h for r in rots.values() for h in r]
        rng.shuffle(pool)
        edges = {f"e{k}": (pool[2 * k], pool[2 * k + 1]) for k in range(len(pool) // 2)}
        if not _connected(rots, edges):
            continue
        for r in rots.values():
            rng.shuffle(r)
        return StarGraph(rots, edges)
    raise CapacityError(f"no connected sample after {MAX_ATTEMPTS} attempts")


def random_even_star_graph(
    n_vertices: int, degree_menu: Sequence[int] | Iterable[int], seed: int
) -> StarGraph:
    """Configuration model on even degrees with a uniformly random rotation per vertex.

    A menu of length ``n_vertices`` is taken as the degree sequence;
    otherwise each vertex draws its degree from the menu.  Disconnected
    samples are redrawn up to ``MAX_ATTEMPTS`` times.
    """
    menu = list(degree_menu)
    if n_vertices < 1 or not menu:
        raise StarGraphError("need at least one vertex and a nonempty degree menu")
    if any(d < 2 or d % 2 for d in menu):
        raise StarGraphError(f"degrees must be even and positive, got {menu}")
    return _configuration(n_vertices, menu, random.Random(seed))


def random_star_graph(
    n_vertices: int, degree_menu: Sequence[int] | Iterable[int], seed: int
) -> StarGraph:
    """Like :func:`random_even_star_graph` but odd degrees are allowed."""
    menu = list(degree_menu)
    if n_vertices < 1 or not menu or any(d < 1 for d in menu):
        raise StarGraphError("need at least one vertex and positive degrees")
    if len(menu) == n_vertices and sum(menu) % 2:
        raise StarGraphError("degree sum must be even")
    if len(menu) != n_vertices and all(d % 2 for d in menu) and n_vertices % 2:
        raise StarGraphError("an odd number of odd degrees never pairs up")
    return _configuration(n_vertices, menu, random.Random(seed))


def _faces(rots: dict, twin: dict) -> list[list[tuple]]:
    """Faces as lists of corners ``(vertex, h)``: a corner sits right after ``h``."""
    where = {h: (v, i) for v, r in rots.items() for i, h in enumerate(r)}
    seen, faces = set(), []
    for v in sorted(rots):
        for h0 in rots[v]:
            if h0 in seen:
                continue
            face, h = [], h0
            while h not in seen:
                seen.add(h)
                t = twin[h]
                u, i = where[t]
                face.append((u, t))
                h = rots[u][(i + 1) % len(rots[u])]
            faces.append(face)
    return faces


def random_planar_star_graph(n_faces_budget: int, seed: int) -> StarGraph:
    """Grow a plane multigraph edge by edge; the budget is its number of edges.

    Each step either hangs a new vertex in a corner or joins two corners of
    one face (possibly the same corner, giving a loop, or the two sides of
    an edge, giving a parallel copy).  The stored rotations are the
    clockwise orders of the drawing.
    """
    if n_faces_budget < 1:
        raise StarGraphError("budget must be at least 1")
    rng = random.Random(seed)
    rots: dict = {"v0": ["h0", "h1"]}
    twin = {"h0": "h1", "h1": "h0"}
    edges = {"e0": ("h0", "h1")}
    fresh = 2

    def insert_after(v, h, new):
        r = rots[v]
        r.insert(r.index(h) + 1, new)

    for k in range(1, n_faces_budget):
        faces = _faces(rots, twin)
        face = rng.choice(faces)
        a, b = f"h{fresh}", f"h{fresh + 1}"
        fresh += 2
        if rng.random() < 0.35:
            v, h = rng.choice(face)
            insert_after(v, h, a)
            rots[f"v{len(rots)}"] = [b]
        else:
            (v1, h1), (v2, h2) = rng.choice(face), rng.choice(face)
            insert_after(v1, h1, a)
            if (v1, h1) == (v2, h2):
                insert_after(v1, a, b)
            else:
                insert_after(v2, h2, b)
        twin[a], twin[b] = b, a
        edges[f"e{k}"] = (a, b)
    return StarGraph(rots, edges)


def double_edges(g: StarGraph, embedding: StarEmbedding | None = None) -> StarGraph:
    """Add a parallel copy of every edge, adjacent to it at both ends.

    The copy runs alongside the original in the given embedding, or in the
    stored rotations read as oriented when no embedding is given.  For a
    planar graph pass its embedding, otherwise the copies may twist.
    """
    rots = {v: list(embedding.rotation[v] if embedding else r) for v, r in g.rotations.items()}
    edges = dict(g.edges)
    for e in sorted(g.edges, key=repr):
        h0, h1 = g.edges[e]
        c0, c1 = f"{h0}'", f"{h1}'"
        r0 = rots[g.vertex_of(h0)]
        r0.insert(r0.index(h0) + 1, c0)
        r1 = rots[g.vertex_of(h1)]
        r1.insert(r1.index(h1), c1)
        edges[f"{e}'"] = (c0, c1)
    return StarGraph(rots, edges)


def from_gauss_word(word: str | Sequence[str]) -> StarGraph:
    """The framed four-valent graph of a closed curve with the given crossing sequence.

    Symbol ``s`` becomes vertex ``s`` with rotation ``[s1, s2, s3, s4]``.
    The first pass enters on ``s1`` and leaves on ``s3``, the second enters
    on ``s2`` and leaves on ``s4``, so each strand goes straight through.
    Edge ``e{i}`` joins the exit of pass ``i`` to the entry of pass ``i+1``.
    """
    symbols = list(word)
    counts = Counter(symbols)
    bad = sorted(s for s, c in counts.items() if c != 2)
    if not symbols or bad:
        raise StarGraphError(f"every symbol must occur exactly twice; offending: {bad}")
    seen: Counter = Counter()
    passes = []
    for s in symbols:
        seen[s] += 1
        passes.append((f"{s}1", f"{s}3") if seen[s] == 1 else (f"{s}2", f"{s}4"))
    rots = {}
    for s in symbols:
        rots.setdefault(s, tuple(f"{s}{k}" for k in range(1, 5)))
    n = len(passes)
    edges = {f"e{i}": (passes[i][1], passes[(i + 1) % n][0]) for i in range(n)}
    return StarGraph(rots, edges)


def shuffled_rotations(g: StarGraph, seed: int) -> StarGraph:
    """Same graph with an independently shuffled rotation at each vertex."""
    rng = random.Random(seed)
    rots = {}
    for v in sorted(g.rotations, key=repr):
        r = list(g.rotations[v])
        rng.shuffle(r)
        rots[v] = r
    return StarGraph(rots, g.edges)
