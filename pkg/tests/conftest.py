import random

import pytest
from hypothesis import strategies as st

from starplan.core import StarGraph, Walk
from starplan.generators import random_even_star_graph, random_star_graph
from starplan.oracle import simple_cycles
from starplan.planarity import BranchPath, KuratowskiSubdivision
from starplan.webgraph import build_web_graph


@st.composite
def even_star_graphs(draw, max_vertices=5):
    n = draw(st.integers(1, max_vertices))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_even_star_graph(n, [2, 4, 6], seed)


@st.composite
def star_graphs(draw, max_vertices=5):
    n = draw(st.integers(1, max_vertices))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_star_graph(n, [1, 2, 3, 4], seed)


def disjoint_cycle_pairs(g, limit=200):
    cycles = simple_cycles(g)
    out = []
    for i, a in enumerate(cycles):
        for b in cycles[i + 1:]:
            if not a.edge_set() & b.edge_set():
                out.append((a, b))
                if len(out) >= limit:
                    return out
    return out


def reoriented(g, rng):
    """Same star-graph with each rotation shifted and possibly reversed."""
    rots = {}
    for v, r in g.rotations.items():
        r = list(r)
        k = rng.randrange(len(r))
        r = r[k:] + r[:k]
        if rng.random() < 0.5:
            r.reverse()
        rots[v] = r
    return StarGraph(rots, g.edges)


def subdivided_k33(seed, even=True):
    """K3,3 with every edge subdivided once and random extra edges.

    Returns the graph, its web graph and the K3,3 subdivision whose branch
    vertices are the six web centres, so that every web holds at most one
    branch vertex.
    """
    rng = random.Random(seed)
    side_a, side_b = ["a0", "a1", "a2"], ["b0", "b1", "b2"]
    rots = {v: [] for v in side_a + side_b}
    edges, legs = {}, {}
    for i in range(3):
        for j in range(3):
            w = f"w{i}{j}"
            rots[w] = [f"{w}x", f"{w}y"]
            rots[side_a[i]].append(f"{side_a[i]}>{w}")
            rots[side_b[j]].append(f"{side_b[j]}>{w}")
            edges[f"p{i}{j}"] = (f"{side_a[i]}>{w}", f"{w}x")
            edges[f"q{i}{j}"] = (f"{w}y", f"{side_b[j]}>{w}")
            legs[(i, j)] = (f"p{i}{j}", f"q{i}{j}")
    extra = []
    for v in side_a + side_b:
        extra += [v] * (rng.choice([1, 3]) if even else rng.choice([0, 1, 2]))
    for i in range(3):
        for j in range(3):
            extra += [f"w{i}{j}"] * (rng.choice([0, 2, 2, 4]) if even else rng.choice([0, 1, 2]))
    if len(extra) % 2:
        extra.append("a0")
    rng.shuffle(extra)
    count = {}
    hs = []
    for v in extra:
        count[v] = count.get(v, 0) + 1
        h = f"{v}#{count[v]}"
        rots[v].append(h)
        hs.append(h)
    for k in range(0, len(hs), 2):
        edges[f"x{k // 2}"] = (hs[k], hs[k + 1])
    for r in rots.values():
        rng.shuffle(r)
    g = StarGraph(rots, edges)
    web = build_web_graph(g)
    paths = []
    for (i, j), (p, q) in legs.items():
        ha, hw1 = g.edges[p]
        hw2, hb = g.edges[q]
        w = f"w{i}{j}"
        vs = (("c", side_a[i]), ("p", ha), ("p", hw1), ("c", w), ("p", hw2), ("p", hb), ("c", side_b[j]))
        es = (("s", ha), ("t", p), ("s", hw1), ("s", hw2), ("t", q), ("s", hb))
        paths.append(BranchPath(vs, es))
    sub = KuratowskiSubdivision(
        "K33",
        tuple(("c", x) for x in side_a + side_b),
        tuple(paths),
        (tuple(("c", a) for a in side_a), tuple(("c", b) for b in side_b)),
    )
    return g, web, sub


@pytest.fixture
def loop_walks():
    def make(g, *edge_ids):
        return [Walk(((e, False),)) for e in edge_ids]
    return make


def _random_path(wg, rng, start, blocked_v, blocked_e, max_len=14):
    from starplan.webgraph import GraphWalk

    g = wg.graph
    at, seen, es, vs = start, {start}, [], [start]
    for _ in range(rng.randint(1, max_len)):
        opts = [
            e for e in sorted(g.incident(at), key=repr)
            if e not in blocked_e and e not in es
            and g.other(e, at) not in seen and g.other(e, at) not in blocked_v
        ]
        if not opts:
            break
        e = rng.choice(opts)
        at = g.other(e, at)
        es.append(e)
        seen.add(at)
        vs.append(at)
    return GraphWalk(vs[0], tuple(es)), vs


def random_path_pair(wg, rng):
    """Two internally disjoint nonempty paths in the web graph, or None."""
    verts = sorted(wg.graph.vertices, key=repr)
    p1, v1 = _random_path(wg, rng, rng.choice(verts), set(), set())
    if not p1.edges:
        return None
    inner = set(v1[1:-1])
    starts = [x for x in verts if x not in inner]
    p2, v2 = _random_path(wg, rng, rng.choice(starts), inner, set(p1.edges))
    if not p2.edges or set(v2[1:-1]) & set(v1):
        return None
    return p1, p2
