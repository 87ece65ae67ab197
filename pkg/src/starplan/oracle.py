"""Brute-force search for transversal cycle pairs.

Independent of the web graph and of every planarity routine: enumerate
all simple cycles and test every edge-disjoint pair.  Simple cycles
suffice because any obstruction can be shrunk to a simple one.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .core import StarGraph, Walk, chords_cross, require_valid, transversal_crossings
from .certificates import VassilievObstruction

DEFAULT_CYCLE_CAP = 200_000


class CapacityError(RuntimeError):
    """The search space exceeded its configured bound."""


def cycle_cap() -> int:
    return int(os.environ.get("STARPLAN_CYCLE_CAP", DEFAULT_CYCLE_CAP))


def simple_cycles(g: StarGraph, cap: int | None = None) -> list[Walk]:
    """All simple closed walks, each once, in a fixed order.

    A cycle is rooted at its smallest vertex; the two traversal directions
    are told apart by comparing the first and the closing edge.
    """
    cap = cycle_cap() if cap is None else cap
    vorder = {v: i for i, v in enumerate(sorted(g.rotations))}
    eorder = {e: i for i, e in enumerate(sorted(g.edges))}
    found: list[Walk] = []

    def emit(steps):
        found.append(Walk(tuple(steps)))
        if len(found) > cap:
            raise CapacityError(f"more than {cap} simple cycles")

    out_steps: dict = {v: [] for v in g.rotations}
    for e in sorted(g.edges):
        a, b = g.edges[e]
        u, v = g.vertex_of(a), g.vertex_of(b)
        if u == v:
            emit([(e, False)])
            continue
        out_steps[u].append((e, False, v))
        out_steps[v].append((e, True, u))

    for s in sorted(g.rotations):
        rank = vorder[s]
        path: list = []
        on_path = {s}

        def dfs(at):
            for e, rev, nxt in out_steps[at]:
                if path and e == path[-1][0]:
                    continue
                if nxt == s:
                    if path and eorder[path[0][0]] < eorder[e]:
                        emit(path + [(e, rev)])
                    continue
                if vorder[nxt] < rank or nxt in on_path:
                    continue
                path.append((e, rev))
                on_path.add(nxt)
                dfs(nxt)
                on_path.discard(nxt)
                path.pop()

        dfs(s)
    found.sort(key=lambda w: (len(w), sorted(eorder[e] for e, _ in w.steps)))
    return found


@dataclass
class _CycleTable:
    codes: np.ndarray  # (n_cycles, n_vertices) chord code, last code = absent
    tables: list  # per vertex: crossing table over codes
    masks: list  # python ints, edge bitmasks


def _tabulate(g: StarGraph, cycles: list[Walk]) -> _CycleTable:
    verts = sorted(g.rotations)
    vidx = {v: i for i, v in enumerate(verts)}
    eidx = {e: i for i, e in enumerate(sorted(g.edges))}
    chord_codes = []
    tables = []
    for v in verts:
        d = g.degree(v)
        pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
        code = {p: k for k, p in enumerate(pairs)}
        t = np.zeros((len(pairs) + 1, len(pairs) + 1), dtype=np.int8)
        for (i, j), a in code.items():
            for (k, l), b in code.items():
                if len({i, j, k, l}) == 4 and chords_cross(i, j, k, l):
                    t[a, b] = 1
        chord_codes.append(code)
        tables.append(t)
    codes = np.empty((len(cycles), len(verts)), dtype=np.int32)
    for v in verts:
        codes[:, vidx[v]] = len(chord_codes[vidx[v]])
    masks = []
    for n, w in enumerate(cycles):
        m = 0
        k = len(w.steps)
        for idx, (e, rev) in enumerate(w.steps):
            m |= 1 << eidx[e]
            nxt = w.steps[(idx + 1) % k]
            h_in = g.edges[e][0 if rev else 1]
            h_out = g.edges[nxt[0]][1 if nxt[1] else 0]
            v = g.vertex_of(h_in)
            p, q = sorted((g.position(h_in), g.position(h_out)))
            codes[n, vidx[v]] = chord_codes[vidx[v]][(p, q)]
        masks.append(m)
    return _CycleTable(codes, tables, masks)


def find_obstruction_bruteforce(g: StarGraph, cap: int | None = None) -> VassilievObstruction | None:
    """First edge-disjoint pair of simple cycles with exactly one crossing."""
    require_valid(g)
    cycles = simple_cycles(g, cap)
    if len(cycles) < 2:
        return None
    tab = _tabulate(g, cycles)
    n_vert = tab.codes.shape[1]
    use_np = len(g.edges) <= 63
    masks_np = np.array(tab.masks, dtype=np.uint64) if use_np else None
    for i in range(len(cycles) - 1):
        counts = np.zeros(len(cycles) - i - 1, dtype=np.int32)
        for v in range(n_vert):
            counts += tab.tables[v][tab.codes[i, v], tab.codes[i + 1:, v]]
        cand = np.nonzero(counts == 1)[0]
        if cand.size == 0:
            continue
        if use_np:
            free = (masks_np[i + 1:][cand] & np.uint64(tab.masks[i])) == 0
            hits = cand[free]
        else:
            hits = [c for c in cand if not (tab.masks[i + 1 + c] & tab.masks[i])]
        if len(hits):
            j = i + 1 + int(hits[0])
            c1, c2 = cycles[i], cycles[j]
            crossing = transversal_crossings(g, c1, c2)
            return VassilievObstruction(c1, c2, crossing[0], case="bruteforce")
    return None


def edge_disjoint_cycle_pairs(g: StarGraph, cap: int | None = None) -> int:
    """Number of edge-disjoint pairs of simple cycles."""
    cycles = simple_cycles(g, cap)
    eidx = {e: i for i, e in enumerate(sorted(g.edges))}
    masks = [sum(1 << eidx[e] for e in w.edge_set()) for w in cycles]
    return sum(
        1 for i in range(len(masks)) for j in range(i + 1, len(masks)) if not masks[i] & masks[j]
    )
