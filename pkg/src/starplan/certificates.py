"""Certificate types for star-graph planarity and their validators.

Validators only use the transversality calculus and face tracing; they
never run a planarity decision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .core import (
    Crossing,
    StarGraph,
    Walk,
    WalkError,
    check_walk,
    is_simple,
    self_crossing_count,
    transversal_count,
    transversal_crossings,
    validate,
    walk_end,
    walk_start,
)
from .planarity import OrdinaryGraph, RotationSystem, verify_embedding


class CertificateError(ValueError):
    pass


def star_as_ordinary(g: StarGraph) -> OrdinaryGraph:
    return OrdinaryGraph(g.rotations, {e: g.endpoints(e) for e in g.edges})


def half_edge_dart(g: StarGraph, h) -> tuple:
    e = g.edge_of(h)
    return (e, 0 if g.edges[e][0] == h else 1)


@dataclass(frozen=True)
class StarEmbedding:
    """Oriented rotation per vertex plus whether it reads the stored rotation backwards."""

    rotation: Mapping[Hashable, tuple]
    reversed: Mapping[Hashable, bool]

    def rotation_system(self, g: StarGraph) -> RotationSystem:
        return RotationSystem(
            {v: tuple(half_edge_dart(g, h) for h in hs) for v, hs in self.rotation.items()}
        )


def _same_cycle(a: tuple, b: tuple) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = b + b
    return any(doubled[k:k + len(a)] == a for k in range(len(b)))


def compatible_orientation(stored: tuple, oriented: tuple) -> bool | None:
    """False if ``oriented`` is a shift of ``stored``, True if of its reversal, else None."""
    if _same_cycle(tuple(oriented), tuple(stored)):
        return False
    if _same_cycle(tuple(oriented), tuple(reversed(stored))):
        return True
    return None


def embedding_problems(g: StarGraph, emb: StarEmbedding) -> list[str]:
    problems = []
    if set(emb.rotation) != set(g.rotations):
        return ["embedding does not list exactly the graph's vertices"]
    for v, stored in g.rotations.items():
        flag = compatible_orientation(stored, tuple(emb.rotation[v]))
        if flag is None:
            problems.append(f"rotation at {v!r} is neither the stored order nor its reversal")
        elif len(stored) > 2 and flag != emb.reversed.get(v):
            problems.append(f"reversal flag at {v!r} is wrong")
    if problems:
        return problems
    try:
        ok = verify_embedding(star_as_ordinary(g), emb.rotation_system(g))
    except ValueError as exc:
        return [str(exc)]
    if not ok:
        problems.append("face tracing does not give genus 0")
    return problems


@dataclass(frozen=True)
class VassilievObstruction:
    c1: Walk
    c2: Walk
    crossing: Crossing
    case: str = ""


@dataclass(frozen=True)
class EmbeddedK33:
    """Six branch vertices (two sides of three) and nine paths between them."""

    sides: tuple[tuple, tuple]
    paths: Mapping[tuple, Walk]  # (a, b) with a on side 0, b on side 1; runs a -> b
    reductions: int = field(default=0, compare=False)


def vassiliev_problems(g: StarGraph, ob: VassilievObstruction) -> list[str]:
    problems = []
    for name, w in (("c1", ob.c1), ("c2", ob.c2)):
        if not w.closed:
            problems.append(f"{name} is not closed")
            continue
        try:
            check_walk(g, w)
        except (WalkError, KeyError) as exc:
            problems.append(f"{name}: {exc}")
            continue
        if not is_simple(g, w):
            problems.append(f"{name} is not simple")
    if problems:
        return problems
    if ob.c1.edge_set() & ob.c2.edge_set():
        return ["cycles share an edge"]
    crossings = transversal_crossings(g, ob.c1, ob.c2)
    if len(crossings) != 1:
        return [f"expected exactly one transversal intersection, found {len(crossings)}"]
    if crossings[0] != ob.crossing:
        problems.append("recorded crossing does not match the cycles")
    return problems


def k33_problems(g: StarGraph, k: EmbeddedK33) -> list[str]:
    problems = []
    a_side, b_side = k.sides
    branch = list(a_side) + list(b_side)
    if len(a_side) != 3 or len(b_side) != 3 or len(set(branch)) != 6:
        return ["need two sides of three distinct branch vertices"]
    if any(x not in g.rotations for x in branch):
        return ["branch vertex not in graph"]
    wanted = {(a, b) for a in a_side for b in b_side}
    if set(k.paths) != wanted:
        return ["paths do not form the K3,3 incidence pattern"]
    keys = sorted(wanted, key=repr)
    for key in keys:
        w = k.paths[key]
        if w.closed or not w.steps:
            problems.append(f"path {key!r} must be a nonempty open walk")
            continue
        try:
            check_walk(g, w)
        except (WalkError, KeyError) as exc:
            problems.append(f"path {key!r}: {exc}")
            continue
        if (walk_start(g, w), walk_end(g, w)) != key:
            problems.append(f"path {key!r} has the wrong ends")
    if problems:
        return problems
    for i, p in enumerate(keys):
        if self_crossing_count(g, k.paths[p]):
            problems.append(f"path {p!r} crosses itself")
        for q in keys[i + 1:]:
            if k.paths[p].edge_set() & k.paths[q].edge_set():
                problems.append(f"paths {p!r} and {q!r} share an edge")
            elif transversal_count(g, k.paths[p], k.paths[q]):
                problems.append(f"paths {p!r} and {q!r} cross")
    return problems


def witness_problems(g: StarGraph, w) -> list[str]:
    report = validate(g)
    if not report.ok:
        return report.problems
    if isinstance(w, VassilievObstruction):
        return vassiliev_problems(g, w)
    if isinstance(w, EmbeddedK33):
        return k33_problems(g, w)
    return [f"unknown witness type {type(w).__name__}"]
