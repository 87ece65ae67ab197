"""Star-graph planarity through the web graph, with certificates."""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import (
    EmbeddedK33,
    StarEmbedding,
    VassilievObstruction,
    compatible_orientation,
    embedding_problems,
    star_as_ordinary,
)
from .core import StarGraph, is_even, require_valid
from .planarity import PlanarityVerdict, decide_planarity, verify_embedding
from .webgraph import WebGraph, build_web_graph


class CriterionError(RuntimeError):
    """A step that the theory guarantees failed; never silenced."""


@dataclass(frozen=True)
class StarVerdict:
    planar: bool
    embedding: StarEmbedding | None
    web: WebGraph
    web_verdict: PlanarityVerdict


def _restrict(g: StarGraph, web: WebGraph, verdict: PlanarityVerdict) -> StarEmbedding:
    rotation, flags = {}, {}
    for v, w in web.webs.items():
        darts = verdict.rotation.rotation[w.center]
        order = []
        for e, end in darts:
            kind, h = e
            if kind == "s":
                order.append(h)
        order = tuple(order)
        flag = compatible_orientation(g.rotations[v], order)
        if flag is None:
            raise CriterionError(f"web embedding scrambles the cyclic order at {v!r}")
        rotation[v] = order
        flags[v] = flag
    return StarEmbedding(rotation, flags)


def star_is_planar(g: StarGraph) -> StarVerdict:
    """Decide planarity of ``g`` by deciding it for the web graph.

    On a planar verdict the web embedding is cut back to ``g`` (spoke
    order around each centre) and the result is re-checked for genus 0
    and per-vertex compatibility.
    """
    require_valid(g)
    web = build_web_graph(g)
    verdict = decide_planarity(web.graph)
    if not verdict.planar:
        return StarVerdict(False, None, web, verdict)
    emb = _restrict(g, web, verdict)
    problems = embedding_problems(g, emb)
    if problems:
        raise CriterionError("restricted embedding rejected: " + "; ".join(problems))
    return StarVerdict(True, emb, web, verdict)


def extract_obstruction(g: StarGraph, verdict: StarVerdict | None = None) -> VassilievObstruction:
    """Construct two edge-disjoint simple cycles with one transversal intersection."""
    from .extraction import extract_from_web

    require_valid(g)
    if not is_even(g):
        raise CriterionError("extract_obstruction needs an even star-graph")
    verdict = verdict or star_is_planar(g)
    if verdict.planar:
        raise CriterionError("graph is planar")
    w = extract_from_web(g, verdict.web, verdict.web_verdict.kuratowski, require_obstruction=True)
    assert isinstance(w, VassilievObstruction)
    return w


def classify_nonplanar(
    g: StarGraph, verdict: StarVerdict | None = None
) -> VassilievObstruction | EmbeddedK33:
    """A transversal cycle pair if the extraction finds one, else an embedded K3,3."""
    from .extraction import extract_from_web

    require_valid(g)
    verdict = verdict or star_is_planar(g)
    if verdict.planar:
        raise CriterionError("graph is planar")
    return extract_from_web(g, verdict.web, verdict.web_verdict.kuratowski, require_obstruction=False)


def embedding_genus_zero(g: StarGraph, emb: StarEmbedding) -> bool:
    return verify_embedding(star_as_ordinary(g), emb.rotation_system(g))
