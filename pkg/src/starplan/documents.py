"""JSON documents for star-graphs and certificates, and the certificate verifier.

Graph documents look like::

    {"vertices": [{"id": "v", "rotation": ["1", "2", "3", "4"]}],
     "edges": [["1", "3"], ["2", "4"]],
     "edge_ids": ["A", "B"]}

``edge_ids`` is optional; without it edge ``k`` is called ``"e{k}"``.
All ids are strings.  Walks in certificates are lists of
``[edge id, reversed]`` steps.
"""

from __future__ import annotations

import json
from typing import Any

from .certificates import (
    EmbeddedK33,
    StarEmbedding,
    VassilievObstruction,
    embedding_problems,
    half_edge_dart,
    witness_problems,
)
from .core import Chord, Crossing, StarGraph, Walk, validate
from .planarity import trace_faces


class DocumentError(ValueError):
    """Malformed document; the message names the offending field."""


class IdMismatch(DocumentError):
    """A certificate refers to an id the graph does not have."""


def _expect(cond: bool, where: str, what: str) -> None:
    if not cond:
        raise DocumentError(f"{where}: {what}")


def _is_id(x: Any) -> bool:
    return isinstance(x, str)


# ---------------------------------------------------------------------------
# Star-graph documents
# ---------------------------------------------------------------------------

def graph_to_json(g: StarGraph) -> dict:
    vertices = [{"id": str(v), "rotation": [str(h) for h in g.rotations[v]]} for v in g.rotations]
    ids = list(g.edges)
    return {
        "vertices": vertices,
        "edges": [[str(h) for h in g.edges[e]] for e in ids],
        "edge_ids": [str(e) for e in ids],
    }


def graph_from_json(doc: Any) -> StarGraph:
    _expect(isinstance(doc, dict), "document", "expected a JSON object")
    _expect("vertices" in doc, "vertices", "missing")
    _expect("edges" in doc, "edges", "missing")
    _expect(isinstance(doc["vertices"], list), "vertices", "expected a list")
    _expect(isinstance(doc["edges"], list), "edges", "expected a list")
    rots = {}
    for k, v in enumerate(doc["vertices"]):
        where = f"vertices[{k}]"
        _expect(isinstance(v, dict), where, "expected an object")
        _expect(_is_id(v.get("id")), f"{where}.id", "expected a string")
        rot = v.get("rotation")
        _expect(isinstance(rot, list) and all(_is_id(h) for h in rot),
                f"{where}.rotation", "expected a list of strings")
        _expect(v["id"] not in rots, f"{where}.id", f"duplicate vertex {v['id']!r}")
        rots[v["id"]] = tuple(rot)
    ids = doc.get("edge_ids")
    if ids is None:
        ids = [f"e{k}" for k in range(len(doc["edges"]))]
    _expect(isinstance(ids, list) and all(_is_id(e) for e in ids), "edge_ids", "expected a list of strings")
    _expect(len(ids) == len(doc["edges"]), "edge_ids", "length differs from edges")
    _expect(len(set(ids)) == len(ids), "edge_ids", "duplicate edge id")
    edges = {}
    for k, (e, pair) in enumerate(zip(ids, doc["edges"])):
        _expect(isinstance(pair, list) and len(pair) == 2 and all(_is_id(h) for h in pair),
                f"edges[{k}]", "expected a pair of half-edge strings")
        edges[e] = tuple(pair)
    g = StarGraph(rots, edges)
    report = validate(g)
    _expect(report.ok, "graph", "; ".join(report.problems))
    return g


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_graph(text: str) -> StarGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"document: invalid JSON ({exc})") from None
    return graph_from_json(doc)


# ---------------------------------------------------------------------------
# Certificate documents
# ---------------------------------------------------------------------------

def _walk_json(w: Walk) -> list:
    return [[str(e), bool(r)] for e, r in w.steps]


def _chord_json(c: Chord) -> dict:
    return {"positions": [c.i, c.j], "owner": c.owner, "visit": c.visit}


def certificate_to_json(g: StarGraph, cert) -> dict:
    if isinstance(cert, StarEmbedding):
        rs = cert.rotation_system(g)
        faces = [[str(g.edges[e][end]) for e, end in f] for f in trace_faces(rs)]
        return {
            "verdict": "planar",
            "rotation": {str(v): [str(h) for h in hs] for v, hs in cert.rotation.items()},
            "reversed": {str(v): bool(f) for v, f in cert.reversed.items()},
            "faces": faces,
        }
    if isinstance(cert, VassilievObstruction):
        return {
            "verdict": "nonplanar",
            "witness": "vassiliev",
            "case": cert.case,
            "cycles": [_walk_json(cert.c1), _walk_json(cert.c2)],
            "crossing": {
                "vertex": str(cert.crossing.vertex),
                "chords": [_chord_json(cert.crossing.first), _chord_json(cert.crossing.second)],
            },
        }
    if isinstance(cert, EmbeddedK33):
        return {
            "verdict": "nonplanar",
            "witness": "k33",
            "sides": [[str(x) for x in side] for side in cert.sides],
            "paths": [
                {"from": str(a), "to": str(b), "steps": _walk_json(cert.paths[(a, b)])}
                for a, b in sorted(cert.paths, key=repr)
            ],
        }
    raise TypeError(f"not a certificate: {type(cert).__name__}")


def _walk_from(g: StarGraph, raw: Any, where: str, closed: bool) -> Walk:
    _expect(isinstance(raw, list), where, "expected a list of steps")
    steps = []
    for k, st in enumerate(raw):
        _expect(isinstance(st, list) and len(st) == 2 and _is_id(st[0]) and isinstance(st[1], bool),
                f"{where}[{k}]", "expected [edge id, reversed]")
        if st[0] not in g.edges:
            raise IdMismatch(f"{where}[{k}]: unknown edge {st[0]!r}")
        steps.append((st[0], st[1]))
    return Walk(tuple(steps), closed)


def _vertex(g: StarGraph, raw: Any, where: str):
    _expect(_is_id(raw), where, "expected a vertex id")
    if raw not in g.rotations:
        raise IdMismatch(f"{where}: unknown vertex {raw!r}")
    return raw


def _chord_from(raw: Any, where: str) -> Chord:
    _expect(isinstance(raw, dict), where, "expected an object")
    pos = raw.get("positions")
    _expect(isinstance(pos, list) and len(pos) == 2 and all(isinstance(p, int) for p in pos),
            f"{where}.positions", "expected two integers")
    for key in ("owner", "visit"):
        _expect(isinstance(raw.get(key), int), f"{where}.{key}", "expected an integer")
    return Chord(pos[0], pos[1], raw["owner"], raw["visit"])


def certificate_from_json(g: StarGraph, doc: Any):
    """Read a certificate against ``g``; unknown ids raise :class:`IdMismatch`."""
    _expect(isinstance(doc, dict), "certificate", "expected a JSON object")
    verdict = doc.get("verdict")
    if verdict == "planar":
        rot, rev = doc.get("rotation"), doc.get("reversed")
        _expect(isinstance(rot, dict), "rotation", "expected an object")
        _expect(isinstance(rev, dict), "reversed", "expected an object")
        known = set(g.half_edges())
        for v, hs in rot.items():
            _vertex(g, v, "rotation")
            _expect(isinstance(hs, list) and all(_is_id(h) for h in hs), f"rotation.{v}", "expected a list of strings")
            for h in hs:
                if h not in known:
                    raise IdMismatch(f"rotation.{v}: unknown half-edge {h!r}")
        for v, f in rev.items():
            _vertex(g, v, "reversed")
            _expect(isinstance(f, bool), f"reversed.{v}", "expected a boolean")
        return StarEmbedding({v: tuple(hs) for v, hs in rot.items()}, dict(rev))
    _expect(verdict == "nonplanar", "verdict", "expected 'planar' or 'nonplanar'")
    kind = doc.get("witness")
    if kind == "vassiliev":
        cycles = doc.get("cycles")
        _expect(isinstance(cycles, list) and len(cycles) == 2, "cycles", "expected two walks")
        c1 = _walk_from(g, cycles[0], "cycles[0]", True)
        c2 = _walk_from(g, cycles[1], "cycles[1]", True)
        cr = doc.get("crossing")
        _expect(isinstance(cr, dict), "crossing", "expected an object")
        v = _vertex(g, cr.get("vertex"), "crossing.vertex")
        chords = cr.get("chords")
        _expect(isinstance(chords, list) and len(chords) == 2, "crossing.chords", "expected two chords")
        first = _chord_from(chords[0], "crossing.chords[0]")
        second = _chord_from(chords[1], "crossing.chords[1]")
        case = doc.get("case", "")
        _expect(isinstance(case, str), "case", "expected a string")
        return VassilievObstruction(c1, c2, Crossing(v, first, second), case=case)
    if kind == "k33":
        sides = doc.get("sides")
        _expect(isinstance(sides, list) and len(sides) == 2 and all(isinstance(s, list) for s in sides),
                "sides", "expected two lists")
        sides_t = tuple(
            tuple(_vertex(g, x, f"sides[{i}]") for x in side) for i, side in enumerate(sides)
        )
        paths = {}
        raw_paths = doc.get("paths")
        _expect(isinstance(raw_paths, list), "paths", "expected a list")
        for k, p in enumerate(raw_paths):
            _expect(isinstance(p, dict), f"paths[{k}]", "expected an object")
            a = _vertex(g, p.get("from"), f"paths[{k}].from")
            b = _vertex(g, p.get("to"), f"paths[{k}].to")
            paths[(a, b)] = _walk_from(g, p.get("steps"), f"paths[{k}].steps", False)
        return EmbeddedK33(sides_t, paths)
    raise DocumentError("witness: expected 'vassiliev' or 'k33'")


def certificate_problems(g: StarGraph, doc: dict) -> list[str]:
    """Everything wrong with a certificate document for ``g``.

    Only transversality predicates and face tracing are used; no planarity
    decision is run.  Raises :class:`IdMismatch` for unknown ids.
    """
    cert = certificate_from_json(g, doc)
    if isinstance(cert, StarEmbedding):
        problems = embedding_problems(g, cert)
        if problems:
            return problems
        faces = doc.get("faces")
        if faces is not None:
            _expect(isinstance(faces, list) and all(isinstance(f, list) for f in faces),
                    "faces", "expected a list of half-edge lists")
            known = set(g.half_edges())
            for k, f in enumerate(faces):
                for h in f:
                    if h not in known:
                        raise IdMismatch(f"faces[{k}]: unknown half-edge {h!r}")
            traced = trace_faces(cert.rotation_system(g))
            want = sorted(_cyclic_key([half_edge_dart(g, h) for h in f]) for f in faces)
            got = sorted(_cyclic_key(f) for f in traced)
            if want != got:
                problems.append("listed faces differ from the traced faces")
        return problems
    return witness_problems(g, cert)


def _cyclic_key(seq: list) -> tuple:
    if not seq:
        return ()
    k = min(range(len(seq)), key=lambda i: repr(seq[i]))
    return tuple(repr(x) for x in seq[k:] + seq[:k])
