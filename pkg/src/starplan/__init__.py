"""Planarity of star-graphs: decision, certificates and an independent oracle."""

from .certificates import EmbeddedK33, StarEmbedding, VassilievObstruction, witness_problems
from .core import (
    StarGraph,
    StarGraphError,
    Walk,
    WalkError,
    is_even,
    is_vassiliev_obstruction,
    simplify_obstruction,
    transversal_count,
    validate,
)
from .criterion import (
    StarVerdict,
    classify_nonplanar,
    extract_obstruction,
    star_is_planar,
)
from .generators import (
    double_edges,
    from_gauss_word,
    g_alpha,
    g_infinity,
    random_even_star_graph,
    random_planar_star_graph,
)
from .oracle import CapacityError, find_obstruction_bruteforce
from .webgraph import build_web_graph

__all__ = [
    "CapacityError",
    "EmbeddedK33",
    "StarEmbedding",
    "StarGraph",
    "StarGraphError",
    "StarVerdict",
    "VassilievObstruction",
    "Walk",
    "WalkError",
    "build_web_graph",
    "classify_nonplanar",
    "double_edges",
    "extract_obstruction",
    "find_obstruction_bruteforce",
    "from_gauss_word",
    "g_alpha",
    "g_infinity",
    "is_even",
    "is_vassiliev_obstruction",
    "random_even_star_graph",
    "random_planar_star_graph",
    "simplify_obstruction",
    "star_is_planar",
    "transversal_count",
    "validate",
    "witness_problems",
]
