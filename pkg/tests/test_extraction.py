from collections import Counter

import pytest

from starplan.certificates import EmbeddedK33, VassilievObstruction, witness_problems
from starplan.core import is_even, is_simple
from starplan.criterion import star_is_planar
from starplan.extraction import (
    TEMPLATES,
    ExtractionError,
    Gamma,
    case_label,
    extract_from_web,
    occupancy,
)
from starplan.generators import g_infinity, k33_star_graph, random_even_star_graph
from starplan.planarity import is_valid_subdivision

from conftest import subdivided_k33


def test_templates_use_valid_labels():
    for case, pairs in TEMPLATES.items():
        alphabet = set("12345") if case.startswith("K5") else set("123456")
        for t1, t2 in pairs:
            assert set(t1) | set(t2) <= alphabet
            if case.startswith("K33"):
                for t in (t1, t2):
                    # K3,3 labels alternate between odd and even sides
                    assert all((int(a) + int(b)) % 2 for a, b in zip(t, t[1:])), (case, t)


def test_g_infinity_occupancy():
    v = star_is_planar(g_infinity())
    gm = Gamma(v.web, v.web_verdict.kuratowski)
    occ = occupancy(gm, "v")
    assert len(occ.internal) == 5
    assert case_label(gm, occ) == "K5.c"


@pytest.mark.parametrize("seed", range(40))
def test_centre_subdivision_even_graphs_end_in_case_f(seed):
    g, web, sub = subdivided_k33(seed, even=True)
    assert is_even(g) and is_valid_subdivision(web.graph, sub)
    w = extract_from_web(g, web, sub, require_obstruction=True)
    assert isinstance(w, VassilievObstruction)
    assert w.case.startswith("K33.f")
    assert witness_problems(g, w) == []
    assert is_simple(g, w.c1) and is_simple(g, w.c2)


def test_case_f_subcases_are_all_reached():
    seen = Counter()
    for seed in range(300):
        g, web, sub = subdivided_k33(seed, even=True)
        seen[extract_from_web(g, web, sub, require_obstruction=True).case] += 1
    assert seen["K33.f.2"] and seen["K33.f.1.2"]


@pytest.mark.parametrize("seed", range(40))
def test_centre_subdivision_odd_graphs(seed):
    g, web, sub = subdivided_k33(seed, even=False)
    w = extract_from_web(g, web, sub, require_obstruction=False)
    assert witness_problems(g, w) == []


def test_odd_graphs_reach_the_immersion():
    kinds = Counter()
    for seed in range(200):
        g, web, sub = subdivided_k33(seed, even=False)
        kinds[type(extract_from_web(g, web, sub, require_obstruction=False)).__name__] += 1
    assert kinds["EmbeddedK33"] and kinds["VassilievObstruction"]


def test_require_obstruction_on_k33_raises():
    g = k33_star_graph(3)
    v = star_is_planar(g)
    with pytest.raises(ExtractionError):
        extract_from_web(g, v.web, v.web_verdict.kuratowski, require_obstruction=True)
    w = extract_from_web(g, v.web, v.web_verdict.kuratowski, require_obstruction=False)
    assert isinstance(w, EmbeddedK33)


def test_occupancy_never_contains_k23():
    for seed in range(300):
        g = random_even_star_graph(1 + seed % 6, [2, 4, 6], seed)
        v = star_is_planar(g)
        if v.planar or v.web_verdict.kuratowski.kind != "K33":
            continue
        gm = Gamma(v.web, v.web_verdict.kuratowski)
        for web in gm.occupancy:
            assert not occupancy(gm, web).contains_k23


def test_extraction_is_deterministic():
    g = random_even_star_graph(5, [4, 6], 11)
    v = star_is_planar(g)
    if v.planar:
        pytest.skip("sample happens to be planar")
    a = extract_from_web(g, v.web, v.web_verdict.kuratowski, True)
    b = extract_from_web(g, star_is_planar(g).web, star_is_planar(g).web_verdict.kuratowski, True)
    assert a == b
