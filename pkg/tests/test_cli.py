import json
import subprocess
import sys

import pytest
from hypothesis import given, settings

from starplan.cli import main, web_dot
from starplan.criterion import classify_nonplanar, star_is_planar
from starplan.documents import (
    DocumentError,
    certificate_from_json,
    certificate_problems,
    certificate_to_json,
    dumps,
    graph_from_json,
    graph_to_json,
    parse_graph,
)
from starplan.generators import from_gauss_word, g_alpha, g_infinity, k33_star_graph

from conftest import star_graphs


def write_graph(tmp_path, g, name="g.json"):
    p = tmp_path / name
    p.write_text(dumps(graph_to_json(g)))
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@settings(max_examples=50, deadline=None)
@given(star_graphs())
def test_graph_round_trip(g):
    h = parse_graph(dumps(graph_to_json(g)))
    assert h == g


@settings(max_examples=40, deadline=None)
@given(star_graphs())
def test_certificate_round_trip(g):
    v = star_is_planar(g)
    cert = v.embedding if v.planar else classify_nonplanar(g, v)
    doc = json.loads(dumps(certificate_to_json(g, cert)))
    back = certificate_from_json(g, doc)
    assert back == cert
    assert certificate_problems(g, doc) == []


def test_edge_ids_default():
    g = graph_from_json({"vertices": [{"id": "v", "rotation": ["1", "2"]}], "edges": [["1", "2"]]})
    assert list(g.edges) == ["e0"]


@pytest.mark.parametrize("doc,field", [
    ({"edges": []}, "vertices"),
    ({"vertices": [{"id": "v"}], "edges": []}, "vertices[0].rotation"),
    ({"vertices": [{"id": "v", "rotation": ["1", "2"]}], "edges": [["1"]]}, "edges[0]"),
    ({"vertices": [{"id": "v", "rotation": ["1", "2"]}], "edges": [["1", "3"]]}, "graph"),
])
def test_malformed_documents_name_the_field(doc, field):
    with pytest.raises(DocumentError, match=field.replace("[", r"\[").replace("]", r"\]")):
        graph_from_json(doc)


def test_check_g_infinity(tmp_path, capsys):
    path = write_graph(tmp_path, g_infinity())
    cert = tmp_path / "c.json"
    code, out, _ = run(["check", path, "--certificate", str(cert)], capsys)
    assert code == 1 and out.startswith("nonplanar")
    assert json.loads(cert.read_text())["witness"] == "vassiliev"
    code, out, _ = run(["verify", path, str(cert)], capsys)
    assert code == 0 and out.strip() == "valid"


def test_check_g_alpha(tmp_path, capsys):
    path = write_graph(tmp_path, g_alpha())
    cert = tmp_path / "c.json"
    code, out, _ = run(["check", path, "--certificate", str(cert)], capsys)
    assert code == 0 and out.startswith("planar")
    assert json.loads(cert.read_text())["verdict"] == "planar"
    assert run(["verify", path, str(cert)], capsys)[0] == 0


def test_check_truncated_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"vertices": [')
    code, _, err = run(["check", str(p)], capsys)
    assert code == 2 and "invalid JSON" in err


def test_check_missing_file(capsys):
    assert run(["check", "/nonexistent/graph.json"], capsys)[0] == 2


def test_verify_rejects_relabelled_pair(tmp_path, capsys):
    g = g_alpha()
    path = write_graph(tmp_path, g)
    doc = {
        "verdict": "nonplanar", "witness": "vassiliev", "case": "",
        "cycles": [[["A", False]], [["B", False]]],
        "crossing": {"vertex": "v", "chords": [
            {"positions": [1, 2], "owner": 0, "visit": 0},
            {"positions": [0, 3], "owner": 1, "visit": 0}]},
    }
    cert = tmp_path / "c.json"
    cert.write_text(json.dumps(doc))
    code, out, _ = run(["verify", path, str(cert)], capsys)
    assert code == 1 and "invalid" in out


def test_verify_unknown_edge(tmp_path, capsys):
    g = g_infinity()
    path = write_graph(tmp_path, g)
    doc = certificate_to_json(g, classify_nonplanar(g))
    doc["cycles"][0][0][0] = "Z"
    cert = tmp_path / "c.json"
    cert.write_text(json.dumps(doc))
    code, _, err = run(["verify", path, str(cert)], capsys)
    assert code == 2 and "'Z'" in err


def test_verify_k33_certificate(tmp_path, capsys):
    g = k33_star_graph(4)
    path = write_graph(tmp_path, g)
    cert = tmp_path / "c.json"
    assert run(["check", path, "--certificate", str(cert)], capsys)[0] == 1
    assert json.loads(cert.read_text())["witness"] == "k33"
    assert run(["verify", path, str(cert)], capsys)[0] == 0


def test_verify_tampered_planar_certificate(tmp_path, capsys):
    g = g_alpha()
    path = write_graph(tmp_path, g)
    doc = certificate_to_json(g, star_is_planar(g).embedding)
    doc["rotation"]["v"] = ["1", "3", "2", "4"]
    cert = tmp_path / "c.json"
    cert.write_text(json.dumps(doc))
    assert run(["verify", path, str(cert)], capsys)[0] == 1


def test_obstruct_and_embed(tmp_path, capsys):
    planar = write_graph(tmp_path, g_alpha(), "a.json")
    nonplanar = write_graph(tmp_path, g_infinity(), "i.json")
    code, out, _ = run(["obstruct", planar], capsys)
    assert code == 1 and out.strip() == "graph is planar"
    code, out, _ = run(["obstruct", nonplanar], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "nonplanar"
    code, out, _ = run(["embed", planar], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "planar"
    assert run(["embed", nonplanar], capsys)[0] == 1


def test_web_dot_of_g_infinity():
    dot = web_dot(g_infinity())
    lines = dot.splitlines()
    assert sum("[shape=" in l for l in lines) == 5
    assert sum(" -- " in l for l in lines) == 10
    assert sum("dashed" in l for l in lines) == 4


def test_gauss_then_check(tmp_path, capsys):
    code, out, _ = run(["gauss", "abab"], capsys)
    assert code == 0
    p = tmp_path / "w.json"
    p.write_text(out)
    assert run(["check", str(p)], capsys)[0] == 1
    assert run(["gauss", "aba"], capsys)[0] == 2


def test_gauss_pipe_into_check():
    gauss = subprocess.run([sys.executable, "-m", "starplan.cli", "gauss", "abab"],
                           capture_output=True, text=True, check=True)
    check = subprocess.run([sys.executable, "-m", "starplan.cli", "check", "-"],
                           input=gauss.stdout, capture_output=True, text=True)
    assert check.returncode == 1


def test_gen_is_reproducible(capsys):
    a = run(["gen", "--seed", "7"], capsys)[1]
    b = run(["gen", "--seed", "7"], capsys)[1]
    assert a == b and parse_graph(a)
    c = run(["gen", "--seed", "7", "--planar", "--budget", "6"], capsys)[1]
    assert star_is_planar(parse_graph(c)).planar


def test_usage_errors(capsys):
    assert run([], capsys)[0] == 2
    assert run(["gen", "--degrees", "x"], capsys)[0] == 2
    assert run(["crossval", "--trials", "0"], capsys)[0] == 2


def test_crossval_small(capsys, tmp_path):
    rows = tmp_path / "rows.csv"
    code, out, _ = run(["crossval", "--trials", "20", "--seed", "3", "--csv", str(rows)], capsys)
    assert code == 0
    assert "disagreements,0" in out
    assert len(rows.read_text().splitlines()) == 21


def test_crossval_planar_only(capsys):
    code, out, _ = run(["crossval", "--trials", "1", "--planar"], capsys)
    assert code == 0 and "nonplanar,0" in out


def test_crossval_detects_injected_fault(capsys):
    code, out, _ = run(["crossval", "--trials", "60", "--seed", "42", "--inject-fault"], capsys)
    assert code == 1
