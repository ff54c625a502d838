"""File formats and the command-line front end."""

import json
from types import SimpleNamespace

import numpy as np
import pytest

from signednu import (
    InputError,
    graph_from_raw,
    graph_to_dot,
    graph_to_raw,
    graph_to_records,
    graph_to_text,
    load_graph,
    parse_any,
    parse_graph_records,
    parse_graph_text,
)
from signednu.cli import main
from signednu.families import cycle_graph, double_prism, k4_odd, path_graph
from signednu.graphio import matrix_to_text, parse_matrix_text


def pairs(g):
    return sorted((min(e.u, e.v), max(e.u, e.v), e.odd) for e in g.edges)


def test_text_round_trip():
    g = k4_odd()
    back = parse_graph_text(graph_to_text(g))
    assert back.vertices == g.vertices
    assert pairs(back) == pairs(g)
    text = graph_to_text(g)
    assert text.splitlines()[0] == "signed-graph v1 4"
    assert all(ln.endswith(("+", "-")) for ln in text.splitlines()[1:])


def test_records_and_raw_round_trips():
    g = double_prism()
    assert pairs(parse_graph_records(graph_to_records(g))) == pairs(g)
    assert graph_from_raw(graph_to_raw(g)) == g  # raw keeps vertex and edge ids


def test_parse_any_sniffs_format():
    g = cycle_graph(3, 1)
    assert pairs(parse_any(graph_to_text(g))) == pairs(g)
    assert pairs(parse_any(json.dumps(graph_to_records(g)))) == pairs(g)
    with pytest.raises(InputError):
        parse_any(json.dumps(graph_to_records(g)), fmt="text")
    with pytest.raises(InputError):
        parse_any("signed-graph v1 not-a-number\n")


@pytest.mark.parametrize("text", [
    "",
    "signed-graph v2 3\n1 2 +\n",
    "signed-graph v1 -1\n",
    "signed-graph v1 2\n1 3 +\n",
    "signed-graph v1 2\n1 2 *\n",
    "signed-graph v1 2\n1 1 +\n",
    "signed-graph v1 2\n1 2\n",
])
def test_text_parser_rejections(text):
    with pytest.raises(InputError):
        parse_graph_text(text)


def test_load_graph_and_dot(tmp_path):
    g = cycle_graph(4, 1)
    path = tmp_path / "c4.txt"
    path.write_text(graph_to_text(g), encoding="utf-8")
    assert pairs(load_graph(str(path))) == pairs(g)
    dot = graph_to_dot(g)
    assert dot.startswith("graph G {")
    assert dot.count(" -- ") == 4
    assert dot.count("[style=bold]") == 1  # exactly the odd edge


def test_matrix_text_round_trip():
    a = np.array([[1.0, -0.25], [-0.25, 2.0]])
    b = parse_matrix_text(matrix_to_text(a))
    assert np.array_equal(a, b)
    with pytest.raises(InputError):
        matrix_to_text(np.zeros((2, 3)))
    with pytest.raises(InputError):
        parse_matrix_text("signed-matrix v1 2\n1.0 0.0\n")
    with pytest.raises(InputError):
        parse_matrix_text("signed-matrix v1 1\nna\n")


@pytest.fixture
def tri(tmp_path):
    path = tmp_path / "tri.txt"
    path.write_text("signed-graph v1 3\n1 2 -\n2 3 +\n1 3 +\n",
                    encoding="utf-8")
    return str(path)


def test_cli_classify_and_witness(tri, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    assert main(["classify", tri, "--out", str(cert)]) == 0
    first = cert.read_bytes()
    assert main(["classify", tri, "--out", str(cert)]) == 0
    assert cert.read_bytes() == first  # byte-stable output
    obj = json.loads(first)
    assert obj["answer"] == "nu_eq_2"
    assert main(["witness", tri, "--certificate", str(cert)]) == 0
    obj["answer"] = "nu_ge_3"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj), encoding="utf-8")
    assert main(["witness", tri, "--certificate", str(bad)]) == 1
    capsys.readouterr()


def test_cli_minor_and_trace_witnesses(tmp_path, capsys):
    k4 = tmp_path / "k4.txt"
    k4.write_text(graph_to_text(k4_odd()), encoding="utf-8")
    found = tmp_path / "minor.json"
    assert main(["minor", str(k4), "--target", "k4o",
                 "--out", str(found)]) == 0
    obj = json.loads(found.read_text(encoding="utf-8"))
    assert obj["found"]
    wit = tmp_path / "wit.json"
    wit.write_text(json.dumps(obj["witness"]), encoding="utf-8")
    assert main(["witness", str(k4), "--certificate", str(wit),
                 "--kind", "minor"]) == 0
    trace = tmp_path / "trace.json"
    assert main(["reduce", str(tmp_path / "tri.txt"), "--out", str(trace)]
                ) == 1  # missing file maps to an input error
    tri = tmp_path / "tri.txt"
    tri.write_text("signed-graph v1 3\n1 2 -\n2 3 +\n1 3 +\n",
                   encoding="utf-8")
    assert main(["reduce", str(tri), "--out", str(trace)]) == 0
    assert main(["witness", str(tri), "--certificate", str(trace),
                 "--kind", "trace"]) == 0
    capsys.readouterr()


def test_cli_exit_codes(tri, tmp_path, capsys, monkeypatch):
    bip = tmp_path / "path.txt"
    bip.write_text(graph_to_text(path_graph(3)), encoding="utf-8")
    assert main(["reduce", str(bip)]) == 1  # bipartite input rejected
    big = tmp_path / "big.txt"
    lines = ["signed-graph v1 11"]
    lines += [f"{u} {u + 1} +" for u in range(1, 11)] + ["1 11 -"]
    lines += [f"{u} {u + 1} -" for u in range(1, 11)]
    big.write_text("\n".join(lines) + "\n", encoding="utf-8")
    assert main(["reduce", str(big)]) == 2  # over the move-search budget
    import signednu.pipeline as pipeline
    monkeypatch.setattr(pipeline, "decide_nu",
                        lambda g: SimpleNamespace(answer="nu_ge_3"))
    assert main(["fuzz", "--count", "3", "--seed", "1"]) == 3
    capsys.readouterr()


def test_cli_selftest_and_fuzz_smoke(capsys):
    assert main(["selftest", "--only", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS criterion-1 ")
    assert main(["fuzz", "--count", "20", "--seed", "5"]) == 0
    assert "20 trials agree" in capsys.readouterr().out
