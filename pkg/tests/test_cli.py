import json

from lpatrace.cli import main

from conftest import GRAPH_TEXTS


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_one_loop(tmp_path, capsys):
    path = _write(tmp_path, "loop.graph", GRAPH_TEXTS["one_loop"])
    code, out, _ = _run(capsys, "analyze", path)
    assert code == 0
    report = json.loads(out)
    result = report["result"]
    assert result["no_exit"] and result["tame"]
    assert result["faithful_trace_exists"]["Q,identity"]
    assert result["vertex_trace_space_dim"] == 1
    assert result["cycles"] == ["e"]
    assert report["inputs"]["graph"]["sha256"]


def test_analyze_rose_and_line(tmp_path, capsys):
    rose = _write(tmp_path, "rose.graph", GRAPH_TEXTS["rose2"])
    code, out, _ = _run(capsys, "analyze", rose)
    result = json.loads(out)["result"]
    assert code == 0
    assert not result["no_exit"]
    assert result["vertex_trace_space_dim"] == 0

    line = _write(tmp_path, "line.graph", GRAPH_TEXTS["line2"])
    code, out, _ = _run(capsys, "analyze", line)
    result = json.loads(out)["result"]
    assert result["tame"] and result["sinks"] == ["b"]


def test_reports_are_byte_deterministic(tmp_path, capsys):
    path = _write(tmp_path, "mixed.graph", GRAPH_TEXTS["mixed"])
    _, out1, _ = _run(capsys, "analyze", path)
    _, out2, _ = _run(capsys, "analyze", path)
    assert out1 == out2
    _, out3, _ = _run(capsys, "decompose", path)
    _, out4, _ = _run(capsys, "decompose", path)
    assert out3 == out4


def test_eval_one_loop_example(tmp_path, capsys):
    graph = _write(tmp_path, "loop.graph", GRAPH_TEXTS["one_loop"])
    spec = _write(
        tmp_path, "loop.spec",
        "field Qi\ninvolution conjugation\nvertex v 1\ncycle e 1i 1i\n",
    )
    code, out, _ = _run(
        capsys, "eval", graph, "v + e + e' + v", "--spec", spec,
        "--mode", "leavitt",
    )
    assert code == 0
    assert json.loads(out)["result"]["value"] == "2+2i"


def test_eval_commutator_is_zero(tmp_path, capsys):
    graph = _write(tmp_path, "line.graph", GRAPH_TEXTS["line2"])
    spec = _write(tmp_path, "line.spec", "field Q\nvertex a 1\nvertex b 1\n")
    code, out, _ = _run(
        capsys, "eval", graph, "f.b' - b.f'", "--spec", spec,
    )
    assert code == 0
    assert json.loads(out)["result"]["value"] == "0"


def test_eval_faithful_line_spec(tmp_path, capsys):
    graph = _write(tmp_path, "line.graph", GRAPH_TEXTS["line2"])
    spec = _write(tmp_path, "line.spec", "field Q\nvertex a 1\nvertex b 1\n")
    code, out, _ = _run(capsys, "eval", graph, "a", "--spec", spec)
    assert code == 0 and json.loads(out)["result"]["value"] == "1"


def test_eval_rejects_invalid_spec_with_vertex_named(tmp_path, capsys):
    graph = _write(tmp_path, "rose.graph", GRAPH_TEXTS["rose2"])
    spec = _write(tmp_path, "rose.spec", "field Q\nvertex v 1\n")
    code, _, err = _run(capsys, "eval", graph, "v", "--spec", spec)
    assert code == 3
    assert "'v'" in err


def test_decompose_reports(tmp_path, capsys):
    line = _write(tmp_path, "line.graph", GRAPH_TEXTS["line2"])
    code, out, _ = _run(capsys, "decompose", line)
    assert code == 0
    result = json.loads(out)["result"]
    assert result["sink_blocks"][0]["size"] == 2

    loop = _write(tmp_path, "loop.graph", GRAPH_TEXTS["one_loop"])
    code, out, _ = _run(capsys, "decompose", loop)
    result = json.loads(out)["result"]
    assert result["cycle_blocks"][0]["size"] == 1

    rose = _write(tmp_path, "rose.graph", GRAPH_TEXTS["rose2"])
    code, _, err = _run(capsys, "decompose", rose)
    assert code == 3 and "exit" in err


def test_classes_command(tmp_path, capsys):
    loop = _write(tmp_path, "loop.graph", GRAPH_TEXTS["one_loop"])
    code, out, _ = _run(capsys, "classes", loop, "--max-len", "2")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["vertex_classes"] == ["v"]
    assert result["cycle_classes"] == ["e", "e/e"]
    assert result["cycle_star_classes"] == ["e", "e/e"]

    line = _write(tmp_path, "line.graph", GRAPH_TEXTS["line3"])
    code, out, _ = _run(capsys, "classes", line, "--max-len", "3")
    result = json.loads(out)["result"]
    assert result["cycle_classes"] == []

    two = _write(tmp_path, "two.graph", GRAPH_TEXTS["two_cycle"])
    code, out, _ = _run(capsys, "classes", two, "--max-len", "2")
    result = json.loads(out)["result"]
    assert result["cycle_classes"] == ["e1/e2"]  # one rotation class


def test_sg_commands(tmp_path, capsys):
    rows = ["0 0 0", "0 1 2", "0 2 1"]
    text = "n 3 zero 0\n" + "\n".join(rows) + "\nlabel 1 e\nlabel 2 g\n"
    cayley = _write(tmp_path, "c2.cayley", text)

    code, out, _ = _run(capsys, "sg", cayley, "classes")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["classes"] == [["0"], ["e"], ["g"]]
    assert result["nonzero_class_count"] == 2

    code, out, _ = _run(capsys, "sg", cayley, "minimal")
    result = json.loads(out)["result"]
    assert result["is_minimal"] is True
    assert result["delta"]["0"] is None

    code, out, _ = _run(capsys, "sg", cayley, "normalized")
    result = json.loads(out)["result"]
    assert result["admits_normalized_minimal"] is False


def test_input_errors_exit_2(tmp_path, capsys):
    bad = _write(tmp_path, "bad.graph", "e f a b\n")
    code, _, err = _run(capsys, "analyze", bad)
    assert code == 2 and "line 1" in err
    code, _, err = _run(capsys, "analyze", str(tmp_path / "missing.graph"))
    assert code == 2
    graph = _write(tmp_path, "line.graph", GRAPH_TEXTS["line2"])
    spec = _write(tmp_path, "line.spec", "field Q\nvertex a 1\nvertex b 1\n")
    code, _, err = _run(capsys, "eval", graph, "a +", "--spec", spec)
    assert code == 2
