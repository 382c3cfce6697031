import json

import pytest

from cartdec.cli import main
from cartdec.io import emit_decomposition, emit_group_file, group_from_dict
from cartdec.cartesian import natural_decomposition


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def results(text):
    return json.loads(text)["results"]


@pytest.fixture(scope="module")
def ex2_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "ex2.json"
    code = main(["build", "--example", "ex2", "--group", "catalog:a6_natural",
                 "--A", "catalog:a6_a5_classes.A", "--B", "catalog:a6_a5_classes.B", "-o", str(path)])
    assert code == 0
    return path


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "a6_pgl29" in results(out)["entries"]
    code, out, _ = run(capsys, "catalog", "show", "a5_natural")
    r = results(out)
    assert code == 0 and r["entry"]["degree"] == 5 and len(r["entry"]["generators"]) == 2
    assert r["verified"]["G"]["order"] == 60
    code, _, err = run(capsys, "catalog", "show", "nope")
    assert code == 1 and "no catalog entry" in err


def test_build_then_classify(capsys, ex2_file):
    code, out, _ = run(capsys, "classify", "--instance", str(ex2_file))
    assert code == 0 and results(out)["label"] == "2!~"
    code2, out2, _ = run(capsys, "classify", "--instance", str(ex2_file))
    assert out2 == out


def test_classify_at_other_base_point(capsys, ex2_file):
    code, out, _ = run(capsys, "classify", "--instance", str(ex2_file), "--base-point", "777")
    assert code == 0 and results(out)["label"] == "2!~"


def test_analyze(capsys, ex2_file, tmp_path):
    code, out, _ = run(capsys, "analyze-embedding", "--instance", str(ex2_file))
    assert code == 0 and results(out)["case"] == "c"
    path = tmp_path / "a.json"
    assert main(["build", "--example", "case-a", "-o", str(path)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "analyze-embedding", "--instance", str(path))
    assert results(out)["case"] == "a"


def test_enumerate_simple_diagonal(capsys, tmp_path):
    path = tmp_path / "sd.json"
    assert main(["build", "--example", "simple-diagonal", "-o", str(path)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "enumerate", "--instance", str(path))
    r = results(out)
    assert code == 0 and r["count"] == 0 and r["decompositions"] == []
    assert json.loads(out)["truncated"] is False


def test_enumerate_truncation_exit_code(capsys, ex2_file):
    code, out, _ = run(capsys, "enumerate", "--instance", str(ex2_file), "--budget", "2")
    assert code == 3 and json.loads(out)["truncated"] is True


def test_split_files(capsys, ex2_file, ex2_inst, tmp_path):
    data = json.loads(ex2_file.read_text())
    g, m, d = tmp_path / "g.json", tmp_path / "m.json", tmp_path / "d.json"
    g.write_text(emit_group_file(group_from_dict(data["group"])))
    m.write_text(emit_group_file(group_from_dict(data["plinth"])))
    d.write_text(emit_decomposition(natural_decomposition(ex2_inst.setting)))
    code, out, _ = run(capsys, "validate", "--group", str(g), "--plinth", str(m), "--decomposition", str(d))
    r = results(out)
    assert code == 0 and r["ok"] and r["decomposition"]["G_invariant"] and r["plinth"]["verified"]
    code, out, _ = run(capsys, "classify", "--group", str(g), "--plinth", str(m), "--decomposition", str(d))
    assert code == 0 and results(out)["label"] == "2!~"
    assert set(json.loads(out)["inputs"]) == {str(g), str(m), str(d)}


def test_ex3_from_group_files(capsys, z2cubed, tmp_path):
    from cartdec.io import group_file_from_group

    paths = []
    for name, G in zip("TABC", z2cubed):
        p = tmp_path / f"{name}.json"
        p.write_text(emit_group_file(group_file_from_group(G, name)))
        paths.append(str(p))
    out_path = tmp_path / "ex3.json"
    code = main(["build", "--example", "ex3", "--group", paths[0], "--A", paths[1], "--B", paths[2],
                 "--C", paths[3], "--trusted", "-o", str(out_path)])
    capsys.readouterr()
    assert code == 0
    code, out, _ = run(capsys, "classify", "--instance", str(out_path))
    assert code == 0 and results(out)["label"] == "3"
    code, _, err = run(capsys, "build", "--example", "ex3", "--group", paths[0], "--A", paths[1],
                       "--B", paths[2], "--C", paths[1])
    assert code == 1 and "strong multiple factorisation" in err


def test_validation_failure(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"name": "bad", "degree": 3, "points": "0-based", "generators": [[0, 0, 1]]}))
    code, _, err = run(capsys, "validate", "--group", str(p))
    assert code == 1 and "bijection" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys)[0] == 2
    assert run(capsys, "build", "--example", "nope")[0] == 2
    assert run(capsys, "classify", "--instance", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "classify")[0] == 2
    assert run(capsys, "build", "--example", "ex3")[0] == 2


def test_timing_flag(capsys):
    code, out, _ = run(capsys, "--timing", "catalog", "list")
    assert "timing_seconds" in json.loads(out)
    code, out, _ = run(capsys, "catalog", "list")
    assert "timing_seconds" not in json.loads(out)


def test_build_to_stdout(capsys):
    code, out, _ = run(capsys, "build", "--example", "case-a")
    assert code == 0 and json.loads(out)["format"] == "cartdec-instance/1"
