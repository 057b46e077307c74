import json
import subprocess
import sys

import pytest

from dgkoszul.cli import main
from dgkoszul.graded import ChainComplex, DegreeWindow
from dgkoszul.models import save_model, sphere_model
from dgkoszul.serialize import complex_out, dumps


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def record(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "record")
    assert code == 0, err
    return json.loads(out)


def test_cotor_from_model_file(tmp_path, capsys):
    p = tmp_path / "s3.json"
    save_model(sphere_model(3), p)
    rec = record(capsys, "cotor", "--coalgebra", str(p))
    assert rec["kind"] == "dims"
    assert {int(k): v for k, v in rec["dims"].items()} == {k: int(k % 2 == 0) for k in range(9)}


def test_table_output_is_deterministic(capsys):
    a = run(capsys, "cobar", "--model", "S2xS2", "--max-degree", "5")
    b = run(capsys, "cobar", "--model", "S2xS2", "--max-degree", "5")
    assert a == b and a[0] == 0
    lines = a[1].splitlines()
    assert lines[1].split() == ["degree", "dim", "status"]
    assert [int(l.split()[1]) for l in lines[2:8]] == [1, 2, 3, 4, 5, 6]


def test_ext_reads_cohomologically(capsys):
    rec = record(capsys, "ext", "--model", "CP2", "--max-degree", "6")
    assert {int(k): v for k, v in rec["cohomological"].items()} == {k: int(k in (0, 2, 4)) for k in range(7)}


def test_bar_and_coext(capsys):
    bar = record(capsys, "bar", "--model", "sphere", "3", "--max-degree", "5")
    assert {int(k): v for k, v in bar["dims"].items()} == {k: int(k in (0, 3)) for k in range(6)}
    co = record(capsys, "coext", "--model", "S2", "--max-degree", "3")
    assert set(co["dims"].values()) == {1}


def test_spectral_sequence_record(capsys):
    rec = record(capsys, "ss", "hyperext", "--model", "S3", "--max-degree", "4")
    assert rec["kind"] == "spectral-sequence"


def test_model_command(capsys):
    code, out, _ = run(capsys, "model", "cp", "2", "--max-degree", "5")
    assert code == 0 and "Betti:      0:1 1:0 2:1 3:0 4:1 5:0" in out


def test_homology_of_complex_record(tmp_path, capsys):
    c = ChainComplex({0: ["a", "b"], 1: ["e"]}, {"e": {"a": 1, "b": -1}}, DegreeWindow(0, 1), name="seg")
    p = tmp_path / "c.json"
    p.write_text(dumps(complex_out(c)))
    rec = record(capsys, "homology", "--input", str(p), "--max-degree", "1")
    assert rec["dims"] == {"0": 1, "1": 0}


def test_output_file(tmp_path, capsys):
    p = tmp_path / "out.txt"
    code, out, _ = run(capsys, "cobar", "--model", "S3", "--max-degree", "2", "--output", str(p))
    assert code == 0 and not out
    assert "degree" in p.read_text()


def test_domain_error_exit_one(capsys):
    code, _, err = run(capsys, "cobar", "--model", "sphere", "1")
    assert code == 1 and err.startswith("model-error:")


def test_missing_file_exit_one(tmp_path, capsys):
    code, _, err = run(capsys, "cotor", "--coalgebra", str(tmp_path / "missing.json"))
    assert code == 1 and err.startswith("error:")


def test_bad_model_file_exit_one(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{")
    code, _, err = run(capsys, "cotor", "--coalgebra", str(p))
    assert code == 1 and err.startswith("parse-error:")


@pytest.mark.parametrize("argv", [["bogus"], ["cobar"], ["cotor", "--model", "S2", "--left", "nope"],
                                  ["homology"], ["ss", "sideways"]])
def test_usage_errors_exit_two(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "dgkoszul", "cotor", "--model", "S3", "--max-degree", "2"],
                       capture_output=True, text=True, check=True)
    assert "complete" in r.stdout


def test_model_record_feeds_back_as_input(tmp_path, capsys):
    rec = record(capsys, "model", "sphere", "3", "--max-degree", "6")
    p = tmp_path / "s3.model"
    p.write_text(json.dumps(rec))
    back = record(capsys, "cotor", "--coalgebra", str(p), "--left", "triv", "--right", "triv", "--max-degree", "9")
    assert {int(k): v for k, v in back["dims"].items()} == {k: int(k % 2 == 0) for k in range(10)}


def test_homology_of_algebra_record(tmp_path, capsys):
    from dgkoszul.barcobar import cobar
    from dgkoszul.coalgebra import sphere_homology_coalgebra
    from dgkoszul.serialize import algebra_out
    p = tmp_path / "omega.json"
    p.write_text(dumps(algebra_out(cobar(sphere_homology_coalgebra(3), 6))))
    rec = record(capsys, "homology", "--input", str(p), "--max-degree", "6")
    assert rec["dims"] == {str(k): int(k % 2 == 0) for k in range(6)} | {"6": 1}


def test_thread_variable(monkeypatch, capsys):
    monkeypatch.setenv("DGKOSZUL_THREADS", "4")
    assert run(capsys, "cobar", "--model", "S3", "--max-degree", "2")[0] == 0
    monkeypatch.setenv("DGKOSZUL_THREADS", "zero")
    with pytest.raises(SystemExit) as e:
        main(["cobar", "--model", "S3"])
    assert e.value.code == 2


def test_coalgebra_record_as_source(tmp_path, capsys):
    from dgkoszul.coalgebra import product_sphere_homology_coalgebra
    from dgkoszul.serialize import coalgebra_out
    p = tmp_path / "h.json"
    p.write_text(dumps(coalgebra_out(product_sphere_homology_coalgebra(2, 2))))
    rec = record(capsys, "cotor", "--coalgebra", str(p), "--max-degree", "4")
    assert rec["dims"] == {str(k): k + 1 for k in range(5)}
    # Coext(C, Q) = Ext over ΩC of (Q, ΩC): one class in the top degree of a Poincaré duality space
    co = record(capsys, "coext", "--coalgebra", str(p), "--left", "coalgebra", "--max-degree", "2")
    assert co["dims"] == {str(k): int(k == -4) for k in range(-4, 3)}
    with pytest.raises(SystemExit) as e:
        main(["bar", "--coalgebra", str(p)])
    assert e.value.code == 2
