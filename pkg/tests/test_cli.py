"""End-to-end runs of the command line front end through main()."""

import json

import pytest

from clusterfan.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_roots_text(capsys):
    code, out, _ = run(capsys, "roots", "--type", "A3")
    assert code == 0
    assert "type A3" in out
    assert "positive roots 6" in out


def test_roots_json_all_roots(capsys):
    code, out, _ = run(capsys, "roots", "--type", "G2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["roots"]) == 12
    assert len(data["positive_roots"]) == 6
    assert data["h"] == 6


def test_roots_matrix_file_json_rows(capsys, tmp_path):
    path = tmp_path / "cartan.json"
    path.write_text("[[2, -1], [-1, 2]]")
    code, out, _ = run(capsys, "roots", "--matrix-file", str(path))
    assert code == 0
    assert "type A2" in out


def test_roots_matrix_file_type_text(capsys, tmp_path):
    path = tmp_path / "cartan.txt"
    path.write_text("type:B2")
    code, out, _ = run(capsys, "roots", "--matrix-file", str(path))
    assert code == 0
    assert "type B2" in out
    assert "positive roots 4" in out


def test_roots_requires_source(capsys):
    with pytest.raises(SystemExit) as info:
        main(["roots"])
    assert info.value.code == 2


def test_roots_rejects_unknown_format(capsys):
    with pytest.raises(SystemExit) as info:
        main(["roots", "--type", "A2", "--format", "dot"])
    assert info.value.code == 2


def test_group_text(capsys):
    code, out, _ = run(capsys, "group", "--type", "A3")
    assert code == 0
    assert "order 24" in out
    assert "longest_length 6" in out
    assert "reduced_words_of_w0 16" in out


def test_group_json(capsys):
    code, out, _ = run(capsys, "group", "--type", "B2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 8
    assert data["reduced_words_of_w0"] == 2


def test_group_dot(capsys):
    code, out, _ = run(capsys, "group", "--type", "A2", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")


def test_mutate_text(capsys):
    code, out, _ = run(capsys, "mutate", "--type", "A2")
    assert code == 0
    assert "seeds 5" in out
    assert "closed True" in out
    assert "detected A2" in out


def test_mutate_json(capsys):
    code, out, _ = run(capsys, "mutate", "--type", "A2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["closed"] is True
    assert len(data["seeds"]) == 5


def test_mutate_dot(capsys):
    code, out, _ = run(capsys, "mutate", "--type", "A2", "--format", "dot")
    assert code == 0
    assert out.startswith("graph")


def test_mutate_matrix_file_uses_raw_exchange_matrix(capsys, tmp_path):
    path = tmp_path / "b.json"
    path.write_text("[[0, 1], [-1, 0], [1, 0]]")
    code, out, _ = run(capsys, "mutate", "--matrix-file", str(path))
    assert code == 0
    assert "seeds 5" in out


def test_mutate_budget_exit_code(capsys):
    code, out, err = run(capsys, "mutate", "--type", "A3", "--budget-seeds", "2")
    assert code == 3
    assert "budget exceeded" in err


def test_assoc_text(capsys):
    code, out, _ = run(capsys, "assoc", "--type", "B3")
    assert code == 0
    assert "facets 20" in out
    assert "h_vector 1 9 9 1" in out


def test_assoc_json(capsys):
    code, out, _ = run(capsys, "assoc", "--type", "A2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["vertices"]) == 5


def test_assoc_off(capsys):
    code, out, _ = run(capsys, "assoc", "--type", "A3", "--format", "off")
    assert code == 0
    assert out.startswith("OFF\n14 9 21\n")


def test_assoc_off_requires_rank3(capsys):
    with pytest.raises(SystemExit) as info:
        main(["assoc", "--type", "A2", "--format", "off"])
    assert info.value.code == 2


def test_catalan_text(capsys):
    code, out, _ = run(capsys, "catalan", "--type", "G2")
    assert code == 0
    assert "ok" in out
    assert "MISMATCH" not in out


def test_catalan_csv(capsys):
    code, out, _ = run(capsys, "catalan", "--type", "B2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "type,interpretation,k,observed,expected,match"
    assert any(line.startswith("B2,torus_orbits,total,6,6,True") for line in lines)


def test_catalan_json(capsys):
    code, out, _ = run(capsys, "catalan", "--type", "A2", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert all(row["match"] for row in rows)


def test_wiring_text(capsys):
    code, out, _ = run(capsys, "wiring")
    assert code == 0
    assert "isotopy_classes 34" in out
    assert "cluster_variable_count 16" in out
    assert "cluster_count 50" in out
    assert "detected_type D4" in out


def test_wiring_json(capsys):
    code, out, _ = run(capsys, "wiring", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["isotopy_classes"] == 34
    assert len(data["hidden_variables"]) == 2


def test_wiring_dot(capsys):
    code, out, _ = run(capsys, "wiring", "--format", "dot")
    assert code == 0
    assert out.startswith("graph")
    assert out.count("--") == 60  # edges of the 34-class move graph


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "report.txt"
    code, out, _ = run(capsys, "roots", "--type", "A2", "--out", str(target))
    assert code == 0
    assert out == ""
    assert "type A2" in target.read_text()


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--quick")
    assert code == 0
    assert "criterion 01" in out
    assert "13/13 criteria passed" in out


def test_verify_rng_seed_changes_nothing_structural(capsys):
    code1, out1, _ = run(capsys, "verify", "--quick", "--rng-seed", "7")
    code2, out2, _ = run(capsys, "verify", "--quick", "--rng-seed", "7")
    assert code1 == code2 == 0
    assert out1 == out2
