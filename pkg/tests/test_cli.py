import json
import os

import pytest

from sweedler.cli import main

PROOFS = os.path.join(os.path.dirname(__file__), "..", "proofs")


def proof(name):
    return os.path.join(PROOFS, name + ".sexp")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_valid(capsys):
    code, out, _ = run(capsys, "check", proof("church-2"))
    assert code == 0
    assert out.strip() == "valid: !(A -o A) |- (A -o A)"


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", proof("bint-001"), "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["valid"] is True
    assert data["sequent"].endswith("(!(A -o A) -o (!(A -o A) -o (A -o A)))")


def test_check_invalid_proof(capsys, tmp_path):
    bad = tmp_path / "bad.sexp"
    # promotion over a context that is not all-banged
    bad.write_text("(prom (axiom (pvar A 2)))")
    code, out, _ = run(capsys, "check", str(bad))
    assert code == 1
    assert "invalid at" in out and "prom" in out


def test_check_missing_file(capsys):
    code, _, err = run(capsys, "check", "/definitely/not/here.sexp")
    assert code == 2
    assert "error" in err


def test_check_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.sexp"
    bad.write_text("(axiom (pvar A")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2


def test_eval_church_two_shear(capsys):
    code, out, _ = run(capsys, "eval", proof("church-2"),
                       "--input", '[[{"point": [[1,1],[0,1]]}]]')
    assert code == 0
    assert out.strip() == "[[1, 2], [0, 1]]"


def test_eval_extra_inputs_apply_to_result(capsys):
    # int-2 has an empty context; the single input is applied to the result
    code, out, _ = run(capsys, "eval", proof("int-2"),
                       "--input", '[[{"point": [[1,1],[0,1]]}]]')
    assert code == 0
    assert out.strip() == "[[1, 2], [0, 1]]"


def test_eval_named_bint_input(capsys):
    code, out, _ = run(capsys, "eval", proof("bint-001"),
                       "--input",
                       '[[{"point": [[1,1],[0,1]]}], [{"point": [[2,0],[0,1]]}]]')
    assert code == 0
    # delta gamma gamma for gamma the shear and delta = diag(2, 1)
    assert out.strip() == "[[2, 4], [0, 1]]"


def test_eval_missing_inputs(capsys):
    code, _, err = run(capsys, "eval", proof("church-2"))
    assert code == 1
    assert "context needs 1 values" in err


def test_eval_space_mismatch_names_expected_space(capsys):
    code, _, err = run(capsys, "eval", proof("church-2"),
                       "--input", '[[{"point": [[1,1,0],[0,1,0],[0,0,1]]}]]')
    assert code == 1
    assert "(2 -o 2)" in err


def test_derive_church(capsys):
    code, out, _ = run(capsys, "derive", proof("church-2"),
                       "--point", "[[1,1],[0,1]]", "--tangent", "[[0,0],[1,0]]")
    assert code == 0
    # v a + a v for the shear a and lower nilpotent v
    assert out.strip() == "[[1, 0], [2, 1]]"


def test_derive_requires_point_and_tangent(capsys):
    code, _, err = run(capsys, "derive", proof("church-2"))
    assert code == 1
    assert "--point" in err


def test_derive_on_closed_proof_rejected(capsys):
    code, _, err = run(capsys, "derive", proof("int-2"),
                       "--point", "[[1,0],[0,1]]", "--tangent", "[[1,0],[0,1]]")
    assert code == 1
    assert "!A |- B" in err


def test_derive_repeat_with_named_values(capsys):
    code, out, _ = run(capsys, "derive", proof("repeat"),
                       "--point", '{"bint": "0"}', "--tangent", '{"bint": "1"}',
                       "--input",
                       '[[{"point": [[1,1],[0,1]]}], [{"point": [[2,0],[0,1]]}]]')
    assert code == 0
    # [01] + [10] at group-likes: d g + g d
    assert out.strip() == "[[4, 3], [0, 2]]"


def test_eval_json_format(capsys):
    code, out, _ = run(capsys, "eval", proof("church-2"), "--format", "json",
                       "--input", '[[{"point": [[1,1],[0,1]]}]]')
    assert code == 0
    data = json.loads(out)
    assert data["space"] == "(2 -o 2)"
    assert data["value"] == [["1", "2"], ["0", "1"]]


def test_eval_map_probe_table_is_deterministic(capsys):
    args = ("eval", proof("int-2"), "--input", "[]", "--seed", "9",
            "--max-tangents", "1")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.startswith("map (!(2 -o 2) -o (2 -o 2))")


def test_env_seed_overrides_flag(capsys, monkeypatch):
    argv = ("eval", proof("int-2"), "--input", "[]", "--seed", "9")
    _, base, _ = run(capsys, *argv)
    monkeypatch.setenv("SWEEDLER_SEED", "10")
    _, overridden, _ = run(capsys, *argv)
    monkeypatch.setenv("SWEEDLER_SEED", "9")
    _, same, _ = run(capsys, *argv)
    assert overridden != base
    assert same == base


def test_axioms_pass(capsys):
    code, out, _ = run(capsys, "axioms", "--trials", "5", "--group", "bang",
                       "--group", "poly")
    assert code == 0
    assert "0 failed" in out
    assert "PASS bang/deriving-promotion (5 trials)" in out


def test_axioms_json(capsys):
    code, out, _ = run(capsys, "axioms", "--trials", "5", "--group", "poly",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["failed"] == 0
    assert all(l["passed"] for l in data["laws"])


def test_axioms_mutation_fails_with_witness(capsys):
    code, out, _ = run(capsys, "axioms", "--trials", "40", "--group", "bang",
                       "--mutate")
    assert code == 1
    assert "FAIL bang/deriving-dereliction" in out
    assert "FAIL bang/deriving-promotion" in out
    assert "lhs" in out and "rhs" in out


def test_examples_all_verify(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    assert out.strip().endswith("all examples verified")
    assert "[ok]" in out and "MISMATCH" not in out
