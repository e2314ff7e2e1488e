"""Command line behavior: exit codes, JSON records, determinism."""

import json

from totref.cli import main

Z9 = '{"kind": "finite", "p": 3, "k": 2}'
Z8 = '{"kind": "finite", "p": 2, "k": 3}'
F5 = ('{"kind": "graded", "p": 5, "vars": ["x", "y", "z"], '
      '"relations": ["x*y"]}')


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_pair_verify_exact_non_regular(capsys):
    code, out, _ = run(capsys, "pair", "verify", "--ring", Z9,
                       "--x", "3", "--y", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["verdict"] == "pass"
    assert payload["details"]["regular"] == "false"


def test_pair_verify_regular_graded(capsys):
    code, out, _ = run(capsys, "pair", "verify", "--ring", F5,
                       "--x", "x", "--y", "y", "--degree", "6",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["details"]["regular"] == "true"
    conds = payload["details"]["regularity_conditions"]
    assert list(conds.values()) == [True, True, True]


def test_pair_verify_non_exact_exits_one(capsys):
    code, out, _ = run(capsys, "pair", "verify", "--ring", Z8,
                       "--x", "2", "--y", "2", "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload["verdict"] == "fail"
    assert payload["details"]["first_failing_certificate"]


def test_unit_input_exits_three(capsys):
    code, _, err = run(capsys, "pair", "verify", "--ring", Z9,
                       "--x", "1", "--y", "3")
    assert code == 3
    record = json.loads(err.strip().splitlines()[-1])
    assert record["error"] == "UnitInput"
    assert record["exit_code"] == 3


def test_precondition_gate_on_verify_verbs(capsys):
    code, _, err = run(capsys, "hom", "verify-end", "--ring", Z9,
                       "--x", "3", "--y", "3", "--a", "3")
    assert code == 3
    record = json.loads(err.strip().splitlines()[-1])
    assert record["error"] == "PreconditionFailed"


def test_parse_error_exits_two(capsys):
    code, _, err = run(capsys, "pair", "verify", "--ring", Z9,
                       "--x", "3", "--y", "bogus")
    assert code == 2
    record = json.loads(err.strip().splitlines()[-1])
    assert record["exit_code"] == 2


def test_missing_ring_file_exits_two(capsys):
    code, _, err = run(capsys, "pair", "verify", "--ring",
                       "/no/such/file.json", "--x", "3", "--y", "3")
    assert code == 2


def test_usage_error_exits_two(capsys):
    code, _, _ = run(capsys, "pair", "verify", "--ring", Z9, "--x", "3")
    assert code == 2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_json_error_record_on_json_format(capsys):
    code, out, _ = run(capsys, "hom", "verify-end", "--ring", Z9,
                       "--x", "3", "--y", "3", "--a", "3",
                       "--format", "json")
    assert code == 3
    record = json.loads(out)
    assert record["kind"] == "error"


def test_family_build_payload(capsys):
    code, out, _ = run(capsys, "family", "build", "--ring", F5,
                       "--x", "x", "--y", "y", "--a", "z",
                       "--degree", "6", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "family-build"
    labels = [m["label"] for m in payload["modules"]]
    assert labels == ["G(z)", "H(z)"]
    assert payload["modules"][0]["hilbert_function"][:3] == [2, 4, 6]


def test_family_verify_complex_text(capsys):
    code, out, _ = run(capsys, "family", "verify-complex", "--ring", Z9,
                       "--x", "3", "--y", "3", "--a", "2")
    assert code == 0
    assert "periodic-complex: ok" in out


def test_hom_compute_and_oracle_agree(capsys):
    code, out, _ = run(capsys, "hom", "compute", "--ring", Z9,
                       "--x", "3", "--y", "3", "--source", "gamma:0",
                       "--target", "gamma:0", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "hom-presentation"
    assert payload["module"]["size"] == 81
    code, out, _ = run(capsys, "oracle", "hom", "--ring", Z9,
                       "--x", "3", "--y", "3", "--source", "gamma:0",
                       "--target", "gamma:0", "--format", "json")
    assert code == 0
    assert json.loads(out)["map_count"] == 81


def test_hom_compute_rejects_bad_flavor(capsys):
    code, _, err = run(capsys, "hom", "compute", "--ring", Z9,
                       "--x", "3", "--y", "3", "--source", "delta:0",
                       "--target", "gamma:0")
    assert code == 2


def test_probe_flag_runs_despite_failed_hypotheses(capsys):
    code, out, _ = run(capsys, "hom", "verify-hg", "--ring", Z9,
                       "--x", "3", "--y", "3", "--a", "2", "--b", "3",
                       "--probe", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "pass"
    assert payload["details"]["hypotheses"]["satisfied"] is False


def test_verify_ext_verb(capsys):
    code, out, _ = run(capsys, "hom", "verify-ext", "--ring", Z9,
                       "--x", "3", "--y", "3", "--a", "3", "--b", "6",
                       "--i-max", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_output_file_and_determinism(tmp_path, capsys):
    args = ["family", "run-main", "--ring", F5, "--x", "x", "--y", "y",
            "--b", "z", "--n-max", "2", "--degree", "5",
            "--format", "json"]
    first = tmp_path / "one.json"
    second = tmp_path / "two.json"
    assert main(args + ["--output", str(first)]) == 0
    assert main(args + ["--output", str(second)]) == 0
    capsys.readouterr()
    blob1 = first.read_bytes()
    blob2 = second.read_bytes()
    assert blob1 == blob2
    payload = json.loads(blob1)
    assert payload["kind"] == "family-report"
    assert payload["certificates"]["verdict"] == "pass"


def test_run_main_text_format(capsys):
    code, out, _ = run(capsys, "family", "run-main", "--ring", F5,
                       "--x", "x", "--y", "y", "--b", "z",
                       "--n-max", "2", "--degree", "5")
    assert code == 0
    assert out.startswith("family run: pass")


def test_inline_vs_file_ring_descriptors(tmp_path, capsys):
    path = tmp_path / "ring.json"
    path.write_text(Z9, encoding="utf-8")
    code_inline, out_inline, _ = run(capsys, "pair", "verify", "--ring",
                                     Z9, "--x", "3", "--y", "3",
                                     "--format", "json")
    code_file, out_file, _ = run(capsys, "pair", "verify", "--ring",
                                 str(path), "--x", "3", "--y", "3",
                                 "--format", "json")
    assert code_inline == code_file == 0
    assert out_inline == out_file
