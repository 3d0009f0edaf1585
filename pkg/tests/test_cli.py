"""CLI behavior: formats, exit codes, pipes and determinism."""

import io
import json
import subprocess
import sys
from pathlib import Path

from borcherdskit.cli import main
from borcherdskit.io import parse_expansion, parse_principal_part, parse_series

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run_cli(capsys, argv, stdin_text=None, monkeypatch=None):
    if stdin_text is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin_text))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_criterion_text_output(capsys):
    code, out, _ = run_cli(capsys, ["criterion", str(FIXTURES / "gram_ex1.json")])
    assert code == 0
    assert out == "8 | gcd: true\n"


def test_criterion_false_case(capsys, tmp_path):
    path = tmp_path / "gram.json"
    path.write_text(json.dumps({"gram": [[2]]}))
    code, out, _ = run_cli(capsys, ["criterion", str(path)])
    assert code == 0
    assert out == "8 | gcd: false\n"


def test_criterion_json_format(capsys):
    code, out, _ = run_cli(capsys, ["criterion", str(FIXTURES / "gram_ex2.json"),
                                    "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc == {"gcd_inner_products": 8, "divisible_by_8": True}


def test_validate_pp_passes_on_fixtures(capsys):
    for name, weight in (("example1.json", "9/2"), ("example2.json", "7/2")):
        code, out, _ = run_cli(capsys, ["validate-pp", str(FIXTURES / name),
                                        "--weight", weight])
        assert code == 0
        assert f"all checks pass, weight {weight}" in out


def test_validate_pp_rejects_corrupted_fixture(capsys, tmp_path):
    doc = json.loads((FIXTURES / "example2.json").read_text())
    for term in doc["terms"]:
        if term["gamma"] == ["1/4", "0"]:
            term["exp"] = "-1/8"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, ["validate-pp", str(bad)])
    assert code == 1
    assert "FAILED" in out
    assert "1/4" in out


def test_phi_emits_parseable_series(capsys):
    code, out, _ = run_cli(capsys, ["phi", "--n", "1", "--prec", "3"])
    assert code == 0
    series = parse_series(json.loads(out))
    assert series.weight == 0
    assert series.prec == 3


def test_phi_pipe_into_congruence(capsys, monkeypatch):
    code, series_json, _ = run_cli(capsys, ["phi", "--n", "1", "--prec", "6"])
    assert code == 0
    code, out, _ = run_cli(capsys, ["congruence"], stdin_text=series_json,
                           monkeypatch=monkeypatch)
    assert code == 0
    assert "N=8, sum=3, residue 0" in out


def test_shell_pipe_end_to_end():
    result = subprocess.run(
        f"{sys.executable} -m borcherdskit phi --n 1 --prec 6 2>/dev/null | "
        f"{sys.executable} -m borcherdskit congruence",
        shell=True, capture_output=True, text=True, cwd=str(FIXTURES.parent))
    assert result.returncode == 0
    assert "N=8, sum=3, residue 0" in result.stdout


def test_cli_output_is_deterministic(capsys):
    _, first, _ = run_cli(capsys, ["phi", "--n", "2", "--prec", "3"])
    _, second, _ = run_cli(capsys, ["phi", "--n", "2", "--prec", "3"])
    assert first == second


def test_decompose_and_principal_part_pipeline(capsys, monkeypatch):
    _, series_json, _ = run_cli(capsys, ["phi", "--n", "1", "--prec", "4"])
    code, vv_out, _ = run_cli(capsys, ["decompose"], stdin_text=series_json,
                              monkeypatch=monkeypatch)
    assert code == 0
    assert len(json.loads(vv_out)["components"]) == 8
    code, pp_out, _ = run_cli(capsys, ["principal-part"], stdin_text=series_json,
                              monkeypatch=monkeypatch)
    assert code == 0
    pp = parse_principal_part(json.loads(pp_out))
    assert pp.constant_term == 1


def test_weyl_command(capsys, monkeypatch):
    _, series_json, _ = run_cli(capsys, ["phi", "--n", "1", "--prec", "1"])
    code, out, _ = run_cli(capsys, ["weyl", "--w0", "1", "--format", "text"],
                           stdin_text=series_json, monkeypatch=monkeypatch)
    assert code == 0
    assert out == "A = 1/8, B = (1/16), C = 1/8\n"


def test_lift_command_writes_file(capsys, monkeypatch, tmp_path):
    _, series_json, _ = run_cli(capsys, ["phi", "--n", "1", "--prec", "4"])
    out_path = tmp_path / "expansion.json"
    code, out, _ = run_cli(capsys, ["lift", "--prec", "4", "--w0", "1",
                                    "--out", str(out_path)],
                           stdin_text=series_json, monkeypatch=monkeypatch)
    assert code == 0
    assert "weight 1/2" in out
    expansion = parse_expansion(json.loads(out_path.read_text()))
    assert expansion.holomorphic == "unknown"


def test_missing_file_is_io_error(capsys):
    code, _, err = run_cli(capsys, ["criterion", "no-such-file.json"])
    assert code == 2
    assert "error (criterion)" in err


def test_invalid_json_is_io_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run_cli(capsys, ["criterion", str(bad)])
    assert code == 2


def test_domain_error_exit_code(capsys, tmp_path):
    odd = tmp_path / "odd.json"
    odd.write_text(json.dumps({"gram": [[1]]}))
    code, _, err = run_cli(capsys, ["criterion", str(odd)])
    assert code == 1
    assert "NotEven" in err


def test_insufficient_precision_is_domain_error(capsys, monkeypatch):
    _, series_json, _ = run_cli(capsys, ["phi", "--n", "1", "--prec", "2"])
    code, _, err = run_cli(capsys, ["lift", "--prec", "8"],
                           stdin_text=series_json, monkeypatch=monkeypatch)
    assert code == 1
    assert "InsufficientInputPrecision" in err


def test_bad_prec_flag_is_schema_error(capsys):
    code, _, err = run_cli(capsys, ["phi", "--n", "1", "--prec", "zero"])
    assert code == 2
    code, _, err = run_cli(capsys, ["phi", "--n", "1", "--prec", "-3"])
    assert code == 2


def test_bad_n_budget_weight_flags(capsys):
    assert run_cli(capsys, ["phi", "--n", "0", "--prec", "2"])[0] == 2
    assert run_cli(capsys, ["phi", "--n", "1", "--prec", "2", "--budget", "0"])[0] == 2
    code, _, _ = run_cli(capsys, ["validate-pp", str(FIXTURES / "example1.json"),
                                  "--weight", "nine"])
    assert code == 2


def test_json_summary_goes_to_stderr(capsys):
    code, out, err = run_cli(capsys, ["phi", "--n", "1", "--prec", "2"])
    assert code == 0
    json.loads(out)  # stdout is pure JSON
    assert "phi_1" in err
