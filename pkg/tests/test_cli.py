import io
import json
import subprocess
import sys

import pytest

from d21alpha.cli import EXIT_EXCLUDED, EXIT_FAILED, EXIT_OK, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    text = out.getvalue()
    return code, (json.loads(text) if text.lstrip().startswith("{") else text)


def test_verify_jacobi_symbolic():
    code, doc = run("verify-jacobi", "--alpha", "symbolic", "--seed", "1")
    assert code == EXIT_OK and doc["pass"] and doc["schema_version"] == 1
    assert doc["checks"][0]["triples"] == 17 ** 3
    assert doc["seed"] == 1


def test_verify_jacobi_sigma_fails():
    code, doc = run("verify-jacobi", "--sigma", "1,1,1")
    assert code == EXIT_FAILED and not doc["pass"]
    assert doc["checks"][0]["failures"]


def test_gram_degenerate():
    code, doc = run("gram", "--alpha", "2", "--lambda", "alpha", "--degree", "3", "--det")
    assert code == EXIT_OK
    check = doc["checks"][0]
    assert check["degenerate"] is True and check["determinant"] == "0"


def test_gram_symbolic_matrix_strings():
    code, doc = run("gram", "--degree", "1")
    assert code == EXIT_OK
    assert doc["checks"][0]["matrix"][0][0] == "-a"


def test_usage_errors():
    assert run("gk-growth", "--alpha", "1", "--lambda", "one")[0] == EXIT_USAGE
    assert run("gram", "--alpha", "x/y", "--degree", "1")[0] == EXIT_USAGE
    assert run("sb", "--input", "not json")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["gram"], out=io.StringIO())
    assert exc.value.code == EXIT_USAGE


def test_excluded_parameter():
    code, doc = run("sb", "--alpha", "2", "--input", "[]")
    assert code == EXIT_EXCLUDED and "excluded" in doc["error"]


def test_sb_round_trip_through_cli():
    code, doc = run("sb", "--input", '[{"d1": 1, "d2": 0, "coeff": "1"}]')
    assert code == EXIT_OK
    out = doc["checks"][0]["output"]
    assert out["tag"] == {"pow2_const": "-1", "pow2_alpha": "-1", "pow2_alpha_inv": "0"}
    code, back = run("sb", "--direction", "forward", "--input", json.dumps(out["poly"]))
    assert code == EXIT_OK
    assert back["checks"][0]["output"] == [{"d1": 1, "d2": 0, "e3": 0, "e4": 0, "coeff": "1"}]


def test_sb_from_file(tmp_path):
    f = tmp_path / "p.json"
    f.write_text('[{"d1": 0, "d2": 0, "e3": 1, "coeff": "2"}]')
    code, doc = run("sb", "--lambda", "one", "--alpha", "-3", "--input", str(f))
    assert code == EXIT_OK and doc["parameters"]["lambda"] == "one"


def test_text_format():
    code, text = run("recurrences", "--max-k", "4", "--format", "text", "--seed", "5")
    assert code == EXIT_OK
    assert "seed=5" in text and "PASS recurrences" in text


@pytest.mark.parametrize("argv", [
    ["verify-jordan"], ["verify-tkk", "--alpha", "-1"], ["verify-rep", "--lambda", "zero-mode"],
    ["verify-skew", "--max-degree", "3"], ["kernel-check", "--max-degree", "4"],
    ["gk-growth", "--alpha", "-3", "--max-k", "5"], ["decompose", "--degree", "2"],
    ["decompose", "--alpha", "-1", "--degree", "2"],
])
def test_subcommands_pass(argv):
    code, doc = run(*argv)
    assert code == EXIT_OK and doc["pass"], doc


def test_report_all_deterministic():
    a = run("report-all", "--seed", "11", "--max-degree", "3", "--max-k", "5")
    b = run("report-all", "--seed", "11", "--max-degree", "3", "--max-k", "5")
    assert a[0] == EXIT_OK and a == b
    names = {c["name"] for c in a[1]["checks"]}
    assert {"super-jacobi", "intertwining", "summation-lemma", "random-intertwining"} <= names


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "d21alpha", "verify-jordan", "--format", "text"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and "PASS jordan-identity" in proc.stdout
