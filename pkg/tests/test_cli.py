import json

import pytest

from app.cli import parse_orbits, run
from config.settings import settings
from services import certificate

A2_MODULE = {"kind": "diagonal", "factors": [2, 2], "degrees": [[1, 0], [0, 1]], "characters": [[1, 0], [1, 1]]}


def _json(capsys) -> dict | list:
    return json.loads(capsys.readouterr().out)


def test_srs(capsys):
    assert run(["srs", "A3"]) == 0
    result = _json(capsys)
    assert result["nullity"] == 1
    assert result["valid"] and result["minimal"]


def test_srs_search(capsys):
    assert run(["srs", "D4", "--search"]) == 0
    assert _json(capsys)["exhaustive_nullities"] == [2]


def test_unsupported_diagram_is_an_error(capsys):
    assert run(["srs", "B3"]) == 1
    assert "UnsupportedError" in capsys.readouterr().err


def test_fold_by_label(capsys):
    assert run(["fold", "--cartan", "A5", "--orbits", "{1,5}{2,4}{3}"]) == 0
    result = _json(capsys)
    assert result["folded"]["type"] == "C3"
    assert result["unfolded_type"] == "A5"


def test_fold_from_file(tmp_path, capsys):
    path = tmp_path / "e6.json"
    run(["fold", "--cartan", "E6", "--orbits", "1,6/3,5/2/4"])
    matrix = _json(capsys)["folded"]["matrix"]
    assert len(matrix) == 4
    path.write_text(json.dumps([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]))
    assert run(["fold", "--cartan", str(path), "--orbits", "1,3/2"]) == 0
    assert _json(capsys)["folded"]["type"] == "C2"


def test_parse_orbits():
    assert parse_orbits("{1,5}{2,4}{3}") == [[0, 4], [1, 3], [2]]
    assert parse_orbits("1,5/2,4/3") == [[0, 4], [1, 3], [2]]


def test_construct_then_verify(tmp_path, capsys):
    bundle = tmp_path / "bundle.json"
    assert run(["construct", "--group", "D4", "--type", "unramified:A2", "--output", str(bundle)]) == 0
    assert _json(capsys)["folded_type"] == "A2"
    assert run(["verify", str(bundle)]) == 0
    certificate = _json(capsys)
    assert certificate["passed"]
    assert all(check["passed"] for check in certificate["checks"])


def test_verify_rejects_garbage(tmp_path, capsys):
    bundle = tmp_path / "bundle.json"
    bundle.write_text("{}")
    assert run(["verify", str(bundle)]) == 2
    assert run(["verify", str(tmp_path / "missing.json")]) == 2


def test_oracle(tmp_path, capsys):
    module = tmp_path / "module.json"
    module.write_text(json.dumps(A2_MODULE))
    assert run(["oracle", str(module), "--dmax", "3"]) == 0
    result = _json(capsys)
    assert result["coefficients"] == [1, 2, 2, 2]
    assert result["degrees"] == [0, 1, 2, 3]


def test_examples(capsys):
    assert run(["examples"]) == 0
    assert len(_json(capsys)) == 13
    assert run(["examples", "--id", "A2-D4-diag"]) == 0
    assert _json(capsys)["finer_type"] == "A2xA2"


def test_examples_check(capsys):
    assert run(["examples", "--id", "A2-D4-diag", "--check", "--degree", "3"]) == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["observed"] == [1, 4, 8, 12]
    assert "A2-D4-diag: PASS" in captured.err


def test_unknown_example(capsys):
    assert run(["examples", "--id", "bogus"]) == 2
    assert "error:" in capsys.readouterr().err


def test_table(capsys):
    assert run(["table", "--rank", "4", "--center", "2"]) == 0
    assert _json(capsys) == [
        {"type": "D4", "dimension_exponent": 24},
        {"type": "C4", "dimension_exponent": 28},
        {"type": "F4", "dimension_exponent": 36},
    ]
    assert run(["table"]) == 0
    assert len(_json(capsys)) == 5


@pytest.mark.parametrize("argv", [["bogus"], [], ["--threads", "0", "table"], ["oracle", "x.json"]])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_threads_option_leaves_settings_alone(tmp_path, capsys):
    configured = settings.oracle_threads
    module = tmp_path / "module.json"
    module.write_text(json.dumps(A2_MODULE))
    assert run(["--threads", str(configured + 2), "oracle", str(module), "--dmax", "3"]) == 0
    assert _json(capsys)["coefficients"] == [1, 2, 2, 2]
    assert run(["--threads", str(configured + 2), "examples", "--id", "A2-D4-diag", "--check", "--degree", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["passed"]
    assert settings.oracle_threads == configured


def test_threads_reach_the_oracle(tmp_path, capsys, monkeypatch):
    seen = []
    prefix = certificate.hilbert_prefix

    def recording(module, d_max, threads=None):
        seen.append(threads)
        return prefix(module, d_max, threads)

    monkeypatch.setattr(certificate, "hilbert_prefix", recording)
    bundle = tmp_path / "bundle.json"
    assert run(["construct", "--group", "D4", "--type", "unramified:A2", "--output", str(bundle)]) == 0
    assert run(["--threads", "3", "verify", str(bundle), "--oracle-degree", "2"]) == 0
    assert run(["--threads", "2", "examples", "--id", "A2-D4-diag", "--check", "--degree", "2"]) == 0
    capsys.readouterr()
    assert seen == [3, 2]
