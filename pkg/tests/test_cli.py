import io
import json
import math
from pathlib import Path

import pytest
from entanglement_persistence.cli.document import BarcodeDocument, encode_json, format_number
from entanglement_persistence.cli.main import build_parser, main
from entanglement_persistence.cli.svg import render_svg
from entanglement_persistence.errors import ParseError

K3 = '{"kind": "graph", "n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}'


def _run(*argv: str) -> tuple[int, str, str]:
    stdout, stderr = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


def test_barcode_json_to_stdout():
    code, out, err = _run("barcode", "--state", K3, "--q", "2")
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema_version"] == "1"
    assert doc["mode"] == "reduced"
    assert doc["relative_to"] is None
    dims = sorted(i["dim"] for i in doc["intervals"])
    assert dims == [-1, 0, 0, 1]
    cycle = next(i for i in doc["intervals"] if i["dim"] == 1)
    assert cycle["birth"] == pytest.approx(0.5)
    assert cycle["death"] == pytest.approx(1.5)
    assert cycle["death_simplex"] == ["A1", "A2", "A3"]
    assert doc["summaries"]["iec"] == pytest.approx(0.0, abs=1e-12)
    assert doc["summaries"]["n_tangle"] is None


def test_barcode_of_bell_pair():
    code, out, _ = _run("barcode", "--state", '{"kind": "ghz", "n": 2}')
    assert code == 0
    doc = json.loads(out)
    assert doc["summaries"]["iec"] == pytest.approx(1.0)
    assert doc["summaries"]["n_tangle"] == pytest.approx(1.0)
    zero = [i for i in doc["intervals"] if i["zero_length"]]
    assert [i["dim"] for i in zero] == [-1]


def test_min_length_drops_zero_length_bars():
    code, out, _ = _run("barcode", "--state", K3, "--min-length", "0.1")
    assert code == 0
    doc = json.loads(out)
    assert all(not i["zero_length"] for i in doc["intervals"])
    assert doc["summaries"]["iec"] == pytest.approx(0.0, abs=1e-12)


def test_absolute_mode_has_infinite_bar():
    code, out, _ = _run("barcode", "--state", K3, "--mode", "absolute")
    assert code == 0
    doc = json.loads(out)
    assert sum(1 for i in doc["intervals"] if i["death"] is None) == 1


def test_relative_mode_by_label():
    code, out, err = _run(
        "barcode", "--state", '{"kind": "ghz", "n": 3}', "--q", "1",
        "--mode", "relative", "--relative-to", "A1,A2",
    )
    assert code == 0, err
    doc = json.loads(out)
    assert doc["relative_to"] == ["A1", "A2"]
    assert doc["summaries"]["iec"] == pytest.approx(-math.log(2.0))


def test_relative_mode_requires_subset():
    code, out, err = _run("barcode", "--state", K3, "--mode", "relative")
    assert code == 3
    assert out == ""
    assert "InvalidSubset" in err


@pytest.mark.parametrize(
    "state",
    ['{"kind": "ghz"}', '{"kind": "nope", "n": 2}', "{broken", '{"kind": "ghz", "n": 2, "x": 1}'],
)
def test_parse_errors_exit_2(state):
    code, out, err = _run("barcode", "--state", state)
    assert code == 2
    assert out == ""
    assert "ParseError" in err


def test_unknown_relative_label_is_precondition_error():
    code, _, err = _run(
        "barcode", "--state", '{"kind": "ghz", "n": 3}', "--mode", "relative", "--relative-to", "Z",
    )
    assert code == 3
    assert "InvalidSubset" in err


def test_too_many_parties(tmp_path: Path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"pipeline": {"max_parties": 3}}), encoding="utf-8")
    code, _, err = _run("summary", "--state", '{"kind": "ghz", "n": 4}', "--config", str(config))
    assert code == 3
    assert "TooLarge" in err


def test_state_from_file(state_file: Path):
    code, out, _ = _run("barcode", "--state", f"@{state_file}")
    assert code == 0
    assert len(json.loads(out)["intervals"]) == 4


def test_json_and_svg_outputs(tmp_path: Path):
    json_path = tmp_path / "out" / "k3.json"
    svg_path = tmp_path / "out" / "k3.svg"
    code, out, _ = _run("barcode", "--state", K3, "--json", str(json_path), "--svg", str(svg_path))
    assert code == 0
    assert out == ""
    text = json_path.read_text(encoding="utf-8")
    assert BarcodeDocument.loads(text).dumps() == text
    svg = svg_path.read_text(encoding="utf-8")
    assert svg.startswith("<?xml")
    assert 'height="160"' in svg
    assert ">H1<" in svg


def test_svg_is_deterministic(tmp_path: Path):
    first, second = tmp_path / "a.svg", tmp_path / "b.svg"
    _run("barcode", "--state", K3, "--svg", str(first))
    _run("barcode", "--state", K3, "--svg", str(second))
    assert first.read_bytes() == second.read_bytes()


def test_svg_of_empty_barcode():
    doc = BarcodeDocument(q=2.0, mode="reduced", relative_to=None, rescale=1.0, epsilon_max=0.0)
    svg = render_svg(doc, width=400, row_height=10, margin=50)
    assert 'width="400" height="50"' in svg
    assert "<polygon" not in svg
    assert svg.rstrip().endswith("</svg>")


def test_document_round_trip_is_byte_identical():
    code, out, _ = _run("barcode", "--state", '{"kind": "random_mixed", "dims": [2, 3, 2], "seed": 5}')
    assert code == 0
    doc = BarcodeDocument.loads(out)
    assert doc.dumps() == out
    assert BarcodeDocument.from_dict(json.loads(out)).dumps() == out


def test_document_validation_paths():
    with pytest.raises(ParseError) as info:
        BarcodeDocument.loads('{"schema_version": "2"}')
    assert info.value.path == "$.schema_version"
    with pytest.raises(ParseError):
        BarcodeDocument.loads("[]")
    with pytest.raises(ParseError):
        BarcodeDocument.loads("not json")


def test_number_formatting():
    assert format_number(-0.0) == "0"
    assert format_number(0.1) == "0.10000000000000001"
    assert format_number(1.0) == "1"
    with pytest.raises(ValueError):
        format_number(math.inf)
    assert encode_json({"a": [1, 2.5, None, True]}) == '{\n  "a": [\n    1,\n    2.5,\n    null,\n    true\n  ]\n}'


def test_summary_table():
    code, out, _ = _run("summary", "--state", '{"kind": "ghz", "n": 4}')
    assert code == 0
    rows = dict(line.split(None, 1) for line in out.strip().splitlines())
    assert float(rows["iec"]) == pytest.approx(1.0)
    assert float(rows["n_tangle"]) == pytest.approx(1.0)
    assert rows["mode"] == "reduced"


def test_summary_for_qutrits_prints_na():
    code, out, _ = _run("summary", "--state", '{"kind": "random_pure", "dims": [3, 3], "seed": 1}')
    assert code == 0
    rows = dict(line.split(None, 1) for line in out.strip().splitlines())
    assert rows["n_tangle"] == "n/a"
    assert rows["minkowski_length"] == "n/a"


def test_verify_command():
    code, out, err = _run("verify", "thm3", "--trials", "3", "--seed", "7", "--sequential")
    assert code == 0, err
    assert "3/3 passed" in out
    assert "status       ok" in out


def test_verify_parallel_with_party_range():
    code, out, err = _run("verify", "thm1", "--trials", "2", "--parties", "3-4", "--workers", "2")
    assert code == 0, err
    assert "suite        thm1" in out


def test_verify_rejects_incompatible_parties():
    code, _, err = _run("verify", "thm2", "--trials", "1", "--parties", "3")
    assert code == 3
    assert "PartyCountMismatch" in err


def test_unknown_suite_is_usage_error():
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args(["verify", "thm9"])
    assert info.value.code == 2


def test_bad_config_file(tmp_path: Path):
    config = tmp_path / "config.json"
    config.write_text('{"numerics": {"eig_solver": "qr"}}', encoding="utf-8")
    code, _, err = _run("barcode", "--state", K3, "--config", str(config))
    assert code == 2
    assert "qr" in err


def test_jacobi_solver_from_config(tmp_path: Path):
    config = tmp_path / "config.json"
    config.write_text('{"numerics": {"eig_solver": "jacobi"}}', encoding="utf-8")
    code, out, _ = _run("barcode", "--state", '{"kind": "ghz", "n": 3}', "--q", "1.5", "--config", str(config))
    assert code == 0
    assert json.loads(out)["q"] == 1.5


def test_verify_failure_reports_trials(tmp_path: Path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"verify": {"tolerance": -1.0}}), encoding="utf-8")
    code, out, err = _run(
        "verify", "thm1", "--trials", "2", "--seed", "7", "--sequential", "--config", str(config)
    )
    assert code == 1
    assert "status       FAILED" in out
    assert "0/2 passed" in out
    assert "seed=7" in err
    assert "seed=8" in err
    assert "state:" in err
    assert '"kind": "random_' in err
    assert "details:" in err


def test_relative_to_requires_relative_mode():
    code, out, err = _run("barcode", "--state", K3, "--relative-to", "A1")
    assert code == 3
    assert out == ""
    assert "InvalidSubset" in err


def test_document_rejects_unknown_mode():
    code, out, _ = _run("barcode", "--state", K3)
    assert code == 0
    with pytest.raises(ParseError) as info:
        BarcodeDocument.loads(out.replace('"mode": "reduced"', '"mode": "cubical"'))
    assert info.value.path == "$.mode"
