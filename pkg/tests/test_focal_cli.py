import csv
import io
import json

import pytest

import focal_cli
from conftest import MANIFEST_PATH
from contracts import DOCUMENT_KEYS, EXIT_ERROR, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED


def _failing_manifest(tmp_path):
    with open(MANIFEST_PATH, "r", encoding="utf-8") as f:
        text = f.read()
    text = text.replace('paper_ref: "Example 1.14"\n    paper: "20"', 'paper_ref: "Example 1.14"\n    paper: "21"')
    path = tmp_path / "expectations.yaml"
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestVerify:
    def test_json_report_to_file(self, tmp_path):
        out = tmp_path / "reports" / "jets.json"
        code = focal_cli.main(["verify", "--suite", "jets", "--format", "json", "--out", str(out)])
        assert code == EXIT_OK
        document = json.loads(out.read_text(encoding="utf-8"))
        assert tuple(document) == DOCUMENT_KEYS
        assert document["status"] == "pass"
        assert document["reports"][0]["scenario"] == "jets"

    def test_text_report_to_file(self, tmp_path):
        out = tmp_path / "jets.txt"
        assert focal_cli.main(["verify", "--suite", "jets", "--out", str(out)]) == EXIT_OK
        assert "jets_kummer_ruled" in out.read_text(encoding="utf-8")

    def test_failed_verification(self, tmp_path):
        manifest = _failing_manifest(tmp_path)
        out = tmp_path / "report.json"
        code = focal_cli.main([
            "--manifest", manifest, "verify", "--suite", "jets", "--format", "json", "--out", str(out),
        ])
        assert code == EXIT_VERIFY_FAILED
        assert json.loads(out.read_text(encoding="utf-8"))["status"] == "fail"

    def test_unknown_suite_is_a_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            focal_cli.main(["verify", "--suite", "cubics"])
        assert exc.value.code == EXIT_USAGE

    def test_missing_command_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            focal_cli.main([])
        assert exc.value.code == EXIT_USAGE
        assert "required" in capsys.readouterr().err

    def test_missing_manifest(self, tmp_path, capsys):
        code = focal_cli.main(["--manifest", str(tmp_path / "absent.yaml"), "verify", "--suite", "jets"])
        assert code == EXIT_ERROR
        assert "focal CLI error" in capsys.readouterr().err


class TestRun:
    def test_bindings(self, capsys):
        code = focal_cli.main(["run", "bisecants", "d=4", "p=1", "--format", "json"])
        assert code == EXIT_OK
        document = json.loads(capsys.readouterr().out)
        report = document["reports"][0]
        assert report["params"] == {"d": "4/1", "p": "1/1"}
        order = next(row for row in report["results"] if row["name"] == "bisecant_order")
        assert order["computed"] == "2"

    def test_malformed_binding(self):
        with pytest.raises(SystemExit) as exc:
            focal_cli.main(["run", "bisecants", "d"])
        assert exc.value.code == EXIT_USAGE

    def test_foreign_binding(self, capsys):
        assert focal_cli.main(["run", "bisecants", "x=1"]) == EXIT_ERROR
        assert "focal CLI error" in capsys.readouterr().err


class TestTable:
    def test_csv_sweep(self, capsys):
        assert focal_cli.main(["table", "tangency", "d=4..5"]) == EXIT_OK
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert rows[0][0] == "d"
        order = rows[0].index("tangency_X2_order")
        assert [row[order] for row in rows[1:]] == ["24", "60"]

    def test_json_examples(self, tmp_path):
        out = tmp_path / "bisecants.json"
        assert focal_cli.main(["table", "bisecants", "--format", "json", "--out", str(out)]) == EXIT_OK
        result = json.loads(out.read_text(encoding="utf-8"))
        assert result["scenario"] == "bisecants"
        assert len(result["rows"]) == 2

    def test_reversed_sweep(self):
        with pytest.raises(SystemExit) as exc:
            focal_cli.main(["table", "tangency", "d=6..4"])
        assert exc.value.code == EXIT_USAGE
