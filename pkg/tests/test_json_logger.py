import pytest

from models.report import LedgerEntry, ReportDocument, ReportOnlyRow, ResultRow, ScenarioReport, SweepTable
from ui.json_logger import emit_document, emit_table_csv, parse_document, row_to_dict, write_output


def _document():
    typo = ResultRow(
        name="prop49_proof",
        paper_ref="Prop 4.9 proof",
        paper="2*d*(d - 4)*(3*d - 4)",
        computed="6*d**3 - 20*d**2 + 16*d",
        status="paper_typo_suspected",
        corrected="2*d*(d - 2)*(3*d - 4)",
        kind="typo",
        certificate={"paper": {"verdict": "unequal", "witness": {"d": "-1"}}},
    )
    plain = ResultRow(name="tangency_multiplicity", paper_ref="Lemma 3.4", paper="3*(d - 2)",
                      computed="3*d - 6", status="match")
    report = ScenarioReport(
        scenario="tangency",
        context=["d"],
        params={},
        results=[plain, typo],
        report_only=[ReportOnlyRow("salmon", "Section 4", "2", "classical constant, not derived")],
    )
    return ReportDocument(
        schema_version="1.0",
        engine_version="1.0.0",
        manifest_hash="0" * 64,
        status="pass",
        reports=[report],
        ledger=[LedgerEntry("prop49_proof", "Prop 4.9: degree in the proof", "", [typo])],
    )


def test_optional_keys_are_dropped():
    doc = row_to_dict(_document().reports[0].results[0])
    assert "corrected" not in doc
    assert "certificate" not in doc
    assert doc["kind"] == "match"


def test_parse_inverts_emit():
    document = _document()
    assert parse_document(emit_document(document)) == document


def test_parse_rejects_bad_input():
    with pytest.raises(ValueError, match="not valid JSON"):
        parse_document("{")
    with pytest.raises(ValueError, match="lacks key"):
        parse_document('{"reports": []}')


def test_status_aliases_are_canonicalized_on_parse():
    text = emit_document(_document()).replace('"status": "match"', '"status": "OK"')
    assert parse_document(text).reports[0].results[0].status == "match"


def test_table_csv():
    sweep = SweepTable("tangency", ["d", "tangency_X2_order"], [["4", "24"], ["5", "60"]])
    assert emit_table_csv(sweep) == "d,tangency_X2_order\n4,24\n5,60\n"


def test_write_output_creates_directories(tmp_path):
    target = tmp_path / "nested" / "out.csv"
    assert write_output("a,b\n", str(target)) == str(target)
    assert target.read_text(encoding="utf-8") == "a,b\n"
