from dataclasses import fields

from contracts import (
    DOCUMENT_KEYS,
    DOCUMENT_STATUS_VALUES,
    LEDGER_ENTRY_KEYS,
    REPORT_KEYS,
    RESULT_ROW_KEYS,
    RESULT_ROW_OPTIONAL_KEYS,
    RESULT_STATUS_VALUES,
    SUITE_NAMES,
    TABLE_KEYS,
)
from models.report import LedgerEntry, ReportDocument, ResultRow, ScenarioReport, SweepTable
from models.result_states import VALID_STATUSES, canonicalize_status, expected_status, is_valid_status, row_passes
from workflows.runner import SUITES


def _field_names(cls):
    return tuple(f.name for f in fields(cls))


def test_document_shape_matches_dataclasses():
    assert _field_names(ReportDocument) == DOCUMENT_KEYS
    assert _field_names(ScenarioReport) == REPORT_KEYS
    assert _field_names(LedgerEntry) == LEDGER_ENTRY_KEYS
    assert _field_names(SweepTable) == TABLE_KEYS
    assert _field_names(ResultRow) == RESULT_ROW_KEYS + RESULT_ROW_OPTIONAL_KEYS


def test_status_values_are_canonical():
    assert set(RESULT_STATUS_VALUES) == VALID_STATUSES
    assert DOCUMENT_STATUS_VALUES == ("pass", "fail")


def test_suite_names_match_runner():
    assert SUITE_NAMES == SUITES


def test_status_aliases():
    assert canonicalize_status(" MATCH ") == "match"
    assert canonicalize_status("typo") == "paper_typo_suspected"
    assert is_valid_status("ok")
    assert not is_valid_status("unknown")


def test_expected_status_by_kind():
    assert expected_status("match") == "match"
    assert expected_status("typo") == "paper_typo_suspected"
    assert expected_status("counterexample") == "mismatch"
    assert row_passes("counterexample", "mismatch")
    assert not row_passes("match", "paper_typo_suspected")
