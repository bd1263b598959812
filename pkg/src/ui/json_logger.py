import csv
import io
import json
import os
from dataclasses import asdict
from typing import Any, Dict

from contracts import RESULT_ROW_KEYS, RESULT_ROW_OPTIONAL_KEYS
from models.report import (
    LedgerEntry,
    ReportDocument,
    ReportOnlyRow,
    ScenarioReport,
    SweepTable,
    row_from_dict,
)


def row_to_dict(row) -> Dict[str, Any]:
    """Result row as JSON; optional keys are dropped when unset."""
    data = asdict(row)
    out = {key: data[key] for key in RESULT_ROW_KEYS}
    for key in RESULT_ROW_OPTIONAL_KEYS:
        value = data.get(key)
        if value is not None and value != {}:
            out[key] = value
    return out


def document_to_dict(document: ReportDocument) -> Dict[str, Any]:
    return {
        "schema_version": document.schema_version,
        "engine_version": document.engine_version,
        "manifest_hash": document.manifest_hash,
        "status": document.status,
        "reports": [
            {
                "scenario": report.scenario,
                "context": list(report.context),
                "params": dict(report.params),
                "results": [row_to_dict(row) for row in report.results],
                "report_only": [asdict(row) for row in report.report_only],
            }
            for report in document.reports
        ],
        "ledger": [
            {
                "key": entry.key,
                "title": entry.title,
                "note": entry.note,
                "rows": [row_to_dict(row) for row in entry.rows],
            }
            for entry in document.ledger
        ],
    }


def emit_document(document: ReportDocument) -> str:
    return json.dumps(document_to_dict(document), indent=2)


def parse_document(text: str) -> ReportDocument:
    """
    Inverse of emit_document.

    Raises:
        ValueError: On invalid JSON or a missing document key.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"Report document is not valid JSON: {exc}") from exc
    try:
        reports = [
            ScenarioReport(
                scenario=item["scenario"],
                context=list(item.get("context", [])),
                params=dict(item["params"]),
                results=[row_from_dict(row) for row in item["results"]],
                report_only=[ReportOnlyRow(**row) for row in item.get("report_only", [])],
            )
            for item in data["reports"]
        ]
        ledger = [
            LedgerEntry(
                key=item["key"],
                title=item["title"],
                note=item.get("note", ""),
                rows=[row_from_dict(row) for row in item["rows"]],
            )
            for item in data.get("ledger", [])
        ]
        return ReportDocument(
            schema_version=data["schema_version"],
            engine_version=data["engine_version"],
            manifest_hash=data["manifest_hash"],
            status=data["status"],
            reports=reports,
            ledger=ledger,
        )
    except KeyError as exc:
        raise ValueError(f"Report document lacks key {exc}") from exc


def emit_table_json(sweep: SweepTable) -> str:
    return json.dumps(asdict(sweep), indent=2)


def emit_table_csv(sweep: SweepTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(sweep.header)
    writer.writerows(sweep.rows)
    return buffer.getvalue()


def write_output(text: str, path: str) -> str:
    """Writes a rendering to ``path``, creating parent directories. Returns the path."""
    directory = os.path.dirname(path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    return path
