from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional

from models.result_states import STATUS_TYPO, canonicalize_status


@dataclass
class Finding:
    """
    A value a scenario computed, keyed to its manifest expectation.

    Attributes:
        key: Manifest entry id (also the result row name).
        computed: ParamPoly or GradedClass.
        parser: Optional callable turning expectation text into the same kind
            of value (e.g. a catalog entry's ``parse`` for named classes).
        bindings: Example bindings applied before comparison; None for
            symbolic rows.
        note: Free text carried to the report row.
    """
    key: str
    computed: Any
    parser: Any = None
    bindings: Optional[Dict[str, Any]] = None
    note: Optional[str] = None

    @property
    def is_example(self) -> bool:
        return self.bindings is not None


@dataclass
class ReportOnlyRow:
    """Constants quoted from classical sources and shown without adjudication."""
    name: str
    paper_ref: str
    value: str
    note: str = ""


@dataclass
class ResultRow:
    name: str
    paper_ref: str
    paper: str
    computed: str
    status: str
    corrected: Optional[str] = None
    note: Optional[str] = None
    kind: str = "match"
    certificate: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.status = canonicalize_status(self.status)

    @property
    def is_typo(self) -> bool:
        return self.status == STATUS_TYPO


@dataclass
class ScenarioReport:
    scenario: str
    context: List[str]
    params: Dict[str, str]                 # bindings, values as "num/den"
    results: List[ResultRow] = field(default_factory=list)
    report_only: List[ReportOnlyRow] = field(default_factory=list)

    def rows_by_status(self) -> Dict[str, int]:
        tally: Dict[str, int] = {}
        for row in self.results:
            tally[row.status] = tally.get(row.status, 0) + 1
        return tally

    def row(self, name: str) -> ResultRow:
        for candidate in self.results:
            if candidate.name == name:
                return candidate
        raise KeyError(f"Report {self.scenario} has no row {name!r}")


@dataclass
class LedgerEntry:
    key: str
    title: str
    note: str = ""
    rows: List[ResultRow] = field(default_factory=list)


@dataclass
class ReportDocument:
    schema_version: str
    engine_version: str
    manifest_hash: str
    status: str                            # pass | fail
    reports: List[ScenarioReport] = field(default_factory=list)
    ledger: List[LedgerEntry] = field(default_factory=list)


def row_from_dict(data: Mapping[str, Any]) -> ResultRow:
    return ResultRow(
        name=data["name"],
        paper_ref=data["paper_ref"],
        paper=data["paper"],
        computed=data["computed"],
        status=data["status"],
        corrected=data.get("corrected"),
        note=data.get("note"),
        kind=data.get("kind", "match"),
        certificate=dict(data.get("certificate", {})),
    )


@dataclass
class SweepTable:
    """One row per parameter binding; header = parameter names then result names."""
    scenario: str
    header: List[str]
    rows: List[List[str]] = field(default_factory=list)
