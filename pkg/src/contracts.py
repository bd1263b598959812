"""
focal-ledger v1.0 report contract constants.

These values are centralized so test and runtime enforce the same document
shape.
"""

CONTRACT_VERSION = "1.0.0"

# Stamped on every report document as schema_version.
REPORT_SCHEMA_VERSION = "1.0"

RESULT_STATUS_VALUES = (
    "match",
    "mismatch",
    "paper_typo_suspected",
)

DOCUMENT_STATUS_VALUES = (
    "pass",
    "fail",
)

SUITE_NAMES = (
    "all",
    "focal",
    "jets",
    "bisecants",
    "tangency",
    "plucker",
)

OUTPUT_FORMATS = (
    "text",
    "json",
    "csv",
)

# Frozen JSON key sets.
DOCUMENT_KEYS = (
    "schema_version",
    "engine_version",
    "manifest_hash",
    "status",
    "reports",
    "ledger",
)

REPORT_KEYS = (
    "scenario",
    "context",
    "params",
    "results",
    "report_only",
)

RESULT_ROW_KEYS = (
    "name",
    "paper_ref",
    "paper",
    "computed",
    "status",
)

# Present on a result row only when set.
RESULT_ROW_OPTIONAL_KEYS = (
    "corrected",
    "note",
    "kind",
    "certificate",
)

LEDGER_ENTRY_KEYS = (
    "key",
    "title",
    "note",
    "rows",
)

TABLE_KEYS = (
    "scenario",
    "header",
    "rows",
)

# Exit codes of focal_cli.
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_VERIFY_FAILED = 3
