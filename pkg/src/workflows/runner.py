"""
Scenario orchestration: runs scenario findings through the manifest and
assembles report documents and sweep tables.
"""
import logging
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

from contracts import REPORT_SCHEMA_VERSION
from core.chow import GradedClass
from core.engine import (
    DEFAULT_SAMPLE_FLOOR,
    VERSION,
    ExpectationManifest,
    ManifestError,
    classify,
    sweep_limit,
)
from core.exact import format_exact, format_rational, to_rational
from core.oracle import render_value
from models.report import ReportDocument, ScenarioReport, SweepTable
from models.result_states import row_passes
from workflows import bisecants, focal, jets, plucker, tangency
from workflows.ledger import reconciliation_ledger

logger = logging.getLogger(__name__)

SCENARIOS = {module.SCENARIO: module for module in (focal, jets, bisecants, tangency, plucker)}
SUITES = ("all",) + tuple(SCENARIOS)


class ScenarioError(Exception):
    """Unknown scenario or suite, or bindings the scenario cannot take."""


def _scenario(name: str):
    try:
        return SCENARIOS[name]
    except KeyError as exc:
        raise ScenarioError(f"Unknown scenario {name!r}; expected one of {sorted(SCENARIOS)}") from exc


def suite_scenarios(suite: str) -> List[str]:
    if suite == "all":
        return list(SCENARIOS)
    _scenario(suite)
    return [suite]


def _check_bindings(module, bindings: Mapping[str, Any]) -> None:
    unknown = sorted(set(bindings) - set(module.CONTEXT))
    if unknown:
        raise ScenarioError(
            f"Scenario {module.SCENARIO!r} has no parameters {unknown}; it takes {list(module.CONTEXT)}"
        )


def run_scenario(
    name: str,
    manifest: ExpectationManifest,
    floor: int = DEFAULT_SAMPLE_FLOOR,
    bindings: Optional[Mapping[str, Any]] = None,
) -> ScenarioReport:
    """
    Classifies every finding of one scenario against its manifest entry.

    Raises:
        ScenarioError: On an unknown scenario or foreign binding names.
        ManifestError: When a finding has no entry, or its entry belongs to
            another scenario.
    """
    module = _scenario(name)
    bindings = dict(bindings or {})
    _check_bindings(module, bindings)
    logger.info("Running scenario %s", name)

    found, report_only = module.findings()
    results = []
    for finding in found:
        entry = manifest.entry(finding.key)
        if entry.scenario != name:
            raise ManifestError(f"Entry {finding.key!r} is filed under {entry.scenario!r}, not {name!r}")
        results.append(classify(entry, finding, floor=floor, bindings=bindings))

    report = ScenarioReport(
        scenario=name,
        context=list(module.CONTEXT),
        params={key: format_rational(to_rational(value)) for key, value in bindings.items()},
        results=results,
        report_only=report_only,
    )
    logger.info("Scenario %s: %d rows, %s", name, len(results), report.rows_by_status())
    return report


def document_status(reports: Iterable[ScenarioReport]) -> str:
    for report in reports:
        for row in report.results:
            if not row_passes(row.kind, row.status):
                return "fail"
    return "pass"


def build_document(reports: List[ScenarioReport], manifest: ExpectationManifest) -> ReportDocument:
    return ReportDocument(
        schema_version=REPORT_SCHEMA_VERSION,
        engine_version=VERSION,
        manifest_hash=manifest.manifest_hash,
        status=document_status(reports),
        reports=reports,
        ledger=reconciliation_ledger(reports, manifest),
    )


def verify(
    suite: str,
    manifest: ExpectationManifest,
    floor: int = DEFAULT_SAMPLE_FLOOR,
    bindings: Optional[Mapping[str, Any]] = None,
) -> ReportDocument:
    """Runs a suite; the document passes iff every row has the status its kind predicts."""
    names = suite_scenarios(suite)
    reports = [run_scenario(name, manifest, floor=floor, bindings=bindings) for name in names]
    document = build_document(reports, manifest)
    logger.info("Suite %s: %s", suite, document.status)
    return document


# ---------- Tables ----------

def _binding_text(value: Any) -> str:
    if value is None:
        return ""
    return format_exact(to_rational(value))


def _evaluate(value, bindings: Mapping[str, Any]) -> str:
    context = value.variety.context if isinstance(value, GradedClass) else value.context
    assignment = {k: v for k, v in bindings.items() if k in context.names}
    if assignment:
        value = value.subs(assignment)
    return render_value(value)


def _table_bindings(
    module,
    manifest: ExpectationManifest,
    sweep: Optional[Tuple[str, int, int]],
) -> List[Dict[str, Any]]:
    if sweep is None:
        return list(module.EXAMPLES.values())
    name, lo, hi = sweep
    _check_bindings(module, {name: lo})
    if hi < lo:
        raise ScenarioError(f"Sweep {name}={lo}..{hi} has reversed bounds")
    count = hi - lo + 1
    limit = sweep_limit(manifest)
    if count > limit:
        raise ScenarioError(f"Sweep of {count} values exceeds the configured limit of {limit}")
    return [{name: value} for value in range(lo, hi + 1)]


def table(
    name: str,
    manifest: ExpectationManifest,
    sweep: Optional[Tuple[str, int, int]] = None,
) -> SweepTable:
    """
    Evaluates the symbolic rows of a scenario at each binding.

    Without a sweep the scenario's named examples are used. Parameters a
    binding leaves open print as blanks; values still depending on them
    print as polynomials.
    """
    module = _scenario(name)
    bindings_list = _table_bindings(module, manifest, sweep)
    found, _ = module.findings()
    symbolic = [finding for finding in found if not finding.is_example]
    params = [sweep[0]] if sweep is not None else list(module.CONTEXT)

    rows = []
    for bindings in bindings_list:
        cells = [_binding_text(bindings.get(param)) for param in params]
        cells.extend(_evaluate(finding.computed, bindings) for finding in symbolic)
        rows.append(cells)
    logger.info("Table %s: %d rows", name, len(rows))
    return SweepTable(scenario=name, header=params + [f.key for f in symbolic], rows=rows)
