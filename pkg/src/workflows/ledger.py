"""
Reconciliation ledger: the places where the printed text and the engine part ways.

Each ledger key is declared once in the manifest; result rows join it through
their manifest entry's ``ledger`` field. Typo rows carry the corrected value
and both certificates; counterexample rows filed under the same key supply
the witnesses.
"""
import logging
from typing import Iterable, List

from core.engine import ExpectationManifest
from models.report import LedgerEntry, ScenarioReport

logger = logging.getLogger(__name__)


def reconciliation_ledger(
    reports: Iterable[ScenarioReport],
    manifest: ExpectationManifest,
) -> List[LedgerEntry]:
    """Groups ledger-tagged rows under the manifest's ledger keys, in declaration order."""
    grouped = {key: [] for key in manifest.ledger}
    for report in reports:
        for row in report.results:
            entry = manifest.entries.get(row.name)
            if entry is None or entry.ledger is None:
                continue
            grouped.setdefault(entry.ledger, []).append(row)

    ledger = []
    for key, rows in grouped.items():
        if not rows:
            continue
        meta = manifest.ledger.get(key, {})
        ledger.append(LedgerEntry(
            key=key,
            title=meta.get("title", key),
            note=meta.get("note", ""),
            rows=rows,
        ))
    logger.debug("Ledger holds %d entries", len(ledger))
    return ledger
