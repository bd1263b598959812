"""
Canonical result statuses and expectation kinds.

This module keeps status handling consistent across scenarios, the ledger,
the printer and the exit-code logic of the CLI.
"""
from typing import Dict, Set


STATUS_MATCH = "match"
STATUS_MISMATCH = "mismatch"
STATUS_TYPO = "paper_typo_suspected"

KIND_MATCH = "match"
KIND_TYPO = "typo"
KIND_COUNTEREXAMPLE = "counterexample"

# Short spellings accepted on input (manifests, hand-edited reports).
_ALIASES: Dict[str, str] = {
    "typo": STATUS_TYPO,
    "paper_typo": STATUS_TYPO,
    "ok": STATUS_MATCH,
}

VALID_STATUSES: Set[str] = {STATUS_MATCH, STATUS_MISMATCH, STATUS_TYPO}
VALID_KINDS: Set[str] = {KIND_MATCH, KIND_TYPO, KIND_COUNTEREXAMPLE}

# A row passes when its status is the one its expectation kind predicts.
_EXPECTED_STATUS: Dict[str, str] = {
    KIND_MATCH: STATUS_MATCH,
    KIND_TYPO: STATUS_TYPO,
    KIND_COUNTEREXAMPLE: STATUS_MISMATCH,
}


def canonicalize_status(status: str) -> str:
    """Normalizes incoming status values to canonical lowercase constants."""
    if not status:
        return status
    normalized = str(status).strip().lower()
    return _ALIASES.get(normalized, normalized)


def is_valid_status(status: str) -> bool:
    return canonicalize_status(status) in VALID_STATUSES


def expected_status(kind: str) -> str:
    try:
        return _EXPECTED_STATUS[kind]
    except KeyError as exc:
        raise ValueError(f"Unknown expectation kind {kind!r}; expected one of {sorted(VALID_KINDS)}") from exc


def row_passes(kind: str, status: str) -> bool:
    return canonicalize_status(status) == expected_status(kind)
