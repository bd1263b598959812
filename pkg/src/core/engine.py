import hashlib
import logging
import os
import re
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Mapping, Optional, Tuple

import yaml

from core.chow import GradedClass
from core.oracle import certify_identity, render_value, sample_floor_from_env
from models.report import Finding, ResultRow
from models.result_states import (
    KIND_TYPO,
    STATUS_MATCH,
    STATUS_MISMATCH,
    STATUS_TYPO,
    VALID_KINDS,
)

logger = logging.getLogger(__name__)

# Engine version (Semantic Versioning), stamped on every report document.
VERSION = "1.0.0"

DEFAULT_SAMPLE_FLOOR = 3
DEFAULT_SWEEP_LIMIT = 200


class ManifestError(ValueError):
    """Malformed expectation manifest or a missing ${VAR} reference."""


@dataclass
class ManifestEntry:
    """One expected value, keyed by row id in config/expectations.yaml."""
    key: str
    scenario: str
    paper_ref: str
    paper: str                     # expression text as printed
    kind: str = "match"            # match | typo | counterexample
    corrected: Optional[str] = None
    ledger: Optional[str] = None   # ledger key for typo rows
    title: Optional[str] = None
    note: Optional[str] = None


@dataclass
class ExpectationManifest:
    version: str
    manifest_hash: str
    settings: Dict[str, Any] = field(default_factory=dict)
    entries: Dict[str, ManifestEntry] = field(default_factory=dict)
    ledger: Dict[str, Dict[str, str]] = field(default_factory=dict)

    def entry(self, key: str) -> ManifestEntry:
        try:
            return self.entries[key]
        except KeyError as exc:
            raise ManifestError(f"No expectation recorded for {key!r}") from exc

    def for_scenario(self, scenario: str) -> Dict[str, ManifestEntry]:
        return {k: e for k, e in self.entries.items() if e.scenario == scenario}


def _expand_env_vars(raw_yaml: str) -> str:
    """
    Replaces ${VAR_NAME} with the value from os.environ.
    A missing variable is an error, never an empty substitution.
    """
    pattern = re.compile(r'\$\{([A-Z0-9_]+)\}')

    def replace(match):
        var_name = match.group(1)
        val = os.environ.get(var_name)
        if val is None or not val.strip():
            raise ManifestError(
                f"Expectation manifest references ${{{var_name}}}, but the environment variable is missing."
            )
        return val

    return pattern.sub(replace, raw_yaml)


def _text(value: Any) -> Optional[str]:
    # YAML reads "4" as an int and "1/2" as a string; keep both as text
    if value is None:
        return None
    return str(value)


def load_manifest(path: str, known_scenarios: Iterable[str]) -> ExpectationManifest:
    """
    Loads the expectation manifest and fingerprints it.

    The SHA-256 hash is computed on the post-expansion text, so reports
    record the values actually used.

    Raises:
        ManifestError: On missing variables, unknown scenarios, bad kinds, or
            typo entries without a corrected value and ledger key.
    """
    with open(path, "r", encoding="utf-8") as file:
        raw_content = file.read()

    content = _expand_env_vars(raw_content)
    manifest_hash = hashlib.sha256(content.encode("utf-8")).hexdigest()
    try:
        data = yaml.safe_load(content) or {}
    except yaml.YAMLError as exc:
        raise ManifestError(f"Expectation manifest is not valid YAML: {exc}") from exc

    scenarios = set(known_scenarios)
    ledger = {}
    for key, meta in (data.get("ledger") or {}).items():
        meta = meta or {}
        ledger[key] = {"title": str(meta.get("title", key)), "note": str(meta.get("note", ""))}

    entries: Dict[str, ManifestEntry] = {}
    for key, raw in (data.get("entries") or {}).items():
        if not isinstance(raw, dict):
            raise ManifestError(f"Entry {key!r} must be a mapping")
        missing = [name for name in ("scenario", "paper_ref", "paper") if name not in raw]
        if missing:
            raise ManifestError(f"Entry {key!r} lacks {missing}")
        entry = ManifestEntry(
            key=key,
            scenario=str(raw["scenario"]),
            paper_ref=str(raw["paper_ref"]),
            paper=_text(raw["paper"]),
            kind=str(raw.get("kind", "match")),
            corrected=_text(raw.get("corrected")),
            ledger=_text(raw.get("ledger")),
            title=_text(raw.get("title")),
            note=_text(raw.get("note")),
        )
        if entry.scenario not in scenarios:
            raise ManifestError(f"Entry {key!r} names unknown scenario {entry.scenario!r}")
        if entry.kind not in VALID_KINDS:
            raise ManifestError(f"Entry {key!r} has unknown kind {entry.kind!r}")
        if entry.kind == KIND_TYPO:
            if entry.corrected is None or entry.ledger is None:
                raise ManifestError(f"Typo entry {key!r} needs both 'corrected' and 'ledger'")
        if entry.ledger is not None and entry.ledger not in ledger:
            raise ManifestError(f"Entry {key!r} points at undeclared ledger key {entry.ledger!r}")
        entries[key] = entry

    manifest = ExpectationManifest(
        version=str(data.get("version", "")),
        manifest_hash=manifest_hash,
        settings=dict(data.get("settings") or {}),
        entries=entries,
        ledger=ledger,
    )
    logger.debug("Loaded %d expectations from %s", len(entries), path)
    return manifest


def sample_floor(manifest: ExpectationManifest) -> int:
    """
    Per-parameter sampling floor: FOCAL_SAMPLES, else the manifest setting.

    Raises:
        ValueError: On a non-integer or non-positive value.
    """
    configured = manifest.settings.get("sample_floor", DEFAULT_SAMPLE_FLOOR)
    try:
        configured = int(configured)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"settings.sample_floor must be an integer, got {configured!r}") from exc
    if configured < 1:
        raise ValueError(f"settings.sample_floor must be at least 1, got {configured}")
    return sample_floor_from_env(default=configured)


def sweep_limit(manifest: ExpectationManifest) -> int:
    return int(manifest.settings.get("sweep_limit", DEFAULT_SWEEP_LIMIT))


# ---------- Classification ----------

def _context_names(value) -> Tuple[str, ...]:
    if isinstance(value, GradedClass):
        return value.variety.context.names
    return value.context.names


def _parse_expected(text: str, finding: Finding):
    computed = finding.computed
    if finding.parser is not None:
        return finding.parser(text)
    if isinstance(computed, GradedClass):
        return computed.variety.normal_form(text)
    return computed.context.parse(text)


def classify(
    entry: ManifestEntry,
    finding: Finding,
    floor: int = DEFAULT_SAMPLE_FLOOR,
    bindings: Optional[Mapping[str, Any]] = None,
) -> ResultRow:
    """
    Certifies a finding against its expectation.

    ``match`` when computed equals the printed value; ``paper_typo_suspected``
    when it does not, the entry is a known typo, and computed equals the
    corrected value; ``mismatch`` otherwise.
    """
    # example bindings win over run-mode ones; either may name parameters
    # this row does not depend on
    merged: Dict[str, Any] = dict(bindings or {})
    merged.update(finding.bindings or {})
    names = _context_names(finding.computed)
    assignment = {name: value for name, value in merged.items() if name in names}

    computed = finding.computed
    paper = _parse_expected(entry.paper, finding)
    if assignment:
        computed = computed.subs(assignment)
        paper = paper.subs(assignment)

    certificate = certify_identity(computed, paper, sample_floor=floor)
    documents = {"paper": certificate.to_dict()}
    status = STATUS_MATCH if certificate.is_equal else STATUS_MISMATCH

    corrected_text = None
    if entry.corrected is not None:
        corrected = _parse_expected(entry.corrected, finding)
        if assignment:
            corrected = corrected.subs(assignment)
        corrected_text = render_value(corrected) if bindings else entry.corrected
        if not certificate.is_equal and entry.kind == KIND_TYPO:
            fix = certify_identity(computed, corrected, sample_floor=floor)
            documents["corrected"] = fix.to_dict()
            if fix.is_equal:
                status = STATUS_TYPO

    paper_text = render_value(paper) if bindings else entry.paper
    row = ResultRow(
        name=entry.key,
        paper_ref=entry.paper_ref,
        paper=paper_text,
        computed=render_value(computed),
        status=status,
        corrected=corrected_text,
        note=finding.note or entry.note,
        kind=entry.kind,
        certificate=documents,
    )
    if status == STATUS_MISMATCH:
        logger.info("Row %s: computed %s, printed %s", entry.key, row.computed, entry.paper)
    return row
