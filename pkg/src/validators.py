"""
Input validation for command-line parameters: bindings, sweeps, formats and
suite names. Every failure is a ValueError with a message naming the input.
"""
import re
from fractions import Fraction
from typing import Dict, Iterable, Tuple

from contracts import OUTPUT_FORMATS, SUITE_NAMES

_NAME_RE = re.compile(r'^[A-Za-z][A-Za-z0-9_]*$')
_VALUE_RE = re.compile(r'^-?\d+(/\d+)?$')
_SWEEP_RE = re.compile(r'^([A-Za-z][A-Za-z0-9_]*)=(-?\d+)\.\.(-?\d+)$')


def validate_binding(text: str) -> Tuple[str, Fraction]:
    """
    Parses ``name=value`` with an integer or ``num/den`` value.

    Raises:
        ValueError: If the binding is malformed or the denominator is zero.
    """
    if not text or "=" not in text:
        raise ValueError(f"Binding must look like name=value, got: {text!r}")
    name, _, raw = text.partition("=")
    name, raw = name.strip(), raw.strip()
    if not _NAME_RE.match(name):
        raise ValueError(f"Invalid parameter name in binding {text!r}")
    if not _VALUE_RE.match(raw):
        raise ValueError(f"Binding value must be an integer or num/den, got: {raw!r}")
    try:
        return name, Fraction(raw)
    except ZeroDivisionError as exc:
        raise ValueError(f"Binding {text!r} has a zero denominator") from exc


def validate_bindings(items: Iterable[str]) -> Dict[str, Fraction]:
    bindings: Dict[str, Fraction] = {}
    for item in items:
        name, value = validate_binding(item)
        if name in bindings:
            raise ValueError(f"Parameter {name!r} is bound twice")
        bindings[name] = value
    return bindings


def validate_sweep(text: str) -> Tuple[str, int, int]:
    """
    Parses ``name=lo..hi`` with integer bounds, lo <= hi.

    Raises:
        ValueError: If the sweep is malformed or its bounds are reversed.
    """
    match = _SWEEP_RE.match((text or "").strip())
    if not match:
        raise ValueError(f"Sweep must look like d=4..10, got: {text!r}")
    name, lo, hi = match.group(1), int(match.group(2)), int(match.group(3))
    if lo > hi:
        raise ValueError(f"Sweep bounds are reversed: {lo} > {hi}")
    return name, lo, hi


def validate_format(fmt: str, allowed: Iterable[str] = OUTPUT_FORMATS) -> str:
    allowed = tuple(allowed)
    if fmt not in allowed:
        raise ValueError(f"Unknown format {fmt!r}; expected one of {list(allowed)}")
    return fmt


def validate_suite(suite: str) -> str:
    if suite not in SUITE_NAMES:
        raise ValueError(f"Unknown suite {suite!r}; expected one of {list(SUITE_NAMES)}")
    return suite
