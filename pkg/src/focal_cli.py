#!/usr/bin/env python3
import argparse
import io
import logging
import os
import sys
from typing import List, Optional

from rich.console import Console

from contracts import EXIT_ERROR, EXIT_OK, EXIT_VERIFY_FAILED, OUTPUT_FORMATS, SUITE_NAMES
from core.engine import load_manifest, sample_floor
from models.report import ReportDocument
from ui.json_logger import emit_document, emit_table_csv, emit_table_json, write_output
from ui.printer import print_document, print_sweep
from validators import validate_bindings, validate_format, validate_suite, validate_sweep
from workflows.runner import SCENARIOS, build_document, run_scenario, table, verify


ROOT_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
DEFAULT_MANIFEST_PATH = os.path.join(ROOT_DIR, "config", "expectations.yaml")


def _configure_logging(debug: bool) -> None:
    if debug:
        level = logging.DEBUG
    else:
        level = getattr(logging, os.environ.get("LOG_LEVEL", "WARNING").upper(), logging.WARNING)
    logging.basicConfig(level=level, format='%(asctime)s - %(levelname)s - %(message)s')


def _emit(text: str, out: Optional[str], console: Console) -> None:
    if out:
        write_output(text, out)
        console.print(f"[dim]Report written to:[/dim] [cyan]{out}[/cyan]")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _render_document(document: ReportDocument, args: argparse.Namespace, console: Console) -> None:
    if args.format == "json":
        _emit(emit_document(document), args.out, console)
        return
    if args.out:
        # text rendering to a file: record the console output
        recorder = Console(record=True, highlight=False, width=160, file=io.StringIO())
        print_document(document, console=recorder, verbose=args.debug)
        _emit(recorder.export_text(), args.out, console)
        return
    print_document(document, console=console, verbose=args.debug)


def _run_verify(args: argparse.Namespace, console: Console) -> int:
    manifest = load_manifest(args.manifest, SCENARIOS)
    document = verify(args.suite, manifest, floor=sample_floor(manifest))
    _render_document(document, args, console)
    return EXIT_OK if document.status == "pass" else EXIT_VERIFY_FAILED


def _run_scenario(args: argparse.Namespace, console: Console) -> int:
    manifest = load_manifest(args.manifest, SCENARIOS)
    bindings = validate_bindings(args.bindings)
    report = run_scenario(args.scenario, manifest, floor=sample_floor(manifest), bindings=bindings)
    _render_document(build_document([report], manifest), args, console)
    return EXIT_OK


def _run_table(args: argparse.Namespace, console: Console) -> int:
    manifest = load_manifest(args.manifest, SCENARIOS)
    sweep = validate_sweep(args.sweep) if args.sweep else None
    result = table(args.scenario, manifest, sweep=sweep)
    if args.format == "csv":
        _emit(emit_table_csv(result), args.out, console)
    elif args.format == "json":
        _emit(emit_table_json(result), args.out, console)
    else:
        print_sweep(result, console=console)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="focal-ledger: symbolic verification of focal-surface invariants of line congruences."
    )
    parser.add_argument(
        "--manifest",
        default=DEFAULT_MANIFEST_PATH,
        help=f"Expectation manifest path (default: {DEFAULT_MANIFEST_PATH})",
    )
    parser.add_argument("--debug", action="store_true", help="Enable verbose logging and full-width values.")

    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(sub: argparse.ArgumentParser, default: str, formats) -> None:
        sub.add_argument("--format", default=default, choices=formats, help=f"Output format (default: {default}).")
        sub.add_argument("--out", help="Write the rendering to FILE instead of standard output.")

    verify_parser = subparsers.add_parser("verify", help="Run scenario suites symbolically against the manifest.")
    verify_parser.add_argument("--suite", default="all", help=f"One of {', '.join(SUITE_NAMES)} (default: all).")
    add_output_flags(verify_parser, "text", ("text", "json"))

    run_parser = subparsers.add_parser("run", help="Run one scenario at the given parameter values.")
    run_parser.add_argument("scenario", choices=sorted(SCENARIOS), help="Scenario to run.")
    run_parser.add_argument("bindings", nargs="*", help="Parameter bindings such as a=2 b=2 g=1.")
    add_output_flags(run_parser, "text", ("text", "json"))

    table_parser = subparsers.add_parser("table", help="Tabulate a scenario over its examples or a sweep.")
    table_parser.add_argument("scenario", choices=sorted(SCENARIOS), help="Scenario to tabulate.")
    table_parser.add_argument("sweep", nargs="?", default=None, help="Integer sweep such as d=4..10.")
    add_output_flags(table_parser, "csv", OUTPUT_FORMATS)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    console = Console(highlight=False)
    _configure_logging(args.debug)

    # usage errors exit 2 through parser.error
    try:
        if args.command == "verify":
            validate_suite(args.suite)
        validate_format(args.format)
        if args.command == "run":
            validate_bindings(args.bindings)
        if args.command == "table" and args.sweep:
            validate_sweep(args.sweep)
    except ValueError as e:
        parser.error(str(e))

    try:
        if args.command == "verify":
            return _run_verify(args, console)
        if args.command == "run":
            return _run_scenario(args, console)
        if args.command == "table":
            return _run_table(args, console)
        parser.error(f"Unknown command: {args.command}")
    except Exception as exc:
        Console(stderr=True, highlight=False).print(f"[bold red]focal CLI error:[/bold red] {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
