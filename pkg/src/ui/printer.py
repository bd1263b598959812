from __future__ import annotations

from typing import Optional

from rich import box
from rich.console import Console
from rich.table import Table

from models.report import LedgerEntry, ReportDocument, ScenarioReport, SweepTable
from models.result_states import STATUS_MATCH, STATUS_MISMATCH, STATUS_TYPO, row_passes


# ---------- Helpers ----------

def _status_style(status: str) -> str:
    if status == STATUS_MATCH:
        return "bold green"
    if status == STATUS_TYPO:
        return "bold yellow"
    if status == STATUS_MISMATCH:
        return "bold red"
    return "white"


def _status_cell(status: str, kind: str) -> str:
    style = _status_style(status)
    cell = f"[{style}]{status}[/{style}]"
    if status == STATUS_MISMATCH and row_passes(kind, status):
        cell += " [dim](expected)[/dim]"
    return cell


def _clip(text: Optional[str], show: int = 60) -> str:
    if not text:
        return "-"
    return text if len(text) <= show else text[:show] + "…"


def _divider(console: Console, title: Optional[str] = None) -> None:
    """
    Subtle section divider that adapts to terminal width.
    Example:
      ─────── FOCAL ─────────────────────────────
    """
    width = console.size.width if console.is_terminal else 80
    width = max(40, width)

    if title:
        label = f" {title.strip().upper()} "
        left = "─" * 6
        remaining = max(0, width - len(left) - len(label))
        console.print(f"[dim]{left}{label}{'─' * remaining}[/dim]")
    else:
        console.print(f"[dim]{'─' * width}[/dim]")


def _table(console: Console) -> Table:
    return Table(
        box=box.SQUARE if console.is_terminal else box.SIMPLE,
        show_header=True,
        header_style="bold white",
        border_style="dim",
        expand=True,
        pad_edge=True,
    )


# ---------- UI ----------

def print_banner(console: Console) -> None:
    fancy = r"""
  _____                _
 |  ___|__   ___ __ _ | |
 | |_ / _ \ / __/ _` || |
 |  _| (_) | (_| (_| || |
 |_|  \___/ \___\__,_||_|
""".strip("\n")

    if (not console.is_terminal) or (console.size and console.size.width < 70):
        console.print("FOCAL", style="bold green")
    else:
        console.print(fancy, style="bold green")
    console.print("intersection-theory reconciliation ledger", style="bold cyan")
    console.print("")


def print_scenario(console: Console, report: ScenarioReport, verbose: bool = False) -> None:
    _divider(console, report.scenario)
    if report.params:
        bound = ", ".join(f"{k}={v}" for k, v in report.params.items())
        console.print(f" • Bindings: [yellow]{bound}[/yellow]")
    console.print(f" • Parameters: [dim]{', '.join(report.context)}[/dim]\n")

    table = _table(console)
    table.add_column("ROW", ratio=2, no_wrap=False)
    table.add_column("REF", ratio=1, no_wrap=False)
    table.add_column("PRINTED", ratio=3, no_wrap=False)
    table.add_column("COMPUTED", ratio=3, no_wrap=False)
    table.add_column("STATUS", justify="center", ratio=2, no_wrap=True)

    show = 400 if verbose else 60
    for row in report.results:
        table.add_row(
            row.name,
            row.paper_ref,
            _clip(row.paper, show),
            _clip(row.computed, show),
            _status_cell(row.status, row.kind),
        )
    console.print(table)

    if report.report_only:
        quoted = _table(console)
        quoted.add_column("QUOTED", ratio=2)
        quoted.add_column("REF", ratio=1)
        quoted.add_column("VALUE", ratio=3)
        quoted.add_column("NOTE", ratio=3, style="dim")
        for item in report.report_only:
            quoted.add_row(item.name, item.paper_ref, item.value, item.note or "-")
        console.print(quoted)
    console.print("")


def print_ledger(console: Console, ledger: list[LedgerEntry]) -> None:
    _divider(console, "reconciliation ledger")
    if not ledger:
        console.print("[dim]No discrepancies recorded.[/dim]\n")
        return

    table = _table(console)
    table.add_column("ENTRY", ratio=2, no_wrap=False)
    table.add_column("ROW", ratio=2, no_wrap=False)
    table.add_column("PRINTED", ratio=3, no_wrap=False)
    table.add_column("CORRECTED / COMPUTED", ratio=3, no_wrap=False)
    table.add_column("STATUS", justify="center", ratio=2, no_wrap=True)
    for entry in ledger:
        title = f"{entry.title}\n[dim]{entry.note}[/dim]" if entry.note else entry.title
        for i, row in enumerate(entry.rows):
            fixed = row.corrected if row.corrected is not None else row.computed
            table.add_row(
                title if i == 0 else "",
                row.name,
                _clip(row.paper),
                _clip(fixed),
                _status_cell(row.status, row.kind),
            )
    console.print(table)
    console.print("")


def print_document(document: ReportDocument, console: Optional[Console] = None, verbose: bool = False) -> None:
    console = console or Console(highlight=False)
    print_banner(console)
    console.print(f" • Engine:        [yellow]{document.engine_version}[/yellow]")
    console.print(f" • Manifest Hash: [yellow]{document.manifest_hash[:16]}…[/yellow]\n")

    for report in document.reports:
        print_scenario(console, report, verbose=verbose)
    print_ledger(console, document.ledger)

    tally = {STATUS_MATCH: 0, STATUS_TYPO: 0, STATUS_MISMATCH: 0}
    for report in document.reports:
        for status, count in report.rows_by_status().items():
            tally[status] = tally.get(status, 0) + count

    console.print(
        f"[black on green] {tally[STATUS_MATCH]} Matched [/black on green] "
        f"[black on yellow] {tally[STATUS_TYPO]} Typos [/black on yellow] "
        f"[white on red] {tally[STATUS_MISMATCH]} Mismatches [/white on red] "
        f"[white on blue] {len(document.ledger)} Ledger [/white on blue]"
    )
    verdict = "green" if document.status == "pass" else "red"
    console.print(f"\n[bold {verdict}]{document.status.upper()}[/bold {verdict}]")


def print_sweep(sweep: SweepTable, console: Optional[Console] = None) -> None:
    console = console or Console(highlight=False)
    _divider(console, sweep.scenario)
    table = _table(console)
    for name in sweep.header:
        table.add_column(name.upper(), no_wrap=False)
    for row in sweep.rows:
        table.add_row(*row)
    console.print(table)
