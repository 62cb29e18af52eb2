"""
Human-readable summaries using Rich.

Everything here prints to stderr. Stdout carries only the JSON certificate,
so piping a command into a file or jq never picks up a table.
"""

from typing import Dict, Iterable, Optional

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .harness import CheckSummary
from .obstructions import MembershipReport
from .ramsey import Quantity


class ResultsPresenter:
    """Renders membership reports, constants and harness summaries."""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console(stderr=True)

        # Visual indicators for a yes / no / unknown answer
        self.verdict_display = {
            True: "[green]yes[/green]",
            False: "[red]no[/red]",
            None: "[dim]not checked[/dim]",
        }

        self.tag_display = {
            "exact": "[green]exact[/green]",
            "bound": "[yellow]bound[/yellow]",
            "symbolic": "[dim]symbolic[/dim]",
        }

    def show_membership(self, report: MembershipReport):
        """Class membership with the first witness of each kind."""
        table = Table(box=box.SIMPLE, show_header=True, header_style="bold")
        table.add_column("Class")
        table.add_column("Member")
        table.add_column("Witness", overflow="fold")

        witnesses = report.to_dict()["witnesses"]
        obstruction = witnesses["theta"] or witnesses["prism"]
        table.add_row("C (theta, prism-free)", self.verdict_display[report.in_class], self._short(obstruction))
        table.add_row(f"C_{report.t}", self.verdict_display[report.in_class_t], self._short(witnesses["clique"]))
        table.add_row(f"C_{report.t}(F)", self.verdict_display[report.in_class_t_forest], self._short(witnesses["forest"]))

        self.console.print(Panel(table, title="[bold blue]Class Membership[/bold blue]", border_style="blue"))

    def show_constants(self, constants: Dict[str, Quantity]):
        """The numeric and symbolic constants, tagged exact / bound / symbolic."""
        table = Table(box=box.SIMPLE, header_style="bold")
        table.add_column("Constant")
        table.add_column("Value", justify="right")
        table.add_column("Kind")
        table.add_column("How", style="dim")

        for name, quantity in constants.items():
            value = str(quantity.value) if quantity.value is not None else "-"
            table.add_row(name, value, self.tag_display.get(quantity.tag, quantity.tag), quantity.expr)

        self.console.print(table)

    def show_harness(self, summaries: Iterable[CheckSummary]):
        """One row per check, failures in red."""
        table = Table(box=box.ROUNDED, header_style="bold")
        table.add_column("Check")
        table.add_column("Samples", justify="right")
        table.add_column("Passed", justify="right")
        table.add_column("Rejected", justify="right")
        table.add_column("Failed", justify="right")
        table.add_column("First failure", overflow="fold")

        for summary in summaries:
            failed = f"[red]{summary.failed}[/red]" if summary.failed else "0"
            first = ""
            if summary.first_failure:
                first = f"#{summary.first_failure['sample']}: {summary.first_failure['message']}"
            table.add_row(
                summary.check,
                str(summary.samples),
                f"[green]{summary.passed}[/green]",
                str(summary.rejected),
                failed,
                first,
            )

        self.console.print(table)

    def show_status(self, message: str, style: str = "yellow"):
        self.console.print(f"[{style}]{message}[/{style}]")

    def show_error(self, message: str):
        self.console.print(f"[red]Error: {message}[/red]")

    @staticmethod
    def _short(witness, limit: int = 60) -> str:
        if not witness:
            return ""
        text = str(witness)
        return text if len(text) <= limit else text[:limit - 3] + "..."
