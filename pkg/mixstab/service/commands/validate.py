import sys

from rich.console import Console
from rich.table import Table

from mixstab.constants import ExitCode
from mixstab.core.oracles import oracles, run_oracles
from mixstab.errors import ParameterError
from mixstab.service.commands import Command, CommandContext, resolved_config


def add_args(parser):
    parser.add_argument("--only", type=str, nargs="+", default=None, help="Run only these oracles")


def render_table(summary) -> Table:
    table = Table(title="mixstab validation")
    table.add_column("oracle")
    table.add_column("result")
    table.add_column("detail")
    table.add_column("ms", justify="right")
    for outcome in summary.outcomes:
        result = "[green]pass[/green]" if outcome.passed else "[red]FAIL[/red]"
        table.add_row(outcome.name, result, outcome.detail, f"{outcome.elapsed_ms:.1f}")
    return table


def run(ctx: CommandContext) -> ExitCode:
    names = ctx.args.only
    if names is not None:
        unknown = [n for n in names if n not in oracles]
        if unknown:
            raise ParameterError(f"unknown oracles: {', '.join(unknown)}")
    summary = run_oracles(names)

    # table on stderr, JSON summary on stdout or the output file
    Console(file=sys.stderr).print(render_table(summary))
    ctx.write_json(summary.dict(), resolved_config(ctx.config, oracles=names or list(oracles)))
    return ExitCode.OK if summary.passed else ExitCode.VALIDATION_FAILURE


validate = Command(name="validate", help="Run the oracle suite", add_args=add_args, run=run)
