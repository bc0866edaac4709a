from mixstab.constants import ExitCode
from mixstab.core.sweep import run_scan, scan_columns
from mixstab.errors import ParameterError
from mixstab.model.model_args import add_mixture_args, resolve_params
from mixstab.protocol.config_protocol import ScanSpec
from mixstab.service.commands import Command, CommandContext, resolved_config


def add_args(parser):
    add_mixture_args(parser)
    parser.add_argument("--parameter", type=str, choices=["lambda", "g12", "n", "dg"], default=None)
    parser.add_argument("--start", type=float, default=None)
    parser.add_argument("--stop", type=float, default=None)
    parser.add_argument("--step", type=float, default=None)
    parser.add_argument("--count", type=int, default=None)
    parser.add_argument(
        "--fluct", type=str, choices=["none", "minus", "plus"], default=None,
        help="Closed-form fluctuations with the closure of this branch at every point",
    )
    parser.add_argument(
        "--outputs", type=str, nargs="+", choices=["stability", "energy", "mu"], default=None,
        help="Quantities per row (default: stability)",
    )


def run(ctx: CommandContext) -> ExitCode:
    args = ctx.args
    spec_data = ctx.config.scan.dict(exclude_none=True) if ctx.config.scan is not None else {}
    flags = {
        name: getattr(args, name)
        for name in ("parameter", "start", "stop", "step", "count", "fluct", "outputs")
        if getattr(args, name) is not None
    }
    # a range flag replaces the configured range form
    if "step" in flags:
        spec_data.pop("count", None)
    if "count" in flags:
        spec_data.pop("step", None)
    spec_data.update(flags)
    if "parameter" not in spec_data:
        raise ParameterError("scan needs --parameter (or a scan section in --config)")
    spec = ScanSpec.parse_obj(spec_data)

    base = resolve_params(args, ctx.config.params)
    rows = run_scan(spec, base, threads=ctx.threads)

    resolved = resolved_config(ctx.config, params=base.to_dict(), scan=spec.dict())
    ctx.write_csv(scan_columns(spec), rows, resolved)
    return ExitCode.OK


scan = Command(name="scan", help="Stability map over one parameter", add_args=add_args, run=run)
