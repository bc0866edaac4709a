from mixstab.constants import ExitCode
from mixstab.fluctuations import fluctuation_report
from mixstab.model import BranchLabel, MixtureParams
from mixstab.model.model_args import add_mixture_args, add_quadrature_args, resolve_params
from mixstab.model.params import reduce_symmetric
from mixstab.protocol.config_protocol import QuadratureConfig, SelfConsistencyConfig
from mixstab.service.commands import Command, CommandContext, resolved_config


def add_args(parser):
    add_mixture_args(parser)
    add_quadrature_args(parser)
    parser.add_argument("--branch", type=str, choices=["minus", "plus"], default="minus")
    parser.add_argument("--f12", type=float, default=0.0, help="N~12 + M~12 fed into the minus-branch gap")
    parser.add_argument("--mode", type=str, choices=["closed_form", "quadrature"], default=None)
    parser.add_argument("--self-consistent", action="store_true", help="Also run the damped self-consistency loop")
    parser.add_argument("--damping", type=float, default=None)
    parser.add_argument("--sc-tol", type=float, default=None)
    parser.add_argument("--max-iter", type=int, default=None)


def _merge(model, overrides):
    return model.copy(update={k: v for k, v in overrides.items() if v is not None})


def run(ctx: CommandContext) -> ExitCode:
    args = ctx.args
    params = resolve_params(args, ctx.config.params)
    sym = reduce_symmetric(params) if isinstance(params, MixtureParams) else params

    quad = QuadratureConfig.parse_obj(_merge(ctx.config.quadrature, {
        "rel_tol": args.rel_tol,
        "abs_tol": args.abs_tol,
        "max_subdivisions": args.max_subdivisions,
        "k_min": args.k_min,
        "k_max": args.k_max,
        "temperature": args.temperature,
        "mode": args.mode,
    }).dict())
    sc = SelfConsistencyConfig.parse_obj(_merge(ctx.config.self_consistency, {
        "enabled": True if args.self_consistent else None,
        "damping": args.damping,
        "tol": args.sc_tol,
        "max_iter": args.max_iter,
    }).dict())

    report = fluctuation_report(
        sym,
        BranchLabel.from_str(args.branch),
        quad.to_settings(),
        f12=args.f12,
        self_consistency=sc.to_settings(),
    )
    for message in report.warnings:
        ctx.logger.warning(message)

    resolved = resolved_config(
        ctx.config,
        params=sym.to_dict(),
        quadrature=quad.dict(),
        self_consistency=sc.dict(),
        branch=args.branch,
        f12=args.f12,
    )
    ctx.write_json(report.dict(), resolved)
    return ExitCode.OK


fluct = Command(name="fluct", help="Fluctuation report: closed forms, IR-safe quadrature, self-consistency", add_args=add_args, run=run)
