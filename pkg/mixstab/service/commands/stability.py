from mixstab.constants import ExitCode
from mixstab.model import SymmetricParams
from mixstab.model.model_args import add_fluctuation_args, add_mixture_args, resolve_fluctuations, resolve_params
from mixstab.model.params import embed_symmetric
from mixstab.service.commands import Command, CommandContext, resolved_config
from mixstab.stability import chemical_potentials, energy_density, stability_check


def add_args(parser):
    add_mixture_args(parser)
    add_fluctuation_args(parser)
    parser.add_argument(
        "--fd-check", action="store_true",
        help="Attach the finite-difference Hessian of the energy density",
    )


def run(ctx: CommandContext) -> ExitCode:
    args = ctx.args
    params = resolve_params(args, ctx.config.params)
    if isinstance(params, SymmetricParams):
        params = embed_symmetric(params)
    fl = resolve_fluctuations(args, params)

    report = stability_check(params, fl, with_fd_check=args.fd_check)
    payload = report.to_dict()
    payload["energy_density"] = energy_density(params, fl)
    payload["mu1"], payload["mu2"] = chemical_potentials(params, fl)

    resolved = resolved_config(ctx.config, params=params.to_dict(), fluctuations=fl.to_dict(), fd_check=args.fd_check)
    ctx.write_json(payload, resolved)
    return ExitCode.OK


stability = Command(name="stability", help="Generalized couplings and stability verdict", add_args=add_args, run=run)
