import math

import numpy as np

from mixstab.bogoliubov import dispersion_table
from mixstab.constants import ExitCode
from mixstab.errors import ParameterError
from mixstab.model import SymmetricParams
from mixstab.model.model_args import add_fluctuation_args, add_mixture_args, resolve_fluctuations, resolve_params
from mixstab.model.params import embed_symmetric
from mixstab.service.commands import Command, CommandContext, resolved_config

COLUMNS = [
    "k", "eps",
    "omega_minus_re", "omega_minus_im",
    "omega_plus_re", "omega_plus_im",
    "deviation",
]


def add_args(parser):
    add_mixture_args(parser)
    add_fluctuation_args(parser)
    parser.add_argument("--eps-start", type=float, default=1e-4, help="First grid point in eps = hbar^2 k^2 / (2 m1 g11 nc1)")
    parser.add_argument("--eps-stop", type=float, default=1e4)
    parser.add_argument("--points", type=int, default=200)
    parser.add_argument("--linear", action="store_true", help="Linear instead of logarithmic grid")
    parser.add_argument(
        "--general", action="store_true",
        help="Use the 4x4 solver for balanced input and report the deviation from the closed forms",
    )


def run(ctx: CommandContext) -> ExitCode:
    args = ctx.args
    params = resolve_params(args, ctx.config.params)
    if isinstance(params, SymmetricParams):
        params = embed_symmetric(params)
    fl = resolve_fluctuations(args, params)

    if args.points < 1 or not 0 < args.eps_start <= args.eps_stop:
        raise ParameterError("grid needs points >= 1 and 0 < eps-start <= eps-stop")
    if args.linear:
        eps_grid = np.linspace(args.eps_start, args.eps_stop, args.points)
    else:
        eps_grid = np.geomspace(args.eps_start, args.eps_stop, args.points)
    scale = math.sqrt(2.0 * params.m1 * params.g11 * params.nc1) / params.hbar
    k_grid = [scale * math.sqrt(float(eps)) for eps in eps_grid]

    rows = []
    worst = 0.0
    for k, eps, om_minus, om_plus, deviation in dispersion_table(k_grid, params, fl, general=args.general):
        if deviation is not None:
            worst = max(worst, deviation)
        rows.append((
            k, eps,
            om_minus.real, om_minus.imag,
            om_plus.real, om_plus.imag,
            math.nan if deviation is None else deviation,
        ))
    if args.general:
        ctx.logger.info(f"max deviation from closed-form branches: {worst:.3e}")

    resolved = resolved_config(
        ctx.config,
        params=params.to_dict(),
        fluctuations=fl.to_dict(),
        grid={"eps_start": args.eps_start, "eps_stop": args.eps_stop, "points": args.points, "log": not args.linear},
        general=args.general,
    )
    ctx.write_csv(COLUMNS, rows, resolved)
    return ExitCode.OK


spectrum = Command(name="spectrum", help="Bogoliubov dispersion on a wavenumber grid", add_args=add_args, run=run)
