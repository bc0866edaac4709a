from mixstab.constants import ExitCode
from mixstab.droplet import energy_profile, figure_curve, minima_summary
from mixstab.errors import ParameterError
from mixstab.protocol.config_protocol import DropletConfigModel
from mixstab.service.commands import Command, CommandContext, resolved_config

COLUMNS = ["n", "e_correlated", "e_uncorrelated"]

# default grid spans these multiples of the smaller / larger closed-form minimum
GRID_LO = 1e-3
GRID_HI = 2.5


def add_args(parser):
    parser.add_argument("--m", type=float, default=None)
    parser.add_argument("--hbar", type=float, default=None)
    parser.add_argument("--g", type=float, default=None)
    parser.add_argument("--dg", type=float, default=None, help="g12 + g")
    parser.add_argument("--branch", type=str, choices=["minus", "plus"], default=None)
    parser.add_argument("--form", type=str, choices=["full", "asymptotic", "asymptotic_corrected"], default=None)
    parser.add_argument("--coeff", dest="lhy_coeff_mode", type=str, choices=["exact", "paper_rounded"], default=None)
    parser.add_argument("--n-min", type=float, default=None)
    parser.add_argument("--n-max", type=float, default=None)
    parser.add_argument("--points", type=int, default=None)
    parser.add_argument("--log", dest="log_grid", action="store_true", default=None, help="Logarithmic density grid")


def _grid(model: DropletConfigModel, cfg):
    if model.n_min is not None and model.n_max is not None:
        return model.n_min, model.n_max
    minima = [
        energy_profile(cfg.replace(correlated=c)).stationary_point() for c in (True, False)
    ]
    if any(m is None for m in minima):
        raise ParameterError("no closed-form minimum to place the grid: give --n-min and --n-max")
    stars = [m[0] for m in minima]
    lo = model.n_min if model.n_min is not None else GRID_LO * min(stars)
    hi = model.n_max if model.n_max is not None else GRID_HI * max(stars)
    return lo, hi


def run(ctx: CommandContext) -> ExitCode:
    args = ctx.args
    overrides = {
        name: getattr(args, name)
        for name in ("m", "hbar", "g", "dg", "branch", "form", "lhy_coeff_mode", "n_min", "n_max", "points", "log_grid")
        if getattr(args, name) is not None
    }
    model = DropletConfigModel.parse_obj({**ctx.config.droplet.dict(), **overrides})
    cfg = model.to_config()

    lo, hi = _grid(model, cfg)
    curves = figure_curve(cfg, (lo, hi, model.points), log=model.log_grid)
    bracket = None if energy_profile(cfg).stationary_point() is not None else (lo, hi)
    summary = minima_summary(cfg, bracket)

    resolved = resolved_config(ctx.config, droplet={**model.dict(), "n_min": lo, "n_max": hi})
    ctx.write_csv(COLUMNS, curves.rows(), resolved, suffix="_curve.csv")
    ctx.write_json(summary, resolved, suffix="_minima.json")
    return ExitCode.OK


droplet = Command(name="droplet", help="Droplet energy curves and equilibrium densities", add_args=add_args, run=run)
