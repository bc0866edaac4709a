"""
Self-checks run by ``mixstab validate``: closed-form anchors, analytic-vs-numeric agreement and the
droplet ratio identities. Each oracle returns (passed, detail).
"""

import dataclasses
import logging
import math
import time
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from mixstab.bogoliubov import branch_points, k_of_eps, omega_tilde, solve_bdg, symmetry_breaking_gap
from mixstab.droplet import DropletConfig, energy_full, energy_terms, equilibrium, minima_summary
from mixstab.fluctuations import closed_form_intraspecies, quadrature_intraspecies
from mixstab.fluctuations.quadrature import QUADRATURE, FluctuationQuadratureSettings
from mixstab.model import BranchLabel, FluctuationSet, MixtureParams, SymmetricParams
from mixstab.model.params import embed_symmetric
from mixstab.numerics import integrate_semi_infinite
from mixstab.protocol.report_protocol import OracleOutcome, ValidationSummary
from mixstab.stability import chemical_potentials, generalized_couplings, gradient_fd, hessian_fd, stability_check
from mixstab.stability.report import Verdict

logger = logging.getLogger(__name__)

OracleResult = Tuple[bool, str]

SEED = 20240607


@dataclasses.dataclass(frozen=True)
class Oracle:
    name: str
    description: str
    fn: Callable[[], OracleResult]


# A global registry for all oracles, in registration order
oracles: Dict[str, Oracle] = {}


def register_oracle(name: str, description: str = "", override: bool = False):
    """Register an oracle function under ``name``."""

    def decorator(fn: Callable[[], OracleResult]) -> Callable[[], OracleResult]:
        if not override:
            assert name not in oracles, f"{name} has been registered."
        oracles[name] = Oracle(name=name, description=description or (fn.__doc__ or "").strip(), fn=fn)
        return fn

    return decorator


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


@register_oracle("lhy_sum_coefficient", "(N~ + M~)/gamma at lambda = 0 equals -0.116812")
def lhy_sum_coefficient() -> OracleResult:
    nt, mt = closed_form_intraspecies(BranchLabel.MINUS, 0.0, 1.0)
    value = nt + mt
    return abs(value - (-0.116812)) <= 1e-6, f"(N~+M~)/gamma={value:.9f}"


@register_oracle("quadrature_anchor", "IR-safe combination integrates to -1/pi")
def quadrature_anchor() -> OracleResult:
    # v^2 - u v = (k / sqrt(k^2 + 4) - 1) / 2 at hbar = m = g n_c = 1, written without cancellation
    def f(k: float) -> float:
        root = math.sqrt(k * k + 4.0)
        return -2.0 / ((k + root) * root)

    direct = integrate_semi_infinite(f, scale=2.0).value / math.pi
    sym = SymmetricParams(m=1.0, g=1.0, lam=0.0, n=1.0, nc=1.0)
    via_branch = quadrature_intraspecies(
        sym, BranchLabel.MINUS, settings=FluctuationQuadratureSettings(mode=QUADRATURE), individual=False
    ).sum_ir_safe
    target = -1.0 / math.pi
    ok = abs(direct - target) <= 1e-9 and abs(via_branch - target) <= 1e-9
    return ok, f"direct={direct:.12f} branch={via_branch:.12f} target={target:.12f}"


@register_oracle("bdg_vs_analytic", "4x4 frequencies match the balanced branches to 1e-10")
def bdg_vs_analytic() -> OracleResult:
    worst_freq = worst_norm = 0.0
    eps_grid = np.geomspace(1e-4, 1e4, 200)
    for lam in (-0.99, -0.5, 0.0, 0.5, 0.99):
        sym = SymmetricParams(m=1.0, g=1.0, lam=lam, n=1.0, nc=1.0)
        params = embed_symmetric(sym)
        minus = branch_points(eps_grid, BranchLabel.MINUS, lam)
        plus = branch_points(eps_grid, BranchLabel.PLUS, lam)
        for p_minus, p_plus in zip(minus, plus):
            modes = solve_bdg(k_of_eps(p_minus.eps, sym), params)
            got = sorted(omega_tilde(m, params).real for m in modes)
            want = sorted([p_minus.omega_tilde.real, p_plus.omega_tilde.real])
            if len(got) != 2:
                return False, f"lambda={lam} eps={p_minus.eps:.3e}: {len(got)} modes"
            worst_freq = max(worst_freq, *(_rel(a, b) for a, b in zip(got, want)))
            worst_norm = max(worst_norm, *(abs(m.norm - 1.0) for m in modes))
    ok = worst_freq <= 1e-10 and worst_norm <= 1e-9
    return ok, f"max rel freq err={worst_freq:.2e} max norm err={worst_norm:.2e}"


def random_admissible(rng: np.random.Generator) -> Tuple[MixtureParams, FluctuationSet]:
    """Random parameters and fluctuations with n_i = nc_i + n~_ii."""
    nc1, nc2 = rng.uniform(0.5, 2.0, size=2)
    fl = FluctuationSet(
        nt11=rng.uniform(0.0, 0.05), nt22=rng.uniform(0.0, 0.05), nt12=rng.uniform(-0.2, 0.2),
        mt11=rng.uniform(-0.1, 0.0), mt22=rng.uniform(-0.1, 0.0), mt12=rng.uniform(-0.2, 0.2),
    )
    params = MixtureParams(
        m1=rng.uniform(0.5, 2.0), m2=rng.uniform(0.5, 2.0),
        g11=rng.uniform(0.5, 2.0), g22=rng.uniform(0.5, 2.0), g12=rng.uniform(-1.0, 1.0),
        n1=nc1 * (1.0 + fl.nt11), n2=nc2 * (1.0 + fl.nt22),
        nc1=nc1, nc2=nc2,
    )
    return params, fl


@register_oracle("fd_vs_analytic", "finite differences of E reproduce mu and (G1, G2, G12)")
def fd_vs_analytic() -> OracleResult:
    rng = np.random.default_rng(SEED)
    worst_grad = worst_hess = 0.0
    for _ in range(100):
        params, fl = random_admissible(rng)
        mu = np.array(chemical_potentials(params, fl))
        g1, g2, g12 = generalized_couplings(params, fl)
        hess = np.array([[g1, g12], [g12, g2]])
        worst_grad = max(worst_grad, float(np.max(np.abs(gradient_fd(params, fl) - mu)) / np.max(np.abs(mu))))
        worst_hess = max(worst_hess, float(np.max(np.abs(hessian_fd(params, fl) - hess)) / np.max(np.abs(hess))))
    ok = worst_grad <= 1e-8 and worst_hess <= 1e-6
    return ok, f"gradient rel err={worst_grad:.2e} hessian rel err={worst_hess:.2e}"


def classic_verdict(g11: float, g22: float, g12: float) -> Verdict:
    collapse = not (g11 > 0 and g22 > 0)
    separation = not (g11 * g22 - g12 * g12 > 0)
    if collapse and separation:
        return Verdict.BOTH
    if collapse:
        return Verdict.COLLAPSE
    if separation:
        return Verdict.SEPARATION
    return Verdict.STABLE


@register_oracle("classic_limit", "zero fluctuations reduce to g11 > 0, g22 > 0, g11 g22 > g12^2")
def classic_limit() -> OracleResult:
    disagreements = 0
    for g in np.linspace(2.0 / 101, 2.0, 101):
        for lam in np.linspace(-1.5, 1.5, 101):
            g12 = float(lam * g)
            params = MixtureParams(m1=1.0, m2=1.0, g11=float(g), g22=float(g), g12=g12, n1=1.0, n2=1.0, nc1=1.0, nc2=1.0)
            if stability_check(params).verdict is not classic_verdict(float(g), float(g), g12):
                disagreements += 1
    return disagreements == 0, f"{disagreements} disagreements on 101x101"


@register_oracle("droplet_ratios", "leading-order minus branch: n ratio 4, energy ratio 16")
def droplet_ratios() -> OracleResult:
    rng = np.random.default_rng(SEED + 1)
    worst_n = worst_e = 0.0
    for _ in range(50):
        g = rng.uniform(0.2, 5.0)
        cfg = DropletConfig(
            m=rng.uniform(0.2, 5.0), hbar=rng.uniform(0.5, 2.0), g=g, dg=g * rng.uniform(1e-3, 0.1),
            branch=BranchLabel.MINUS,
        )
        summary = minima_summary(cfg)
        worst_n = max(worst_n, abs(summary["ratios"]["n"] - 4.0))
        worst_e = max(worst_e, abs(summary["ratios"]["e"] - 16.0))
    ok = worst_n <= 1e-9 and worst_e <= 1e-8
    return ok, f"max |n ratio - 4|={worst_n:.2e} max |e ratio - 16|={worst_e:.2e}"


@register_oracle("figure_regeneration", "m = hbar = g = 1, dg = 0.01: n* = 2464, plus depth ratio 1e-8")
def figure_regeneration() -> OracleResult:
    cfg = DropletConfig(dg=0.01, lhy_coeff_mode="paper_rounded")
    minus = equilibrium(cfg)
    n_ok = _rel(minus.n_star, 2464.0) <= 1e-3 and _rel(minus.n_star, minus.closed_form_n_star) <= 1e-3
    plus = cfg.replace(branch=BranchLabel.PLUS)
    depth = equilibrium(plus.replace(correlated=True)).e_star / equilibrium(plus.replace(correlated=False)).e_star
    depth_ok = _rel(depth, 1e-8) <= 1e-2
    return n_ok and depth_ok, f"n*={minus.n_star:.4f} depth ratio={depth:.4e}"


@register_oracle("symmetry_breaking", "omega~_-(-lambda) = omega~_+(lambda) iff N~12 + M~12 = 0")
def symmetry_breaking() -> OracleResult:
    worst = 0.0
    for eps in np.geomspace(1e-4, 1e4, 81):
        for lam in np.linspace(-0.99, 0.99, 41):
            worst = max(worst, abs(symmetry_breaking_gap(float(eps), float(lam), 0.0)))
    broken = symmetry_breaking_gap(1.0, 0.5, -0.3).real
    expected = math.sqrt(3.7) - 2.0
    ok = worst <= 1e-12 and abs(broken - expected) <= 1e-12
    return ok, f"max unbroken gap={worst:.1e} broken gap={broken:.9f}"


@register_oracle("branch_cancellation", "lambda = -1: plus correlated energy vanishes, minus LHY doubles")
def branch_cancellation() -> OracleResult:
    plus = DropletConfig(dg=0.0, branch=BranchLabel.PLUS, correlated=True, form="full")
    minus = plus.replace(branch=BranchLabel.MINUS)
    grid = np.geomspace(1e-2, 1e4, 50)
    worst_plus = max(abs(energy_full(float(n), plus)) for n in grid)
    ratios = [
        energy_terms(float(n), minus)[1] / energy_terms(float(n), minus.replace(correlated=False))[1]
        for n in grid
    ]
    ok = worst_plus == 0.0 and all(r == 2.0 for r in ratios)
    return ok, f"max |E+|={worst_plus:.1e} LHY ratios in [{min(ratios)}, {max(ratios)}]"


def run_oracles(names: Optional[Iterable[str]] = None) -> ValidationSummary:
    selected: List[Oracle] = [oracles[n] for n in names] if names is not None else list(oracles.values())
    outcomes = []
    for oracle in selected:
        start = time.perf_counter()
        try:
            passed, detail = oracle.fn()
        except Exception as e:  # a crashing oracle is a failed oracle
            logger.exception(f"oracle {oracle.name} raised")
            passed, detail = False, f"{type(e).__name__}: {e}"
        elapsed = 1000.0 * (time.perf_counter() - start)
        logger.info(f"oracle {oracle.name}: {'pass' if passed else 'FAIL'} ({detail})")
        outcomes.append(OracleOutcome(name=oracle.name, passed=passed, detail=detail, elapsed_ms=elapsed))
    passed_count = sum(o.passed for o in outcomes)
    return ValidationSummary(
        passed=passed_count == len(outcomes),
        outcomes=outcomes,
        counts={"passed": passed_count, "failed": len(outcomes) - passed_count},
    )
