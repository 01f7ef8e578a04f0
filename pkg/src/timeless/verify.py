"""Identity and convergence checks run by ``timeless verify``.

Each check returns a :class:`CheckResult` with the worst residual seen.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .config import ScenarioConfig, StateCase
from .embedding import (MAX_COMPOSITE_DIM, DiscreteClock, build_universe_density,
                        discrete_delta_S, relative_state_at_tick, scenario_from_density)
from .evolution import EvolutionWindow, evolve, von_neumann_residual
from .indicators import (delta_S, delta_S_entropy_path, delta_S_max,
                         delta_S_max_dephasing_path, short_time_delta_S,
                         white_noise_predictions)
from .qstate import DensityMatrix, linear_entropy
from .sampling import random_density, random_spectrum
from .spectra import (EnergySpectrum, energy_dispersion, energy_distribution,
                      measurement_entropy_decomposition, quantum_dispersion)

IDENTITY_TOL = 1e-12
SHORT_TIME_RATIO = (240.0, 272.0)
VN_RATIO = (3.8, 4.2)
EMBED_RATIO = (3.0, 5.0)
GLOBAL_ENTROPY_TOL = 5e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"[{status}] {self.name}: max residual {self.residual:.3e}{extra}"


def _max_gap(spec: EnergySpectrum) -> float:
    return float(np.max(np.abs(spec.gaps))) if spec.dim > 1 else 0.0


def check_two_path(sigma, spec, T_values, label="two_path_delta_S") -> CheckResult:
    worst = max(abs(delta_S(sigma, spec, EvolutionWindow(T, spec.hbar))
                    - delta_S_entropy_path(sigma, spec, EvolutionWindow(T, spec.hbar)))
                for T in T_values)
    return CheckResult(label, worst <= IDENTITY_TOL, worst)


def check_bounds(sigma, spec, T_values) -> CheckResult:
    top = delta_S_max(sigma, spec)
    worst = 0.0
    for T in T_values:
        d = delta_S(sigma, spec, EvolutionWindow(T, spec.hbar))
        worst = max(worst, -d, d - top)
    worst = max(worst, 0.0)
    return CheckResult("delta_S_bounds", worst <= IDENTITY_TOL, worst,
                       f"0 <= delta_S <= delta_S_max = {top:.12g}")


def check_dephasing(sigma, spec, label="dephasing_identity") -> CheckResult:
    r = abs(delta_S_max(sigma, spec) - delta_S_max_dephasing_path(sigma, spec))
    return CheckResult(label, r <= IDENTITY_TOL, r)


def check_decomposition(sigma, spec) -> CheckResult:
    total, spread, conditional = measurement_entropy_decomposition(sigma, spec)
    r = abs(total - spread - conditional)
    return CheckResult("decomposition_identity", r <= IDENTITY_TOL, r,
                       f"total {total:.12g} = spread {spread:.12g} + conditional {conditional:.12g}")


def short_time_ratio(sigma, spec, T0: float | None = None) -> tuple[float, float, float]:
    """Discrepancies ``|delta_S - short_time|`` at ``T0`` and ``T0/4`` and their ratio.

    The default ``T0`` puts the largest phase ``|E_n - E_m| T / 2 hbar`` at 0.1.
    """
    gap = _max_gap(spec)
    if T0 is None:
        T0 = 0.2 * spec.hbar / gap if gap > 0 else 1.0

    def disc(T):
        w = EvolutionWindow(T, spec.hbar)
        return abs(delta_S(sigma, spec, w) - short_time_delta_S(sigma, spec, w))

    big, small = disc(T0), disc(T0 / 4)
    return big, small, (big / small if small > 0 else float("inf"))


def check_short_time(sigma, spec) -> CheckResult:
    big, small, ratio = short_time_ratio(sigma, spec)
    if big <= IDENTITY_TOL ** 2:
        return CheckResult("short_time_order", True, big, "no coherences: both sides vanish")
    lo, hi = SHORT_TIME_RATIO
    return CheckResult("short_time_order", lo <= ratio <= hi, small,
                       f"quarter-T discrepancy ratio {ratio:.4f} (want [{lo:g}, {hi:g}])")


def von_neumann_ratio(sigma, spec, t: float = 0.3, dt: float | None = None):
    gap = _max_gap(spec)
    if dt is None:
        dt = 0.02 * spec.hbar / gap if gap > 0 else 0.01
    r1 = von_neumann_residual(sigma, spec, t, dt)
    r2 = von_neumann_residual(sigma, spec, t, dt / 2)
    return r1, r2, (r1 / r2 if r2 > 0 else float("inf"))


def check_von_neumann(sigma, spec) -> CheckResult:
    r1, r2, ratio = von_neumann_ratio(sigma, spec)
    if r1 == 0.0:
        return CheckResult("von_neumann_order", True, 0.0, "stationary state: residual exactly 0")
    lo, hi = VN_RATIO
    return CheckResult("von_neumann_order", lo <= ratio <= hi, r2,
                       f"dt-halving ratio {ratio:.4f} (want [{lo:g}, {hi:g}])")


def check_pure_laws(sigma: DensityMatrix, spec, T_values) -> CheckResult:
    spread = energy_distribution(sigma, spec).linear_entropy
    worst = abs(delta_S_max(sigma, spec) - spread)
    var = energy_dispersion(sigma, spec)
    for T in T_values:
        w = EvolutionWindow(T, spec.hbar)
        worst = max(worst, abs(short_time_delta_S(sigma, spec, w) - T * T * var / (6 * spec.hbar ** 2)))
    return CheckResult("pure_state_laws", worst <= IDENTITY_TOL, worst)


def check_white_noise(case: StateCase, spec) -> CheckResult:
    pred_max, pred_d = white_noise_predictions(case.pure, case.alpha, spec)
    r = max(abs(pred_max - delta_S_max(case.sigma, spec)),
            abs(pred_d - quantum_dispersion(case.sigma, spec)))
    return CheckResult("white_noise_laws", r <= IDENTITY_TOL, r,
                       f"alpha {case.alpha:g}: delta_S_max {pred_max:.12g}, D {pred_d:.12g}")


def embedding_errors(sigma, spec, T: float, Ns, max_dim: int = MAX_COMPOSITE_DIM):
    """Discrete-clock oracle for one state.

    Returns ``(errors, tick_residual, entropy_residual)``: the |discrete - analytic|
    indicator error per N, the worst mismatch between conditional states and
    ``evolve``, and the worst ``|S_L[rho_U] - S_L[sigma_k]|``.
    """
    analytic = delta_S(sigma, spec, EvolutionWindow(T, spec.hbar))
    errors, tick_res, ent_res = [], 0.0, 0.0
    d = spec.dim
    for N in Ns:
        clock = DiscreteClock(N, T)
        rho_u = build_universe_density(scenario_from_density(sigma, spec, clock), max_dim)
        errors.append(abs(discrete_delta_S(rho_u, d, N) - analytic))
        s_global = linear_entropy(rho_u)
        for k, t in enumerate(clock.ticks):
            rel = relative_state_at_tick(rho_u, k, d, N)
            tick_res = max(tick_res, float(np.max(np.abs(rel.matrix - evolve(sigma, spec, t).matrix))))
            ent_res = max(ent_res, abs(s_global - linear_entropy(rel)))
    return errors, tick_res, ent_res


def check_embedding(sigma, spec, T: float, Ns, max_dim: int = MAX_COMPOSITE_DIM) -> list[CheckResult]:
    errors, tick_res, ent_res = embedding_errors(sigma, spec, T, Ns, max_dim)
    lo, hi = EMBED_RATIO
    # error ratios normalized to an N-doubling step, so non-doubling N lists still compare to 4
    Ns = list(Ns)
    ratios = [(a / b) * 4.0 / (n2 / n1) ** 2
              for a, b, n1, n2 in zip(errors, errors[1:], Ns, Ns[1:]) if b > 0]
    if max(errors) <= IDENTITY_TOL:
        conv = CheckResult("embedding_convergence", True, max(errors), "no coherences: exact at every N")
    elif len(errors) < 2:
        conv = CheckResult("embedding_convergence", True, errors[0],
                           f"single N={Ns[0]}, no ratio to test")
    else:
        ok = len(ratios) == len(errors) - 1 and all(lo <= r <= hi for r in ratios)
        conv = CheckResult("embedding_convergence", ok, errors[-1],
                           "N-doubling ratios " + ", ".join(f"{r:.3f}" for r in ratios)
                           + f" (want [{lo:g}, {hi:g}])")
    return [
        conv,
        CheckResult("embedding_relative_states", tick_res <= IDENTITY_TOL, tick_res),
        CheckResult("embedding_global_entropy", ent_res <= GLOBAL_ENTROPY_TOL, ent_res),
    ]


def check_random_batch(n: int, seed: int, max_d: int = 6) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    two, deph, dec = 0.0, 0.0, 0.0
    for _ in range(n):
        d = int(rng.integers(1, max_d + 1))
        sigma = random_density(rng, d, rank=int(rng.integers(1, d + 1)))
        spec = random_spectrum(rng, d)
        w = EvolutionWindow(float(rng.uniform(0, 20)), spec.hbar)
        two = max(two, abs(delta_S(sigma, spec, w) - delta_S_entropy_path(sigma, spec, w)))
        deph = max(deph, abs(delta_S_max(sigma, spec) - delta_S_max_dephasing_path(sigma, spec)))
        total, spread, cond = measurement_entropy_decomposition(sigma, spec)
        dec = max(dec, abs(total - spread - cond))
    tag = f"{n} random instances, seed {seed}"
    return [
        CheckResult("random_two_path_delta_S", two <= IDENTITY_TOL, two, tag),
        CheckResult("random_dephasing_identity", deph <= IDENTITY_TOL, deph, tag),
        CheckResult("random_decomposition_identity", dec <= IDENTITY_TOL, dec, tag),
    ]


def run_checks(cfg: ScenarioConfig, seed: int = 0, max_dim: int = MAX_COMPOSITE_DIM) -> list[CheckResult]:
    spec = cfg.spec
    Ts = cfg.T_values
    results: list[CheckResult] = []
    for i, case in enumerate(cfg.cases):
        sigma = case.sigma
        start = len(results)
        results += [
            check_two_path(sigma, spec, Ts),
            check_bounds(sigma, spec, Ts),
            check_dephasing(sigma, spec),
            check_decomposition(sigma, spec),
            check_short_time(sigma, spec),
            check_von_neumann(sigma, spec),
        ]
        if linear_entropy(sigma) <= IDENTITY_TOL:
            results.append(check_pure_laws(sigma, spec, Ts))
        if case.alpha is not None and case.pure is not None:
            results.append(check_white_noise(case, spec))
        if cfg.embedding_enabled:
            T = max(Ts)
            results += check_embedding(sigma, spec, T, cfg.embedding_N, max_dim)
        if len(cfg.cases) > 1:
            label = f"alpha={case.alpha:g}" if case.alpha is not None else f"case{i}"
            results[start:] = [replace(r, name=f"{label}/{r.name}") for r in results[start:]]
    if cfg.random_instances:
        results += check_random_batch(cfg.random_instances, seed)
    return results
