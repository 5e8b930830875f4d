"""Self-verification suite: every module invariant, checked end to end.

Run via ``qurel verify``. Prints one [PASS]/[FAIL] line per check plus a
few informational notes, and exits nonzero if anything fails. The whole
suite finishes in well under a minute.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .errors import NullBranch
from .linalg import (
    I2,
    SIGMA_X,
    SIGMA_Z,
    eig_hermitian,
    exp_hermitian_scaled,
    kron,
    kron_all,
    partial_trace,
    trace_product,
)
from .measurements import (
    Observable,
    condition_on_outcome,
    conditional_stats,
    expectation,
    projective_decomposition,
    sequential_decomposition,
    variance,
)
from .model import ModelParams, T_MIN, closed_form_concurrence, closed_form_mixedness, thermal_state
from .relations import MeasurementSetup, l_tra, qc_vur, qm_eur, schrodinger_bound, xz_control_setup
from .states import DensityOperator, concurrence_two_qubit, mixedness
from .sweep import check_single_valued, evaluate_point, figure_preset, match_mixedness, run_sweep

GRID_D = (0.0, 0.5, 1.0, 2.0)
GRID_J = (0.5, -0.5, 1.0, -1.0, 2.0, -2.0)
GRID_T = (0.2, 0.5, 1.0, 2.0, 5.0)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def _random_density(rng, dims) -> DensityOperator:
    n = int(np.prod(dims))
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = g @ g.conj().T
    return DensityOperator(m / np.trace(m).real, tuple(dims))


def _random_hermitian(rng, n: int) -> np.ndarray:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2.0


def _closed_form_matrix(p: ModelParams) -> np.ndarray:
    """Analytic thermal matrix, written in shift-free form (grid betas are
    moderate, so the plain exponentials are safe here)."""
    beta, j, delta = p.beta, p.j, p.delta
    r11 = math.exp(-beta * j / 2.0)
    r22 = math.exp(beta * (j - delta) / 2.0) * (1.0 + math.exp(beta * delta)) / 2.0
    r23 = (np.exp(1j * p.theta_dm)
           * math.exp(beta * (j - delta) / 2.0) * (1.0 - math.exp(beta * delta)) / 2.0)
    z = 2.0 * math.exp(-beta * j / 2.0) * (1.0 + math.exp(beta * j) * math.cosh(beta * delta / 2.0))
    out = np.array([[r11, 0, 0, 0],
                    [0, r22, r23, 0],
                    [0, np.conj(r23), r22, 0],
                    [0, 0, 0, r11]], dtype=complex)
    return out / z


def check_kernel(rng) -> list[Check]:
    checks = []
    worst = 0.0
    for _ in range(20):
        a, b, c = (_random_hermitian(rng, 2) for _ in range(3))
        worst = max(worst, float(np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c))))))
    checks.append(Check("kron associativity", worst <= 1e-13, f"max dev {worst:.2e}"))

    worst = 0.0
    for _ in range(20):
        a, b = _random_hermitian(rng, 3), _random_hermitian(rng, 4)
        worst = max(worst, abs(np.trace(kron(a, b)) - np.trace(a) * np.trace(b)))
    checks.append(Check("trace of kron factorizes", worst <= 1e-13, f"max dev {worst:.2e}"))

    m = kron_all(*(_random_hermitian(rng, 2) for _ in range(3)))
    step = partial_trace(partial_trace(m, (2, 2, 2), (0, 1)), (2, 2), (0,))
    full = partial_trace(m, (2, 2, 2), (0,))
    dev = float(np.max(np.abs(step - full))) + abs(np.trace(step) - np.trace(m))
    checks.append(Check("partial trace chains and preserves trace", dev <= 1e-12, f"dev {dev:.2e}"))

    worst = 0.0
    for _ in range(10):
        h = _random_hermitian(rng, 8)
        w, v = eig_hermitian(h)
        worst = max(worst, float(np.max(np.abs((v * w) @ v.conj().T - h))),
                    float(np.max(np.abs(v.conj().T @ v - np.eye(8)))),
                    abs(w.sum() - np.trace(h).real))
    checks.append(Check("eigendecomposition reconstructs to 1e-10", worst <= 1e-10, f"max residual {worst:.2e}"))

    worst = 0.0
    for _ in range(10):
        h = _random_hermitian(rng, 4)
        prod = exp_hermitian_scaled(h, 0.7) @ exp_hermitian_scaled(h, -0.7)
        worst = max(worst, float(np.max(np.abs(prod - np.eye(4)))))
    checks.append(Check("exp(s m) exp(-s m) = identity", worst <= 1e-10, f"max dev {worst:.2e}"))
    return checks


def check_model() -> list[Check]:
    checks = []
    worst_state = worst_gamma = worst_conc = worst_marg = 0.0
    for d in GRID_D:
        for j in GRID_J:
            for t in GRID_T:
                p = ModelParams(d, j, t)
                rho = thermal_state(p)
                worst_state = max(worst_state, float(np.max(np.abs(rho.matrix - _closed_form_matrix(p)))))
                worst_gamma = max(worst_gamma, abs(closed_form_mixedness(p) - mixedness(rho)))
                worst_conc = max(worst_conc, abs(closed_form_concurrence(p) - concurrence_two_qubit(rho)))
                for side in (0, 1):
                    worst_marg = max(worst_marg, float(np.max(np.abs(
                        rho.reduced(side).matrix - I2 / 2.0))))
    checks.append(Check("thermal state matches analytic elements", worst_state <= 1e-10,
                        f"max dev {worst_state:.2e} over {len(GRID_D)*len(GRID_J)*len(GRID_T)} points"))
    checks.append(Check("closed-form mixedness = 1 - Tr(rho^2)", worst_gamma <= 1e-10,
                        f"max dev {worst_gamma:.2e}"))
    checks.append(Check("closed-form concurrence = spin-flip concurrence", worst_conc <= 1e-10,
                        f"max dev {worst_conc:.2e}"))
    checks.append(Check("both reduced states are I/2", worst_marg <= 1e-12, f"max dev {worst_marg:.2e}"))

    setup = xz_control_setup()
    worst = 0.0
    for k in (0.5, 2.0, 10.0):
        for (d, j, t) in ((1.0, 1.0, 1.0), (0.5, -1.0, 0.7), (2.0, 2.0, 3.0)):
            base = evaluate_point(ModelParams(d, j, t), setup)
            scaled = evaluate_point(ModelParams(d, k * j, k * t), setup)
            for fld in ("gamma", "concurrence", "lhs", "w"):
                worst = max(worst, abs(getattr(base, fld) - getattr(scaled, fld)))
    checks.append(Check("scalars invariant under (j, t) -> (k j, k t)", worst <= 1e-10,
                        f"max dev {worst:.2e}"))
    return checks


def check_conditional(rng) -> list[Check]:
    checks = []
    worst = 0.0
    for i in range(200):
        dims = (2, 2) if i % 2 == 0 else (2, 2, 2)
        rho = _random_density(rng, dims)
        a, c = rng.permutation(len(dims))[:2]
        q = Observable(_random_hermitian(rng, dims[a]), int(a))
        o = Observable(_random_hermitian(rng, dims[c]), int(c))
        stats = conditional_stats(rho, q, o)
        worst = max(worst, abs(stats.e_of_v + stats.v_of_e - variance(rho, q)))
    checks.append(Check("law of total variance (200 random cases)", worst <= 1e-10,
                        f"max dev {worst:.2e}"))

    worst = 0.0
    neg = 0.0
    for i in range(100):
        n_ctrl = 2 if i % 2 == 0 else 3
        dims = (2,) * (n_ctrl + 1)
        rho = _random_density(rng, dims)
        q = Observable(_random_hermitian(rng, 2), 0)
        controls = [Observable(_random_hermitian(rng, 2), s) for s in range(1, n_ctrl + 1)]
        seq = sequential_decomposition(rho, q, controls)
        total = seq.residual + seq.first_term + sum(seq.nested)
        worst = max(worst, abs(total - variance(rho, q)))
        neg = min(neg, seq.residual, seq.first_term, *seq.nested)
    checks.append(Check("chained decomposition telescopes to V(Q) (100 cases)", worst <= 1e-9,
                        f"max dev {worst:.2e}"))
    checks.append(Check("decomposition terms nonnegative", neg >= -1e-10, f"min term {neg:.2e}"))

    worst_p = worst_e = 0.0
    for _ in range(50):
        rho = _random_density(rng, (2, 2))
        q = Observable(_random_hermitian(rng, 2), 0)
        o = Observable(_random_hermitian(rng, 2), 1)
        total_p = 0.0
        total_e = 0.0
        for _, proj in projective_decomposition(o).outcomes:
            try:
                prob, cond = condition_on_outcome(rho, proj, 1)
            except NullBranch:
                continue
            total_p += prob
            total_e += prob * trace_product(cond.matrix, q.matrix).real
        worst_p = max(worst_p, abs(total_p - 1.0))
        worst_e = max(worst_e, abs(total_e - expectation(rho, q)))
    checks.append(Check("branch probabilities sum to 1", worst_p <= 1e-12, f"max dev {worst_p:.2e}"))
    checks.append(Check("branch means average to <Q>", worst_e <= 1e-12, f"max dev {worst_e:.2e}"))
    return checks


def check_inequalities(rng) -> list[Check]:
    checks = []
    worst = 0.0
    for _ in range(500):
        rho = _random_density(rng, (2,))
        a = Observable(_random_hermitian(rng, 2), 0)
        b = Observable(_random_hermitian(rng, 2), 0)
        o = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        theta = rng.uniform(0.0, 2.0 * np.pi)
        bound = l_tra(rho, a, b, o, theta)
        total = variance(rho, a) + variance(rho, b)
        worst = max(worst, bound - total)
    checks.append(Check("additive bound holds (500 random cases)", worst <= 1e-9,
                        f"max excess {worst:.2e}"))

    worst = 0.0
    for _ in range(500):
        rho = _random_density(rng, (2,))
        a = Observable(_random_hermitian(rng, 2), 0)
        b = Observable(_random_hermitian(rng, 2), 0)
        lhs, rhs = schrodinger_bound(rho, a, b)
        worst = max(worst, rhs - lhs)
    checks.append(Check("product bound holds (500 random cases)", worst <= 1e-10,
                        f"max excess {worst:.2e}"))

    setup = xz_control_setup()
    worst_ineq = worst_bridge = worst_eur = 0.0
    min_ratio = np.inf
    for d in GRID_D:
        for j in GRID_J:
            for t in GRID_T:
                rho = thermal_state(ModelParams(d, j, t))
                res = qc_vur(rho, setup)
                worst_ineq = max(worst_ineq, res.w - res.lhs)
                total_var = sum(variance(rho, q) for q, _ in setup.pairs)
                worst_bridge = max(worst_bridge, abs(res.lhs + res.subtracted - total_var))
                if res.u is not None and res.w > 1e-6:
                    min_ratio = min(min_ratio, res.u)
                eur = qm_eur(rho, Observable(SIGMA_X, 0), Observable(SIGMA_Z, 0))
                worst_eur = max(worst_eur, eur.rhs - (eur.h_rb + eur.h_sb))
    checks.append(Check("assisted bound holds on the model grid", worst_ineq <= 1e-9,
                        f"max excess {worst_ineq:.2e}"))
    checks.append(Check("lhs + subtracted = total variance on the grid", worst_bridge <= 1e-9,
                        f"max dev {worst_bridge:.2e}"))
    checks.append(Check("entropic bound holds on the model grid", worst_eur <= 1e-9,
                        f"max excess {worst_eur:.2e}"))
    checks.append(Check("tightness ratio >= 1 where bound positive", min_ratio >= 1.0 - 1e-9,
                        f"min ratio {min_ratio:.6f}"))

    worst_bridge = worst_ineq = 0.0
    for i in range(200):
        n_ctrl = 1 + i % 3
        dims = (2,) * (n_ctrl + 1)
        rho = _random_density(rng, dims)
        pairs = []
        for _ in range(2):
            q = Observable(_random_hermitian(rng, 2), 0)
            controls = tuple(Observable(_random_hermitian(rng, 2), s)
                             for s in range(1, n_ctrl + 1))
            pairs.append((q, controls))
        o = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        setup_i = MeasurementSetup(pairs=tuple(pairs), ltra_operator=o,
                                   theta=rng.uniform(0.0, 2.0 * np.pi))
        res = qc_vur(rho, setup_i)
        total_var = sum(variance(rho, q) for q, _ in pairs)
        worst_bridge = max(worst_bridge, abs(res.lhs + res.subtracted - total_var))
        worst_ineq = max(worst_ineq, res.w - res.lhs)
    checks.append(Check("assisted bound holds on random 2-4 qubit cases", worst_ineq <= 1e-9,
                        f"max excess {worst_ineq:.2e}"))
    checks.append(Check("bridge identity on random 2-4 qubit cases", worst_bridge <= 1e-9,
                        f"max dev {worst_bridge:.2e}"))
    return checks


def check_reference_points() -> tuple[list[Check], list[str]]:
    checks = []
    notes = []
    setup = xz_control_setup()

    hot = evaluate_point(ModelParams(1.0, 1.0, 1e6), setup)
    ok = (abs(hot.lhs - 2.0) <= 1e-5
          and abs(hot.w - (1.0 + math.cos(0.5))) <= 1e-5
          and abs(hot.u - 2.0 / (1.0 + math.cos(0.5))) <= 1e-4)
    checks.append(Check("high-temperature limit (lhs = 2, w = 1 + cos 0.5)", ok,
                        f"lhs {hot.lhs:.8f}, w {hot.w:.8f}, u {hot.u:.8f}"))

    spot = evaluate_point(ModelParams(1.0, 1.0, 1.0), setup)
    ok = (abs(spot.lhs - 1.205631622584718) <= 1e-9
          and abs(spot.w - 1.0832141844750907) <= 1e-9
          and abs(spot.u - 1.1130131416890086) <= 1e-9)
    checks.append(Check("reference point (d=1, j=1, t=1)", ok,
                        f"lhs {spot.lhs:.8f}, w {spot.w:.8f}, u {spot.u:.8f}"))

    cold = evaluate_point(ModelParams(0.0, 1.0, T_MIN), setup)
    ok = cold.gamma <= 1e-5 and cold.lhs <= 1e-5 and abs(cold.w) <= 0.13
    checks.append(Check("cold antiferromagnetic point (gamma, lhs vanish; |w| <= 0.13)", ok,
                        f"gamma {cold.gamma:.2e}, lhs {cold.lhs:.2e}, w {cold.w:.8f}"))
    notes.append(
        f"note: at (d=0, j=1, t={T_MIN}) the unclamped bound is w = {cold.w:.12f} "
        f"= cos(0.5) - 1; the zero-mixedness point gives a negative bound, not a "
        f"vanishing one, under the fixed theta = 0.5 convention (lhs and gamma do vanish).")
    return checks, notes


def check_mixedness_matching(setup) -> list[Check]:
    checks = []
    t_back = match_mixedness(1.0, 2.0, closed_form_mixedness(ModelParams(1.0, 1.0, 1.0)))
    checks.append(Check("matched mixedness respects coupling rescaling", abs(t_back - 2.0) <= 1e-8,
                        f"t = {t_back!r}, expected 2"))

    worst_w = worst_u = 0.0
    for d in (0.0, 1.0, 2.0):
        for js in ((0.5, 1.0, 2.0), (-0.5, -1.0, -2.0)):
            res = check_single_valued(d, js, setup)
            worst_w = max(worst_w, res.w_spread)
            worst_u = max(worst_u, res.u_spread)
    checks.append(Check("bound single-valued in (mixedness, d) at fixed coupling sign",
                        worst_w <= 1e-6 and worst_u <= 1e-6,
                        f"w spread {worst_w:.2e}, u spread {worst_u:.2e}"))

    spread = 0.0
    for t_ref in np.logspace(np.log10(0.2), np.log10(5.0), 20):
        target = closed_form_mixedness(ModelParams(1.0, 1.0, float(t_ref)))
        w_pos = qc_vur(thermal_state(ModelParams(1.0, 1.0, float(t_ref))), setup).w
        t_neg = match_mixedness(1.0, -1.0, target)
        w_neg = qc_vur(thermal_state(ModelParams(1.0, -1.0, t_neg)), setup).w
        spread = max(spread, abs(w_pos - w_neg))
    checks.append(Check("opposite coupling signs give different bound at matched mixedness",
                        spread > 1e-3, f"max spread {spread:.2e}"))
    return checks


def check_tightness_trend() -> list[Check]:
    grid, setup, _ = figure_preset("fig7b")
    records = run_sweep(grid, setup)
    defined = [r for r in records if r.u is not None and r.u_eur is not None and r.error is None]
    better = sum(1 for r in records if r.u is not None and r.u_eur is not None and r.u < r.u_eur)
    frac = better / len(defined)
    return [Check("variance-based tightness beats entropic on most of the map",
                  frac > 0.5, f"fraction {frac:.4f} over {len(defined)} points")]


def run_all(verbose_print=print) -> int:
    """Run the whole suite; returns 0 on success, 2 on any failure."""
    t0 = time.time()
    rng = np.random.default_rng(20240817)
    sections = [
        ("matrix kernel", lambda: check_kernel(rng)),
        ("thermal model", check_model),
        ("conditional statistics", lambda: check_conditional(rng)),
        ("uncertainty bounds", lambda: check_inequalities(rng)),
    ]
    all_ok = True
    for title, fn in sections:
        verbose_print(f"-- {title}")
        for chk in fn():
            all_ok &= chk.ok
            verbose_print(f"  [{'PASS' if chk.ok else 'FAIL'}] {chk.name}  ({chk.detail})")

    verbose_print("-- reference points")
    checks, notes = check_reference_points()
    for chk in checks:
        all_ok &= chk.ok
        verbose_print(f"  [{'PASS' if chk.ok else 'FAIL'}] {chk.name}  ({chk.detail})")
    for note in notes:
        verbose_print(f"  {note}")

    verbose_print("-- mixedness matching")
    for chk in check_mixedness_matching(xz_control_setup()):
        all_ok &= chk.ok
        verbose_print(f"  [{'PASS' if chk.ok else 'FAIL'}] {chk.name}  ({chk.detail})")

    verbose_print("-- tightness comparison map")
    for chk in check_tightness_trend():
        all_ok &= chk.ok
        verbose_print(f"  [{'PASS' if chk.ok else 'FAIL'}] {chk.name}  ({chk.detail})")

    verbose_print(f"{'all checks passed' if all_ok else 'FAILURES detected'} "
                  f"in {time.time() - t0:.1f} s")
    return 0 if all_ok else 2
