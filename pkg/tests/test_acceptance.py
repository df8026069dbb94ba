"""Exit criteria. Each test records one PASS/FAIL line in the terminal summary."""

import itertools
import time

import numpy as np
import pytest

from conftest import random_density, random_hermitian
from qbattery.ergotropy import ergotropy
from qbattery.harness import figure_config, run_sweep
from qbattery.harness.sweep import evaluate_point
from qbattery.lindblad import liouvillian
from qbattery.model import build_hamiltonian, preset
from qbattery.steady_state import (
    evolve,
    gibbs_state,
    relaxation_time,
    residual,
    stable_step,
    steady_state,
    trace_distance,
)

pytestmark = pytest.mark.acceptance


def two_cell_w(t_l, t_r):
    return evaluate_point(preset("two_cell_fig2", {"T_L": t_l, "T_R": t_r}))[0]


def three_cell_w(t_l, t_m, t_r):
    return evaluate_point(preset("three_cell_fig4", {"T_L": t_l, "T_M": t_m, "T_R": t_r}))[0]


def test_1_equilibrium_null(criterion):
    start = time.perf_counter()
    ws = [two_cell_w(t, t) for t in (0.25, 0.5, 0.75, 1.0)]
    elapsed = time.perf_counter() - start
    worst = max(abs(w) for w in ws)
    criterion(1, "equilibrium null", worst < 1e-8 and elapsed < 1.0,
              f"max |W| = {worst:.2e} (< 1e-8), {elapsed:.2f} s (< 1 s)")


def test_2_left_right_symmetry(criterion):
    start = time.perf_counter()
    grid = np.linspace(0, 2, 9)
    w = np.array([[two_cell_w(a, b) for b in grid] for a in grid])
    elapsed = time.perf_counter() - start
    worst = float(np.abs(w - w.T).max())
    criterion(2, "L<->R symmetry", worst < 1e-8 and elapsed < 5.0,
              f"max |W(a,b) - W(b,a)| = {worst:.2e} (< 1e-8), {elapsed:.2f} s (< 5 s)")


def test_3_gradient_growth(criterion):
    low = np.round(np.arange(0, 0.25 + 1e-9, 0.05), 10)
    high = np.round(np.arange(0.25, 2 + 1e-9, 0.05), 10)
    w_low = np.array([two_cell_w(t, 0.25) for t in low])
    w_high = np.array([two_cell_w(t, 0.25) for t in high])
    decreasing = bool(np.all(np.diff(w_low) < 0))
    increasing = bool(np.all(np.diff(w_high) > 0))
    criterion(3, "gradient growth", decreasing and increasing and w_low[0] > 0,
              f"W(T_L=0) = {w_low[0]:.3e} (> 0), decreasing on [0, 0.25]: {decreasing}, "
              f"increasing on [0.25, 2]: {increasing}, max |W| = {np.abs(np.r_[w_low, w_high]).max():.2e}")


def test_4_thermalization_oracle(criterion):
    start = time.perf_counter()
    spec = preset("three_cell_fig4", {"T_L": 0.7, "T_M": 0.7, "T_R": 0.7})
    h = build_hamiltonian(spec)
    rho = steady_state(liouvillian(spec))
    dist = trace_distance(rho, gibbs_state(h, 0.7))
    w = ergotropy(rho, h).ergotropy
    elapsed = time.perf_counter() - start
    criterion(4, "thermalization oracle", dist < 1e-6 and abs(w) < 1e-8 and elapsed < 10.0,
              f"trace distance {dist:.2e} (< 1e-6), |W| = {abs(w):.2e} (< 1e-8), {elapsed:.2f} s (< 10 s)")


def test_5_middle_bath_amplification(criterion):
    ok = True
    parts = []
    for t_l in (0.25, 0.5, 1.0):
        w0, w05, w1 = (three_cell_w(t_l, t_m, 0.0) for t_m in (0.0, 0.5, 1.0))
        ok &= w1 > w05 > w0
        parts.append(f"T_L={t_l}: {w1:.4f} > {w05:.4f} > {w0:.1e}")
    criterion(5, "middle-bath amplification", ok, "; ".join(parts))


def test_6_coupling_optimum(criterion):
    start = time.perf_counter()
    result = run_sweep(figure_config("fig6"))
    elapsed = time.perf_counter() - start
    t_m, lam, w = result.column("T_M"), result.column("lambda"), result.column("W")
    ok_rows = np.array([r.ok for r in result.rows])
    ok = elapsed < 300.0 and len(result.rows) == 303
    parts = []
    for value in (0.0, 0.5, 1.0):
        sel = (t_m == value) & ok_rows
        k = int(np.argmax(w[sel]))
        lam_star, w_star = lam[sel][k], w[sel][k]
        w_end = w[(t_m == value) & np.isclose(lam, 2.0)][0]
        ok &= 0.2 < lam_star < 0.8 and w_end < 0.05 * w_star
        parts.append(f"T_M={value}: lambda*={lam_star:.2f}, W*={w_star:.4f}, W(2)/W*={w_end / w_star:.3f}")
    parts.append(f"{result.n_errors} degenerate points skipped, {elapsed:.1f} s")
    criterion(6, "coupling optimum", ok, "; ".join(parts) + " (need lambda* in (0.2, 0.8), ratio < 0.05)")


def test_7_passive_state_oracle(criterion, rng):
    start = time.perf_counter()
    perms = np.array(list(itertools.permutations(range(8))))
    worst = 0.0
    for _ in range(200):
        rho = random_density(rng, 8)
        h = random_hermitian(rng, 8)
        probs = np.linalg.eigvalsh(rho)
        energies = np.linalg.eigvalsh(h)
        brute = float((energies[perms] @ probs).min())
        worst = max(worst, abs(ergotropy(rho, h).passive_energy - brute))
    elapsed = time.perf_counter() - start
    criterion(7, "passive-state oracle", worst < 1e-12 and elapsed < 120.0,
              f"max deviation {worst:.2e} (< 1e-12) over 200 states x 40320 pairings, {elapsed:.1f} s (< 120 s)")


def test_8_solver_cross_validation(criterion, rng):
    worst_rk4 = worst_res = worst_kappa = 0.0
    min_eig = np.inf
    for name in ("two_cell_fig2", "three_cell_fig4", "three_cell_fig6"):
        base = preset(name)
        for _ in range(5):
            temps = rng.uniform(0, 2, base.n_cells)
            spec = base.with_params({f"T_{lab}": t for lab, t in zip(base.labels, temps)})
            sup = liouvillian(spec)
            rho = steady_state(sup)
            rho_rk4 = evolve(random_density(rng, spec.dim), sup, relaxation_time(spec), stable_step(sup))
            worst_rk4 = max(worst_rk4, np.linalg.norm(rho - rho_rk4))
            worst_res = max(worst_res, residual(sup, rho))
            min_eig = min(min_eig, np.linalg.eigvalsh(rho)[0])
            rho10 = steady_state(liouvillian(spec.with_params({"kappa": 10 * spec.kappa})))
            worst_kappa = max(worst_kappa, np.abs(rho - rho10).max())
    ok = worst_rk4 < 1e-6 and worst_res < 1e-10 and min_eig >= -1e-8 and worst_kappa < 1e-8
    criterion(8, "solver cross-validation", ok,
              f"||rho_ss - rho_rk4|| = {worst_rk4:.2e} (< 1e-6), residual {worst_res:.2e} (< 1e-10), "
              f"min eig {min_eig:.2e} (>= -1e-8), kappa drift {worst_kappa:.2e} (< 1e-8)")


def test_9_representation_equivalence(criterion):
    grid = np.linspace(0, 2, 5)
    worst = 0.0
    for t_l, t_r in itertools.product(grid, grid):
        small = preset("two_cell_fig2", {"T_L": t_l, "T_R": t_r})
        w_small = evaluate_point(small)[0]
        big = small.to_three_cell()
        # the detached M qubit keeps whatever state it starts in; start maximally mixed
        rho = steady_state(liouvillian(big), rho0=np.eye(8) / 8)
        w_big = ergotropy(rho, build_hamiltonian(big)).ergotropy
        worst = max(worst, abs(w_small - w_big))
    criterion(9, "representation equivalence", worst < 1e-8,
              f"max |W_dim4 - W_dim8| = {worst:.2e} (< 1e-8) on a 5x5 grid")
