"""Acceptance criteria, each at its contractual tolerance.

Every test appends one PASS/FAIL line that is echoed in the terminal
summary. Failures are left standing; see the decisions ledger.
"""

import time
from dataclasses import replace

import numpy as np
import pytest

from homlattice import experiment as ex
from homlattice.evolution import brute_force_propagate, energy, evolve
from homlattice.hom_analytics import (
    SECTORS,
    SymmetrySector,
    analytic_bunching,
    bunching_interacting,
    bunching_noninteracting,
    classical_bunching,
)
from homlattice.lattice_scattering import (
    ModelParams,
    barrier_amplitudes,
    barrier_bound_state,
    fifty_fifty_barrier,
    pair_bound_state,
    single_particle_hamiltonian,
)
from homlattice.state_prep import project_sector, sector_weights
from tests.conftest import ACCEPTANCE_LINES, random_state

TOL = ex.TOLERANCES
K_GRID = np.linspace(0.01, np.pi - 0.01, 100)


def report(n, ok, detail):
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} {n}: {detail}")
    print(ACCEPTANCE_LINES[-1])
    assert ok, detail


@pytest.fixture(scope="module")
def fig4():
    return ex.run_sweep(ex.PRESETS["fig4"])


@pytest.fixture(scope="module")
def fig4_fermion():
    return ex.run_sweep(ex.PRESETS["fig4_fermion"])


@pytest.fixture(scope="module")
def fig4_entangled():
    return ex.run_sweep(ex.PRESETS["fig4_entangled"])


@pytest.fixture(scope="module")
def fig5():
    return ex.run_sweep(ex.PRESETS["fig5a"]) + ex.run_sweep(ex.PRESETS["fig5b"])


def test_1_unitarity():
    t0 = time.perf_counter()
    worst = 0.0
    for mu in np.round(np.arange(1, 51) * 0.1, 10):
        for k in K_GRID:
            a = barrier_amplitudes(1.0, mu, k)
            worst = max(worst, abs(a.transmission + a.reflection - 1), abs((a.t * np.conj(a.r)).real))
    dt = time.perf_counter() - t0
    report(1, worst <= 1e-12 and dt < 1.0, f"unitarity max error {worst:.1e} in {dt:.2f} s")


def test_2_fifty_fifty():
    t0 = time.perf_counter()
    worst = max(abs(barrier_amplitudes(1.0, fifty_fifty_barrier(1.0, k), k).transmission - 0.5) for k in K_GRID)
    dt = time.perf_counter() - t0
    report(2, worst <= 1e-12 and dt < 1.0, f"50-50 max |T - 1/2| {worst:.1e} in {dt:.2f} s")


def test_3_hom_identities():
    pp, mp = SymmetrySector(1, 1), SymmetrySector(-1, 1)
    errs = [abs(bunching_noninteracting(1.0, 2.0, np.pi / 2, pp) - 1)]
    for mu in np.linspace(-5, 5, 21):
        for k in K_GRID[::5]:
            for U in (0.0, 1.0, -3.0):
                errs.append(abs(analytic_bunching(1.0, mu, U, k, mp)))
            a = barrier_amplitudes(1.0, mu, k)
            errs.append(abs(classical_bunching(1.0, mu, k) - 2 * abs(a.r * a.t) ** 2))
    worst = max(errs)
    report(3, worst <= 1e-12, f"HOM identities max error {worst:.1e}")


def test_4_noninteracting_bosons(fig4):
    dev = max(abs(r.deviation) for r in fig4)
    at = max(fig4, key=lambda r: abs(r.deviation))
    ok = dev <= TOL["noninteracting"] and not any(r.failed for r in fig4)
    report(4, ok, f"boson max |numeric - analytic| {dev:.4f} (at mu={at.mu:g}, k={at.k:.4f}), "
                  f"tolerance {TOL['noninteracting']}")


def test_5_fermion_suppression(fig4_fermion):
    worst = max(r.P_bunch for r in fig4_fermion)
    at = max(fig4_fermion, key=lambda r: r.P_bunch)
    report(5, worst <= TOL["fermion_bunching"],
           f"fermion max P_bunch {worst:.4f} (at mu={at.mu:g}, k={at.k:.4f}), tolerance {TOL['fermion_bunching']}")


def test_6_statistics_swap(fig4, fig4_entangled):
    assert [(r.k, r.mu) for r in fig4] == [(r.k, r.mu) for r in fig4_entangled]
    worst = max(abs(a.P_bunch - b.P_bunch) for a, b in zip(fig4, fig4_entangled))
    report(6, worst <= TOL["statistics_swap"],
           f"entangled fermions vs product bosons max difference {worst:.4f}, tolerance {TOL['statistics_swap']}")


def test_7_interacting(fig5):
    tol = TOL["interacting"]
    unflagged_worst = max((abs(r.deviation) for r in fig5 if not r.flagged), default=0.0)
    resonant = [r for r in fig5 if r.mu == 2.0 and r.U == 2.0 and abs(r.k - 3 * np.pi / 4) <= 0.15]
    resonance_ok = bool(resonant) and all(r.flagged and r.P_bunch < r.P_analytic for r in resonant)
    audit = ex.sign_symmetry_audit(fig5)
    broken = [a for a in audit if a["dP_numeric"] > 0.01 and a["dP_analytic"] <= 1e-12]
    n_flag = sum(r.flagged for r in fig5)
    ok = unflagged_worst <= tol and resonance_ok and bool(broken) and not any(r.failed for r in fig5)
    report(7, ok, f"unflagged max deviation {unflagged_worst:.4f} <= {tol}; {n_flag}/{len(fig5)} rows flagged; "
                  f"{len(resonant)} resonant rows flagged below analytic: {resonance_ok}; "
                  f"{len(broken)} sign-asymmetric pairs, max {max(a['dP_numeric'] for a in audit):.3f}")


def test_8_hardcore():
    r = ex.run_sweep(ex.PRESETS["hardcore"])[0]
    analytic = bunching_interacting(1.0, 2.0, 100.0, np.pi / 2)
    ok = abs(analytic - 0.0016) < 1e-4 and r.P_bunch <= TOL["hardcore"] and r.status == "ok"
    report(8, ok, f"hard-core analytic {analytic:.5f}, numeric {r.P_bunch:.5f}, tolerance {TOL['hardcore']}")


def test_9_bound_states():
    errs = []
    for mu in (-3.0, -2.0, -0.5, 0.5, 2.0, 3.0):
        w = np.linalg.eigvalsh(single_particle_hamiltonian(1.0, mu, 61))
        errs.append(abs(barrier_bound_state(1.0, mu).energy - (w[-1] if mu > 0 else w[0])))
        # relative coordinate l - m of an L = 61 grid spans 2L - 1 sites
        w = np.linalg.eigvalsh(single_particle_hamiltonian(2.0, mu, 121))
        errs.append(abs(pair_bound_state(1.0, mu).energy - (w[-1] if mu > 0 else w[0])))
    worst = max(errs)
    report(9, worst <= 1e-6, f"bound-state energies max error {worst:.1e}")


def test_10_propagator_oracle():
    rng = np.random.default_rng(10)
    t0 = time.perf_counter()
    err = drift = edrift = 0.0
    for _ in range(20):
        p = ModelParams(J=float(rng.uniform(0.5, 2)), mu=float(rng.uniform(-3, 3)), U=float(rng.uniform(-6, 6)), L=11)
        t = float(rng.uniform(0, 25))
        s = random_state(11, rng)
        out = evolve(s, p, t)
        err = max(err, np.abs(out.amplitudes - brute_force_propagate(s, p, t).amplitudes).max())
        drift = max(drift, abs(out.norm2() - 1))
        e0 = energy(p, s)
        edrift = max(edrift, abs(energy(p, out) - e0) / max(1.0, abs(e0)))
    dt = time.perf_counter() - t0
    ok = err <= 1e-8 and drift <= 1e-10 and edrift <= 1e-8 and dt < 60
    report(10, ok, f"propagator error {err:.1e}, norm drift {drift:.1e}, energy drift {edrift:.1e}, {dt:.2f} s")


def test_11_symmetry_conservation():
    rng = np.random.default_rng(11)
    p = ModelParams(J=1.0, mu=2.0, U=2.0, L=21)
    worst = 1.0
    for sec in SECTORS:
        s = project_sector(random_state(21, rng), sec).normalized()
        for _ in range(5):
            s = evolve(s, p, 4.0)
            worst = min(worst, sector_weights(s)[sec])
    report(11, worst >= 1 - 1e-9, f"minimum retained sector weight 1 - {1 - worst:.1e}")


def test_12_snapshot():
    cfg = ex.PRESETS["fig6"]
    grid, row, _ = ex.run_snapshot(cfg)
    _, ctrl, _ = ex.run_snapshot(replace(cfg, U=(0.0,)))
    ok = row.P_barrier > ctrl.P_barrier and row.P_pair_diag > ctrl.P_pair_diag and abs(grid.sum() - 1) < 1e-10
    report(12, ok, f"barrier {row.P_barrier:.4f} vs control {ctrl.P_barrier:.4f}; "
                   f"same-site pairs (w={cfg.pair_width}) {row.P_pair_diag:.4f} vs control {ctrl.P_pair_diag:.4f}")
