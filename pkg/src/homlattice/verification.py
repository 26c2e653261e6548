"""Fast self-checks behind the ``verify`` command.

Each check returns a Check; nothing here depends on pytest.  The heavy
figure reproductions are left to the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hom_analytics as hom
from . import lattice_scattering as ls
from .evolution import PropagationPlan, brute_force_propagate, energy, evolve
from .observables import partition
from .state_prep import TwoParticleState, project_sector, sector_weights


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


def random_state(L: int, rng: np.random.Generator) -> TwoParticleState:
    a = rng.normal(size=(L, L)) + 1j * rng.normal(size=(L, L))
    return TwoParticleState(L, a).normalized()


def check_unitarity() -> Check:
    ks = np.linspace(0.01, np.pi - 0.01, 100)
    worst = 0.0
    for mu in np.linspace(0.1, 5.0, 50):
        for k in ks:
            a = ls.barrier_amplitudes(1.0, mu, k)
            worst = max(worst, abs(a.transmission + a.reflection - 1), abs((a.t * np.conj(a.r)).real))
    return Check("scattering unitarity", worst <= 1e-12, f"max violation {worst:.2e}")


def check_fifty_fifty() -> Check:
    worst = max(
        abs(ls.barrier_amplitudes(1.0, ls.fifty_fifty_barrier(1.0, k), k).transmission - 0.5)
        for k in np.linspace(0.01, np.pi - 0.01, 100)
    )
    return Check("50-50 condition", worst <= 1e-12, f"max | |t|^2 - 1/2 | = {worst:.2e}")


def check_hom_identities() -> Check:
    pp = hom.bunching_noninteracting(1.0, 2.0, np.pi / 2, hom.SymmetrySector(1, 1))
    fermion = max(
        hom.bunching_noninteracting(1.0, mu, k, hom.SymmetrySector(-1, 1))
        for mu in (0.5, 1, 2, 3) for k in np.linspace(0.2, 2.9, 30)
    )
    a = ls.barrier_amplitudes(1.0, 1.3, 1.1)
    classical = hom.classical_bunching(1.0, 1.3, 1.1)
    err = max(abs(pp - 1), fermion, abs(classical - 2 * abs(a.r * a.t) ** 2))
    return Check("HOM analytic identities", err <= 1e-12, f"max error {err:.2e}")


def check_bound_states() -> Check:
    worst = 0.0
    for mu in (-3.0, -2.0, -1.0, 1.0, 2.0, 3.0):
        w = np.linalg.eigvalsh(ls.single_particle_hamiltonian(1.0, mu, 61))
        numeric = w[-1] if mu > 0 else w[0]
        worst = max(worst, abs(numeric - ls.barrier_bound_state(1.0, mu).energy))
    for U in (-4.0, -2.0, 2.0, 4.0):
        w = np.linalg.eigvalsh(ls.single_particle_hamiltonian(2.0, U, 61))
        numeric = w[-1] if U > 0 else w[0]
        worst = max(worst, abs(numeric - ls.pair_bound_state(1.0, U).energy))
    return Check("bound-state energies vs diagonalization", worst <= 1e-6, f"max error {worst:.2e}")


def check_propagator(n_cases: int = 20, seed: int = 7) -> Check:
    rng = np.random.default_rng(seed)
    err = drift = edrift = 0.0
    for _ in range(n_cases):
        params = ls.ModelParams(J=1.0, mu=float(rng.uniform(-3, 3)), U=float(rng.uniform(-5, 5)), L=11)
        t = float(rng.uniform(0, 25))
        psi = random_state(11, rng)
        out = evolve(psi, params, t, PropagationPlan.for_params(params))
        ref = brute_force_propagate(psi, params, t)
        err = max(err, np.abs(out.amplitudes - ref.amplitudes).max())
        drift = max(drift, abs(out.norm2() - 1))
        e0 = energy(params, psi)
        edrift = max(edrift, abs(energy(params, out) - e0) / max(abs(e0), 1.0))
    ok = err <= 1e-8 and drift <= 1e-10 and edrift <= 1e-8
    return Check("propagator vs dense oracle", ok, f"max err {err:.2e}, norm drift {drift:.2e}, energy drift {edrift:.2e}")


def check_symmetry_conservation(seed: int = 3) -> Check:
    rng = np.random.default_rng(seed)
    params = ls.ModelParams(J=1.0, mu=1.5, U=2.5, L=15)
    worst = 0.0
    for sector in hom.SECTORS:
        psi = project_sector(random_state(15, rng), sector).normalized()
        for t in (1.0, 5.0, 12.0):
            w = sector_weights(evolve(psi, params, t))
            worst = max(worst, 1 - w[sector])
    return Check("symmetry-sector conservation", worst <= 1e-9, f"max weight leak {worst:.2e}")


def check_partition(seed: int = 5) -> Check:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for L in (3, 11, 31):
        psi = random_state(L, rng)
        worst = max(worst, abs(partition(psi).total - psi.norm2()))
    return Check("probability partition", worst <= 1e-12, f"max error {worst:.2e}")


ALL_CHECKS = (
    check_unitarity,
    check_fifty_fifty,
    check_hom_identities,
    check_bound_states,
    check_propagator,
    check_symmetry_conservation,
    check_partition,
)


def run_all() -> list[Check]:
    return [check() for check in ALL_CHECKS]
