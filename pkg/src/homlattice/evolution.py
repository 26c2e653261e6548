"""
Two-particle Hamiltonian on the L x L grid and its time propagation.

H2 = H1 x 1 + 1 x H1 + U sum_l |l,l><l,l| with hard walls at the lattice
edges.  The Hamiltonian is only ever applied as a five-point stencil; the
dense matrix exists for the small-lattice oracle only.

The propagator expands exp(-i H t) in Chebyshev polynomials of H / b, with b
an upper bound on the spectral radius.  The coefficients are Bessel
functions, 2 (-i)^n J_n(b t), which decay super-exponentially once n > b t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import jv

from .lattice_scattering import ModelParams, _checked_sin, single_particle_hamiltonian
from .state_prep import TwoParticleState

BRUTE_FORCE_MAX_L = 31


class ConvergenceError(RuntimeError):
    """Requested accuracy needs more Chebyshev terms than the budget allows."""


class DenseSizeError(ValueError):
    pass


@dataclass(frozen=True)
class PropagationPlan:
    """Settings for the Chebyshev propagator.

    spectral_bound must dominate ||H2||; the stencil is bounded by
    4J + 2|mu| + |U|.  Long times are cut into slices with b * dt at most
    max_slice_phase so the Bessel series stays short and well-conditioned.
    """

    spectral_bound: float
    target_accuracy: float = 1e-14
    max_order: int = 2000
    max_slice_phase: float = 400.0
    t_total: float | None = None

    @classmethod
    def for_params(cls, params: ModelParams, **kwargs) -> "PropagationPlan":
        return cls(spectral_bound=default_spectral_bound(params), **kwargs)

    def validate(self, params: ModelParams) -> None:
        floor = 4 * params.J + 2 * abs(params.mu) + abs(params.U)
        if self.spectral_bound < floor:
            raise ValueError(f"spectral_bound {self.spectral_bound} below the safe envelope {floor}")


def default_spectral_bound(params: ModelParams) -> float:
    return 4.5 * params.J + 2 * abs(params.mu) + abs(params.U)


@lru_cache(maxsize=64)
def _potential(params: ModelParams) -> np.ndarray:
    L, c = params.L, params.L // 2
    v = np.zeros((L, L))
    v[c, :] += params.mu
    v[:, c] += params.mu
    v[np.diag_indices(L)] += params.U
    v.setflags(write=False)
    return v


def _stencil(params: ModelParams, psi: np.ndarray) -> np.ndarray:
    out = _potential(params) * psi
    J = params.J
    out[1:, :] -= J * psi[:-1, :]
    out[:-1, :] -= J * psi[1:, :]
    out[:, 1:] -= J * psi[:, :-1]
    out[:, :-1] -= J * psi[:, 1:]
    return out


def _check_dims(params: ModelParams, state: TwoParticleState) -> None:
    if state.L != params.L:
        raise ValueError(f"state has L={state.L}, Hamiltonian has L={params.L}")


def apply_h2(params: ModelParams, state: TwoParticleState) -> TwoParticleState:
    _check_dims(params, state)
    return TwoParticleState(params.L, _stencil(params, state.amplitudes))


def energy(params: ModelParams, state: TwoParticleState) -> float:
    """<psi|H2|psi> / <psi|psi>."""
    return state.inner(apply_h2(params, state)).real / state.norm2()


def chebyshev_coefficients(phase: float, tol: float, max_order: int) -> np.ndarray:
    """Bessel weights J_n(phase) for n = 0..N, truncated where they drop below tol."""
    n_probe = max_order + 1
    bessel = jv(np.arange(n_probe), phase)
    big = np.nonzero(np.abs(bessel) >= tol)[0]
    last = int(big[-1]) if big.size else 0
    # J_n is oscillatory below n ~ phase; only trust the tail beyond it
    if last + 1 >= n_probe or (phase > 0 and n_probe <= phase + 10):
        raise ConvergenceError(
            f"Chebyshev series for b*dt={phase:.3g} needs more than {max_order} terms at tol={tol:g}"
        )
    coeffs = bessel[: last + 2]
    return coeffs


def _chebyshev_step(params: ModelParams, psi: np.ndarray, dt: float, plan: PropagationPlan) -> np.ndarray:
    b = plan.spectral_bound
    bessel = chebyshev_coefficients(b * dt, plan.target_accuracy, plan.max_order)

    def h_scaled(x):
        return _stencil(params, x) / b

    phi_prev = psi
    out = bessel[0] * psi
    if len(bessel) == 1:
        return out
    phi = h_scaled(psi)
    out = out + 2 * (-1j) * bessel[1] * phi
    for n in range(2, len(bessel)):
        phi_prev, phi = phi, 2 * h_scaled(phi) - phi_prev
        out += (2 * (-1j) ** n * bessel[n]) * phi
    return out


def evolve(
    state: TwoParticleState,
    params: ModelParams,
    t: float,
    plan: PropagationPlan | None = None,
) -> TwoParticleState:
    """Approximate exp(-i H2 t) |state>.

    Accurate to roughly plan.target_accuracy per slice; norm drift stays
    at round-off level because the truncated tail is below the tolerance.
    """
    _check_dims(params, state)
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    plan = plan or PropagationPlan.for_params(params)
    plan.validate(params)
    if t == 0:
        return state.copy()
    n_slices = max(1, math.ceil(plan.spectral_bound * t / plan.max_slice_phase))
    dt = t / n_slices
    psi = state.amplitudes
    for _ in range(n_slices):
        psi = _chebyshev_step(params, psi, dt, plan)
    return TwoParticleState(params.L, psi)


def dense_hamiltonian(params: ModelParams) -> np.ndarray:
    """Explicit L^2 x L^2 matrix in row-major (l, m) order."""
    L = params.L
    h1 = single_particle_hamiltonian(params.J, params.mu, L)
    eye = np.eye(L)
    h2 = np.kron(h1, eye) + np.kron(eye, h1)
    diag = np.arange(L) * (L + 1)
    h2[diag, diag] += params.U
    return h2


@lru_cache(maxsize=8)
def _eigh(params: ModelParams):
    return np.linalg.eigh(dense_hamiltonian(params))


def brute_force_propagate(state: TwoParticleState, params: ModelParams, t: float) -> TwoParticleState:
    """exp(-i H2 t) |state> by full diagonalization.  Reference for small L only."""
    _check_dims(params, state)
    if params.L > BRUTE_FORCE_MAX_L:
        raise DenseSizeError(f"L={params.L} exceeds the dense limit {BRUTE_FORCE_MAX_L}")
    w, v = _eigh(params)
    coeffs = v.conj().T @ state.flat()
    out = v @ (np.exp(-1j * w * t) * coeffs)
    return TwoParticleState(params.L, out.reshape(params.L, params.L))


def evolution_time(c: float, L: int, J: float, k: float) -> float:
    """Time for packets starting at |c| to reach the lattice edge, (|c| + L/2) / v_g."""
    return (abs(c) + L / 2) / (2 * J * abs(_checked_sin(k)))


def snapshot_time(c: float, J: float, k: float) -> float:
    """2|c| / v_g: packets have crossed the barrier and travelled |c| beyond it."""
    return 2 * abs(c) / (2 * J * abs(_checked_sin(k)))
