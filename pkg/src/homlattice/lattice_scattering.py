"""
Single-particle physics of a tight-binding chain with a point scatterer.

Plane waves exp(+-ikl) with energy -2J cos k scatter on an on-site
potential mu at l = 0.  The relative motion of two particles with contact
interaction U maps onto the same problem with J -> 2J and mu -> U, so the
same closed forms cover both cases.

Units: hbar = 1, energies in units of whatever J is given.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: |sin k| below this is treated as a band edge (zero group velocity).
SIN_K_CUTOFF = 1e-6


class DegenerateQuasimomentumError(ValueError):
    """Raised for k too close to 0 or pi, where scattering is ill-defined."""


class ZeroStrengthError(ValueError):
    """Raised when a bound state is requested for a vanishing scatterer."""


@dataclass(frozen=True)
class ModelParams:
    """Lattice couplings: hopping J, barrier mu, contact interaction U, L sites."""

    J: float = 1.0
    mu: float = 0.0
    U: float = 0.0
    L: int = 61

    def __post_init__(self):
        if not self.J > 0:
            raise ValueError(f"J must be positive, got {self.J}")
        if int(self.L) != self.L or self.L < 3 or self.L % 2 == 0:
            raise ValueError(f"L must be an odd integer >= 3, got {self.L}")

    @property
    def half(self) -> int:
        """Largest site index, (L - 1) / 2."""
        return (self.L - 1) // 2

    def sites(self) -> np.ndarray:
        return np.arange(-self.half, self.half + 1)


@dataclass(frozen=True)
class ScatteringAmplitudes:
    t: complex
    r: complex

    @property
    def transmission(self) -> float:
        return abs(self.t) ** 2

    @property
    def reflection(self) -> float:
        return abs(self.r) ** 2


@dataclass(frozen=True)
class BoundState:
    """Exponentially localized level, psi(l) ~ (-sign)^l exp(-kappa |l|)."""

    kappa: float
    energy: float
    attached_sign: int


def _checked_sin(k: float) -> float:
    s = np.sin(k)
    if abs(s) < SIN_K_CUTOFF:
        raise DegenerateQuasimomentumError(
            f"|sin k| = {abs(s):.3g} below cutoff {SIN_K_CUTOFF:g} (k = {k})"
        )
    return float(s)


def dispersion_energy(J: float, k: float) -> float:
    return -2.0 * J * np.cos(k)


def group_velocity(J: float, k: float) -> float:
    """dE/dk = 2J sin k, in sites per unit time."""
    return 2.0 * J * np.sin(k)


def barrier_amplitudes(J: float, mu: float, k: float) -> ScatteringAmplitudes:
    """Transmission and reflection amplitudes of a plane wave on the barrier.

    Matching the incident, reflected and transmitted waves in the on-site
    equation at l = 0 gives

        t = 2iJ sin k / (2iJ sin k - mu),   r = mu / (2iJ sin k - mu).
    """
    a = 2j * J * _checked_sin(k)
    denom = a - mu
    return ScatteringAmplitudes(t=complex(a / denom), r=complex(mu / denom))


def fifty_fifty_barrier(J: float, k: float) -> float:
    """Barrier height giving |t|^2 = |r|^2 = 1/2 (positive root)."""
    return 2.0 * J * abs(_checked_sin(k))


def relative_amplitudes(J: float, U: float, k: float) -> ScatteringAmplitudes:
    """Scattering of the relative coordinate on the contact interaction."""
    return barrier_amplitudes(2.0 * J, U, k)


def _point_bound_state(hopping: float, strength: float) -> BoundState:
    if strength == 0:
        raise ZeroStrengthError("a zero-strength scatterer has no bound state")
    kappa = float(np.arcsinh(abs(strength) / (2.0 * hopping)))
    energy = float(np.sign(strength) * np.hypot(2.0 * hopping, strength))
    return BoundState(kappa=kappa, energy=energy, attached_sign=int(np.sign(strength)))


def barrier_bound_state(J: float, mu: float) -> BoundState:
    """Level bound to the barrier: sinh kappa = |mu|/2J, E = sign(mu) sqrt(4J^2 + mu^2)."""
    if not J > 0:
        raise ValueError(f"J must be positive, got {J}")
    return _point_bound_state(J, mu)


def pair_bound_state(J: float, U: float) -> BoundState:
    """Bound pair at zero centre-of-mass quasimomentum (relative hopping 2J)."""
    if not J > 0:
        raise ValueError(f"J must be positive, got {J}")
    return _point_bound_state(2.0 * J, U)


def single_particle_hamiltonian(J: float, mu: float, L: int) -> np.ndarray:
    """Dense open-chain H_1 on L sites, barrier on the central site."""
    h = np.diag(np.full(L - 1, -J), 1)
    h = h + h.T
    h[L // 2, L // 2] = mu
    return h
