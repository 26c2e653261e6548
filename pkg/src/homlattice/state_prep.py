"""
Two-particle initial states and the E, P, D symmetry operations.

A state is the amplitude grid psi[i, j] = Psi(l, m) with i = l + (L-1)/2,
j = m + (L-1)/2, so particle 1 runs along rows and particle 2 along
columns.  In this layout exchange is a transpose, parity reverses both axes,
and D = EP reflects across the antidiagonal.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .hom_analytics import SECTORS, SymmetrySector

# relative to the input norm
ANNIHILATION_TOL = 1e-12


class PlacementError(ValueError):
    """Wavepacket does not fit on the lattice."""


class GeometryWarning(UserWarning):
    """Packets start too close to the barrier or too narrow to be well peaked in k."""


class AnnihilatedStateError(ValueError):
    pass


@dataclass(frozen=True)
class WavepacketSpec:
    """Gaussian packet of the left particle; the right one is its mirror image."""

    k: float
    c: float
    sigma: float

    def __post_init__(self):
        if not 0 < self.k < np.pi:
            raise ValueError(f"k must lie in (0, pi), got {self.k}")
        if not self.c < 0:
            raise ValueError(f"c must be negative (left of the barrier), got {self.c}")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


@dataclass
class TwoParticleState:
    L: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (self.L, self.L):
            raise ValueError(f"amplitude grid has shape {self.amplitudes.shape}, expected {(self.L, self.L)}")

    @property
    def half(self) -> int:
        return (self.L - 1) // 2

    def sites(self) -> np.ndarray:
        return np.arange(-self.half, self.half + 1)

    def amplitude(self, l: int, m: int) -> complex:
        return complex(self.amplitudes[l + self.half, m + self.half])

    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def normalized(self) -> "TwoParticleState":
        return TwoParticleState(self.L, self.amplitudes / np.sqrt(self.norm2()))

    def flat(self) -> np.ndarray:
        """Row-major vector, index (l + half) * L + (m + half)."""
        return self.amplitudes.reshape(-1)

    def inner(self, other: "TwoParticleState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def copy(self) -> "TwoParticleState":
        return TwoParticleState(self.L, self.amplitudes.copy())


def _gaussian(k: float, c: float, sigma: float, l) -> np.ndarray:
    l = np.asarray(l, dtype=float)
    return np.exp(-((l - c) ** 2) / (4.0 * sigma**2) + 1j * k * l)


def gaussian_amplitude(spec: WavepacketSpec, l) -> np.ndarray | complex:
    """Unnormalized exp(-(l - c)^2 / 4 sigma^2 + i k l); l may be an array."""
    out = _gaussian(spec.k, spec.c, spec.sigma, l)
    return complex(out) if out.ndim == 0 else out


def _check_extent(center: float, sigma: float, L: int) -> None:
    half = (L - 1) // 2
    if abs(center) + 3 * sigma > half:
        raise PlacementError(f"packet at {center} with sigma={sigma} is truncated by the edge at {half}")


def check_placement(spec: WavepacketSpec, L: int) -> None:
    _check_extent(spec.c, spec.sigma, L)
    if abs(spec.c) < 3 * spec.sigma:
        warnings.warn(
            f"|c| = {abs(spec.c)} < 3 sigma = {3 * spec.sigma}: packets overlap the barrier initially",
            GeometryWarning,
            stacklevel=3,
        )
    if spec.sigma < 2:
        warnings.warn(f"sigma = {spec.sigma} < 2: broad quasimomentum distribution", GeometryWarning, stacklevel=3)


def product_state(spec: WavepacketSpec, L: int, shift: float = 0.0, dk: float = 0.0) -> TwoParticleState:
    """Psi(l, m) = G_{k,c,sigma}(l) G_{-k,-c,sigma}(m), unnormalized.

    ``shift`` moves the second packet to -c + shift and ``dk`` changes its
    quasimomentum to -(k + dk).  Any nonzero offset breaks D symmetry,
    which is how the weights of the two delta sectors can be tuned.
    """
    check_placement(spec, L)
    _check_extent(-spec.c + shift, spec.sigma, L)
    l = np.arange(-(L // 2), L // 2 + 1)
    g1 = _gaussian(spec.k, spec.c, spec.sigma, l)
    g2 = _gaussian(-(spec.k + dk), -spec.c + shift, spec.sigma, l)
    return TwoParticleState(L, np.outer(g1, g2))


def entangled_state(spec: WavepacketSpec, L: int) -> TwoParticleState:
    """(l + m) G(l) G'(m): the D-odd partner of the product state."""
    base = product_state(spec, L)
    l = base.sites()
    return TwoParticleState(L, (l[:, None] + l[None, :]) * base.amplitudes)


def apply_exchange(state: TwoParticleState) -> TwoParticleState:
    return TwoParticleState(state.L, state.amplitudes.T.copy())


def apply_parity(state: TwoParticleState) -> TwoParticleState:
    return TwoParticleState(state.L, state.amplitudes[::-1, ::-1].copy())


def apply_D(state: TwoParticleState) -> TwoParticleState:
    """Psi(l, m) -> Psi(-m, -l), reflection across the antidiagonal."""
    return TwoParticleState(state.L, state.amplitudes[::-1, ::-1].T.copy())


def symmetrize(state: TwoParticleState, epsilon: int) -> TwoParticleState:
    """Apply 1 + epsilon E and normalize."""
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon}")
    a = state.amplitudes
    out = TwoParticleState(state.L, a + epsilon * a.T)
    if np.sqrt(out.norm2()) < ANNIHILATION_TOL * np.sqrt(state.norm2()):
        raise AnnihilatedStateError(f"state is annihilated by 1 + ({epsilon:+d})E")
    return out.normalized()


def project_sector(state: TwoParticleState, sector: SymmetrySector) -> TwoParticleState:
    """(1 + eps E)(1 + delta D) Psi / 4."""
    a = state.amplitudes
    b = 0.5 * (a + sector.delta * a[::-1, ::-1].T)
    return TwoParticleState(state.L, 0.5 * (b + sector.epsilon * b.T))


def sector_weights(state: TwoParticleState) -> dict[SymmetrySector, float]:
    return {s: project_sector(state, s).norm2() for s in SECTORS}
