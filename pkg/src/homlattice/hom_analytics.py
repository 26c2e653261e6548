"""Closed-form bunching and coincidence probabilities.

In the folded configuration space a (epsilon, delta) symmetry sector sees the
barrier as a beam splitter between two mirrors: the exchange (E) mirror on
the diagonal l = m and the D mirror on the antidiagonal l = -m.  Bunching
is the output port where the paths T.e_E.R and R.e_D.T recombine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .lattice_scattering import (
    ScatteringAmplitudes,
    _checked_sin,
    relative_amplitudes,
)

WEIGHT_TOL = 1e-9


class WeightNormalizationError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SymmetrySector:
    """Eigenvalues of particle exchange (epsilon) and of D = EP (delta)."""

    epsilon: int
    delta: int

    def __post_init__(self):
        if self.epsilon not in (1, -1) or self.delta not in (1, -1):
            raise ValueError(f"parities must be +1 or -1, got {self.epsilon}, {self.delta}")

    def __str__(self):
        return f"({self.epsilon:+d},{self.delta:+d})"


SECTORS = tuple(SymmetrySector(e, d) for e in (1, -1) for d in (1, -1))


@dataclass(frozen=True)
class MirrorPhases:
    e_phase: complex
    d_phase: complex


def _clamp(p: float) -> float:
    return float(min(1.0, max(0.0, p)))


def e_mirror_phase(J: float, U: float, k: float, epsilon: int) -> complex:
    """Reflection phase on the exchange mirror, r' + epsilon t'."""
    amps = relative_amplitudes(J, U, k)
    return complex(amps.r + epsilon * amps.t)


def d_mirror_phase(delta: int) -> complex:
    # the D mirror carries no interaction, for any U
    if delta not in (1, -1):
        raise ValueError(f"delta must be +1 or -1, got {delta}")
    return complex(delta)


def bunching_probability(amps: ScatteringAmplitudes, phases: MirrorPhases) -> float:
    return _clamp(abs(phases.e_phase + phases.d_phase) ** 2 * abs(amps.r * amps.t) ** 2)


def coincidence_probability(amps: ScatteringAmplitudes, phases: MirrorPhases) -> float:
    return _clamp(abs(phases.e_phase * amps.t**2 + phases.d_phase * amps.r**2) ** 2)


def bunching_noninteracting(J: float, mu: float, k: float, sector: SymmetrySector) -> float:
    s2 = _checked_sin(k) ** 2
    weight = (sector.epsilon + sector.delta) ** 2
    return _clamp(weight * 4 * J**2 * mu**2 * s2 / (4 * J**2 * s2 + mu**2) ** 2)


def interaction_factor(J: float, U: float, k: float) -> float:
    """Suppression 16J^2 sin^2 k / (16J^2 sin^2 k + U^2) of boson bunching."""
    a = 16 * J**2 * _checked_sin(k) ** 2
    return a / (a + U**2)


def bunching_interacting(J: float, mu: float, U: float, k: float) -> float:
    """Boson bunching in the (+1, +1) sector with contact interaction U.

    Bound states of a particle on the barrier and of the pair are ignored;
    those are what make finite-lattice simulations deviate near resonances.
    """
    p0 = bunching_noninteracting(J, mu, k, SymmetrySector(1, 1))
    return _clamp(interaction_factor(J, U, k) * p0)


def analytic_bunching(J: float, mu: float, U: float, k: float, sector: SymmetrySector) -> float | None:
    """Closed-form bunching for a sector, or None where no formula is known.

    Interacting bosons are only covered for delta = +1.  Fermions never
    interact through a contact term, so the non-interacting result holds.
    """
    if U == 0 or sector.epsilon == -1:
        return bunching_noninteracting(J, mu, k, sector)
    if sector.delta == 1:
        return bunching_interacting(J, mu, U, k)
    return None


def mixed_state_bunching(
    weights: Mapping[SymmetrySector, float],
    sector_probs: Mapping[SymmetrySector, float],
) -> float:
    """Bunching of a state without definite symmetry: sum_s w_s P_s."""
    w = {s: float(v) for s, v in weights.items()}
    if any(v < 0 for v in w.values()):
        raise WeightNormalizationError(f"negative sector weight in {w}")
    total = sum(w.values())
    if abs(total - 1.0) > WEIGHT_TOL:
        raise WeightNormalizationError(f"sector weights sum to {total!r}, not 1")
    return _clamp(sum(v * sector_probs[s] for s, v in w.items() if v != 0))


def classical_bunching(J: float, mu: float, k: float) -> float:
    """Distinguishable particles: equal weight on epsilon = +-1 at delta = +1, i.e. 2|RT|^2."""
    probs = {s: bunching_noninteracting(J, mu, k, s) for s in SECTORS}
    weights = {SymmetrySector(1, 1): 0.5, SymmetrySector(-1, 1): 0.5}
    return mixed_state_bunching(weights, probs)


