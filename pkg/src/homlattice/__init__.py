"""Hong-Ou-Mandel interference of two particles on a tight-binding lattice."""

from .lattice_scattering import (
    BoundState,
    DegenerateQuasimomentumError,
    ModelParams,
    ScatteringAmplitudes,
    ZeroStrengthError,
    barrier_amplitudes,
    barrier_bound_state,
    dispersion_energy,
    fifty_fifty_barrier,
    group_velocity,
    pair_bound_state,
    relative_amplitudes,
)
from .hom_analytics import (
    MirrorPhases,
    SymmetrySector,
    bunching_interacting,
    bunching_noninteracting,
    bunching_probability,
    coincidence_probability,
    d_mirror_phase,
    e_mirror_phase,
    mixed_state_bunching,
)
from .state_prep import (
    TwoParticleState,
    WavepacketSpec,
    apply_D,
    apply_exchange,
    apply_parity,
    entangled_state,
    gaussian_amplitude,
    product_state,
    sector_weights,
    symmetrize,
)
from .evolution import (
    PropagationPlan,
    apply_h2,
    brute_force_propagate,
    evolution_time,
    evolve,
    snapshot_time,
)
from .observables import (
    barrier_occupancy,
    bunching,
    coincidence,
    diagonal_pair_probability,
    joint_distribution,
)

__version__ = "0.1.0"
