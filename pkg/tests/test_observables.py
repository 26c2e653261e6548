import numpy as np
import pytest

from homlattice.observables import (
    barrier_occupancy,
    bunching,
    coincidence,
    diagonal_pair_probability,
    joint_distribution,
    partition,
)
from homlattice.state_prep import (
    TwoParticleState,
    WavepacketSpec,
    apply_D,
    apply_exchange,
    product_state,
    symmetrize,
)
from tests.conftest import random_state

L = 21


def test_quadrant_state():
    a = np.zeros((L, L), dtype=complex)
    a[:10, :10] = 1.0
    s = TwoParticleState(L, a).normalized()
    assert bunching(s) == pytest.approx(1.0, abs=1e-15)
    assert coincidence(s) == 0.0
    assert barrier_occupancy(s) == 0.0


def test_single_cells():
    h = L // 2
    for (l, m), which in {(3, 4): "b", (-2, -7): "b", (3, -1): "c", (-5, 6): "c", (0, 4): "x", (-3, 0): "x", (0, 0): "x"}.items():
        a = np.zeros((L, L), dtype=complex)
        a[l + h, m + h] = 1.0
        s = TwoParticleState(L, a)
        assert (bunching(s), coincidence(s), barrier_occupancy(s)) == {
            "b": (1, 0, 0), "c": (0, 1, 0), "x": (0, 0, 1)
        }[which]


def test_partition_random(rng):
    for n in (3, 11, 31, 61):
        s = random_state(n, rng)
        p = partition(s)
        assert abs(p.total - s.norm2()) < 1e-12
        assert p.bunching == bunching(s) and p.coincidence == coincidence(s) and p.barrier == barrier_occupancy(s)
        assert abs(joint_distribution(s).sum() - 1) < 1e-12


def test_global_phase_invariance(rng):
    s = random_state(L, rng)
    t = TwoParticleState(L, np.exp(0.83j) * s.amplitudes)
    for f in (bunching, coincidence, barrier_occupancy, diagonal_pair_probability):
        assert abs(f(s) - f(t)) < 1e-12
    assert np.abs(joint_distribution(s) - joint_distribution(t)).max() < 1e-12


def test_d_invariance_of_bunching(rng):
    s = random_state(L, rng)
    assert bunching(apply_D(s)) == pytest.approx(bunching(s), abs=1e-15)


def test_joint_distribution_symmetries():
    spec = WavepacketSpec(1.2, -6, 2)
    b = symmetrize(product_state(spec, 31), 1)
    p = joint_distribution(b)
    assert np.abs(p - p.T).max() < 1e-15
    raw = product_state(spec, 31)
    q = joint_distribution(raw)
    assert np.abs(q - q[::-1, ::-1].T).max() < 1e-15
    assert np.abs(joint_distribution(apply_exchange(b)) - p).max() < 1e-15


def test_diagonal_pair_probability():
    spec = WavepacketSpec(1.2, -6, 2)
    f = symmetrize(product_state(spec, 31), -1)
    assert diagonal_pair_probability(f, 0) == 0.0
    rng = np.random.default_rng(1)
    s = random_state(L, rng)
    assert diagonal_pair_probability(s, L) == pytest.approx(1 - barrier_occupancy(s), abs=1e-12)
    # monotone in width
    vals = [diagonal_pair_probability(s, w) for w in range(L)]
    assert np.all(np.diff(vals) >= 0)
    a = np.zeros((L, L), dtype=complex)
    h = L // 2
    a[h + 3, h + 3] = a[h + 3, h + 5] = a[h, h] = 1.0
    s = TwoParticleState(L, a)
    assert diagonal_pair_probability(s, 0) == 1.0  # (3,3); (0,0) is a barrier cell
    assert diagonal_pair_probability(s, 2) == 2.0
    with pytest.raises(ValueError):
        diagonal_pair_probability(s, -1)
