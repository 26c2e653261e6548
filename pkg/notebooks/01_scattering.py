# %% [markdown]
# # Single-particle scattering on a lattice barrier
#
# A particle with quasimomentum k hits one site of extra energy mu. The
# transmitted and reflected amplitudes follow from matching plane waves
# at the barrier site; the barrier acts as a beam splitter whose ratio
# depends on k.

# %%
import numpy as np

from homlattice.lattice_scattering import barrier_amplitudes, barrier_bound_state, fifty_fifty_barrier

ks = np.linspace(0.05, np.pi - 0.05, 200)
for mu in (0.5, 1.0, 2.0, 3.0):
    T = np.array([barrier_amplitudes(1.0, mu, k).transmission for k in ks])
    print(f"mu={mu:3.1f}  T(pi/2)={barrier_amplitudes(1.0, mu, np.pi / 2).transmission:.3f}  min T={T.min():.3f}")

# %% [markdown]
# Equal splitting needs mu = 2J sin k, so a fixed barrier is a 50-50
# splitter only for one pair of quasimomenta k and pi - k.

# %%
for k in (np.pi / 6, np.pi / 3, np.pi / 2):
    mu = fifty_fifty_barrier(1.0, k)
    print(f"k={k:.3f}  mu_50_50={mu:.4f}  T={barrier_amplitudes(1.0, mu, k).transmission:.12f}")

# %% [markdown]
# The barrier also binds one state outside the band, above it for
# mu > 0 and below it for mu < 0.

# %%
for mu in (-2.0, 0.5, 2.0):
    b = barrier_bound_state(1.0, mu)
    print(f"mu={mu:+.1f}  E={b.energy:+.4f}  decay length={1 / b.kappa:.2f} sites")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for mu in (0.5, 1.0, 2.0, 3.0):
        ax.plot(ks, [barrier_amplitudes(1.0, mu, k).transmission for k in ks], label=f"mu/J={mu:g}")
    ax.axhline(0.5, color="grey", lw=0.5)
    ax.set_xlabel("k")
    ax.set_ylabel("|t|^2")
    ax.legend()
    fig.tight_layout()
    fig.savefig("01_transmission.png", dpi=120)
