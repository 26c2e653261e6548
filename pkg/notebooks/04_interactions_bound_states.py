# %% [markdown]
# # Interactions and bound states
#
# With U != 0 the simulated bunching departs from the closed form where a
# particle can sit on the barrier while its partner binds to it, or where
# the two form a repulsively bound pair. The closed form is even in mu
# and U; the simulation is not, because the bound states sit above the
# band for positive strengths and below it for negative ones.

# %%
from homlattice.experiment import PRESETS, run_snapshot, run_sweep, sign_symmetry_audit
from homlattice.lattice_scattering import barrier_bound_state, pair_bound_state

print("barrier bound state E", barrier_bound_state(1.0, 2.0).energy)
print("pair bound state E   ", pair_bound_state(1.0, 2.0).energy)

# %%
rows = run_sweep(PRESETS["fig5a"]) + run_sweep(PRESETS["fig5b"])
worst = max(rows, key=lambda r: abs(r.deviation))
print(f"largest deviation {worst.deviation:+.3f} at k={worst.k:.3f} mu={worst.mu:g} U={worst.U:g}")
audit = sign_symmetry_audit(rows)
top = max(audit, key=lambda a: a["dP_numeric"])
print(f"largest sign asymmetry {top['dP_numeric']:.3f} ({top['flip']} flip at k={top['k']:.3f})")

# %% [markdown]
# A snapshot at t = 2|c|/v_g shows weight on the barrier row and column
# and along the diagonal, which a U = 0 run does not have.

# %%
grid, row, _ = run_snapshot(PRESETS["fig6"])
print(f"P_barrier={row.P_barrier:.4f}  P_pair_diag={row.P_pair_diag:.4f}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    half = grid.shape[0] // 2
    fig, ax = plt.subplots(figsize=(4.5, 4))
    ax.imshow(grid, origin="lower", extent=(-half - 0.5, half + 0.5, -half - 0.5, half + 0.5))
    ax.set_xlabel("m")
    ax.set_ylabel("l")
    fig.tight_layout()
    fig.savefig("04_snapshot.png", dpi=120)
