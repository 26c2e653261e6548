"""
Parameter sweeps comparing wavepacket simulations with the closed forms.

A sweep walks the (k, mu, U) grid of a SweepConfig.  Each point builds the
initial two-particle state, evolves it on the finite lattice, measures the
observables and puts the matching analytic prediction alongside.  Rows come
back in grid order (U outermost, then mu, then k) whatever order the
workers finish in, and the CSV writer is deterministic, so the same config
always gives byte-identical files.
"""

from __future__ import annotations

import ast
import csv
import io
import json
import math
import operator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import observables as obs
from .evolution import PropagationPlan, evolution_time, evolve, snapshot_time
from .hom_analytics import SECTORS, SymmetrySector, analytic_bunching, mixed_state_bunching
from .lattice_scattering import SIN_K_CUTOFF, ModelParams
from .state_prep import WavepacketSpec, check_placement, entangled_state, product_state, sector_weights, symmetrize

#: Acceptance tolerances, kept together so tests and the CLI agree.
TOLERANCES = {
    "noninteracting": 0.02,  # |P_numeric - P_analytic|, U = 0
    "fermion_bunching": 0.01,  # numeric bunching of fermions in a D-even state
    "statistics_swap": 0.02,  # fermions (entangled) vs bosons (product)
    "interacting": 0.05,  # |deviation| outside flagged resonances; also the flag threshold
    "hardcore": 0.02,  # numeric bunching at U = 100J
    "norm_drift": 1e-10,
}

STATISTICS = ("boson", "fermion", "distinguishable")
INITIAL_STATES = ("product", "entangled")
TIME_RULES = ("border", "snapshot")

CSV_COLUMNS = (
    "k", "mu", "U", "epsilon", "delta", "statistics",
    "P_analytic", "P_bunch", "P_coinc", "P_barrier", "P_pair_diag",
    "norm_drift", "deviation", "flagged", "status",
)


def default_k_grid(n: int = 25) -> tuple[float, ...]:
    return tuple(float(x) for x in np.linspace(np.pi / 6, 5 * np.pi / 6, n))


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def parse_number(value) -> float:
    """Accept numbers or arithmetic strings in pi, e.g. "3*pi/4"."""
    if isinstance(value, (int, float)):
        return float(value)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise ValueError(f"unsupported expression {value!r}")

    try:
        tree = ast.parse(str(value).strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse number {value!r}") from exc
    return ev(tree)


def _parse_grid(value) -> tuple[float, ...]:
    if isinstance(value, dict):
        lo, hi = parse_number(value["start"]), parse_number(value["stop"])
        return tuple(float(x) for x in np.linspace(lo, hi, int(value["num"])))
    if isinstance(value, (list, tuple)):
        return tuple(parse_number(v) for v in value)
    return (parse_number(value),)


@dataclass(frozen=True)
class SweepConfig:
    J: float = 1.0
    L: int = 61
    k: tuple[float, ...] = field(default_factory=default_k_grid)
    mu: tuple[float, ...] = (2.0,)
    U: tuple[float, ...] = (0.0,)
    statistics: str = "boson"
    initial_state: str = "product"
    c: float = -15.0
    sigma: float = 5.0
    evaluation_time_rule: str = "border"
    output: str | None = None
    threshold: float = TOLERANCES["interacting"]
    pair_width: int = obs.DEFAULT_PAIR_WIDTH
    workers: int = 1
    name: str = "custom"

    def __post_init__(self):
        for name in ("k", "mu", "U"):
            grid = tuple(float(v) for v in getattr(self, name))
            if not grid:
                raise ValueError(f"{name} grid is empty")
            object.__setattr__(self, name, grid)
        for k in self.k:
            if not 0 < k < math.pi or abs(math.sin(k)) < SIN_K_CUTOFF:
                raise ValueError(f"k = {k} outside (0, pi) or too close to a band edge")
        if self.statistics not in STATISTICS:
            raise ValueError(f"statistics must be one of {STATISTICS}, got {self.statistics!r}")
        if self.initial_state not in INITIAL_STATES:
            raise ValueError(f"initial_state must be one of {INITIAL_STATES}, got {self.initial_state!r}")
        if self.evaluation_time_rule not in TIME_RULES:
            raise ValueError(f"evaluation_time_rule must be one of {TIME_RULES}")
        ModelParams(J=self.J, L=self.L)
        check_placement(WavepacketSpec(self.k[0], self.c, self.sigma), self.L)

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        data = dict(data)
        base = {}
        if "preset" in data:
            base = asdict(PRESETS[data.pop("preset")])
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key in ("k", "mu", "U"):
            if key in data:
                data[key] = _parse_grid(data[key])
        for key in ("J", "c", "sigma", "threshold"):
            if key in data:
                data[key] = parse_number(data[key])
        base.update(data)
        return cls(**base)

    @classmethod
    def from_file(cls, path: str | Path) -> "SweepConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    @property
    def epsilon(self) -> int:
        return {"boson": 1, "fermion": -1, "distinguishable": 0}[self.statistics]

    @property
    def delta(self) -> int:
        return 1 if self.initial_state == "product" else -1

    def points(self) -> list[tuple[float, float, float]]:
        return [(k, mu, U) for U in self.U for mu in self.mu for k in self.k]


PRESETS = {
    "fig4": SweepConfig(mu=(0.5, 1.0, 2.0, 3.0), name="fig4"),
    "fig4_fermion": SweepConfig(mu=(0.5, 1.0, 2.0, 3.0), statistics="fermion", name="fig4_fermion"),
    "fig4_entangled": SweepConfig(
        mu=(0.5, 1.0, 2.0, 3.0), statistics="fermion", initial_state="entangled", name="fig4_entangled"
    ),
    "fig4_distinguishable": SweepConfig(
        mu=(0.5, 1.0, 2.0, 3.0), statistics="distinguishable", name="fig4_distinguishable"
    ),
    "fig5a": SweepConfig(mu=(0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0), U=(2.0,), name="fig5a"),
    "fig5b": SweepConfig(mu=(2.0,), U=(1.0, -1.0, 2.0, -2.0, 4.0, -4.0), name="fig5b"),
    "fig6": SweepConfig(k=(3 * math.pi / 4,), mu=(2.0,), U=(2.0,), evaluation_time_rule="snapshot", name="fig6"),
    "hardcore": SweepConfig(k=(math.pi / 2,), mu=(2.0,), U=(100.0,), name="hardcore"),
}


@dataclass(frozen=True)
class RunResult:
    k: float
    mu: float
    U: float
    epsilon: int
    delta: int
    statistics: str
    P_analytic: float
    P_bunch: float
    P_coinc: float
    P_barrier: float
    P_pair_diag: float
    norm_drift: float
    deviation: float
    flagged: bool = False
    status: str = "ok"
    t: float = float("nan")

    @property
    def failed(self) -> bool:
        return self.status != "ok"

    def csv_row(self) -> list[str]:
        row = []
        for name in CSV_COLUMNS:
            v = getattr(self, name)
            if isinstance(v, bool):
                row.append("1" if v else "0")
            elif isinstance(v, float):
                row.append(repr(v))
            else:
                row.append(str(v))
        return row


def initial_state(config: SweepConfig, k: float):
    """Normalized initial state of a sweep point, symmetrized per statistics."""
    spec = WavepacketSpec(k, config.c, config.sigma)
    build = product_state if config.initial_state == "product" else entangled_state
    state = build(spec, config.L)
    if config.epsilon == 0:
        return state.normalized()
    return symmetrize(state, config.epsilon)


def analytic_prediction(config: SweepConfig, k: float, mu: float, U: float, state=None) -> float:
    """Closed-form bunching matching the prepared state; nan where none is known."""
    if config.epsilon != 0:
        p = analytic_bunching(config.J, mu, U, k, SymmetrySector(config.epsilon, config.delta))
        return float("nan") if p is None else p
    # distinguishable: weight the sectors the unsymmetrized state actually occupies
    weights = sector_weights(state if state is not None else initial_state(config, k))
    probs = {}
    for s in SECTORS:
        p = analytic_bunching(config.J, mu, U, k, s)
        if p is None:
            if weights[s] > 1e-12:
                return float("nan")
            p = 0.0
        probs[s] = p
    total = sum(weights.values())
    return mixed_state_bunching({s: w / total for s, w in weights.items()}, probs)


def evaluation_time(config: SweepConfig, k: float) -> float:
    if config.evaluation_time_rule == "border":
        return evolution_time(config.c, config.L, config.J, k)
    return snapshot_time(config.c, config.J, k)


def _evolve_point(config: SweepConfig, k: float, mu: float, U: float):
    params = ModelParams(J=config.J, mu=mu, U=U, L=config.L)
    psi0 = initial_state(config, k)
    t = evaluation_time(config, k)
    return psi0, evolve(psi0, params, t, PropagationPlan.for_params(params)), t


def _measure(config: SweepConfig, k: float, mu: float, U: float, psi0, psi, t: float) -> RunResult:
    analytic = analytic_prediction(config, k, mu, U, psi0)
    part = obs.partition(psi)
    drift = psi.norm2() - 1.0
    status = "ok" if abs(drift) <= TOLERANCES["norm_drift"] else "failed: norm drift"
    return RunResult(
        k=k, mu=mu, U=U,
        epsilon=config.epsilon, delta=config.delta, statistics=config.statistics,
        P_analytic=analytic,
        P_bunch=part.bunching,
        P_coinc=part.coincidence,
        P_barrier=part.barrier,
        P_pair_diag=obs.diagonal_pair_probability(psi, config.pair_width),
        norm_drift=drift,
        deviation=part.bunching - analytic,
        status=status,
        t=t,
    )


def run_point(config: SweepConfig, k: float, mu: float, U: float) -> RunResult:
    try:
        return _measure(config, k, mu, U, *_evolve_point(config, k, mu, U))
    except Exception as exc:  # recorded per point, the sweep carries on
        nan = float("nan")
        return RunResult(k, mu, U, config.epsilon, config.delta, config.statistics,
                         nan, nan, nan, nan, nan, nan, nan, status=f"failed: {type(exc).__name__}: {exc}")


def _run_point_args(args):
    return run_point(*args)


def run_sweep(config: SweepConfig, flag: bool = True) -> list[RunResult]:
    """Evolve every grid point; rows are flagged at config.threshold unless flag=False."""
    jobs = [(config, k, mu, U) for k, mu, U in config.points()]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_point_args, jobs, chunksize=4))
    else:
        results = [_run_point_args(j) for j in jobs]
    return flag_resonances(results, config.threshold) if flag else results


def flag_resonances(results: Iterable[RunResult], threshold: float) -> list[RunResult]:
    """Mark rows whose |numeric - analytic| exceeds threshold.

    Each row already carries P_barrier and P_pair_diag, the evidence for a
    particle bound to the barrier or a bound pair.  Rows without an
    analytic value are never flagged.
    """
    return [replace(r, flagged=bool(abs(r.deviation) > threshold)) for r in results]


def sign_symmetry_audit(results: Sequence[RunResult]) -> list[dict]:
    """Compare each (k, mu, U) row with its mu -> -mu and U -> -U partners.

    The closed form is even in both mu and U; the simulation is not.
    """
    index = {(r.k, r.mu, r.U): r for r in results}
    out = []
    for r in results:
        for kind, partner in (("mu", (r.k, -r.mu, r.U)), ("U", (r.k, r.mu, -r.U))):
            value = r.mu if kind == "mu" else r.U
            other = index.get(partner)
            if other is None or value <= 0:
                continue
            out.append({
                "k": r.k, "mu": r.mu, "U": r.U, "flip": kind,
                "dP_numeric": abs(r.P_bunch - other.P_bunch),
                "dP_analytic": abs(r.P_analytic - other.P_analytic),
            })
    return out


def write_csv(results: Sequence[RunResult], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        writer.writerow(r.csv_row())


def results_to_csv(results: Sequence[RunResult]) -> str:
    buf = io.StringIO()
    write_csv(results, buf)
    return buf.getvalue()


def read_csv(path_or_text: str | Path) -> list[dict]:
    text = Path(path_or_text).read_text(encoding="utf-8") if isinstance(path_or_text, Path) else path_or_text
    return list(csv.DictReader(io.StringIO(text)))


def run_snapshot(config: SweepConfig):
    """Evolve a single point to t = 2|c| / v_g.

    Returns (joint distribution, RunResult, snapshot CSV text).  The text has
    one metadata line starting with '#', then L rows of L values, row i
    being particle-1 site l = i - (L - 1)/2.
    """
    pts = config.points()
    if len(pts) != 1:
        raise ValueError(f"snapshot needs a single parameter point, config has {len(pts)}")
    cfg = replace(config, evaluation_time_rule="snapshot")
    k, mu, U = pts[0]
    psi0, psi, t = _evolve_point(cfg, k, mu, U)
    row = _measure(cfg, k, mu, U, psi0, psi, t)
    if row.failed:
        raise RuntimeError(row.status)
    grid = obs.joint_distribution(psi)
    meta = {
        "J": cfg.J, "L": cfg.L, "k": k, "mu": mu, "U": U, "statistics": cfg.statistics,
        "initial_state": cfg.initial_state, "c": cfg.c, "sigma": cfg.sigma, "t": t,
        "P_bunch": row.P_bunch, "P_coinc": row.P_coinc, "P_barrier": row.P_barrier,
        "P_pair_diag": row.P_pair_diag, "norm_drift": row.norm_drift,
    }
    lines = ["# " + ", ".join(f"{key}={val!r}" if isinstance(val, float) else f"{key}={val}"
                              for key, val in meta.items())]
    lines += [",".join(repr(float(x)) for x in line) for line in grid]
    return grid, row, "\n".join(lines) + "\n"


def read_snapshot(text: str) -> tuple[dict, np.ndarray]:
    """Parse snapshot CSV text back into (metadata, grid)."""
    head, *rows = text.strip().splitlines()
    if not head.startswith("#"):
        raise ValueError("snapshot file lacks its metadata line")
    meta = {}
    for item in head[1:].split(","):
        key, _, val = item.strip().partition("=")
        try:
            meta[key] = float(val)
        except ValueError:
            meta[key] = val
    grid = np.array([[float(x) for x in r.split(",")] for r in rows])
    return meta, grid
