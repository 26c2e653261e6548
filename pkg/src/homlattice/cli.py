"""Command line entry point: sweep, snapshot, analytic, verify."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

import numpy as np

from . import experiment as ex
from . import hom_analytics as hom
from . import lattice_scattering as ls
from . import verification

log = logging.getLogger("homlattice")


def _load_config(args) -> ex.SweepConfig:
    if args.preset:
        config = ex.PRESETS[args.preset]
    elif args.config:
        config = ex.SweepConfig.from_file(args.config)
    else:
        raise SystemExit("one of --config or --preset is required")
    updates = {}
    if args.output:
        updates["output"] = args.output
    if args.workers:
        updates["workers"] = args.workers
    return replace(config, **updates) if updates else config


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        log.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def cmd_sweep(args) -> int:
    config = _load_config(args)
    results = ex.run_sweep(config)
    _emit(ex.results_to_csv(results), config.output)

    failed = [r for r in results if r.failed]
    flagged = [r for r in results if r.flagged]
    log.info("%d points, %d flagged (|deviation| > %g), %d failed",
             len(results), len(flagged), config.threshold, len(failed))
    audit = ex.sign_symmetry_audit(results)
    if audit:
        worst = max(audit, key=lambda a: a["dP_numeric"])
        log.info("sign-symmetry audit: %d pairs, max |dP_numeric| = %.4f at k=%.4f mu=%g U=%g (%s flip), "
                 "max |dP_analytic| = %.1e", len(audit), worst["dP_numeric"], worst["k"], worst["mu"],
                 worst["U"], worst["flip"], max(a["dP_analytic"] for a in audit))
    for r in failed:
        print(f"FAILED k={r.k:.6g} mu={r.mu:g} U={r.U:g}: {r.status}", file=sys.stderr)
    return 1 if failed else 0


def cmd_snapshot(args) -> int:
    config = _load_config(args)
    try:
        _, row, text = ex.run_snapshot(config)
    except Exception as exc:
        print(f"FAILED: {exc}", file=sys.stderr)
        return 1
    _emit(text, config.output)
    log.info("t=%.4f P_bunch=%.4f P_barrier=%.4f P_pair_diag=%.4f", row.t, row.P_bunch, row.P_barrier, row.P_pair_diag)
    return 0


def cmd_analytic(args) -> int:
    J, mu, U = args.J, args.mu, args.U
    k = ex.parse_number(args.k)
    sector = hom.SymmetrySector(args.epsilon, args.delta)
    amps = ls.barrier_amplitudes(J, mu, k)
    rel = ls.relative_amplitudes(J, U, k)
    e_phase = hom.e_mirror_phase(J, U, k, sector.epsilon)
    phases = hom.MirrorPhases(e_phase, hom.d_mirror_phase(sector.delta))
    rows = [
        ("k", k),
        ("energy", ls.dispersion_energy(J, k)),
        ("group_velocity", ls.group_velocity(J, k)),
        ("t", amps.t),
        ("r", amps.r),
        ("T", amps.transmission),
        ("R", amps.reflection),
        ("mu_50_50", ls.fifty_fifty_barrier(J, k)),
        ("t_rel", rel.t),
        ("r_rel", rel.r),
        ("e_phase", e_phase),
        ("d_phase", phases.d_phase),
        ("P_bunch_mirror", hom.bunching_probability(amps, phases)),
        ("P_coinc_mirror", hom.coincidence_probability(amps, phases)),
    ]
    closed = hom.analytic_bunching(J, mu, U, k, sector)
    rows.append(("P_bunch_closed_form", closed if closed is not None else float("nan")))
    rows.append(("P_bunch_classical", hom.classical_bunching(J, mu, k)))
    if mu != 0:
        rows.append(("barrier_bound_energy", ls.barrier_bound_state(J, mu).energy))
    if U != 0:
        rows.append(("pair_bound_energy", ls.pair_bound_state(J, U).energy))
    for name, value in rows:
        if isinstance(value, complex):
            print(f"{name} = {value.real:.12g}{value.imag:+.12g}j")
        else:
            print(f"{name} = {value:.12g}")
    return 0


def cmd_verify(args) -> int:
    checks = verification.run_all()
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
    failed = [c for c in checks if not c.passed]
    if failed:
        print(f"{len(failed)} check(s) failed: " + "; ".join(c.name for c in failed), file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homlattice", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_ in (
        ("sweep", cmd_sweep, "run a parameter sweep and write the result CSV"),
        ("snapshot", cmd_snapshot, "write the joint distribution at t = 2|c|/v_g"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--preset", choices=sorted(ex.PRESETS))
        p.add_argument("--output", help="output path (default: stdout)")
        p.add_argument("--workers", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("analytic", help="print closed-form values")
    p.add_argument("--J", type=float, default=1.0)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--U", type=float, default=0.0)
    p.add_argument("--k", required=True, help='quasimomentum, e.g. 1.57 or "pi/2"')
    p.add_argument("--epsilon", type=int, choices=(1, -1), default=1)
    p.add_argument("--delta", type=int, choices=(1, -1), default=1)
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("verify", help="run oracle and invariant checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    np.seterr(all="ignore")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
