"""Command-line front end.

Exit codes: 0 success, 2 malformed input or usage, 3 validation failure
(null or non-finite state, reconstruction residual at or above eps).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys

import numpy as np

from biqutrit.core import (
    alpha_family,
    eigen_oracle,
    factorization_residual,
    factorize,
    make_qutrit,
    reduced_density,
    schmidt_decomposition,
    schmidt_residual,
)
from biqutrit.errors import QutritError
from biqutrit.expsim import DetectorModel, aligned_phase, apply_phase_delay, expected_rates, simulate
from biqutrit.poincare import sphere_scene
from biqutrit.report import (
    analyze,
    dumps,
    factorization_to_json,
    oracle_comparison,
    schmidt_to_json,
    simulation_to_json,
    state_from_json,
    state_to_json,
)
from biqutrit.tolerances import eps_rec

log = logging.getLogger("biqutrit")

EXIT_USAGE = 2
EXIT_INVALID = 3


class UsageError(Exception):
    pass


def _amplitude(values) -> complex:
    if values is None:
        return 0j
    if len(values) > 2:
        raise UsageError("amplitude takes RE [IM]")
    return complex(values[0], values[1] if len(values) == 2 else 0.0)


def read_state(args):
    given = [args.alpha is not None, args.json is not None, any(v is not None for v in (args.c1, args.c2, args.c3))]
    if sum(given) != 1:
        raise UsageError("give exactly one of --c1/--c2/--c3, --alpha or --json")
    if args.alpha is not None:
        return alpha_family(args.alpha)
    if args.json is not None:
        try:
            with open(args.json) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {args.json}: {exc}") from exc
        try:
            return state_from_json(obj)
        except QutritError:
            raise
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return make_qutrit(_amplitude(args.c1), _amplitude(args.c2), _amplitude(args.c3))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    report = analyze(read_state(args))
    _emit(dumps(report.to_dict()), args.out)
    if not report.passed:
        log.error("reconstruction residual at or above eps_rec=%g", report.eps_rec)
        return EXIT_INVALID
    return 0


def cmd_factorize(args) -> int:
    q = read_state(args)
    f = factorize(q)
    residual = factorization_residual(q, f)
    body = {"state": state_to_json(q), "factorization": factorization_to_json(f), "residual": residual}
    _emit(dumps(body), args.out)
    return 0 if residual < eps_rec() else EXIT_INVALID


def cmd_schmidt(args) -> int:
    q = read_state(args)
    s = schmidt_decomposition(q)
    residual = schmidt_residual(q, s)
    vals, _ = eigen_oracle(reduced_density(q))
    body = {
        "state": state_to_json(q),
        "schmidt": schmidt_to_json(s),
        "oracle_eigenvalues": [float(v) for v in vals],
        "oracle": oracle_comparison(q, s),
        "residual": residual,
    }
    _emit(dumps(body), args.out)
    return 0 if residual < eps_rec() else EXIT_INVALID


def cmd_sphere(args) -> int:
    scene = sphere_scene(read_state(args), frame=args.frame)
    if scene.degenerate_frame:
        log.warning("degenerate Schmidt spectrum: frame choice is not unique")
    _emit(scene.to_csv() if args.format == "csv" else dumps(scene.to_dict()), args.out)
    return 0


def _sweep_rows(sim, det, steps: int):
    rows = []
    base = aligned_phase(sim.aligned)
    for i in range(steps):
        phi = math.pi * i / steps
        rec = expected_rates(apply_phase_delay(sim.aligned, phi - base), det, sim.expected.n_pairs)
        rows.append({"phi": phi, "r0": rec.r0, "r90": rec.r90, "r45": rec.r45})
    return rows


def cmd_simulate(args) -> int:
    q = read_state(args)
    try:
        det = DetectorModel(args.eta1, args.eta2, args.dark_rate)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.pairs <= 0:
        raise UsageError("--pairs must be positive")
    seed = args.seed
    if seed is None and not args.exact:
        seed = int(np.random.SeedSequence().entropy % 2**63)
    sim = simulate(q, det, args.pairs, seed=seed, exact=args.exact)
    body = simulation_to_json(sim, det)
    if args.phi_sweep:
        if args.phi_sweep < 2:
            raise UsageError("--phi-sweep needs at least 2 steps")
        rows = _sweep_rows(sim, det, args.phi_sweep)
        if args.format == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["phi", "r0", "r90", "r45"])
            for row in rows:
                writer.writerow([f"{row[k]:.17g}" for k in ("phi", "r0", "r90", "r45")])
            _emit(buf.getvalue(), args.out)
            return 0
        body["phi_sweep"] = rows
    _emit(dumps(body), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    state = argparse.ArgumentParser(add_help=False)
    group = state.add_argument_group("state input")
    for name in ("c1", "c2", "c3"):
        group.add_argument(f"--{name}", type=float, nargs="+", metavar="X", help=f"amplitude {name}: RE [IM]")
    group.add_argument("--alpha", type=float, help="state N a_H (cos a a_H + sin a a_V)|0>")
    group.add_argument("--json", metavar="FILE", help='JSON file {"c1": {"re":..,"im":..}, ...}')
    state.add_argument("--out", metavar="FILE", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="biqutrit", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[state], help="full report").set_defaults(func=cmd_analyze)
    sub.add_parser("factorize", parents=[state], help="factorizing operators").set_defaults(func=cmd_factorize)
    sub.add_parser("schmidt", parents=[state], help="Schmidt decomposition").set_defaults(func=cmd_schmidt)

    sp = sub.add_parser("sphere", parents=[state], help="Poincare-sphere vector scene")
    sp.add_argument("--frame", choices=("lab", "schmidt"), default="lab")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_sphere)

    sim = sub.add_parser("simulate", parents=[state], help="coincidence-counting experiment")
    sim.add_argument("--eta1", type=float, default=1.0)
    sim.add_argument("--eta2", type=float, default=1.0)
    sim.add_argument("--dark-rate", type=float, default=0.0, help="accidental coincidences per pair")
    sim.add_argument("--pairs", type=int, default=1_000_000)
    sim.add_argument("--seed", type=int)
    sim.add_argument("--exact", action="store_true", help="use expected rates, no sampling")
    sim.add_argument("--phi-sweep", type=int, metavar="STEPS", help="add an R(phi) sweep over [0, pi)")
    sim.add_argument("--format", choices=("json", "csv"), default="json", help="csv emits the sweep only")
    sim.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QutritError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
