"""Command-line entry point.

Exit codes: 0 success, 1 computation or validation failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import statistics
import sys

import numpy as np

from . import geometry as geo
from . import io
from .modmath import DimensionError, validate_dim
from .operators import line_operator, mub_state, point_operator
from .phase_space import apg_quasi, quasi_dist, radon_forward, reconstruct_state
from .selftest import run_selftest
from .tomography_sim import EXACT, ExperimentConfig, parse_state_spec, run_experiment


def _dim(text: str) -> int:
    try:
        return validate_dim(int(text)).d
    except (ValueError, DimensionError) as exc:
        raise argparse.ArgumentTypeError(f"{type(exc).__name__}: {exc}") from None


def _shots(text: str):
    if text == EXACT:
        return EXACT
    try:
        n = int(text)
    except ValueError:
        n = 0
    if n < 1:
        raise argparse.ArgumentTypeError(f"shots must be a positive integer or 'exact', got {text!r}")
    return n


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_geometry_check(args) -> int:
    which = args.which or "both"
    reports = []
    if which in ("dapg", "both"):
        reports += geo.verify_dapg_axioms(args.dim)
    if which in ("apg", "both"):
        reports += geo.verify_apg_axioms(args.dim)
    for r in reports:
        print(r)
    if args.incidence_csv:
        geo.write_incidence_csv(args.dim, args.incidence_csv)
    return 0 if all(r.passed for r in reports) else 1


def cmd_mub(args) -> int:
    if not -1 <= args.basis < args.dim:
        raise ValueError(f"basis must be in [-1, {args.dim - 1}]")
    v = mub_state(args.dim, args.state, args.basis)
    _emit(io.dumps({"d": args.dim, "basis": args.basis, "state": args.state % args.dim,
                    "re": v.real.tolist(), "im": v.imag.tolist()}), None)
    return 0


def cmd_op_point(args) -> int:
    if not -1 <= args.b < args.dim:
        raise ValueError(f"basis must be in [-1, {args.dim - 1}]")
    _emit(io.dumps(io.matrix_to_dict(point_operator(args.dim, (args.m, args.b)))), args.out)
    return 0


def cmd_op_line(args) -> int:
    _emit(io.dumps(io.matrix_to_dict(line_operator(args.dim, (args.m1, args.m0)))), args.out)
    return 0


def cmd_quasi(args) -> int:
    rho = io.read_matrix(args.state)
    v = apg_quasi(rho) if args.apg else quasi_dist(rho)
    io.write_quasi_csv(args.out, v, apg=args.apg)
    return 0


def cmd_radon_forward(args) -> int:
    rho = io.read_matrix(args.state)
    _emit(io.dumps(io.table_to_dict(radon_forward(rho))), args.out)
    return 0


def cmd_radon_invert(args) -> int:
    table = io.read_table(args.probs)
    rec = reconstruct_state(table, tol=args.tol, project=args.project_psd)
    if not rec.is_psd:
        print(f"warning: reconstruction has negative eigenvalue {rec.min_eigenvalue:.3g}"
              + (" (projected)" if rec.projected else ""), file=sys.stderr)
    _emit(io.dumps(io.matrix_to_dict(rec.rho)), args.out)
    return 0


def cmd_simulate(args) -> int:
    parse_state_spec(args.state, args.dim)
    reports = []
    for k in range(args.repeat):
        cfg = ExperimentConfig(d=args.dim, shots=args.shots, state=args.state,
                               seed=args.seed + k, project_psd=args.project_psd)
        reports.append(run_experiment(cfg).to_dict())
    if args.repeat == 1:
        payload = reports[0]
    else:
        payload = {
            "runs": reports,
            "median_fidelity": statistics.median(r["fidelity"] for r in reports),
            "median_trace_distance": statistics.median(r["trace_distance"] for r in reports),
        }
    _emit(io.dumps(payload), args.out)
    return 0


def cmd_selftest(args) -> int:
    results = run_selftest(args.dim, seed=args.seed)
    for r in results:
        print(r)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} identities passed at d={args.dim}")
    if failed:
        print(f"first failure: {failed[0]}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fgrt",
        description="Finite-geometry MUB operators and the finite Radon transform.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    geom = sub.add_parser("geometry", help="finite geometry checks")
    geom_sub = geom.add_subparsers(dest="action", required=True)
    check = geom_sub.add_parser("check", help="verify DAPG/APG axioms exhaustively")
    check.add_argument("--dim", type=_dim, required=True)
    group = check.add_mutually_exclusive_group()
    group.add_argument("--apg", dest="which", action="store_const", const="apg")
    group.add_argument("--dapg", dest="which", action="store_const", const="dapg")
    group.add_argument("--both", dest="which", action="store_const", const="both")
    check.add_argument("--incidence-csv", metavar="PATH", help="also export the incidence table")
    check.set_defaults(func=cmd_geometry_check)

    mub = sub.add_parser("mub", help="print the amplitudes of |m;b>")
    mub.add_argument("--dim", type=_dim, required=True)
    mub.add_argument("--basis", type=int, required=True)
    mub.add_argument("--state", type=int, required=True)
    mub.set_defaults(func=cmd_mub)

    op = sub.add_parser("op", help="dump point or line operators as JSON")
    op_sub = op.add_subparsers(dest="kind", required=True)
    point = op_sub.add_parser("point")
    point.add_argument("--dim", type=_dim, required=True)
    point.add_argument("--m", type=int, required=True)
    point.add_argument("--b", type=int, required=True)
    point.add_argument("--out")
    point.set_defaults(func=cmd_op_point)
    line = op_sub.add_parser("line")
    line.add_argument("--dim", type=_dim, required=True)
    line.add_argument("--m1", type=int, required=True)
    line.add_argument("--m0", type=int, required=True)
    line.add_argument("--out")
    line.set_defaults(func=cmd_op_line)

    quasi = sub.add_parser("quasi", help="export V(j) = tr(rho P_j) as CSV")
    quasi.add_argument("--state", required=True)
    quasi.add_argument("--out", required=True)
    quasi.add_argument("--apg", action="store_true", help="label rows by APG point (xi, eta)")
    quasi.set_defaults(func=cmd_quasi)

    radon = sub.add_parser("radon", help="finite Radon transform and its inverse")
    radon_sub = radon.add_subparsers(dest="direction", required=True)
    fwd = radon_sub.add_parser("forward")
    fwd.add_argument("--state", required=True)
    fwd.add_argument("--out")
    fwd.set_defaults(func=cmd_radon_forward)
    inv = radon_sub.add_parser("invert")
    inv.add_argument("--probs", required=True)
    inv.add_argument("--out")
    inv.add_argument("--project-psd", action="store_true")
    inv.add_argument("--tol", type=float, default=1e-6, help="per-basis normalisation tolerance")
    inv.set_defaults(func=cmd_radon_invert)

    sim = sub.add_parser("simulate", help="finite-shot MUB tomography experiment")
    sim.add_argument("--dim", type=_dim, required=True)
    sim.add_argument("--shots", type=_shots, required=True)
    sim.add_argument("--state", default="pure", help="pure | mixed:RANK | file:PATH")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--repeat", type=int, default=1)
    sim.add_argument("--project-psd", action="store_true")
    sim.add_argument("--out")
    sim.set_defaults(func=cmd_simulate)

    st = sub.add_parser("selftest", help="run the invariant battery")
    st.add_argument("--dim", type=_dim, required=True)
    st.add_argument("--seed", type=int, default=0)
    st.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "repeat", 1) < 1:
        print("fgrt: error: --repeat must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"fgrt: file not found: {exc.filename}", file=sys.stderr)
    except (ValueError, ArithmeticError, KeyError, OSError, np.linalg.LinAlgError) as exc:
        print(f"fgrt: {type(exc).__name__}: {exc}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
