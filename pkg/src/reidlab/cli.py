"""Command-line front end: ``reidlab {check,fuzz,counterexample,proofsteps}``.

Exit codes: 0 success / certified, 1 violated or failed, 2 bad input,
3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys

from .campaigns import run_fuzz, run_proofsteps
from .certifier import ReidInstance, Status, certify_reid
from .errors import ReidLabError
from .generators import GENERATORS
from .linalg import TolerancePolicy
from .matrix_io import load_matrix
from .proofsteps import STEP_TOL
from .shift import paper_counterexample

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
_STATUS_EXIT = {
    Status.CERTIFIED_HOLDS: EXIT_OK,
    Status.VIOLATED: EXIT_VIOLATED,
    Status.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def parse_dims(text: str) -> list[int]:
    """``"2..8"`` (inclusive range) or ``"2,4,6"``."""
    try:
        if ".." in text:
            lo, hi = (int(v) for v in text.split("..", 1))
            dims = list(range(lo, hi + 1))
        else:
            dims = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --dims value {text!r}") from None
    if not dims or any(d < 1 or d > 64 for d in dims):
        raise argparse.ArgumentTypeError(f"--dims must name dimensions in [1, 64], got {text!r}")
    return dims


def _emit(payload: dict, out=None) -> None:
    (out or sys.stdout).write(json.dumps(payload, indent=2) + "\n")


def _fail(msg: str) -> int:
    print(f"reidlab: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def cmd_check(a_path, k_path, epsilon=None, tol: TolerancePolicy = TolerancePolicy()) -> int:
    try:
        A = load_matrix(a_path)
        K = load_matrix(k_path)
        inst = ReidInstance.build(A, K, tol)
        cert = certify_reid(inst, epsilon, tol)
    except (ReidLabError, ValueError) as exc:
        return _fail(str(exc))
    _emit(cert.to_dict())
    return _STATUS_EXIT[cert.status]


def cmd_fuzz(klass, dims, trials, seed, epsilon=None, tol=TolerancePolicy(),
             dump=None, out=None, human=False) -> int:
    if klass not in GENERATORS:
        return _fail(f"unknown class {klass!r}")
    if trials < 1:
        return _fail("--trials must be at least 1")
    report = run_fuzz(klass, dims, trials, seed, epsilon, tol, dump)
    payload = report.to_dict()
    if out is not None:
        with open(out, "w") as fh:
            _emit(payload, fh)
    if human:
        s = report.summary
        print(f"{report.campaign_name}: {trials} trials, dims {dims[0]}..{dims[-1]}, seed {seed}")
        for k in s:
            print(f"  {k:<16} {s[k]}")
        print(f"  wall time        {report.wall_time_ms} ms")
    elif out is None:
        _emit(payload)
    return EXIT_OK if report.all_certified else EXIT_VIOLATED


def _counterexample_table(rep) -> str:
    cert = rep.certificate
    rows = [
        ("truncation n", rep.n),
        ("x", "(2, 1, 0, ..., 0)"),
        ("|<Sx,x>|", rep.lhs),
        ("||K||", rep.norm_K),
        ("<SS*x,x> = ||S*x||^2", rep.norm_S_adj_x_sq),
        ("||K|| <Ax,x>", rep.rhs),
        ("gap", rep.gap),
        ("exact match", rep.exact_match),
        ("certifier", str(cert.status)),
        ("certified gap_lower", f"{cert.gap_lower:.9f}"),
        ("certified gap_upper", f"{cert.gap_upper:.9f}"),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def cmd_counterexample(n, epsilon=None, tol=TolerancePolicy(), human=True) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        return _fail(f"n must be an integer >= 2, got {n!r}")
    rep = paper_counterexample(n, epsilon, tol)
    if human:
        print(_counterexample_table(rep))
    else:
        _emit(rep.to_dict())
    return EXIT_OK if rep.agrees else EXIT_VIOLATED


def cmd_proofsteps(dims, trials, seed, tol=STEP_TOL, epsilon=None, human=True) -> int:
    if trials < 1:
        return _fail("--trials must be at least 1")
    report = run_proofsteps(dims, trials, seed, tol, epsilon)
    if human:
        fails = report.failures
        print(f"proofsteps: {trials} instances, dims {dims[0]}..{dims[-1]}, seed {seed}, "
              f"atol={tol.atol:g} rtol={tol.rtol:g}")
        print(f"  failing checks   {len(fails)}")
        for trial, step, defect, floor, detail in fails[:50]:
            if defect is None:
                print(f"    trial {trial:5d}  {step:<22} {detail}")
            else:
                fl = "n/a" if floor is None else f"{floor:.3e}"
                print(f"    trial {trial:5d}  {step:<22} defect {defect:.3e}  floor {fl}")
        if len(fails) > 50:
            print(f"    ... {len(fails) - 50} more")
        j = report.jordan
        print(f"  jordan block     |<Tx,x>| = {j['lhs']:.12g}, <|T|x,x> = {j['rhs']:.12g}, "
              f"{j['status']}")
    else:
        _emit(report.to_dict())
    return EXIT_OK if report.ok else EXIT_VIOLATED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reidlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, atol=None, rtol=None):
        sp.add_argument("--epsilon", type=float, default=None,
                        help="certificate resolution (default 1e-6 * max(1, ||AK||))")
        sp.add_argument("--atol", type=float, default=atol)
        sp.add_argument("--rtol", type=float, default=rtol)
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="human", action="store_false", default=None)
        fmt.add_argument("--human", dest="human", action="store_true")

    sp = sub.add_parser("check", help="certify the Reid inequality for A, K given as JSON files")
    sp.add_argument("matrix_A")
    sp.add_argument("matrix_K")
    common(sp, 1e-10, 1e-10)

    sp = sub.add_parser("fuzz", help="seeded campaign over a hypothesis class")
    sp.add_argument("--class", dest="klass", required=True, choices=sorted(GENERATORS))
    sp.add_argument("--dims", type=parse_dims, default=parse_dims("2..8"))
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dump", default=None, help="directory to write generated A, K matrices")
    sp.add_argument("--out", default=None, help="write the report here instead of stdout")
    common(sp, 1e-10, 1e-10)

    sp = sub.add_parser("counterexample", help="reproduce the truncated shift counterexample")
    sp.add_argument("n", type=int, nargs="?", default=8)
    common(sp, 1e-10, 1e-10)

    sp = sub.add_parser("proofsteps", help="check every step of the proof chain on random instances")
    sp.add_argument("--dims", type=parse_dims, default=parse_dims("2..8"))
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, STEP_TOL.atol, STEP_TOL.rtol)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tol = TolerancePolicy(args.atol, args.rtol)
    except ValueError as exc:
        return _fail(str(exc))
    if args.epsilon is not None and not args.epsilon > 0:
        return _fail("--epsilon must be positive")
    if args.command == "check":
        return cmd_check(args.matrix_A, args.matrix_K, args.epsilon, tol)
    if args.command == "fuzz":
        return cmd_fuzz(args.klass, args.dims, args.trials, args.seed, args.epsilon, tol,
                        args.dump, args.out, bool(args.human))
    if args.command == "counterexample":
        return cmd_counterexample(args.n, args.epsilon, tol, args.human is not False)
    return cmd_proofsteps(args.dims, args.trials, args.seed, tol, args.epsilon,
                          args.human is not False)


if __name__ == "__main__":
    sys.exit(main())
