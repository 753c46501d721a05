"""Command line entry point.

Exit codes: 0 when every claim is verified, 1 when one is falsified, 2 on a
usage or resource error.
"""

from __future__ import annotations

import argparse
import json
import sys

from ..brauercat import BrauerDiagram, HomElement, compose, enumerate_diagrams
from .classical import classical_relations_orth, classical_relations_symp, lowest_kernel_degree
from .pipelines import kernel_eta, kernel_kappa, verify_fft_gl, verify_sft_eta, verify_sft_osp
from .reports import ResourceLimitError, Timer, VerificationReport

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _report_exit(*reports: VerificationReport) -> int:
    for r in reports:
        _emit(r.to_json_obj())
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FALSIFIED


def _load_hom(path: str, delta: int) -> HomElement:
    with open(path) as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise UsageError(f"{path}: expected a diagram or HomElement JSON object")
    if "terms" in obj:
        x = HomElement.from_json_obj(obj)
        if x.delta != delta:
            x = HomElement(x.p, x.q, delta, x.terms)
        return x
    return HomElement.from_diagram(BrauerDiagram.from_json_obj(obj), delta)


def cmd_diagrams(args) -> int:
    diagrams = enumerate_diagrams(args.p, args.q)
    if args.json:
        _emit([D.to_json_obj() for D in diagrams])
    else:
        for D in diagrams:
            print(" ".join(f"{a}-{b}" for a, b in D.arcs))
        print(f"# {len(diagrams)} diagrams {args.p} -> {args.q}")
    return EXIT_OK


def cmd_compose(args) -> int:
    outer = _load_hom(args.file1, args.delta)
    inner = _load_hom(args.file2, args.delta)
    _emit(compose(outer, inner, args.delta).to_json_obj())
    return EXIT_OK


def _kernel_report(claim: str, fn, args) -> int:
    report = VerificationReport(claim, {"m": args.m, "n": args.n, "d": args.d})
    with Timer() as t:
        res = fn(args.m, args.n, args.d)
    report.dims = {"ambient_dim": res.ambient_dim, "kernel_dim": res.kernel_dim}
    report.status = "verified"
    report.elapsed_ms = t.ms
    if getattr(args, "basis_out", None):
        with open(args.basis_out, "w") as fh:
            json.dump(res.to_json_obj(), fh)
    return _report_exit(report)


def cmd_kernel_kappa(args) -> int:
    return _kernel_report("kernel-kappa", kernel_kappa, args)


def cmd_kernel_eta(args) -> int:
    return _kernel_report("kernel-eta", kernel_eta, args)


def cmd_verify_sft(args) -> int:
    reports = [verify_sft_osp(args.m, args.n, args.d, seed=args.seed, samples=args.samples)]
    if args.eta:
        reports.append(verify_sft_eta(args.m, args.n, args.d))
    return _report_exit(*reports)


def cmd_verify_fft_gl(args) -> int:
    return _report_exit(verify_fft_gl(args.m, args.ell, args.r))


def cmd_classical(args) -> int:
    if args.case == "orth":
        if args.m is None:
            raise UsageError("--case orth needs --m")
        _, report = classical_relations_orth(args.m, args.d, seed=args.seed)
    else:
        if args.n is None:
            raise UsageError("--case symp needs --n")
        _, report = classical_relations_symp(args.n, args.d)
    return _report_exit(report)


def cmd_lowest_kernel(args) -> int:
    # an experiment: it reports what it finds and never fails
    _emit(lowest_kernel_degree(args.m, args.n, args.d_max))
    return EXIT_OK


class UsageError(Exception):
    pass


def _nat(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superbrauer", description="Exact checks of the orthosymplectic invariant theory.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagrams", help="Brauer diagram utilities")
    dsub = p.add_subparsers(dest="action", required=True)
    pe = dsub.add_parser("enumerate", help="list the diagrams p -> q")
    pe.add_argument("--p", type=_nat, required=True)
    pe.add_argument("--q", type=_nat, required=True)
    pe.add_argument("--json", action="store_true")
    pe.set_defaults(func=cmd_diagrams)

    p = sub.add_parser("compose", help="compose FILE1 after FILE2")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_compose)

    for name, func, extra in (("kernel-kappa", cmd_kernel_kappa, True), ("kernel-eta", cmd_kernel_eta, False)):
        p = sub.add_parser(name)
        p.add_argument("--m", type=_nat, required=True)
        p.add_argument("--n", type=_nat, required=True)
        p.add_argument("--d", type=_nat, required=True)
        if extra:
            p.add_argument("--basis-out", metavar="FILE")
        p.set_defaults(func=func)

    p = sub.add_parser("verify-sft", help="check Ker(kappa) = D0 I(m, n)")
    p.add_argument("--m", type=_nat, required=True)
    p.add_argument("--n", type=_nat, required=True)
    p.add_argument("--d", type=_nat, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=_nat, default=200)
    p.add_argument("--eta", action="store_true", help="also check Ker(eta) through bending")
    p.set_defaults(func=cmd_verify_sft)

    p = sub.add_parser("verify-fft-gl", help="check Ker(varpi_r) against hook lengths")
    p.add_argument("--m", type=_nat, required=True)
    p.add_argument("--ell", type=_nat, required=True)
    p.add_argument("--r", type=_nat, required=True)
    p.set_defaults(func=cmd_verify_fft_gl)

    p = sub.add_parser("classical", help="classical relation families")
    p.add_argument("--case", choices=("orth", "symp"), required=True)
    p.add_argument("--m", type=_nat)
    p.add_argument("--n", type=_nat)
    p.add_argument("--d", type=_nat, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("lowest-kernel", help="experiment: first degree with a nonzero kernel")
    p.add_argument("--m", type=_nat, required=True)
    p.add_argument("--n", type=_nat, required=True)
    p.add_argument("--d-max", type=_nat, default=6)
    p.set_defaults(func=cmd_lowest_kernel)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (ResourceLimitError, UsageError, OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
