"""Command-line entry point.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import formats
from .darboux import audit_family, cll_curve_set, verify_invariance
from .errors import QuadCurvesError
from .formats import ArtifactDocument, parse_rational
from .numeric import (
    VARIANTS,
    ambiguity_report,
    darboux_first_integral,
    drift_report,
    general_integral_spec,
    hypergeometric_system,
    integrate_trajectory,
    level_samples,
    STANDARD_SEEDS,
)
from .operators import HermiteLike, Hypergeometric, Jacobi, Laguerre
from .sweep import invariance_sweep, kernel_consistency, STANDARD_FAMILIES
from .systems import family_bundle, paper_literal_system

OK, FAILED, USAGE = 0, 1, 2


class UsageError(QuadCurvesError):
    pass


def _rat(text: str):
    return parse_rational(text, "argument")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _family_from_args(args, n: Optional[int] = None):
    n = args.n if n is None else n
    beta, gamma = args.beta, args.gamma
    if args.family == "hyp":
        if args.b is None or args.c is None:
            raise UsageError("--family hyp needs --b and --c")
        a = args.a if args.a is not None else -n
        return Hypergeometric(a, args.b, args.c, beta, gamma)
    if args.family == "jacobi":
        return Jacobi(args.A or 0, args.B or 0, n, beta, gamma)
    if args.family == "laguerre":
        return Laguerre(args.A or 0, n, beta, gamma)
    return HermiteLike(n, beta, gamma)


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=["hyp", "jacobi", "laguerre", "hermite"])
    for name in ("a", "b", "c", "A", "B"):
        p.add_argument(f"--{name}", type=_rat, default=None)
    p.add_argument("--beta", type=_rat, default=0)
    p.add_argument("--gamma", type=_rat, default=0)


def cmd_construct(args) -> int:
    if args.n is None and not (args.family == "hyp" and args.a is not None):
        raise UsageError("--n is required")
    spec = _family_from_args(args)
    bundle = family_bundle(spec)
    system = paper_literal_system(spec) if args.literal else bundle.system
    cert = verify_invariance(system.P, system.Q, bundle.g, bundle.cofactor.poly)
    docs = [
        ArtifactDocument("system", system),
        ArtifactDocument("curve", bundle),
        ArtifactDocument("certificate", cert),
    ]
    _emit(formats.encode_many(docs), args.out)
    if args.out:
        print(f"x' = {system.P}")
        print(f"y' = {system.Q}")
        print(f"curve: {bundle.g}")
        print(f"certificate: {cert.status}")
    if not cert.passed:
        print(f"residual: {cert.residual}", file=sys.stderr)
    return OK if cert.passed else FAILED


def _find(docs: List[ArtifactDocument], kind: str, path: str):
    for d in docs:
        if d.kind == kind:
            return d.payload
    raise UsageError(f"{path}: no {kind} document")


def cmd_verify(args) -> int:
    curve_docs = formats.decode_any(Path(args.curve).read_text())
    bundle = _find(curve_docs, "curve", args.curve)
    if args.system:
        system = _find(formats.decode_any(Path(args.system).read_text()), "system", args.system)
    else:
        system = bundle.system
    cert = verify_invariance(system.P, system.Q, bundle.g, bundle.cofactor.poly)
    _emit(formats.encode(ArtifactDocument("certificate", cert)), args.out)
    print(f"status: {cert.status}", file=sys.stderr)
    if not cert.passed:
        print(f"residual: {cert.residual}", file=sys.stderr)
    return OK if cert.passed else FAILED


def _audit_text(reports) -> str:
    lines = []
    for r in reports:
        f = r.family
        lines.append(f"[{f.kind}] n={f.n} beta={f.beta} gamma={f.gamma}")
        if r.coefficient_diffs:
            for k, (c, l) in r.coefficient_diffs.items():
                lines.append(f"  {k}: derived {c}  printed {l}")
        else:
            lines.append("  printed system matches the derived system")
        lines.append(f"  printed-system invariance: {r.literal_invariance}")
        if not r.literal_residual.is_zero():
            lines.append(f"  residual: {r.literal_residual}")
        for note in r.notes:
            lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


def cmd_audit(args) -> int:
    if args.n_min < 1 or args.n_max < args.n_min:
        raise UsageError("need 1 <= --n-min <= --n-max")
    base = _family_from_args(args, n=args.n_min)
    reports = audit_family(base, range(args.n_min, args.n_max + 1))
    if args.out:
        Path(args.out).write_text(formats.encode(ArtifactDocument("audit", tuple(reports))))
    sys.stdout.write(_audit_text(reports))
    ok = all(r.literal_invariance == "pass" and r.canonical_invariance == "pass" for r in reports)
    return OK if ok else FAILED


def cmd_sweep(args) -> int:
    ns = range(1, args.n_max + 1)
    results = invariance_sweep(ns)
    bad = [r for r in results if not r.passed]
    kernel_bad = 0
    for name in STANDARD_FAMILIES:
        for n in ns:
            solves, prop = kernel_consistency(STANDARD_FAMILIES[name](n, 0, 0))
            kernel_bad += not (solves and prop)
    print(f"invariance cases: {len(results)} passed: {len(results) - len(bad)}")
    print(f"kernel checks: {len(STANDARD_FAMILIES) * len(ns)} failed: {kernel_bad}")
    for r in bad:
        print(f"  FAIL {r.family} n={r.n} beta={r.beta} gamma={r.gamma}")
    return OK if not bad and not kernel_bad else FAILED


def _require_cll(args) -> None:
    if not args.cll:
        raise UsageError("only --cll curve sets are supported")


def cmd_darboux(args) -> int:
    _require_cll(args)
    dset = cll_curve_set(args.a, args.b, args.c, require_polynomial=args.exact)
    _emit(formats.encode(ArtifactDocument("darboux-set", dset)), args.out)
    if dset.exponents is not None:
        print("exponents: " + ", ".join(str(v) for v in dset.exponents), file=sys.stderr)
    return OK if dset.relation_holds() else FAILED


def _seed_path(out: str, i: int) -> Path:
    p = Path(out)
    return p.with_name(f"{p.stem}-{i}{p.suffix or '.csv'}")


def cmd_drift(args) -> int:
    _require_cll(args)
    if args.variant == "both":
        rep = ambiguity_report(args.a, args.b, args.c, args.beta, args.gamma,
                               h=args.h, T=args.T, tol=args.tol)
        sys.stdout.write(formats.encode(ArtifactDocument("drift", rep)))
        print(rep.text(), file=sys.stderr)
        return OK if rep.passing else FAILED
    if args.variant is None:
        dset = cll_curve_set(args.a, args.b, args.c)
        system = dset.system
        spec = darboux_first_integral(dset)
    else:
        system = hypergeometric_system(args.a, args.b, args.c, args.beta, args.gamma)
        spec = general_integral_spec(args.a, args.b, args.c, args.beta, args.gamma, args.variant)
    rep = drift_report(system, spec, STANDARD_SEEDS, args.h, args.T, args.tol,
                       label=args.variant or "cll")
    sys.stdout.write(formats.encode(ArtifactDocument("drift", rep)))
    if args.out:
        for i, (x0, y0) in enumerate(STANDARD_SEEDS):
            traj = integrate_trajectory(system, x0, y0, args.h, args.T, unit_strip=True)
            with_f = spec(traj.x, traj.y)
            _seed_path(args.out, i).write_text(formats.trajectory_csv(traj, with_f))
    return OK if rep.verdict == "pass" else FAILED


def cmd_levels(args) -> int:
    bundle = _find(formats.decode_any(Path(args.curve).read_text()), "curve", args.curve)
    rows = level_samples(bundle.g, tuple(args.region), tuple(args.grid))
    _emit(formats.levels_csv(rows), args.out)
    return OK


def cmd_trajectory(args) -> int:
    docs = formats.decode_any(Path(args.system).read_text())
    try:
        system = _find(docs, "system", args.system)
    except UsageError:
        system = _find(docs, "curve", args.system).system
    traj = integrate_trajectory(system, args.x0, args.y0, args.h, args.T, unit_strip=args.unit_strip)
    _emit(formats.trajectory_csv(traj), args.out)
    print(f"terminated: {traj.terminated}", file=sys.stderr)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadcurves", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="derived system, invariant curve and certificate")
    _add_family_args(p)
    p.add_argument("--n", type=int)
    p.add_argument("--literal", action="store_true", help="use the printed closed-form system")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a curve against a system")
    p.add_argument("--system")
    p.add_argument("--curve", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", help="compare printed and derived systems")
    _add_family_args(p)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--out")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("sweep", help="invariance and kernel checks over the standard matrix")
    p.add_argument("--n-max", type=int, default=25)
    p.set_defaults(func=cmd_sweep)

    for name, func in (("darboux", cmd_darboux), ("drift", cmd_drift)):
        p = sub.add_parser(name)
        p.add_argument("--cll", action="store_true")
        p.add_argument("--a", type=_rat, required=True)
        p.add_argument("--b", type=_rat, required=True)
        p.add_argument("--c", type=_rat, required=True)
        p.add_argument("--out")
        p.set_defaults(func=func)
        if name == "darboux":
            p.add_argument("--exact", action="store_true", help="require every curve to be polynomial")
        else:
            p.add_argument("--variant", choices=list(VARIANTS) + ["both"])
            p.add_argument("--beta", type=_rat, default=0)
            p.add_argument("--gamma", type=_rat, default=0)
            p.add_argument("--h", type=float, default=1e-3)
            p.add_argument("--T", type=float, default=2.0)
            p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("levels", help="sample a curve polynomial on a grid")
    p.add_argument("--curve", required=True)
    p.add_argument("--region", type=float, nargs=4, default=[0.0, 1.0, 0.0, 1.0],
                   metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    p.add_argument("--grid", type=int, nargs=2, default=[21, 21], metavar=("NX", "NY"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("trajectory", help="RK4 trajectory as CSV")
    p.add_argument("--system", required=True)
    p.add_argument("--x0", type=float, required=True)
    p.add_argument("--y0", type=float, required=True)
    p.add_argument("--h", type=float, default=1e-3)
    p.add_argument("--T", type=float, default=2.0)
    p.add_argument("--unit-strip", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_trajectory)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else USAGE
    try:
        return args.func(args)
    except (QuadCurvesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
