"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 bad input,
3 the requested search ran out of horizon.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from fractions import Fraction
from math import comb

from . import analysis, engine, families
from .algebra import AlgebraStructureError, InvolutionAxiomError, dumps, load, validate
from .monomials import DegreeCapError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCOMPLETE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _alpha(text: str) -> Fraction:
    try:
        a = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if a <= 1:
        raise argparse.ArgumentTypeError("alpha must be > 1")
    return a


def _window(text: str):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError("window must look like 4..7")
    return int(lo), int(hi)


def build_algebra(args):
    if getattr(args, "file", None):
        return load(args.file), None
    fam = args.family
    if fam is None and args.T:
        fam = args.family = "at"
    if fam is None:
        raise InputError("give --family or --file")
    Ts, Ns = args.T or [], args.N or []
    if fam in ("at", "tilde", "b") and len(Ts) != 1:
        raise InputError(f"--family {fam} needs exactly one --T")
    if fam == "at":
        return families.make_A_T(Ts[0]), Ts[0]
    M = args.M if args.M is not None else max(args.n_max or 1, 1)
    if fam == "tilde":
        return families.make_tilde_slice(Ts[0], M), Ts[0]
    if fam == "b":
        if len(Ns) != 1:
            raise InputError("--family b needs exactly one --N")
        return families.make_B_slice(Ts[0], Ns[0], M), Ts[0]
    if fam == "c-prefix":
        if not Ts or len(Ts) != len(Ns):
            raise InputError("--family c-prefix needs matching --T/--N lists")
        return families.make_C_prefix(list(zip(Ts, Ns)), M), None
    raise InputError(f"unknown family {fam!r}")


def _mode(args, algebra) -> str:
    mode = args.basis_mode.replace("-", "_")
    if mode == "auto":
        return "left_normed" if algebra.is_commutative_metabelian() else "full"
    return mode


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(rows) -> str:
    rows = [list(map(str, r)) for r in rows]
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows) + "\n"


def _render(args, rows) -> str:
    if args.format == "table":
        return _table(rows)
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    try:
        alg = load(args.path)
    except AlgebraStructureError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = validate(alg)
    for v in report:
        print(v)
    if report:
        return EXIT_FAIL
    dec = alg.decomposition()
    print(f"{alg.name}: valid, dim {alg.dim}, p = {dec.p}, q = {dec.q}")
    return EXIT_OK


def cmd_codim(args) -> int:
    alg, _ = build_algebra(args)
    mode = _mode(args, alg)
    rank_method = "modular" if args.rank == "modular" else "exact"
    header = ["n", "k", "m", "c_km", "binomial", "contribution", "c_n"]
    rows = [header]
    if args.k is not None or args.m is not None:
        if args.k is None or args.m is None:
            raise InputError("--k and --m go together")
        c = engine.partial_codimension(alg, args.k, args.m, mode, rank_method)
        n = args.k + args.m
        rows.append([n, args.k, args.m, c, comb(n, args.k), comb(n, args.k) * c, ""])
    else:
        for n in range(1, args.n_max + 1):
            e = engine.total_codimension(alg, n, mode, rank_method, jobs=args.jobs)
            for k, m, c in e.cells:
                rows.append([n, k, m, c, comb(n, k), comb(n, k) * c, e.total if k == n else ""])
    _emit(args, _render(args, rows))
    return EXIT_OK


SUITES = ("theorem1", "lemma1", "lemma2", "lemma4", "lemma6", "sandwich", "lemma8", "lemma11")


def run_suite(alg, T, suite: str, n_max: int, mode: str, rank_method: str = "exact", jobs: int = 1,
              M: int | None = None):
    """Run one named suite (or ``all``) and return the merged report."""
    names = SUITES if suite == "all" else (suite,)
    needs_T = {"lemma1", "lemma2", "lemma4", "lemma6", "sandwich", "lemma8"}
    if suite != "all" and suite in needs_T and T is None:
        raise InputError(f"suite {suite} needs an A_T family (--T)")
    if suite == "all":
        names = [s for s in names if T is not None or s not in needs_T]
    seq = None
    if set(names) - {"lemma2", "lemma8"}:
        seq = engine.codim_sequence(alg, n_max, basis_mode=mode, rank_method=rank_method, jobs=jobs)
    reports = []
    for name in names:
        if name == "theorem1":
            reports.append(analysis.check_dimension_bound(alg.dim, seq))
        elif name == "lemma1":
            reports.append(analysis.check_cubic_bound(seq, T))
        elif name == "lemma4":
            reports.append(analysis.merge_reports("lemma4", [analysis.check_cell_support(e, T)
                                                            for _, e in sorted(seq.entries.items())]))
        elif name == "lemma6":
            reports.append(analysis.check_cell_bound(seq, T))
        elif name == "sandwich":
            reports.append(analysis.check_sandwich(seq, T))
        elif name == "lemma11":
            reports.append(analysis.check_recursion(seq))
        elif name in ("lemma2", "lemma8"):
            base = families.make_A_T(T)
            other = families.make_A_T(T + 1) if name == "lemma2" else families.make_tilde_slice(T, M or 2 * T)
            reports.append(containment_report(name, base, other, min(2 * T, n_max),
                                              both_ways=name == "lemma8"))
    return analysis.merge_reports(suite, reports)


def containment_report(name, A, B, max_degree, both_ways=False, basis_mode="full"):
    rep = analysis.BoundReport(name)
    pairs = [(A, B)] + ([(B, A)] if both_ways else [])
    for n in range(1, max_degree + 1):
        for k in range(n + 1):
            for X, Y in pairs:
                res = engine.identity_subset_check(X, Y, k, n - k, basis_mode)
                rep.rows.append(analysis.BoundRow(n, int(not res.holds), 0, res.holds,
                                                  note=f"Id({X.name}) in Id({Y.name}) at ({k},{n - k})"))
    return rep


def cmd_verify(args) -> int:
    alg, T = build_algebra(args)
    if args.family != "at":
        T = None
    if args.suite in ("lemma2", "lemma8") and T is None and args.T:
        T = args.T[0]
    mode = _mode(args, alg)
    rep = run_suite(alg, T, args.suite, args.n_max, mode, "modular" if args.rank == "modular" else "exact",
                    args.jobs, args.M)
    _emit(args, rep.to_table() if args.format == "table" else rep.to_csv())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_exponent(args) -> int:
    alg, T = build_algebra(args)
    lo, hi = args.window if args.window else (1, args.n_max)
    mode = _mode(args, alg)
    seq = engine.codim_sequence(alg, hi, n_min=lo, basis_mode=mode, jobs=args.jobs)
    est = analysis.window_estimate(seq, range(lo, hi + 1))
    if args.family == "at" and T is not None:
        c = analysis.exponent_constants(T)
        print(f"# beta_{T} in {c.interval()}", file=sys.stderr)
    _emit(args, est.to_csv())
    return EXIT_OK


def cmd_schedule(args) -> int:
    from .schedule import greedy_schedule

    sched = greedy_schedule(args.alpha, args.mode, args.horizon, steps=args.steps, first=args.first_T)
    _emit(args, sched.ledger())
    return EXIT_OK if sched.complete else EXIT_INCOMPLETE


def cmd_export(args) -> int:
    alg, _ = build_algebra(args)
    _emit(args, dumps(alg))
    return EXIT_OK


def cmd_certify(args) -> int:
    """Emit a witness certificate (non-vanishing word or factorial family), or re-verify one."""
    if args.check:
        alg, _ = build_algebra(args)
        with open(args.check, encoding="utf-8") as fh:
            ok, r, declared = engine.verify_certificate(alg, fh.read())
        print(f"rank {r}, declared {declared}: {'ok' if ok else 'MISMATCH'}")
        return EXIT_OK if ok else EXIT_FAIL
    T = (args.T or [None])[0]
    if T is None:
        raise InputError("--T is required")
    if args.factorial is not None:
        alg, monos, assigns = families.factorial_witness(T, args.factorial, M=args.M)
    elif args.nonvanishing is not None:
        k, t = args.nonvanishing
        alg, w, a = families.nonvanishing_witness(T, k, t)
        monos, assigns = [w], [a]
    else:
        raise InputError("give --factorial m, --nonvanishing k t, or --check FILE")
    cert = engine.witness_lower_bound(alg, monos, assigns)
    _emit(args, engine.dump_certificate(alg, cert))
    return EXIT_OK


def _add_source(p, n_max_default=4):
    p.add_argument("--family", choices=["at", "tilde", "b", "c-prefix"])
    p.add_argument("--file", help="algebra definition file")
    p.add_argument("--T", type=int, action="append", help="repeat for c-prefix blocks")
    p.add_argument("--N", type=int, action="append", help="repeat for c-prefix blocks")
    p.add_argument("--M", type=int, help="slice size (default: n-max)")
    p.add_argument("--n-max", type=int, default=n_max_default)
    p.add_argument("--basis-mode", choices=["auto", "full", "left-normed"], default="auto")
    p.add_argument("--rank", choices=["exact", "modular"], default="exact")
    p.add_argument("--format", choices=["csv", "table"], default="csv")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="starcodim", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate an algebra file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("codim", help="partial and total *-codimensions")
    _add_source(p)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("verify", help="check the bounds on computed codimensions")
    _add_source(p)
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exponent", help="c*_n^(1/n) over a finite window")
    _add_source(p, n_max_default=5)
    p.add_argument("--window", type=_window, help="e.g. 4..6")
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("schedule", help="greedy T1 < N1 < T2 < ... selection")
    p.add_argument("--alpha", type=_alpha, required=True)
    p.add_argument("--mode", choices=["computed", "bound"], default="bound")
    p.add_argument("--horizon", type=int)
    p.add_argument("--steps", type=int, default=2)
    p.add_argument("--first-T", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("export", help="write a family as an algebra definition file")
    _add_source(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("certify", help="emit or re-check witness certificates")
    _add_source(p)
    p.add_argument("--factorial", type=int, metavar="m", help="m! witness on the tilde slice")
    p.add_argument("--nonvanishing", type=int, nargs=2, metavar=("k", "t"), help="single word witness in A_T")
    p.add_argument("--check", metavar="CERT")
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (InputError, AlgebraStructureError, InvolutionAxiomError, DegreeCapError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
