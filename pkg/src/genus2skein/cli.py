"""Command-line front end: verification suites, Jones values, conversions.

Suites mirror the library checks one-to-one; `verify all` runs the whole
battery at its reference bounds and exits 0 only if every identity
passed.  Probabilistic mode re-checks identities at prime-field points
using a fixed seed, so identical invocations produce byte-identical JSON
reports (timings are excluded from JSON unless --timings is given).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from . import daha, genus2daha, relations
from .modp import DEFAULT_PRIME
from .ops import ParseError, jones_value, parse_expr
from .reports import all_passed, dump_json, suite_to_json
from .skein import (
    SkeinVector,
    TruncationError,
    act_dumbbell,
    act_theta,
    chebyshev_apply,
    monomial_to_theta,
)

EXACT_ONLY_SUITES = {"commutation", "triangularity", "intertwiner", "leonard"}
SUITES = (
    "relations",
    "dehn",
    "tables",
    "as-correspondence",
    "alpha",
    "c-relations",
    "daha",
    "intertwiner",
    "leonard",
    "commutation",
    "triangularity",
    "evaluation",
    "all",
)


@dataclass
class RunConfig:
    suite: str = "all"
    trunc: int = 12
    bound: int = 20
    mode: str = "exact"
    prime: int = 0  # 0 means the default prime
    seed: int = 0
    trials: int = 10
    degree: int = 8
    surface: str = ""
    basis: str = ""
    jmax: int = 8
    kmax: int = 8
    imax: int = 6
    numeric_s: float = 1.17
    tol: float = 1e-8
    jobs: int = 1

    def context(self, degree_hint=64):
        return relations.CheckContext(
            mode=self.mode,
            trials=self.trials,
            seed=self.seed,
            prime=self.prime or DEFAULT_PRIME,
            degree_hint=degree_hint,
        )

    def config_echo(self):
        data = {
            "suite": self.suite,
            "mode": self.mode,
            "seed": self.seed,
        }
        if self.mode == "prob":
            data["prime"] = self.prime or DEFAULT_PRIME
            data["trials"] = self.trials
        for name in ("trunc", "bound", "degree"):
            data[name] = getattr(self, name)
        return data


def _suite_relations(cfg):
    surfaces = None
    if cfg.surface:
        surfaces = (cfg.surface,)
    bases = (cfg.basis,) if cfg.basis else ("n", "m")
    return relations.suite_relations(cfg.trunc, cfg.context(), surfaces, bases)


def _suite_dehn(cfg):
    return relations.suite_dehn(cfg.trunc, cfg.context())


def _suite_tables(cfg):
    return relations.suite_tables(max(cfg.trunc, 16), cfg.context())


def _suite_correspondence(cfg):
    return genus2daha.verify_correspondence(
        cfg.bound, cfg.mode, cfg.trials, cfg.seed, cfg.prime or DEFAULT_PRIME
    )


def _suite_alpha(cfg):
    return genus2daha.verify_alpha(
        max(cfg.bound, 30) if cfg.suite == "all" else cfg.bound,
        cfg.mode,
        cfg.trials,
        cfg.seed,
        cfg.prime or DEFAULT_PRIME,
    )


def _suite_c_relations(cfg):
    return genus2daha.verify_c_relations(
        cfg.bound, cfg.mode, cfg.trials, cfg.seed, cfg.prime or DEFAULT_PRIME
    )


def _suite_daha(cfg):
    reports = daha.verify_daha_relations(
        degree=cfg.degree,
        mode=cfg.mode if cfg.mode else "prob",
        trials=cfg.trials,
        seed=cfg.seed,
        prime=cfg.prime or DEFAULT_PRIME,
        block_range=4,
    )
    reports.extend(daha.verify_structure_identities())
    return reports


def _suite_intertwiner(cfg):
    if cfg.surface == "sigma11":
        out = []
        for j in range(0, cfg.jmax + 1, 2):
            for k in range(j // 2, cfg.kmax + 1):
                out.append(daha.intertwiner_sigma11(j, k, cfg.degree))
        return out
    if cfg.surface == "sigma04":
        out = []
        for i in range(cfg.imax + 1):
            for k in range(cfg.imax + 1):
                out.append(daha.intertwiner_sigma04(i, k))
        return out
    return daha.suite_intertwiners(
        jmax=cfg.jmax, kmax=cfg.kmax, degree=max(cfg.degree, 10),
        imax=cfg.imax, ikmax=cfg.imax,
    )


def _suite_leonard(cfg):
    return daha.suite_leonard(cfg.imax + 2, cfg.imax + 2, cfg.numeric_s, cfg.tol)


def _suite_commutation(cfg):
    return relations.suite_commutation(cfg.trunc, cfg.context())


def _suite_triangularity(cfg):
    return relations.suite_triangularity(6)


def _suite_evaluation(cfg):
    import time

    from .fields import S_FIELD
    from .reports import VerificationReport
    from .skein import eval_triple

    started = time.monotonic()
    report = VerificationReport(name="evaluation/unknot-values", mode="exact")
    expect = -(S_FIELD.s_pow(2) + S_FIELD.s_pow(-2))
    for expr_text in ("A1", "B13"):
        report.checked += 1
        value = jones_value(parse_expr(expr_text), 10)
        if value != expect:
            report.record((expr_text,), value, expect)
    for a in range(11):
        report.checked += 1
        value = eval_triple((a, a, 0))
        want = S_FIELD.qint(a + 1)
        if a % 2:
            want = -want
        if value != want:
            report.record((a, a, 0), value, want)
    return [report.finish(started)]


_SUITE_RUNNERS = {
    "relations": _suite_relations,
    "dehn": _suite_dehn,
    "tables": _suite_tables,
    "as-correspondence": _suite_correspondence,
    "alpha": _suite_alpha,
    "c-relations": _suite_c_relations,
    "daha": _suite_daha,
    "intertwiner": _suite_intertwiner,
    "leonard": _suite_leonard,
    "commutation": _suite_commutation,
    "triangularity": _suite_triangularity,
    "evaluation": _suite_evaluation,
}

# reference bounds for the full battery
_ALL_PLAN = (
    ("tables", {"trunc": 16}),
    ("relations", {"trunc": 12}),
    ("dehn", {"trunc": 10}),
    ("commutation", {"trunc": 12}),
    ("triangularity", {}),
    ("evaluation", {}),
    ("as-correspondence", {"bound": 20}),
    ("alpha", {"bound": 30}),
    ("c-relations", {"bound": 20}),
    ("daha", {"degree": 8, "mode": "prob", "trials": 25}),
    ("intertwiner", {"jmax": 8, "kmax": 8, "degree": 10, "imax": 6}),
    ("leonard", {"imax": 6}),
)


def _run_one(args):
    name, cfg_dict = args
    cfg = RunConfig(**cfg_dict)
    return name, _SUITE_RUNNERS[name](cfg)


def run_suite(cfg):
    """Run one suite (or the full battery) and return the report list."""
    if cfg.suite != "all":
        return _SUITE_RUNNERS[cfg.suite](cfg)
    jobs = []
    for name, overrides in _ALL_PLAN:
        sub = RunConfig(**{**cfg.__dict__, "suite": name, **overrides})
        if name in EXACT_ONLY_SUITES:
            sub.mode = "exact"
        if name == "daha":
            sub.mode = "prob"
            sub.trials = max(cfg.trials, 25) if cfg.mode == "prob" else 25
        jobs.append((name, dict(sub.__dict__)))
    if cfg.jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(cfg.jobs) as pool:
            results = pool.map(_run_one, jobs)
    else:
        results = [_run_one(job) for job in jobs]
    reports = []
    for _, batch in results:
        reports.extend(batch)
    return reports


def _positive_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="genus2skein",
        description="exact verification of the genus-2 skein algebra action "
        "and its DAHA counterparts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--trunc", type=_positive_int, default=12,
                   help="truncation bound on i+j+k (default 12)")
    v.add_argument("--bound", type=_positive_int, default=20,
                   help="index-sum bound for triple sweeps (default 20)")
    v.add_argument("--mode", choices=("exact", "prob"), default=None)
    v.add_argument("--prime", type=int, default=0,
                   help="prime modulus for probabilistic mode (default: "
                   "first prime above 2^61 congruent to 1 mod 4)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=_positive_int, default=10,
                   help="number of prime-field points in prob mode")
    v.add_argument("--degree", type=_positive_int, default=8)
    v.add_argument("--surface", default="",
                   choices=("", "sigma11-left", "sigma11-right", "sigma04",
                            "sigma11"))
    v.add_argument("--basis", default="", choices=("", "n", "m"))
    v.add_argument("--jmax", type=_positive_int, default=8)
    v.add_argument("--kmax", type=_positive_int, default=8)
    v.add_argument("--imax", type=_positive_int, default=6)
    v.add_argument("--s", dest="numeric_s", type=float, default=1.17,
                   help="numeric sample for the Leonard second direction")
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--jobs", type=int,
                   default=int(os.environ.get("GENUS2SKEIN_JOBS", "1")))
    v.add_argument("--json", action="store_true")
    v.add_argument("--timings", action="store_true",
                   help="include elapsed seconds in JSON output")

    j = sub.add_parser("jones", help="evaluate an operator word on the "
                       "empty link under the 3-sphere embedding")
    j.add_argument("--expr", required=True)
    j.add_argument("--trunc", type=_positive_int, default=16)
    j.add_argument("--json", action="store_true")

    a = sub.add_parser("act", help="apply a loop operator to a basis vector")
    a.add_argument("--basis", required=True, choices=("n", "m", "psi"))
    a.add_argument("--op", required=True)
    a.add_argument("--state", required=True, help="triple i,j,k")
    a.add_argument("--trunc", type=_positive_int, default=12)
    a.add_argument("--uv", default="s2", choices=("s2",),
                   help="two-parameter slice for the psi basis")
    a.add_argument("--json", action="store_true")

    c = sub.add_parser("convert", help="expand monomial or Chebyshev words "
                       "in the theta basis")
    c.add_argument("--from", dest="source", required=True,
                   choices=("monomial", "chebyshev"))
    c.add_argument("--key", help="monomial exponents a,b,c")
    c.add_argument("--n", type=_positive_int, help="Chebyshev degree")
    c.add_argument("--gen", default="B12", choices=("B12", "B23", "B13"))
    c.add_argument("--trunc", type=_positive_int, default=0)
    c.add_argument("--json", action="store_true")
    return parser


def _parse_triple(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("expected a triple i,j,k")
    return tuple(int(p) for p in parts)


def cmd_verify(args):
    mode = args.mode
    if args.suite in EXACT_ONLY_SUITES:
        if mode == "prob":
            print("error: suite %r is exact-only" % args.suite, file=sys.stderr)
            return 2
        mode = "exact"
    elif args.suite == "daha" and mode is None:
        mode = "prob"
    elif mode is None:
        mode = "exact"
    cfg = RunConfig(
        suite=args.suite,
        trunc=args.trunc,
        bound=args.bound,
        mode=mode,
        prime=args.prime,
        seed=args.seed,
        trials=args.trials,
        degree=args.degree,
        surface=args.surface,
        basis=args.basis,
        jmax=args.jmax,
        kmax=args.kmax,
        imax=args.imax,
        numeric_s=args.numeric_s,
        tol=args.tol,
        jobs=args.jobs,
    )
    reports = run_suite(cfg)
    if args.json:
        print(dump_json(suite_to_json(cfg.suite, reports, cfg.config_echo(),
                                      include_timing=args.timings)))
    else:
        for report in sorted(reports, key=lambda r: r.name):
            print(report.summary_line())
        total = sum(r.checked for r in reports)
        failed = [r for r in reports if not r.passed]
        print("-- %d identities, %d basis checks, %d failing" % (
            len(reports), total, len(failed)))
    return 0 if all_passed(reports) else 1


def cmd_jones(args):
    try:
        expr = parse_expr(args.expr)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    try:
        value = jones_value(expr, args.trunc)
    except TruncationError as exc:
        print("truncation error: %s" % exc, file=sys.stderr)
        return 2
    if args.json:
        print(dump_json(value.to_json()))
    else:
        print(value.text())
    return 0


def cmd_act(args):
    key = _parse_triple(args.state)
    vec = SkeinVector.unit(args.basis, key)
    try:
        if args.basis == "n":
            out = act_theta(args.op, vec, args.trunc)
        elif args.basis == "m":
            out = act_dumbbell(args.op, vec, args.trunc)
        else:
            from .genus2daha import EqualUVBrackets, o_apply

            out = o_apply(args.op, vec, EqualUVBrackets.in_s(), args.trunc)
    except (ValueError, TruncationError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    if args.json:
        print(dump_json(out.to_json()))
    else:
        for target in sorted(out.entries):
            print("%r  %s" % (target, out.entries[target].text()))
    return 0


def cmd_convert(args):
    if args.source == "monomial":
        if not args.key:
            print("error: --key a,b,c required", file=sys.stderr)
            return 2
        a, b, c = _parse_triple(args.key)
        trunc = args.trunc or 2 * (a + b + c) + 2
        out = monomial_to_theta(a, b, c, trunc)
    else:
        if args.n is None:
            print("error: --n required", file=sys.stderr)
            return 2
        trunc = args.trunc or 2 * args.n + 2
        out = chebyshev_apply(args.n, args.gen, trunc)
    if args.json:
        print(dump_json(out.to_json()))
    else:
        for target in sorted(out.entries):
            print("%r  %s" % (target, out.entries[target].text()))
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "jones":
        return cmd_jones(args)
    if args.command == "act":
        return cmd_act(args)
    if args.command == "convert":
        return cmd_convert(args)
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
