"""Command line front end: evaluate, expand, verify, sweep, run suites.

Subcommands map onto the library layers: ``eval-mhs`` and ``expand`` expose
the exact evaluators and the comma-or-merge expansion, ``verify`` runs an
exact finite-n sweep for one family instance, ``verify-mzsv`` checks the
n -> infinity limit form numerically, and ``suite`` bundles the canned check
sets.  Reports use one schema everywhere: a ``command`` echo, the effective
``config``, an ``items`` list and a ``summary``; formats are text (default),
json and csv.  Exit code 0 means every item passed, 1 means some item
failed, 2 means the invocation itself was invalid.

Reports are byte-identical across runs for the same arguments: randomized
grids are seeded (--seed, default 0) and per-item timings are zeroed unless
--timings is given.
"""

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from random import Random
from typing import List, Optional, Sequence

from starsum import exact_eval
from starsum import families as fam
from starsum.stuffle import verify_middlestep_1, verify_middlestep_2
from starsum import zeta_numeric as zn
from starsum.index_core import parse_index, pi_expand_weighted

FAMILY_NAMES = {
    "two-one": fam.TWO_ONE,
    "two-one-two": fam.TWO_ONE_TWO,
    "c21": fam.C21,
    "one-c21": fam.ONE_C21,
    "c212": fam.C212,
    "one-c212": fam.ONE_C212,
    "two-one-c2": fam.TWO_ONE_C2,
    "c2-two-one-c2": fam.C2_TWO_ONE_C2,
    "ones-c": fam.ONES_C,
}

SUITES = ("ittw", "lemma31", "middlestep", "paper-examples")


@dataclass(frozen=True)
class RunConfig:
    """Effective settings of one invocation, echoed into every report."""

    command: str
    tol: float = 1e-6
    fmt: str = "text"
    workers: int = 1
    seed: int = 0
    timings: bool = False

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")

    def as_dict(self) -> dict:
        return {
            "tol": self.tol,
            "format": self.fmt,
            "workers": self.workers,
            "seed": self.seed,
            "timings": self.timings,
        }


def _int_list(text: Optional[str]) -> tuple:
    if text is None or text == "":
        return ()
    try:
        return tuple(int(piece) for piece in text.split(","))
    except ValueError:
        raise ValueError("expected a comma-separated integer list, got %r"
                         % (text,))


def _build_spec(args) -> fam.FamilySpec:
    """FamilySpec from CLI flags, zero-filling omitted 2-run lists.

    Lengths are dictated by --c (or --a for the two families without c), so
    "--family c21 --c 3" means a_1 = b_1 = 0 rather than a length error;
    constraints that have no such default (c >= 3, t >= 1, nonempty leading
    run) surface as usage errors.
    """
    family = FAMILY_NAMES[args.family]
    a = _int_list(args.a)
    b = _int_list(args.b)
    c = _int_list(args.c)
    t = args.t if args.t is not None else 0
    if family in (fam.C21, fam.C212, fam.TWO_ONE_C2):
        if not a:
            a = (0,) * len(c)
        if not b:
            b = (0,) * len(c)
    elif family in (fam.ONE_C21, fam.ONE_C212):
        if not a:
            a = (0,) * (len(c) + 1)
        if not b:
            b = (0,) * len(c)
    elif family == fam.C2_TWO_ONE_C2:
        if not a and len(c) >= 1:
            a = (0,) * (len(c) - 1)
        if not b:
            b = (0,) * len(c)
    elif family == fam.ONES_C:
        if not a:
            a = (0,) * len(c)
    return fam.FamilySpec(family, a=a, b=b, c=c, t=t, r=args.r)


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------

def _ok(item: dict) -> bool:
    return bool(item.get("equal", item.get("within_tol", False)))


def _report(config: RunConfig, items: List[dict]) -> dict:
    passed = sum(1 for item in items if _ok(item))
    return {
        "command": config.command,
        "config": config.as_dict(),
        "items": items,
        "summary": {
            "items": len(items),
            "passed": passed,
            "failed": len(items) - passed,
        },
    }


def _emit(report: dict, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(report, sort_keys=True) + "\n")
        return
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["params", "n", "lhs", "rhs", "ok", "elapsed_ms"])
        for item in report["items"]:
            writer.writerow([
                json.dumps(item["params"], sort_keys=True),
                "" if item.get("n") is None else item["n"],
                item.get("lhs", ""),
                item.get("rhs", ""),
                _ok(item),
                item.get("elapsed_ms", 0),
            ])
        stream.write(buf.getvalue())
        return
    for item in report["items"]:
        status = "PASS" if _ok(item) else "FAIL"
        where = json.dumps(item["params"], sort_keys=True)
        n = item.get("n")
        suffix = "" if n is None else " n=%s" % n
        stream.write("%s %s%s\n" % (status, where, suffix))
    summary = report["summary"]
    stream.write("summary: %d/%d passed\n"
                 % (summary["passed"], summary["items"]))


def _exit_code(report: dict) -> int:
    return 0 if report["summary"]["failed"] == 0 else 1


def _elapsed_ms(started: float, timings: bool) -> int:
    return int((time.perf_counter() - started) * 1000) if timings else 0


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_eval_mhs(args, stream) -> int:
    index = parse_index(args.index)
    if args.n < 0:
        raise ValueError("n must be >= 0")
    if args.mollified == "big":
        value = exact_eval.mollified_big(args.n, index)
    elif args.mollified == "small":
        value = exact_eval.mollified_small(args.n, index)
    elif args.star:
        value = exact_eval.mhs_star(args.n, index)
    else:
        value = exact_eval.mhs(args.n, index)
    stream.write(exact_eval.rat_str(value) + "\n")
    return 0


def _cmd_expand(args, stream) -> int:
    base = parse_index(args.base)
    stream.write(str(pi_expand_weighted(base, args.coeff, args.sign)) + "\n")
    return 0


def _cmd_verify(args, stream) -> int:
    spec = _build_spec(args)
    if args.n_max < 1:
        raise ValueError("--n-max must be >= 1")
    if args.memo_cap is not None:
        exact_eval.configure_memo(args.memo_cap)
    config = RunConfig("verify", fmt=args.format, workers=args.workers,
                       timings=args.timings)
    records, _, _ = fam._spec_cells(spec, args.n_max, False, args.timings)
    items = []
    for record in records:
        items.append({
            "params": spec.params(),
            "n": record["n"],
            "lhs": record["lhs"],
            "rhs": record["rhs"],
            "equal": record["equal"],
            "elapsed_ms": record["elapsed_ms"],
        })
    report = _report(config, items)
    _emit(report, args.format, stream)
    return _exit_code(report)


def _mzsv_item(spec: fam.FamilySpec, tol: float, timings: bool) -> dict:
    started = time.perf_counter()
    result = zn.verify_mzsv_family(spec, tol)
    return {
        "params": spec.params(),
        "n": None,
        "lhs": result["lhs"],
        "rhs": result["rhs"],
        "within_tol": result["within_tol"],
        "diff": result["diff"],
        "budget": result["budget"],
        "lhs_index": result["lhs_index"],
        "elapsed_ms": _elapsed_ms(started, timings),
    }


def _cmd_verify_mzsv(args, stream) -> int:
    spec = _build_spec(args)
    config = RunConfig("verify-mzsv", tol=args.tol, fmt=args.format,
                       timings=args.timings)
    items = [_mzsv_item(spec, args.tol, args.timings)]
    report = _report(config, items)
    _emit(report, args.format, stream)
    return _exit_code(report)


# -- suites -----------------------------------------------------------------

def _suite_middlestep(args) -> List[dict]:
    n_max = args.n if args.n is not None else 2
    items = []
    for n in range(1, n_max + 1):
        for name, check in (("middlestep-1", verify_middlestep_1),
                            ("middlestep-2", verify_middlestep_2)):
            started = time.perf_counter()
            result = check(n)
            items.append({
                "params": {"check": name, "depth": result["depth"],
                           "lhs_multiplicity": result["lhs_multiplicity"]},
                "n": n,
                "lhs": "%d terms" % result["lhs_terms"],
                "rhs": "%d terms" % result["rhs_terms"],
                "equal": result["equal"],
                "elapsed_ms": _elapsed_ms(started, args.timings),
            })
    return items


def _suite_ittw(args) -> List[dict]:
    n_max = args.n if args.n is not None else 1
    items = []
    cases = [("i", {"m": m, "n": n}) for m in range(2) for n in range(2)]
    cases += [("ii", {"n": n}) for n in range(1, n_max + 1)]
    cases += [("iii", {"n": n}) for n in range(1, n_max + 1)]
    for part, params in cases:
        started = time.perf_counter()
        result = zn.verify_ittw_conj2(part, params, args.tol)
        items.append({
            "params": {"part": part, **params},
            "n": params.get("n"),
            "lhs": result["lhs"],
            "rhs": result["rhs"],
            "within_tol": result["within_tol"],
            "diff": result["diff"],
            "budget": result["budget"],
            "elapsed_ms": _elapsed_ms(started, args.timings),
        })
    return items


def _suite_lemma31(args) -> List[dict]:
    rng = Random(args.seed)
    per_variant = args.n if args.n is not None else 3
    inner = ((), (1,), (-2,), (2, 1))
    items = []
    for variant in ("i", "ii", "iii", "iv"):
        kind = {"i": "A", "ii": "B", "iii": "B", "iv": "A"}[variant]
        for _ in range(per_variant):
            if variant in ("i", "iii"):
                kp = fam.KernelParams(m=rng.choice((1, 2)), kind=kind,
                                      a=rng.randint(0, 3),
                                      c=rng.randint(1, 3),
                                      v=rng.choice(inner))
            else:
                kp = fam.KernelParams(m=2, kind=kind, a=rng.randint(1, 3),
                                      v=rng.choice(inner))
            n = rng.randint(1, 12)
            started = time.perf_counter()
            equal = fam.check_lemma31(variant, kp, n)
            items.append({
                "params": {"variant": variant, "m": kp.m, "kind": kp.kind,
                           "a": kp.a, "c": kp.c,
                           "v": list(kp.v.parts)},
                "n": n,
                "lhs": None,
                "rhs": None,
                "equal": equal,
                "elapsed_ms": _elapsed_ms(started, args.timings),
            })
    return items


def _paper_example_specs() -> List[fam.FamilySpec]:
    """The published sanity set: every family instance small enough that the
    source checked it by hand or by direct numerics."""
    specs: List[fam.FamilySpec] = []
    specs += fam.enumerate_specs(fam.TWO_ONE, r_values=(1, 2),
                                 a_values=(0, 1, 2))
    for spec in fam.enumerate_specs(fam.TWO_ONE_TWO, r_values=(2,),
                                    a_values=(0, 1, 2)):
        if spec.a[0] >= 1:
            specs.append(spec)
    specs += fam.enumerate_specs(fam.C21, r_values=(1,), a_values=(0, 1),
                                 b_values=(0, 1))
    specs += fam.enumerate_specs(fam.C212, r_values=(1,), a_values=(0, 1),
                                 b_values=(0, 1), t_values=(1,))
    for spec in fam.enumerate_specs(fam.ONE_C212, r_values=(0, 1),
                                    a_values=(0, 1), b_values=(0, 1),
                                    t_values=(1,)):
        if spec.a[0] >= 1:
            specs.append(spec)
    for spec in fam.enumerate_specs(fam.TWO_ONE_C2, r_values=(1,),
                                    a_values=(0, 1), b_values=(0, 1),
                                    t_values=(0, 1)):
        if spec.a[0] >= 1:
            specs.append(spec)
    specs += fam.enumerate_specs(fam.C2_TWO_ONE_C2, r_values=(0,),
                                 b_values=(0, 1), t_values=(0, 1))
    return specs


def _suite_paper_examples(args) -> List[dict]:
    items = [_mzsv_item(spec, args.tol, args.timings)
             for spec in _paper_example_specs()]
    for n in (1, 2, 3):
        started = time.perf_counter()
        result = zn.check_zlobin(n, args.tol)
        items.append({
            "params": {"check": "zlobin"},
            "n": n,
            "lhs": result["lhs"],
            "rhs": result["rhs"],
            "within_tol": result["within_tol"],
            "elapsed_ms": _elapsed_ms(started, args.timings),
        })
    for n in (1, 2):
        started = time.perf_counter()
        result = zn.check_three_n(n, args.tol)
        items.append({
            "params": {"check": "three-n"},
            "n": n,
            "lhs": result["lhs"],
            "rhs": result["rhs"],
            "within_tol": result["within_tol"],
            "elapsed_ms": _elapsed_ms(started, args.timings),
        })
    return items


def _cmd_suite(args, stream) -> int:
    config = RunConfig("suite", tol=args.tol, fmt=args.format,
                       seed=args.seed, timings=args.timings)
    runner = {
        "middlestep": _suite_middlestep,
        "ittw": _suite_ittw,
        "lemma31": _suite_lemma31,
        "paper-examples": _suite_paper_examples,
    }[args.suite]
    report = _report(config, runner(args))
    report["suite"] = args.suite
    _emit(report, args.format, stream)
    return _exit_code(report)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_family_flags(parser) -> None:
    parser.add_argument("--family", required=True,
                        choices=sorted(FAMILY_NAMES))
    parser.add_argument("--a", help="comma-separated 2-run lengths")
    parser.add_argument("--b", help="comma-separated 2-run lengths")
    parser.add_argument("--c", help="comma-separated block heights")
    parser.add_argument("--t", type=int, default=None,
                        help="trailing run length")
    parser.add_argument("--r", type=int, default=None,
                        help="block count (inferred when omitted)")


def _add_report_flags(parser, with_tol: bool) -> None:
    parser.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")
    parser.add_argument("--timings", action="store_true",
                        help="record per-item wall time (reports are no "
                             "longer byte-identical across runs)")
    if with_tol:
        parser.add_argument("--tol", type=float, default=zn.DEFAULT_TOL)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starsum",
        description="exact and numeric checks for nested harmonic sum "
                    "identities")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-mhs", help="print one exact rational value")
    p.add_argument("--index", required=True, help='e.g. "2,1" or "-2"')
    p.add_argument("--n", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--star", action="store_true",
                      help="weak-descent variant")
    mode.add_argument("--mollified", choices=("big", "small"),
                      help="binomial-weighted companion sum")
    p.set_defaults(handler=_cmd_eval_mhs)

    p = sub.add_parser("expand", help="print a comma-or-merge expansion")
    p.add_argument("--base", required=True)
    p.add_argument("--coeff", type=int, default=2,
                   help="per-depth coefficient base (default 2)")
    p.add_argument("--sign", type=int, choices=(-1, 1), default=1)
    p.set_defaults(handler=_cmd_expand)

    p = sub.add_parser("verify",
                       help="exact sweep of one family instance over n")
    _add_family_flags(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--memo-cap", type=int, default=None,
                   help="cap on the exact-evaluator memo cache")
    _add_report_flags(p, with_tol=False)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("verify-mzsv",
                       help="numeric check of one family's limit form")
    _add_family_flags(p)
    _add_report_flags(p, with_tol=True)
    p.set_defaults(handler=_cmd_verify_mzsv)

    p = sub.add_parser("suite", help="run a canned check set")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--n", type=int, default=None,
                   help="size knob: max n (middlestep, ittw) or cases per "
                        "variant (lemma31)")
    p.add_argument("--seed", type=int, default=0)
    _add_report_flags(p, with_tol=True)
    p.set_defaults(handler=_cmd_suite)
    return parser


_VALUE_FLAGS = ("--index", "--base", "--a", "--b", "--c")


def _normalize_argv(argv: Sequence[str]) -> List[str]:
    """Join value flags with dash-leading arguments ("--base -2,-2")."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if (token in _VALUE_FLAGS and i + 1 < len(argv)
                and argv[i + 1].startswith("-")):
            out.append("%s=%s" % (token, argv[i + 1]))
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_normalize_argv(list(argv)))
    try:
        return args.handler(args, sys.stdout)
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
