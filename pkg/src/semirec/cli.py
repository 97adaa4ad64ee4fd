"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .automata import WeightedAutomaton, automaton_to_system, enumerate_paths, path_weight, \
    system_to_automaton
from .errors import InputError, KindMismatchError, NonzeroInitialError
from .files import document_to_json, dumps, load_document
from .recurrence import ClosedForm, ComposedSystem, iterate, iterate_composed
from .semiring import BUILTIN_NAMES, builtin_semiring, check_semiring_laws, default_samples
from .ztransform import (
    THEOREM_KINDS,
    compare_series,
    theorem_kind,
    verify_theorem,
    z_direct,
    z_theorem,
)
from .randsys import random_for_theorem

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

SEMIRING_NOTES = {
    "natural": "(N, +, *, 0, 1), arbitrary precision",
    "integer": "(Z, +, *, 0, 1), arbitrary precision",
    "boolean": "({0, 1}, or, and, 0, 1)",
    "tropical_min_plus": "(Z u {inf}, min, +, inf, 0)",
    "max_plus": "(Z u {-inf}, max, +, -inf, 0)",
}


class Output:
    def __init__(self, stream=None):
        self.stream = stream or sys.stdout

    def line(self, text=""):
        print(text, file=self.stream)

    def json(self, obj):
        self.stream.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _load(path, args):
    return load_document(path, getattr(args, "semiring", None))


def _load_recurrence(path, args):
    """A system or composition; an automaton file stands for the system it generates."""
    doc = _load(path, args)
    if isinstance(doc, WeightedAutomaton):
        return automaton_to_system(doc)
    return doc


def _vec_json(v):
    return [v.semiring.render(x) for x in v.entries]


# ---------------------------------------------------------------------------


def cmd_solve(args, out: Output) -> int:
    system = _load_recurrence(args.file, args)
    N = args.upto
    if isinstance(system, ComposedSystem):
        iterated, _ = iterate_composed(system, N)
    else:
        iterated = iterate(system, N)

    if args.method == "closed":
        if not system.has_zero_initial:
            raise NonzeroInitialError("the initial vector")
        closed = ClosedForm(system).table(N)
        for n, (a, b) in enumerate(zip(closed, iterated)):
            if a != b:
                print(f"error: closed form and iteration disagree at n={n}: "
                      f"{a.render()} vs {b.render()}", file=sys.stderr)
                return EXIT_FAIL
        values = closed
    else:
        values = iterated

    if args.out == "json":
        out.json({
            "semiring": system.semiring.name,
            "method": args.method,
            "rows": [{"n": n, "f": _vec_json(v)} for n, v in enumerate(values)],
        })
    else:
        out.line("n\tf(n)")
        for n, v in enumerate(values):
            out.line(f"{n}\t{v.render()}")
    return EXIT_OK


def cmd_transform(args, out: Output) -> int:
    system = _load_recurrence(args.file, args)
    N = args.order
    direct = z_direct(system, N)
    assembled = z_theorem(system, N)
    which = theorem_kind(system)
    report = compare_series(direct, assembled, which)
    if args.out == "json":
        out.json({
            "semiring": system.semiring.name,
            "theorem": which,
            "order": N,
            "direct": [_vec_json(c) for c in direct.coeffs],
            "theorem_form": [_vec_json(c) for c in assembled.coeffs],
            "equal": report.passed,
        })
    else:
        out.line(f"direct:  {direct.render()}")
        out.line(f"theorem: {assembled.render()}")
        for i, (d, t) in enumerate(zip(direct.components(), assembled.components())):
            out.line(f"direct f_{i + 1}:  {d.render()}")
            out.line(f"theorem f_{i + 1}: {t.render()}")
        out.line(report.describe())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args, out: Output) -> int:
    which = args.theorem
    if args.random:
        semiring = getattr(args, "semiring", None) or "natural"
        builtin_semiring(semiring)
        rng = random.Random(args.seed)
        systems = [random_for_theorem(rng, semiring, which) for _ in range(args.trials)]
    else:
        if args.file is None:
            raise InputError("verify needs a file or --random")
        systems = [_load_recurrence(args.file, args)]
    reports = [verify_theorem(sys_, which, args.order) for sys_ in systems]
    failures = sum(not r.passed for r in reports)
    if args.out == "json":
        out.json({
            "theorem": which,
            "order": args.order,
            "trials": [
                {"trial": i, "passed": r.passed, "mismatch_order": r.mismatch_order}
                for i, r in enumerate(reports)
            ],
            "failures": failures,
        })
    else:
        for i, r in enumerate(reports):
            out.line(f"trial {i}: {r.describe()}")
        out.line(f"{len(reports) - failures}/{len(reports)} passed")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_paths(args, out: Output) -> int:
    aut = _load(args.file, args)
    if not isinstance(aut, WeightedAutomaton):
        aut = system_to_automaton(aut)
    if aut.kind != "homogeneous":
        raise KindMismatchError(
            "path sums are defined for homogeneous automata; use `solve` for systems with input")
    s = aut.semiring
    paths = enumerate_paths(aut, args.start, args.length, args.bound)
    weights = [path_weight(aut, p) for p in paths]
    total = s.sum(weights)
    if args.out == "json":
        out.json({
            "semiring": s.name,
            "from": args.start,
            "length": args.length,
            "paths": [{"states": p.states, "weight": s.render(w)} for p, w in zip(paths, weights)],
            "total": s.render(total),
        })
    else:
        for p, w in zip(paths, weights):
            out.line(f"{' -> '.join(p.states)}\t{s.render(w)}")
        out.line(f"total\t{s.render(total)}")
    return EXIT_OK


def cmd_convert(args, out: Output) -> int:
    doc = _load(args.file, args)
    if args.to == "automaton":
        if isinstance(doc, ComposedSystem):
            raise KindMismatchError("compositions have no single-automaton form")
        result = doc if isinstance(doc, WeightedAutomaton) else system_to_automaton(doc)
    else:
        result = automaton_to_system(doc) if isinstance(doc, WeightedAutomaton) else doc
    out.stream.write(dumps(document_to_json(result)))
    return EXIT_OK


def cmd_laws(args, out: Output) -> int:
    names = [args.semiring] if getattr(args, "semiring", None) else list(BUILTIN_NAMES)
    reports = []
    for name in names:
        s = builtin_semiring(name)
        reports.append(check_semiring_laws(s, default_samples(s)))
    if args.out == "json":
        out.json([{"semiring": r.semiring, "passed": r.passed,
                   "laws": [{"law": x.law, "passed": x.passed,
                             "counterexample": None if x.counterexample is None
                             else [repr(v) for v in x.counterexample]}
                            for x in r.results]} for r in reports])
    else:
        for r in reports:
            out.line(f"{r.semiring}:")
            for line in r.lines():
                out.line(f"  {line}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_semirings(args, out: Output) -> int:
    if args.out == "json":
        out.json({name: SEMIRING_NOTES[name] for name in BUILTIN_NAMES})
    else:
        for name in BUILTIN_NAMES:
            out.line(f"{name}\t{SEMIRING_NOTES[name]}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the verb
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--semiring", default=argparse.SUPPRESS,
                        help="override the semiring named in the input file")
    common.add_argument("--out", choices=["table", "json"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="semirec", parents=[common],
        description="Linear recurrence systems over semirings and their z-transforms.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="tabulate f(0..N)")
    p.add_argument("file")
    p.add_argument("--upto", type=int, default=12, metavar="N")
    p.add_argument("--method", choices=["closed", "iterate"], default="closed")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("transform", parents=[common], help="print both forms of z(f)")
    p.add_argument("file")
    p.add_argument("--order", type=int, default=12, metavar="N")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", parents=[common],
                       help="check the S-series form of z(f) against the direct form")
    p.add_argument("file", nargs="?")
    p.add_argument("--theorem", type=int, choices=sorted(THEOREM_KINDS), required=True)
    p.add_argument("--order", type=int, default=12, metavar="N")
    p.add_argument("--trials", type=int, default=100, metavar="T")
    p.add_argument("--random", action="store_true",
                   help="verify on T seeded random systems instead of a file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("paths", parents=[common], help="enumerate weighted paths")
    p.add_argument("file")
    p.add_argument("--from", dest="start", required=True, metavar="STATE")
    p.add_argument("--length", type=int, required=True, metavar="n")
    p.add_argument("--bound", type=int, default=10, help="maximum path length")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("convert", parents=[common], help="system <-> automaton")
    p.add_argument("file")
    p.add_argument("--to", choices=["automaton", "system"], required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("laws", parents=[common], help="check semiring axioms on samples")
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("semirings", parents=[common], help="list builtin semirings")
    p.set_defaults(func=cmd_semirings)
    return parser


def main(argv=None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    if not hasattr(args, "out"):
        args.out = "table"
    if not hasattr(args, "seed"):
        args.seed = 0
    try:
        return args.func(args, Output(stdout))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
