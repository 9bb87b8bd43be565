"""Command-line front end.

Exit codes: 0 when every checked property holds, 1 when one fails,
2 for usage or input errors, 3 when an exact check exceeds its budget.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction

from . import discrete
from .contiguous import MixedCake, connected_prop1, is_contiguous, moving_knife
from .fairness import Property, check
from .files import (FormatError, allocation_to_json, fractional_to_json, instance_to_json,
                    load_allocation, load_instance, report_to_json, write_json)
from .generators import DISTRIBUTIONS, random_instance
from .oracle import DEFAULT_BUDGET, BudgetExceeded, EnumerationBudget, exists_allocation

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

ALGORITHMS = ("naive-rr", "double-rr", "envy-graph", "adjusted-winner",
              "serial-dictatorship", "moving-knife", "connected-prop1")

# properties each algorithm is supposed to deliver
CLAIMS = {
    "naive-rr": ["EF1"],
    "double-rr": ["EF1"],
    "envy-graph": ["EF1"],
    "adjusted-winner": ["EF1", "PO"],
    "serial-dictatorship": ["PO"],
    "connected-prop1": ["PROP1"],
}


class UsageError(Exception):
    pass


def _parse_properties(text: str) -> list[Property]:
    props = []
    for part in text.replace("+", ",").split(","):
        part = part.strip().upper()
        if not part:
            continue
        try:
            props.append(Property(part))
        except ValueError:
            raise UsageError(f"unknown property {part!r}; choose from {', '.join(p.value for p in Property)}")
    if not props:
        raise UsageError("no properties given")
    return props


def _parse_order(text: str | None, n: int) -> list[int] | None:
    if text is None:
        return None
    try:
        order = [int(x) - 1 for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--order must be comma-separated agent numbers, got {text!r}")
    if sorted(order) != list(range(n)):
        raise UsageError(f"--order must be a permutation of 1..{n}")
    return order


def _status(holds: bool) -> str:
    return "ok" if holds else "FAIL"


def cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    alg = args.algorithm
    out: dict = {"algorithm": alg}
    exit_code = EXIT_OK

    if alg == "moving-knife":
        frac = moving_knife(MixedCake(inst))
        out["fractional"] = fractional_to_json(frac)
        cake = MixedCake(inst)
        holds = all(frac.value(cake, i) >= inst.total(i) / inst.n for i in inst.agents)
        out["reports"] = [{"property": "PROP", "holds": holds}]
        print(f"PROP (contiguous cake) {_status(holds)}", file=sys.stderr)
        write_json(out, args.output)
        return EXIT_OK if holds else EXIT_FAIL

    if alg == "naive-rr":
        alloc = discrete.naive_round_robin(inst, _parse_order(args.order, inst.n))
    elif alg == "double-rr":
        alloc = discrete.double_round_robin(inst)
    elif alg == "envy-graph":
        alloc = discrete.envy_graph_allocate(inst)
    elif alg == "adjusted-winner":
        if inst.n != 2:
            raise UsageError(f"adjusted-winner needs exactly 2 agents, instance has {inst.n}")
        alloc, trace = discrete.generalized_adjusted_winner(inst, winner=args.winner - 1)
        out["trace"] = {
            "winner": trace.winner + 1,
            "loser": trace.loser + 1,
            "order": [o + 1 for o in trace.order],
            "transfers": [{"item": s.item + 1, "direction": s.direction, "loser_ef1": s.loser_ef1}
                          for s in trace.steps],
        }
    elif alg == "serial-dictatorship":
        alloc = discrete.serial_dictatorship(inst, _parse_order(args.order, inst.n))
    elif alg == "connected-prop1":
        alloc = connected_prop1(inst)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown algorithm {alg!r}")

    out["allocation"] = allocation_to_json(alloc, inst.m)
    reports = []
    for name in CLAIMS[alg]:
        kwargs = {"budget": args.budget} if name == "PO" else {}
        try:
            report = check(inst, alloc, name, **kwargs)
        except BudgetExceeded as exc:
            print(f"{name}: {exc}", file=sys.stderr)
            reports.append({"property": name, "holds": None, "error": str(exc)})
            exit_code = max(exit_code, EXIT_BUDGET)
            continue
        reports.append(report_to_json(report))
        print(f"{name} {_status(report.holds)}", file=sys.stderr)
        if not report.holds and exit_code == EXIT_OK:
            exit_code = EXIT_FAIL
    if alg == "connected-prop1":
        holds = is_contiguous(alloc)
        reports.append({"property": "connected", "holds": holds})
        print(f"connected {_status(holds)}", file=sys.stderr)
        if not holds and exit_code == EXIT_OK:
            exit_code = EXIT_FAIL
    out["reports"] = reports
    write_json(out, args.output)
    return exit_code


def cmd_check(args) -> int:
    inst = load_instance(args.instance)
    alloc = load_allocation(args.allocation)
    try:
        alloc.validate_for(inst.n, inst.m)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    props = _parse_properties(args.properties)
    reports, exit_code = [], EXIT_OK
    for prop in props:
        kwargs = {"budget": args.budget} if prop is Property.PO else {}
        try:
            report = check(inst, alloc, prop, **kwargs)
        except BudgetExceeded as exc:
            print(f"{prop}: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        reports.append(report_to_json(report))
        print(f"{prop} {_status(report.holds)}", file=sys.stderr)
        if not report.holds:
            exit_code = EXIT_FAIL
    write_json({"reports": reports, "complete": alloc.is_complete(inst.m)}, args.output)
    return exit_code


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    inst = random_instance(rng, args.n, args.m, args.dist, p_good=args.p_good, max_abs=args.max_abs)
    write_json(instance_to_json(inst), args.output)
    return EXIT_OK


def cmd_probe(args) -> int:
    props = _parse_properties(args.properties)
    budget = EnumerationBudget(args.budget)
    found = missing = too_big = 0
    counterexamples = []
    for s in range(args.count):
        rng = random.Random(f"{args.seed}:{s}")
        inst = random_instance(rng, args.n, args.m, args.dist, p_good=args.p_good, max_abs=args.max_abs)
        try:
            alloc = exists_allocation(inst, [p.value for p in props], budget=budget)
        except BudgetExceeded:
            too_big += 1
            continue
        if alloc is not None:
            found += 1
            continue
        missing += 1
        counterexamples.append(s)
        if args.out_dir:
            os.makedirs(args.out_dir, exist_ok=True)
            write_json(instance_to_json(inst), os.path.join(args.out_dir, f"counterexample_{s}.json"))
    checked = found + missing
    share = Fraction(found, checked) if checked else None
    conj = "+".join(p.value for p in props)
    print(f"property   {conj}")
    print(f"agents     {args.n}")
    print(f"items      {args.m}")
    print(f"sampled    {args.count}")
    print(f"exist      {found}")
    print(f"none       {missing}")
    print(f"too-large  {too_big}")
    print(f"rate       {'n/a' if share is None else f'{float(share) * 100:.2f}%'}")
    if counterexamples:
        print(f"counterexamples (sample index): {', '.join(map(str, counterexamples))}")
    return EXIT_FAIL if missing else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixedfair", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run an allocation algorithm and verify what it promises")
    p.add_argument("instance", help="instance JSON file, or - for stdin")
    p.add_argument("-a", "--algorithm", required=True, choices=ALGORITHMS)
    p.add_argument("--winner", type=int, choices=(1, 2), default=1, help="adjusted-winner: which agent starts as winner")
    p.add_argument("--order", help="agent order for naive-rr / serial-dictatorship, e.g. 2,1,3")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max allocations enumerated for PO")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="check fairness properties of a given allocation")
    p.add_argument("instance")
    p.add_argument("allocation")
    p.add_argument("-p", "--properties", default="EF,PROP,EF1,PROP1,EFX")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_check)

    def add_gen_flags(p):
        p.add_argument("--n", type=int, default=2)
        p.add_argument("--m", type=int, default=4)
        p.add_argument("--dist", choices=DISTRIBUTIONS, default="mixed")
        p.add_argument("--p-good", type=float, default=0.5)
        p.add_argument("--max-abs", type=int, default=10)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="generate an instance file")
    add_gen_flags(p)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("probe", help="count sampled instances admitting an allocation with given properties")
    add_gen_flags(p)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("-p", "--properties", default="EF1,PO")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out-dir", help="write instances with no such allocation here")
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, OSError) as exc:
        print(f"mixedfair: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"mixedfair: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"mixedfair: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
