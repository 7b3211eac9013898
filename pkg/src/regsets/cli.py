"""Command line front end.

Exit codes: 0 affirmative result, 1 negative mathematical result (not
regular, infeasible, ...), 2 usage or validation error, 3 internal
inconsistency between construction and certifier.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from .cayley import ConnectionSetError, cayley_graph
from .construction import (complement_outside, complement_to_full, inverse_closed_transversal,
                           regular_set_connection)
from .equitable import eigenvalue_membership, mu_from_quotient, quotient_matrix
from .groups import GroupSpecError, GroupTable, build_group, generate_subgroup
from .regular import check_regular_set, condition1_witness
from .search import (DEFAULT_BUDGET, BudgetExceeded, enumerate_regular_sets, feasible_ab_table,
                     question1_probe)

OK, NEGATIVE, USAGE, INTERNAL = 0, 1, 2, 3

log = logging.getLogger("regsets")


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _group(args) -> GroupTable:
    return build_group(args.group)


def _subgroup(G: GroupTable, text: str):
    return generate_subgroup(G, G.parse_set(text))


def _target(G: GroupTable, args):
    if args.subset is not None:
        return G.parse_set(args.subset)
    if args.subgroup is not None:
        return _subgroup(G, args.subgroup)
    raise UsageError("one of --subset or --subgroup is required")


def _proper(G: GroupTable, C) -> None:
    if not C or len(C) == G.order:
        raise UsageError("the candidate set must be nonempty and proper")


def cmd_verify(args):
    G = _group(args)
    graph = cayley_graph(G, G.parse_set(args.set))
    C = _target(G, args)
    _proper(G, C)
    cert = check_regular_set(graph, C)
    payload = cert.to_json(G)
    if args.edges:
        payload["edges"] = [[G.names[u], G.names[v]] for u, v in graph.edges()]
    text = (f"({cert.a},{cert.b})-regular set of size {cert.set_size} in a "
            f"{cert.degree}-regular Cayley graph" if cert else
            f"not regular: {G.names[cert.u]} has {cert.count_u} and {G.names[cert.v]} has "
            f"{cert.count_v} neighbours in the set")
    return (OK if cert else NEGATIVE), payload, text


def cmd_construct(args):
    G = _group(args)
    H = _subgroup(G, args.subgroup)
    trace = regular_set_connection(G, H, args.a, args.b)
    if trace is None:
        return NEGATIVE, {"feasible": False}, "infeasible: no construction for these parameters"
    S = trace.result
    if args.transform == "full":
        S = complement_to_full(G, S, H)
    elif args.transform == "outside":
        S = complement_outside(G, S, H)
    cert = check_regular_set(cayley_graph(G, S), H)
    expect = {None: (args.a, args.b), "full": (args.a, len(H)),
              "outside": (args.a, len(H) - args.b)}[args.transform]
    if not cert or cert.pair != expect:
        return INTERNAL, {"error": "certifier disagrees with construction",
                          "expected": list(expect)}, "internal inconsistency"
    payload = trace.to_json()
    payload["feasible"] = True
    if args.transform:
        payload["S"] = S.elems.names()
    payload["certificate"] = cert.to_json(G)
    return OK, payload, "S = {" + ", ".join(payload["S"]) + f"}}  ({len(S)} elements)"


def cmd_transversal(args):
    G = _group(args)
    H = _subgroup(G, args.subgroup)
    S0 = inverse_closed_transversal(G, H)
    if S0 is None:
        return NEGATIVE, {"S0": None, "m": None}, "no inverse-closed left transversal exists"
    names = [G.names[s] for s in S0.elems]
    return OK, {"S0": names, "m": S0.m}, "S0 = (" + ", ".join(names) + f"), m = {S0.m}"


def cmd_condition1(args):
    G = _group(args)
    H = _subgroup(G, args.subgroup)
    g = condition1_witness(G, H)
    if g is None:
        return OK, {"holds": True, "witness": None}, "condition (1) holds"
    return (NEGATIVE, {"holds": False, "witness": G.names[g]},
            f"condition (1) fails at g = {G.names[g]}")


def cmd_enumerate(args):
    G = _group(args)
    graph = cayley_graph(G, G.parse_set(args.set))
    ab = None
    if args.a is not None or args.b is not None:
        if args.a is None or args.b is None:
            raise UsageError("--a and --b must be given together")
        ab = (args.a, args.b)
    found = enumerate_regular_sets(graph, ab)
    payload = {"sets": [{"C": C.names(), "a": c.a, "b": c.b} for C, c in found]}
    text = "\n".join(f"{{{', '.join(C.names())}}}  ({c.a},{c.b})" for C, c in found)
    return (OK if found else NEGATIVE), payload, text or "no regular sets"


def cmd_feasible(args):
    G = _group(args)
    H = _subgroup(G, args.subgroup)
    table = feasible_ab_table(G, H, budget=args.budget, workers=args.workers)
    payload = table.to_json()
    lines = []
    for a in range(len(H)):
        row = "".join({True: "#", False: ".", None: "?"}[table.cells[a, b]]
                      for b in range(len(H) + 1))
        lines.append(f"a={a:<3d} {row}")
    ok = any(v for v in table.cells.values())
    return (OK if ok else NEGATIVE), payload, "\n".join(lines)


def cmd_quotient(args):
    G = _group(args)
    graph = cayley_graph(G, G.parse_set(args.set))
    C = _target(G, args)
    _proper(G, C)
    M = quotient_matrix(graph, C)
    if M is None:
        return NEGATIVE, {"entries": None}, "not equitable"
    return OK, M.to_json(), f"{M.entries}  k={M.degree}  mu={mu_from_quotient(M)}"


def cmd_eigcheck(args):
    G = _group(args)
    graph = cayley_graph(G, G.parse_set(args.set))
    hit = eigenvalue_membership(graph, args.lam)
    return ((OK if hit else NEGATIVE), {"eigenvalue": args.lam, "member": hit},
            f"{args.lam} is {'' if hit else 'not '}an eigenvalue")


def cmd_probe_q1(args):
    report = question1_probe(args.groups, budget=args.budget, workers=args.workers)
    payload = report.to_json()
    text = (f"{len(report.entries)} non-normal subgroups checked, "
            f"{len(report.disagreements)} disagreements, {len(report.skipped)} groups skipped")
    return (NEGATIVE if report.disagreements else OK), payload, text


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="regsets", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, helptext, group=True):
        sp = sub.add_parser(name, help=helptext)
        sp.set_defaults(func=func)
        if group:
            sp.add_argument("--group", required=True, help="group spec, e.g. genq:20")
        sp.add_argument("--json", action="store_true", help="emit canonical JSON")
        sp.add_argument("--workers", type=int, default=1)
        return sp

    sp = add("verify", cmd_verify, "certify a set as (a,b)-regular")
    sp.add_argument("--set", required=True, help="connection set S")
    sp.add_argument("--subset", help="candidate set C, listed in full")
    sp.add_argument("--subgroup", help="generators of a subgroup used as C")
    sp.add_argument("--edges", action="store_true", help="include the edge list")

    sp = add("construct", cmd_construct, "build S making H an (a,b)-regular set")
    sp.add_argument("--subgroup", required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--transform", choices=["full", "outside"],
                    help="apply a complement transform to the constructed S")

    sp = add("transversal", cmd_transversal, "inverse-closed left transversal of H")
    sp.add_argument("--subgroup", required=True)

    sp = add("condition1", cmd_condition1, "check condition (1) for H")
    sp.add_argument("--subgroup", required=True)

    sp = add("enumerate", cmd_enumerate, "list all regular sets of a small Cayley graph")
    sp.add_argument("--set", required=True)
    sp.add_argument("--a", type=int)
    sp.add_argument("--b", type=int)

    sp = add("feasible", cmd_feasible, "exhaustive (a,b) feasibility table for H")
    sp.add_argument("--subgroup", required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = add("quotient", cmd_quotient, "quotient matrix of {C, G - C}")
    sp.add_argument("--set", required=True)
    sp.add_argument("--subset")
    sp.add_argument("--subgroup")

    sp = add("eigcheck", cmd_eigcheck, "exact eigenvalue membership test")
    sp.add_argument("--set", required=True)
    sp.add_argument("--lambda", dest="lam", type=int, required=True)

    sp = add("probe-q1", cmd_probe_q1, "compare condition (1) and perfect-code search "
             "on non-normal subgroups", group=False)
    sp.add_argument("--groups", nargs="+", required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        code, payload, text = args.func(args)
    except (UsageError, GroupSpecError, ConnectionSetError, BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return USAGE
    if args.json:
        report = {"command": args.command, "inputs": _inputs(args),
                  "outcome": payload, "exit": code}
        print(dumps(report), file=out)
    else:
        print(text, file=out)
    return code


def _inputs(args) -> dict:
    skip = {"func", "json", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
