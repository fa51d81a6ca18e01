"""schulzectl command line.

Exit codes: 0 decision yes, 1 decision no, 2 usage or input error,
3 search budget exceeded.  Decision commands print one JSON record per run.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import batch, control, control_poly, manipulation, reductions
from .cnf import parse_dimacs
from .control import ControlInstance, Family
from .election import ValidationError, compute_net_advantage, strongest_paths, winners
from .enums import Goal, TieModel, WinnerModel
from .formats import (
    election_dot,
    election_json,
    parse_edge_list,
    parse_election,
    parse_relations,
    serialize_election,
)
from .mcgarvey import synthesize_relations
from .ppvc import PpvcInstance, dc_candidates_via_ppvc, ppvc_bruteforce

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(record: dict, started: float) -> int:
    record["elapsed_ms"] = round((time.perf_counter() - started) * 1000, 3)
    print(json.dumps(record, sort_keys=True))
    return EXIT_YES if record.get("decision") == "yes" else EXIT_NO


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _matrix_text(title: str, m) -> str:
    width = max(len(c) for c in m.candidates) + 1
    width = max(width, max(len(str(v)) for row in m.values for v in row) + 1)
    head = " " * width + "".join(c.rjust(width) for c in m.candidates)
    rows = [c.rjust(width) + "".join(str(v).rjust(width) for v in row) for c, row in zip(m.candidates, m.values)]
    return "\n".join([title, head, *rows])


# --- commands -------------------------------------------------------------


def cmd_winners(args) -> int:
    ef = parse_election(_read(args.file))
    e = ef.election.restrict([c for c in ef.election.candidates if c not in ef.pool])
    print(" ".join(winners(e)))
    if args.show_matrices:
        net = compute_net_advantage(e)
        print(_matrix_text("net advantage", net))
        print(_matrix_text("strongest paths", strongest_paths(net)))
    return EXIT_YES


def cmd_graph(args) -> int:
    ef = parse_election(_read(args.file))
    e = ef.election.restrict([c for c in ef.election.candidates if c not in ef.pool])
    sys.stdout.write(election_dot(e) if args.format == "dot" else election_json(e))
    return EXIT_YES


def cmd_synth(args) -> int:
    cands, rels = parse_relations(_read(args.file))
    text = serialize_election(synthesize_relations(cands, rels))
    _write_or_print(text, args.output)
    return EXIT_YES


def _write_or_print(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_manipulate(args) -> int:
    started = time.perf_counter()
    ef = parse_election(_read(args.file))
    inst = manipulation.ManipulationInstance(ef.election, args.count, args.p, args.goal, WinnerModel(args.model))
    decide = manipulation.decide_identical if args.identical_only else manipulation.decide_bruteforce
    res = decide(inst, budget=args.budget)
    witness = [" > ".join(b) for b in res.witness] if res.witness else None
    return _emit(
        {"command": "manipulate", "decision": _yes(res.decision), "witness": witness, "explored": res.explored},
        started,
    )


def _control_instance(args, ef) -> ControlInstance:
    fam = Family.parse(args.family)
    budget = args.k
    if budget is None and "budget" in ef.annotations:
        budget = int(ef.annotations["budget"])
    tie = args.tie
    if tie is None and fam.partitions and "tie" in ef.annotations:
        tie = ef.annotations["tie"]
    return ControlInstance(
        fam,
        Goal.parse(args.goal),
        ef.election,
        args.p,
        tie_model=TieModel.parse(tie) if tie else None,
        budget=budget if fam.budgeted else None,
        pool=ef.pool,
        unregistered=ef.unregistered,
    )


def cmd_control_solve(args) -> int:
    started = time.perf_counter()
    ef = parse_election(_read(args.file))
    inst = _control_instance(args, ef)
    poly_ok = inst.family in (Family.PC, Family.RPC) and inst.goal is Goal.DESTRUCTIVE
    method = args.method
    if method == "poly" and not poly_ok:
        raise UsageError("the polynomial method covers destructive pc/rpc only")
    if method == "auto":
        method = "poly" if poly_ok else "bruteforce"
    if method == "poly":
        res = control_poly.dc_pc(inst.election, inst.distinguished, inst.tie_model)
    else:
        res = control.decide_bruteforce(inst, budget=args.budget)
    return _emit(
        {
            "command": "control solve",
            "family": inst.family.value,
            "goal": inst.goal.value,
            "method": method,
            "decision": _yes(res.decision),
            "witness": res.witness.describe(inst) if res.witness else None,
            "explored": res.explored,
        },
        started,
    )


def _kind(args) -> str:
    return reductions.kind_for(args.family, args.goal, args.tie)


def cmd_control_reduce(args) -> int:
    f = parse_dimacs(_read(args.cnf))
    g = reductions.generate(f, _kind(args))
    inst = g.instance
    notes = {
        "reduction": g.kind,
        "family": inst.family.value,
        "goal": inst.goal.value,
        "distinguished": inst.distinguished,
    }
    if inst.tie_model:
        notes["tie"] = inst.tie_model.value
    if inst.budget is not None:
        notes["budget"] = str(inst.budget)
    notes["recipe"] = g.recipe_text
    notes["roles"] = ", ".join(f"{c}={g.roles[c]}" for c in inst.election.candidates)
    if g.ballot_labels:
        notes["voters"] = ", ".join(g.ballot_labels)
    text = serialize_election(inst.election, pool=inst.pool, annotations=notes)
    _write_or_print(text, args.output)
    return EXIT_YES


def cmd_control_verify(args) -> int:
    started = time.perf_counter()
    kind = _kind(args)
    f = reductions.verification_formula(kind, parse_dimacs(_read(args.cnf)))
    rep = reductions.verify_reduction(f, kind, budget=args.budget, backward=not args.forward_only)
    record = {"command": "control verify", **rep.as_dict()}
    ok = rep.forward_passed if args.forward_only else rep.passed
    record["decision"] = _yes(ok)
    code = _emit(record, started)
    if not args.forward_only and rep.backward_ok is None and rep.forward_passed:
        return EXIT_BUDGET
    return code


def cmd_control_via_ppvc(args) -> int:
    started = time.perf_counter()
    ef = parse_election(_read(args.file))
    args.goal = "d"
    args.tie = None
    inst = _control_instance(args, ef)
    res = dc_candidates_via_ppvc(inst, lambda q: ppvc_bruteforce(q, budget=args.budget))
    return _emit(
        {
            "command": "control dc-via-ppvc",
            "family": inst.family.value,
            "decision": _yes(res.decision),
            "witness": res.witness.describe(inst) if res.witness else None,
            "oracle_calls": res.oracle_calls,
            "query": list(res.query) if res.query else None,
            "shortcut": res.shortcut,
        },
        started,
    )


def cmd_ppvc_solve(args) -> int:
    started = time.perf_counter()
    verts, edges = parse_edge_list(_read(args.graph))
    verts = tuple(verts) + tuple(v for v in (args.s, args.t) if v not in verts)
    inst = PpvcInstance(verts, frozenset(edges), args.s, args.t, args.k)
    res = ppvc_bruteforce(inst, budget=args.budget)
    return _emit(
        {
            "command": "ppvc solve",
            "decision": _yes(res.decision),
            "witness": sorted(res.deleted) if res.deleted is not None else None,
            "explored": res.explored,
        },
        started,
    )


def cmd_gap(args) -> int:
    started = time.perf_counter()
    cfg = manipulation.GapSearchConfig(
        candidates=args.candidates,
        max_margin=args.margin,
        manipulators=args.count,
        model=WinnerModel(args.model),
        exhaustive=not args.sample,
        samples=args.samples,
        seed=args.seed,
        max_instances=args.max_instances,
    )
    try:
        w = manipulation.find_unique_winner_gap(cfg)
    except manipulation.GapNotFound as exc:
        return _emit({"command": "gap", "decision": "no", "witness": None, "instances_tried": exc.tried}, started)
    witness = {
        "election": serialize_election(w.instance.election),
        "ballots": [" > ".join(b) for b in w.ballots],
    }
    return _emit({"command": "gap", "decision": "yes", "witness": witness, "instances_tried": w.instances_tried}, started)


# --- parser ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit with 2, as argparse does
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _budget(p) -> None:
    p.add_argument("--budget", type=int, default=batch.DEFAULT_BUDGET, help="max states to enumerate")


def _reduction_args(p) -> None:
    p.add_argument("--family", required=True, choices=["ac", "acu", "auc", "dc", "pc", "rpc", "pv"])
    p.add_argument("--goal", default="c", choices=["c", "d"])
    p.add_argument("--tie", choices=["te", "tp"])
    p.add_argument("cnf")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="schulzectl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("winners", help="print the Schulze winners")
    p.add_argument("file")
    p.add_argument("--show-matrices", action="store_true")
    p.set_defaults(func=cmd_winners)

    p = sub.add_parser("graph", help="export the majority graph")
    p.add_argument("file")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("synth", help="ballots realising a relations file")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("manipulate", help="coalitional manipulation")
    p.add_argument("--goal", default="c", choices=["c", "d"])
    p.add_argument("--model", default="nonunique", choices=["nonunique", "unique"])
    p.add_argument("--count", type=int, required=True)
    p.add_argument("-p", required=True)
    p.add_argument("--identical-only", action="store_true")
    _budget(p)
    p.add_argument("file")
    p.set_defaults(func=cmd_manipulate)

    p = sub.add_parser("gap", help="search a unique-winner manipulation gap")
    p.add_argument("--candidates", type=int, default=4)
    p.add_argument("--margin", type=int, default=2)
    p.add_argument("--count", type=int, default=2)
    p.add_argument("--model", default="unique", choices=["nonunique", "unique"])
    p.add_argument("--sample", action="store_true", help="sample instead of exhaustive")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-instances", type=int, default=100_000)
    p.set_defaults(func=cmd_gap)

    ctl = sub.add_parser("control", help="electoral control")
    csub = ctl.add_subparsers(dest="action", required=True, parser_class=_Parser)

    p = csub.add_parser("solve")
    p.add_argument("--family", required=True, choices=["ac", "acu", "auc", "dc", "av", "dv", "pc", "rpc", "pv"])
    p.add_argument("--goal", required=True, choices=["c", "d"])
    p.add_argument("--tie", choices=["te", "tp"])
    p.add_argument("-k", type=int)
    p.add_argument("-p", required=True)
    p.add_argument("--method", default="auto", choices=["auto", "bruteforce", "poly"])
    _budget(p)
    p.add_argument("file")
    p.set_defaults(func=cmd_control_solve)

    p = csub.add_parser("reduce", help="3SAT formula to control instance")
    _reduction_args(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_control_reduce)

    p = csub.add_parser("verify", help="check a reduction on a formula")
    _reduction_args(p)
    p.add_argument("--forward-only", action="store_true")
    _budget(p)
    p.set_defaults(func=cmd_control_verify)

    p = csub.add_parser("dc-via-ppvc", help="destructive candidate control through vertex cuts")
    p.add_argument("--family", required=True, choices=["dc", "ac", "acu", "auc"])
    p.add_argument("-p", required=True)
    p.add_argument("-k", type=int)
    _budget(p)
    p.add_argument("file")
    p.set_defaults(func=cmd_control_via_ppvc)

    pp = sub.add_parser("ppvc", help="path-preserving vertex cut")
    psub = pp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = psub.add_parser("solve")
    p.add_argument("graph")
    p.add_argument("-s", required=True)
    p.add_argument("-t", required=True)
    p.add_argument("-k", type=int, required=True)
    _budget(p)
    p.set_defaults(func=cmd_ppvc_solve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        return args.func(args)
    except batch.SearchBudgetExceeded as exc:
        _emit({"command": args.command, "decision": "unknown", "error": str(exc)}, started)
        return EXIT_BUDGET
    except (UsageError, ValidationError, ValueError) as exc:
        print(f"schulzectl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
