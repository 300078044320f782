"""Command-line front end: ``elecmanip <verb> ...``."""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict
from pathlib import Path

from elecmanip import jsonio
from elecmanip.actions import Impossible, apply_solution
from elecmanip.bd import BoundExceeded, FormulaError, parse_dimacs
from elecmanip.bruteforce import BudgetExceeded, SearchBudget
from elecmanip.core import Election, ElectionError, evaluate, sorted_candidates
from elecmanip.fastpaths import decide, gap_demo, search
from elecmanip.generators import REDUCIBLE_FAMILIES, family_label, random_reducible_instance, random_vote_instance
from elecmanip.reducers import UnsupportedAction, brute_force_oracle, reduce_search
from elecmanip.systems import SELECTORS, make_system, system_name
from elecmanip.systems.hardness import HardnessError, Target
from elecmanip.theorems import default_collapse_systems, verify_collapse, verify_separation

EXIT_OK, EXIT_UNSUPPORTED, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3
NO_ACTION = "no successful action exists"


class UsageError(ValueError):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", default="plurality", help=f"one of {', '.join(SELECTORS)}")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-candidates", type=int, default=5)
    common.add_argument("--budget-voters", type=int, default=5)
    common.add_argument("--budget-pool", type=int, default=4)

    fields = argparse.ArgumentParser(add_help=False)
    fields.add_argument("--action", help="action name (instance files may omit it when they carry one)")
    fields.add_argument("--direction", choices=("constructive", "destructive"))
    fields.add_argument("--goal", choices=("nonunique", "unique"))
    fields.add_argument("--tie-rule", choices=("TP", "TE"), type=str.upper)
    fields.add_argument("--kind", choices=("PV", "RPC", "PC"), type=str.upper)
    fields.add_argument("-p", "--p", dest="p", help="distinguished candidate")
    fields.add_argument("-K", type=int, dest="K", help="add/delete limit")
    fields.add_argument("-b", type=int, dest="b", help="bribery budget")

    ap = argparse.ArgumentParser(prog="elecmanip", description="Election manipulation, control and bribery toolkit.")
    sub = ap.add_subparsers(dest="verb", required=True)
    w = sub.add_parser("winners", parents=[common], help="winners of an election")
    w.add_argument("path")
    for verb, text in (("decide", "is there a successful action?"), ("search", "find a successful action"), ("reduce", "find one through a decision oracle")):
        s = sub.add_parser(verb, parents=[common, fields], help=text)
        s.add_argument("path")
    vc = sub.add_parser("verify-collapse", parents=[common], help="exhaustive destructive-partition consistency sweep")
    vc.add_argument("--random-systems", type=int, default=100)
    vc.add_argument("--max-voters", type=int, default=2)
    sub.add_parser("verify-separation", parents=[common], help="unique-winner partition witness")
    g = sub.add_parser("demo-gap", parents=[common], help="time polynomial decision against SAT-based search")
    g.add_argument("target", help="e1-manip|e1-bribery|e2-manip|e2-bribery|e3-pv|e4-pc-tp|e5-pc-te|e6-rpc (or e1..e6)")
    g.add_argument("cnf", help="DIMACS CNF file")
    g.add_argument("--direction", choices=("constructive", "destructive"))
    g.add_argument("--tie-rule", choices=("TP", "TE"), type=str.upper, default="TP")
    r = sub.add_parser("gen-random", parents=[common], help="emit a random in-budget instance")
    r.add_argument("--action", help="family such as add_voters, partition, manipulation (default: random)")
    r.add_argument("--direction", choices=("constructive", "destructive"))
    r.add_argument("--count", type=int, default=1)
    return ap


# -- helpers ---------------------------------------------------------------

def _budget(args) -> SearchBudget:
    return SearchBudget(args.budget_candidates, args.budget_voters, args.budget_pool)


def _system(args):
    try:
        return make_system(args.system)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


_FIELD_FLAGS = (("action", "action"), ("direction", "direction"), ("goal", "goal"),
                ("tie_rule", "tie_rule"), ("kind", "kind"), ("p", "p"), ("K", "K"), ("b", "b"))


def load_instance(path, overrides: dict):
    """Read an instance (or an election plus ``overrides`` naming an action),
    with flag values replacing file fields."""
    obj = jsonio.loads(_read(path))
    if not isinstance(obj, dict):
        raise jsonio.ParseError("expected a JSON object", str(path))
    obj = dict(obj, **{k: v for k, v in overrides.items() if v is not None})
    if "action" not in obj:
        raise jsonio.ParseError("no action given; pass --action or add an 'action' field", "action")
    return jsonio.instance_from_dict(obj)


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise jsonio.ParseError(f"cannot read file: {exc.strerror}", str(path)) from exc


def _emit(args, payload: dict, text: str):
    print(json.dumps(payload, indent=2) if args.json else text)


def _overrides(args) -> dict:
    return {key: getattr(args, attr) for attr, key in _FIELD_FLAGS}


def _fmt(names) -> str:
    return "{" + ", ".join(repr(c) for c in sorted_candidates(frozenset(names))) + "}"


def _abbrev(obj, width: int = 24):
    """Shorten long candidate names for text output."""
    if isinstance(obj, str) and len(obj) > width:
        return f"{obj[:8]}..{obj[-8:]} ({len(obj)} bits)"
    if isinstance(obj, list):
        return [_abbrev(x, width) for x in obj]
    if isinstance(obj, dict):
        return {k: _abbrev(v, width) for k, v in obj.items()}
    return obj


def resolve_target(name: str) -> Target:
    short = {"e1": Target.E1_MANIP, "e2": Target.E2_MANIP, "e3": Target.E3_PV,
             "e4": Target.E4_PC_TP, "e5": Target.E5_PC_TE, "e6": Target.E6_RPC}
    if name.lower() in short:
        return short[name.lower()]
    try:
        return Target(name.lower())
    except ValueError:
        valid = ", ".join(t.value for t in Target)
        raise UsageError(f"unknown target {name!r}; expected one of {valid} or e1..e6") from None


# -- verbs -----------------------------------------------------------------

def cmd_winners(args) -> int:
    system = _system(args)
    doc = jsonio.parse_document(jsonio.loads(_read(args.path)))
    if not isinstance(doc, Election):
        raise UsageError("winners expects an election file, not an instance")
    w = evaluate(system, doc)
    _emit(args, {"system": system_name(system), "winners": list(sorted_candidates(w))}, _fmt(w))
    return EXIT_OK


def cmd_decide(args) -> int:
    system = _system(args)
    inst, iid = load_instance(args.path, _overrides(args))
    ans, method = decide(system, inst, _budget(args))
    _emit(args, {"id": iid, "system": system_name(system), "action": inst.action, "decision": ans, "method": method},
          "true" if ans else "false")
    return EXIT_OK


def _report_solution(args, system, inst, iid, sol, method, extra=None) -> int:
    payload = jsonio.solution_to_dict(sol, iid)
    payload.update(system=system_name(system), action=inst.action, method=method, **(extra or {}))
    if isinstance(sol, Impossible):
        payload["message"] = NO_ACTION
        _emit(args, payload, NO_ACTION)
        return EXIT_OK
    winners = apply_solution(inst, sol, system)
    payload["winners"] = list(sorted_candidates(winners))
    _emit(args, payload, f"{json.dumps(payload['witness'])}\nwinners after the action: {_fmt(winners)}")
    return EXIT_OK


def cmd_search(args) -> int:
    system = _system(args)
    inst, iid = load_instance(args.path, _overrides(args))
    sol, method = search(system, inst, _budget(args))
    return _report_solution(args, system, inst, iid, sol, method)


def cmd_reduce(args) -> int:
    system = _system(args)
    inst, iid = load_instance(args.path, _overrides(args))
    oracle = brute_force_oracle(system, _budget(args))
    try:
        sol = reduce_search(inst, oracle)
    except UnsupportedAction as exc:
        _emit(args, {"id": iid, "action": inst.action, "refused": str(exc)}, f"refused: {exc}")
        return EXIT_UNSUPPORTED
    return _report_solution(args, system, inst, iid, sol, "reduction", {"oracle_calls": oracle.calls})


def cmd_verify_collapse(args) -> int:
    from elecmanip.theorems import election_space

    systems = default_collapse_systems(args.random_systems, args.seed)
    elections = list(election_space(max_voters=args.max_voters))
    report = verify_collapse(systems, elections, _budget(args))
    text = (f"systems: {report.systems_checked}  instances: {report.instances_checked}"
            f"  discrepancies: {len(report.discrepancies)}  verified: {str(report.verified).lower()}")
    _emit(args, report.to_dict(), text)
    return EXIT_OK


def cmd_verify_separation(args) -> int:
    report = verify_separation()
    v = report.values[0]
    text = (f"dc_pc_tp_unique: {str(v['dc_pc_tp_unique']).lower()}  dc_rpc_tp_unique: {str(v['dc_rpc_tp_unique']).lower()}"
            f"  verified: {str(report.verified).lower()}")
    _emit(args, report.to_dict(), text)
    return EXIT_OK


def cmd_demo_gap(args) -> int:
    from elecmanip.actions import Direction
    from elecmanip.core import TieRule

    target = resolve_target(args.target)
    try:
        F = parse_dimacs(_read(args.cnf))
    except FormulaError as exc:
        raise jsonio.ParseError(str(exc), args.cnf) from exc
    direction = Direction(args.direction) if args.direction else None
    try:
        r = gap_demo(target, F, direction=direction, rule=TieRule(args.tie_rule))
    except HardnessError as exc:
        raise UsageError(f"{exc} (the formula must be satisfiable with at most 16 variables)") from exc
    payload = {k: v for k, v in asdict(r).items() if k != "solution"}
    if payload["assignment"] is not None:
        payload["assignment"] = "".join("1" if b else "0" for b in r.assignment)
    payload["witness"] = jsonio.solution_to_dict(r.solution)["witness"]
    text = "\n".join((
        f"target: {r.target}  d={r.d}  m={r.m}  candidates={r.candidates}",
        f"decision: {str(r.decision).lower()}  ({r.decide_seconds * 1e3:.3f} ms)",
        f"search: witness {'replays to the goal' if r.witness_ok else 'FAILED'}  ({r.search_seconds * 1e3:.3f} ms)",
        f"witness: {json.dumps(_abbrev(payload['witness']))}",
        f"satisfying assignment: {payload['assignment']}",
    ))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_gen_random(args) -> int:
    from elecmanip.actions import Direction

    rng = random.Random(args.seed)
    families = [f for f in REDUCIBLE_FAMILIES if args.action in (None, f[0])]
    if args.direction:
        families = [f for f in families if f[0] == "partition" or f[1] is Direction(args.direction)]
    vote_actions = ("manipulation", "bribery")
    if not families and args.action not in vote_actions:
        valid = sorted({f[0] for f in REDUCIBLE_FAMILIES} | set(vote_actions))
        raise UsageError(f"unknown action {args.action!r}; valid actions: {', '.join(valid)}")
    out = []
    for j in range(args.count):
        if args.action in vote_actions:
            while True:
                inst = random_vote_instance(rng)
                if inst.action == args.action and (not args.direction or inst.direction.value == args.direction):
                    break
            label = inst.action
        else:
            fam = rng.choice(families)
            inst, label = random_reducible_instance(rng, fam), family_label(fam)
        out.append(jsonio.instance_to_dict(inst, id=f"{args.seed}-{j}"))
    if args.json or args.count > 1:
        print(json.dumps(out if args.count > 1 else out[0], indent=2))
    else:
        print(json.dumps(out[0]))
    return EXIT_OK


_VERBS = {
    "winners": cmd_winners,
    "decide": cmd_decide,
    "search": cmd_search,
    "reduce": cmd_reduce,
    "verify-collapse": cmd_verify_collapse,
    "verify-separation": cmd_verify_separation,
    "demo-gap": cmd_demo_gap,
    "gen-random": cmd_gen_random,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)  # exits 2 on bad flags
    try:
        return _VERBS[args.verb](args)
    except (BudgetExceeded, BoundExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (jsonio.ParseError, UsageError, ElectionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
