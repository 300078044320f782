"""JSON encoding of elections, action instances, solutions and reports.

Election: ``{"candidates": [...], "voters": [{"name": ..., "prefs": [...]}]}``
with prefs most-preferred first.  Instances add ``action``, ``direction``,
``goal``, ``p`` and the action's own fields (``K``, ``b``, ``pool``,
``manipulators``, ``kind``, ``tie_rule``) plus an optional ``id``.
"""
from __future__ import annotations

import json
from pathlib import Path

from elecmanip.actions import (
    ACTIONS,
    IMPOSSIBLE,
    AddCandidatesInstance,
    AddedSet,
    AddVotersInstance,
    Bribe,
    BriberyInstance,
    DeleteCandidatesInstance,
    DeletedSet,
    DeleteVotersInstance,
    Direction,
    GoalMode,
    Impossible,
    InvalidInstance,
    ManipulationInstance,
    ManipVotes,
    Partition,
    PartitionInstance,
    validate_instance,
)
from elecmanip.core import Election, ElectionError, PartitionKind, TieRule, Voter, is_bitstring, sorted_candidates
from elecmanip.bd import CnfFormula


class ParseError(ValueError):
    """Malformed input; ``where`` names the field path or line/column."""

    def __init__(self, msg: str, where: str = ""):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


# -- elections -------------------------------------------------------------

def election_to_dict(e: Election) -> dict:
    return {
        "candidates": list(sorted_candidates(e.candidates)),
        "voters": [voter_to_dict(v) for v in e.voters],
    }


def voter_to_dict(v: Voter) -> dict:
    return {"name": v.name, "prefs": list(v.pref)}


def _expect(obj, typ, where):
    if not isinstance(obj, typ):
        name = typ.__name__ if isinstance(typ, type) else "/".join(t.__name__ for t in typ)
        raise ParseError(f"expected {name}, got {type(obj).__name__}", where)
    return obj


def _names(raw, where) -> list:
    """A list of distinct bitstring candidate names."""
    _expect(raw, list, where)
    seen = set()
    for i, c in enumerate(raw):
        if not is_bitstring(c):
            raise ParseError(f"candidate name must be a string over 0/1, got {c!r}", f"{where}[{i}]")
        if c in seen:
            raise ParseError(f"duplicate candidate name {c!r}", f"{where}[{i}]")
        seen.add(c)
    return raw


def _voters(raw, cands: frozenset, where, taken=None) -> tuple:
    _expect(raw, list, where)
    seen = set() if taken is None else taken
    out = []
    for i, v in enumerate(raw):
        at = f"{where}[{i}]"
        _expect(v, dict, at)
        for key in ("name", "prefs"):
            if key not in v:
                raise ParseError(f"missing field {key!r}", at)
        name = _expect(v["name"], str, f"{at}.name")
        if name in seen:
            raise ParseError(f"duplicate voter name {name!r}", f"{at}.name")
        seen.add(name)
        prefs = _expect(v["prefs"], list, f"{at}.prefs")
        for j, c in enumerate(prefs):
            _expect(c, str, f"{at}.prefs[{j}]")
        if len(set(prefs)) != len(prefs) or set(prefs) != cands:
            missing = list(sorted_candidates(frozenset(cands - set(prefs))))
            extra = [c for c in prefs if c not in cands]
            dups = [c for c in set(prefs) if prefs.count(c) > 1]
            detail = "; ".join(
                s for s in (
                    f"missing {missing}" if missing else "",
                    f"unknown {extra}" if extra else "",
                    f"repeated {sorted(dups)}" if dups else "",
                ) if s
            )
            raise ParseError(f"prefs must rank every candidate exactly once ({detail})", f"{at}.prefs")
        out.append(Voter(name, tuple(prefs)))
    return tuple(out)


def election_from_dict(d, where: str = "") -> Election:
    _expect(d, dict, where or "election")
    if "candidates" not in d:
        raise ParseError("missing field 'candidates'", where or "election")
    pre = f"{where}." if where else ""
    cands = frozenset(_names(d["candidates"], pre + "candidates"))
    voters = _voters(d.get("voters", []), cands, pre + "voters")
    return Election(cands, voters)


# -- instances -------------------------------------------------------------

def instance_to_dict(inst, id=None) -> dict:
    d = {"action": inst.action}
    if id is not None:
        d["id"] = id
    if isinstance(inst, ManipulationInstance):
        d.update(election_to_dict(Election(inst.candidates, inst.fixed_voters)))
        d["manipulators"] = list(inst.manipulators)
    elif isinstance(inst, AddVotersInstance):
        d.update(election_to_dict(Election(inst.candidates, inst.registered)))
        d["pool"] = [voter_to_dict(v) for v in inst.pool]
        d["K"] = inst.limit
    elif isinstance(inst, AddCandidatesInstance):
        d["candidates"] = list(sorted_candidates(inst.candidates))
        d["pool"] = list(sorted_candidates(inst.pool))
        d["voters"] = [voter_to_dict(v) for v in inst.voters]
        if inst.limit is not None:
            d["K"] = inst.limit
    else:
        d.update(election_to_dict(inst.election))
        if isinstance(inst, BriberyInstance):
            d["b"] = inst.budget
        elif isinstance(inst, (DeleteVotersInstance, DeleteCandidatesInstance)):
            d["K"] = inst.limit
        elif isinstance(inst, PartitionInstance):
            d["kind"] = inst.kind.value
            d["tie_rule"] = inst.rule.value
    d["p"] = inst.p
    d["direction"] = inst.direction.value
    d["goal"] = inst.goal.value
    return d


def _enum(cls, raw, where):
    for m in cls:
        if isinstance(raw, str) and raw.lower() in (m.value.lower(), m.name.lower()):
            return m
    valid = ", ".join(m.value for m in cls)
    raise ParseError(f"unknown value {raw!r}; valid values: {valid}", where)


def _count(d, key, optional=False):
    if key not in d:
        if optional:
            return None
        raise ParseError(f"missing field {key!r}", key)
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ParseError(f"expected a non-negative integer, got {v!r}", key)
    return v


def instance_from_dict(d):
    """Decode an instance; returns ``(instance, id)``."""
    _expect(d, dict, "instance")
    action = d.get("action")
    if action not in ACTIONS:
        raise ParseError(f"unknown action {action!r}; valid actions: {', '.join(ACTIONS)}", "action")
    if "p" not in d:
        raise ParseError("missing field 'p'", "p")
    p = d["p"]
    direction = _enum(Direction, d.get("direction", "constructive"), "direction")
    goal = _enum(GoalMode, d.get("goal", "nonunique"), "goal")
    if "candidates" not in d:
        raise ParseError("missing field 'candidates'", "candidates")
    cands = frozenset(_names(d["candidates"], "candidates"))

    if action == "manipulation":
        fixed = _voters(d.get("voters", []), cands, "voters")
        manips = _expect(d.get("manipulators", []), list, "manipulators")
        taken = {v.name for v in fixed}
        for i, m in enumerate(manips):
            _expect(m, str, f"manipulators[{i}]")
            if m in taken:
                raise ParseError(f"duplicate voter name {m!r}", f"manipulators[{i}]")
            taken.add(m)
        inst = ManipulationInstance(cands, fixed, tuple(manips), p, direction, goal)
    elif action == "add_voters":
        reg = _voters(d.get("voters", []), cands, "voters")
        pool = _voters(d.get("pool", []), cands, "pool", taken={v.name for v in reg})
        inst = AddVotersInstance(cands, reg, pool, p, _count(d, "K"), direction, goal)
    elif action in ("add_candidates", "add_candidates_unlimited"):
        pool = frozenset(_names(d.get("pool", []), "pool"))
        both = pool & cands
        if both:
            raise ParseError(f"duplicate candidate name {sorted_candidates(both)[0]!r} (in both candidates and pool)", "pool")
        voters = _voters(d.get("voters", []), cands | pool, "voters")
        limit = None if action == "add_candidates_unlimited" else _count(d, "K")
        inst = AddCandidatesInstance(cands, pool, voters, p, limit, direction, goal)
    else:
        e = Election(cands, _voters(d.get("voters", []), cands, "voters"))
        if action == "bribery":
            inst = BriberyInstance(e, p, _count(d, "b"), direction, goal)
        elif action == "delete_voters":
            inst = DeleteVotersInstance(e, p, _count(d, "K"), direction, goal)
        elif action == "delete_candidates":
            inst = DeleteCandidatesInstance(e, p, _count(d, "K"), direction, goal)
        else:
            kind = _enum(PartitionKind, d.get("kind"), "kind")
            rule = _enum(TieRule, d.get("tie_rule", "TP"), "tie_rule")
            inst = PartitionInstance(e, p, kind, rule, direction, goal)
    try:
        validate_instance(inst)
    except (InvalidInstance, ElectionError) as exc:
        raise ParseError(str(exc), "instance") from exc
    return inst, d.get("id")


# -- solutions -------------------------------------------------------------

def solution_to_dict(sol, id=None) -> dict:
    d = {"id": id}
    if isinstance(sol, Impossible):
        d.update(status="impossible", witness=None)
        return d
    if isinstance(sol, (ManipVotes, Bribe)):
        w = {"votes": {k: list(v) for k, v in sorted(sol.votes.items())}}
    elif isinstance(sol, (AddedSet, DeletedSet)):
        key = "added" if isinstance(sol, AddedSet) else "deleted"
        w = {key: list(sorted_candidates(sol.names))}
    elif isinstance(sol, Partition):
        w = {"first": list(sorted_candidates(sol.first)), "second": list(sorted_candidates(sol.second))}
    else:
        raise TypeError(f"not a solution: {sol!r}")
    d.update(status="found", witness=w)
    return d


def solution_from_dict(d, action: str = None):
    """Decode a solution; ``action`` disambiguates vote witnesses."""
    _expect(d, dict, "solution")
    status = d.get("status")
    if status == "impossible":
        return IMPOSSIBLE
    if status != "found":
        raise ParseError(f"unknown status {status!r}; expected found or impossible", "status")
    w = _expect(d.get("witness"), dict, "witness")
    if "votes" in w:
        votes = {k: tuple(v) for k, v in _expect(w["votes"], dict, "witness.votes").items()}
        return Bribe(votes) if action == "bribery" else ManipVotes(votes)
    if "added" in w:
        return AddedSet(frozenset(w["added"]))
    if "deleted" in w:
        return DeletedSet(frozenset(w["deleted"]))
    if "first" in w and "second" in w:
        return Partition(frozenset(w["first"]), frozenset(w["second"]))
    raise ParseError("unrecognized witness", "witness")


# -- text and files ----------------------------------------------------------

def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from exc


def parse_document(obj):
    """An instance if the object names an action, else a plain election."""
    if isinstance(obj, dict) and "action" in obj:
        return instance_from_dict(obj)[0]
    return election_from_dict(obj)


def parse_election_file(path):
    """Decode an election or instance JSON file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from exc
    return parse_document(loads(text))


def dumps(obj, **kw) -> str:
    if isinstance(obj, Election):
        obj = election_to_dict(obj)
    elif isinstance(obj, CnfFormula):
        obj = {"d": obj.d, "clauses": [list(c) for c in obj.clauses]}
    elif hasattr(obj, "action"):
        obj = instance_to_dict(obj)
    return json.dumps(obj, **kw)
