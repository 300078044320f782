"""Independent reference implementations used to cross-check the package.

Everything here is written from the definitions, deliberately naive, and
shares no code with the package beyond its plain data classes.
"""
import itertools

from elecmanip.actions import (
    AddCandidatesInstance,
    AddVotersInstance,
    BriberyInstance,
    DeleteCandidatesInstance,
    DeleteVotersInstance,
    Direction,
    GoalMode,
    ManipulationInstance,
    PartitionInstance,
)
from elecmanip.core import Election, PartitionKind, TieRule, Voter


def shortlex_less(a, b):
    if len(a) != len(b):
        return len(a) < len(b)
    for x, y in zip(a, b):
        if x != y:
            return x == "0"
    return False


def ordered(names):
    out = []
    for n in names:
        i = 0
        while i < len(out) and shortlex_less(out[i], n):
            i += 1
        out.insert(i, n)
    return out


def clause_true(clause, a):
    return any((lit > 0) == a[abs(lit) - 1] for lit in clause)


def first_model(d, clauses):
    for bits in itertools.product((False, True), repeat=d):
        if all(clause_true(c, bits) for c in clauses):
            return bits
    return None


def masked(pref, keep):
    return tuple(c for c in pref if c in keep)


def sub_election(e, keep_cands=None, keep_voters=None):
    cands = e.candidates if keep_cands is None else frozenset(keep_cands)
    voters = [v for v in e.voters if keep_voters is None or v.name in keep_voters]
    return Election(cands, tuple(Voter(v.name, masked(v.pref, cands)) for v in voters))


def survivors(w, rule):
    if rule is TieRule.TE and len(w) != 1:
        return frozenset()
    return frozenset(w)


def two_stage(system, e, kind, first, second, rule):
    if kind is PartitionKind.PV:
        w = survivors(system(sub_election(e, keep_voters=first)), rule) | survivors(system(sub_election(e, keep_voters=second)), rule)
    elif kind is PartitionKind.RPC:
        w = survivors(system(sub_election(e, first)), rule) | survivors(system(sub_election(e, second)), rule)
    else:
        w = survivors(system(sub_election(e, first)), rule) | frozenset(second)
    return frozenset(system(sub_election(e, w)))


def success(winners, p, direction, goal):
    if goal is GoalMode.UNIQUE:
        hit = set(winners) == {p}
    else:
        hit = p in winners
    return hit if direction is Direction.CONSTRUCTIVE else not hit


def subsets(items, k=None):
    items = list(items)
    top = len(items) if k is None else min(k, len(items))
    for r in range(top + 1):
        yield from itertools.combinations(items, r)


def orders(cands):
    return list(itertools.permutations(sorted(cands)))


def naive_decide(inst, system):
    """Existential semantics, spelled out action by action."""
    ok = lambda w: success(w, inst.p, inst.direction, inst.goal)  # noqa: E731
    if isinstance(inst, ManipulationInstance):
        for combo in itertools.product(orders(inst.candidates), repeat=len(inst.manipulators)):
            cast = tuple(Voter(n, p) for n, p in zip(inst.manipulators, combo))
            if ok(system(Election(inst.candidates, inst.fixed_voters + cast))):
                return True
        return False
    if isinstance(inst, BriberyInstance):
        e = inst.election
        for group in subsets([v.name for v in e.voters], inst.budget):
            for combo in itertools.product(orders(e.candidates), repeat=len(group)):
                new = dict(zip(group, combo))
                voters = tuple(Voter(v.name, new.get(v.name, v.pref)) for v in e.voters)
                if ok(system(Election(e.candidates, voters))):
                    return True
        return False
    if isinstance(inst, AddVotersInstance):
        return any(
            ok(system(Election(inst.candidates, inst.registered + tuple(v for v in inst.pool if v.name in g))))
            for g in subsets([v.name for v in inst.pool], inst.limit)
        )
    if isinstance(inst, DeleteVotersInstance):
        e = inst.election
        return any(
            ok(system(Election(e.candidates, tuple(v for v in e.voters if v.name not in g))))
            for g in subsets([v.name for v in e.voters], inst.limit)
        )
    if isinstance(inst, AddCandidatesInstance):
        full = Election(inst.candidates | inst.pool, inst.voters)
        return any(
            ok(system(sub_election(full, inst.candidates | set(g))))
            for g in subsets(inst.pool, inst.limit)
        )
    if isinstance(inst, DeleteCandidatesInstance):
        e = inst.election
        others = [c for c in e.candidates if c != inst.p]
        return any(ok(system(sub_election(e, e.candidates - set(g)))) for g in subsets(others, inst.limit))
    if isinstance(inst, PartitionInstance):
        e = inst.election
        universe = [v.name for v in e.voters] if inst.kind is PartitionKind.PV else list(e.candidates)
        for mask in range(1 << len(universe)):
            first = frozenset(u for j, u in enumerate(universe) if mask >> j & 1)
            second = frozenset(universe) - first
            if ok(two_stage(system, e, inst.kind, first, second, inst.rule)):
                return True
        return False
    raise TypeError(type(inst).__name__)


def naive_plurality(e):
    if not e.candidates:
        return frozenset()
    tally = {c: 0 for c in e.candidates}
    for v in e.voters:
        tally[v.pref[0]] += 1
    best = max(tally.values())
    return frozenset(c for c, n in tally.items() if n == best)


def naive_alice(e, alice="0"):
    C = set(e.candidates)
    if len(C) == 1:
        return frozenset(C)
    if len(C) == 2:
        return frozenset({alice}) if alice in C else frozenset()
    if len(C) == 3 and alice in C:
        others = ordered(C - {alice})
        return frozenset({alice, others[0]})
    return frozenset()
