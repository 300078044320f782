"""Seeded random formulas, elections and action instances."""
from __future__ import annotations

import itertools
import random
from dataclasses import replace

from elecmanip.actions import (
    CONSTRUCTIVE,
    DESTRUCTIVE,
    NONUNIQUE,
    UNIQUE,
    AddCandidatesInstance,
    AddVotersInstance,
    BriberyInstance,
    DeleteCandidatesInstance,
    DeleteVotersInstance,
    ManipulationInstance,
    PartitionInstance,
)
from elecmanip.bd import CnfFormula, find_satisfying, formula
from elecmanip.core import Election, PartitionKind, TieRule, Voter, sorted_candidates

# the fourteen reducible action families: (action, direction or partition shape)
REDUCIBLE_FAMILIES = (
    ("add_voters", CONSTRUCTIVE),
    ("add_voters", DESTRUCTIVE),
    ("delete_voters", CONSTRUCTIVE),
    ("delete_voters", DESTRUCTIVE),
    ("add_candidates", CONSTRUCTIVE),
    ("add_candidates", DESTRUCTIVE),
    ("add_candidates_unlimited", CONSTRUCTIVE),
    ("add_candidates_unlimited", DESTRUCTIVE),
    ("delete_candidates", CONSTRUCTIVE),
    ("delete_candidates", DESTRUCTIVE),
    ("partition", (PartitionKind.PC, TieRule.TP)),
    ("partition", (PartitionKind.PC, TieRule.TE)),
    ("partition", (PartitionKind.RPC, TieRule.TP)),
    ("partition", (PartitionKind.RPC, TieRule.TE)),
)


def family_label(family) -> str:
    action, shape = family
    if action == "partition":
        kind, rule = shape
        return f"dc-{kind.value.lower()}-{rule.value.lower()}"
    return f"{action}:{shape.value}"


def small_names(n: int, with_empty: bool = False) -> list:
    """The first ``n`` bitstrings in shortlex order (skipping the empty one
    unless asked)."""
    out = [""] if with_empty else []
    length = 1
    while len(out) < n:
        for bits in itertools.product("01", repeat=length):
            out.append("".join(bits))
            if len(out) == n:
                break
        length += 1
    return out


# -- formulas --------------------------------------------------------------

def random_formula(rng: random.Random, d: int, m: int = None, max_width: int = 3) -> CnfFormula:
    """Random CNF on exactly ``d`` variables (each variable occurs)."""
    m = m if m is not None else rng.randint(1, 2 * d + 1)
    clauses = []
    for _ in range(m):
        width = rng.randint(1, min(max_width, d))
        vs = rng.sample(range(1, d + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    used = {abs(l) for c in clauses for l in c}
    for v in range(1, d + 1):
        if v not in used:
            clauses.append((v if rng.random() < 0.5 else -v,))
    return CnfFormula(d, tuple(clauses))


def random_satisfiable_formula(rng: random.Random, d: int, **kw) -> CnfFormula:
    while True:
        f = random_formula(rng, d, **kw)
        if find_satisfying(f) is not None:
            return f


def worst_case_formula(d: int) -> CnfFormula:
    """All variables equal and at least one true: the only model is all-ones,
    which an ascending scan of assignments reaches last."""
    clauses = [(i, -j) for i in range(1, d + 1) for j in range(1, d + 1) if i != j]
    return formula(d, *clauses, tuple(range(1, d + 1)))


def small_formula_corpus(max_d: int = 2) -> list:
    """Every satisfiable formula on ``d <= max_d`` variables (``max_d <= 2``)
    built from distinct non-tautological clauses that mention every variable."""
    out = []
    for d in range(1, max_d + 1):
        clauses = []
        for r in range(1, d + 1):
            for vs in itertools.combinations(range(1, d + 1), r):
                for signs in itertools.product((1, -1), repeat=r):
                    clauses.append(tuple(s * v for s, v in zip(signs, vs)))
        for r in range(1, len(clauses) + 1):
            for combo in itertools.combinations(clauses, r):
                if {abs(l) for c in combo for l in c} != set(range(1, d + 1)):
                    continue
                f = CnfFormula(d, combo)
                if find_satisfying(f) is not None:
                    out.append(f)
    return out


def formula_corpus(n: int, max_d: int = 4, seed: int = 0) -> list:
    """At least ``n`` distinct satisfiable formulas with ``d <= max_d``: the
    exhaustive small corpus topped up with seeded random ones."""
    out = list(dict.fromkeys(small_formula_corpus(min(max_d, 2))))
    seen = set(out)
    rng = random.Random(seed)
    while len(out) < n:
        f = random_satisfiable_formula(rng, rng.randint(1, max_d))
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


# -- elections -------------------------------------------------------------

def random_pref(rng: random.Random, cands) -> tuple:
    p = list(sorted_candidates(frozenset(cands)))
    rng.shuffle(p)
    return tuple(p)


def random_voters(rng: random.Random, cands, n: int, prefix: str = "v") -> tuple:
    return tuple(Voter(f"{prefix}{j + 1}", random_pref(rng, cands)) for j in range(n))


def random_election(rng: random.Random, universe=None, max_candidates: int = 4, max_voters: int = 3) -> Election:
    universe = universe or small_names(8)
    k = rng.randint(1, min(max_candidates, len(universe)))
    cands = frozenset(rng.sample(list(universe), k))
    return Election(cands, random_voters(rng, cands, rng.randint(0, max_voters)))


def random_reducible_instance(rng: random.Random, family, universe=None):
    """Random in-budget instance of one of the fourteen reducible families."""
    action, shape = family
    universe = list(universe or small_names(8))
    goal = UNIQUE if rng.random() < 0.25 else NONUNIQUE

    if action == "add_voters":
        k = rng.randint(1, min(4, len(universe)))
        C = frozenset(rng.sample(universe, k))
        reg = random_voters(rng, C, rng.randint(0, 3))
        pool = random_voters(rng, C, rng.randint(0, 4), prefix="w")
        return AddVotersInstance(C, reg, pool, rng.choice(sorted(C)), rng.randint(0, 4), shape, goal)

    if action == "delete_voters":
        e = random_election(rng, universe, 4, 5)
        return DeleteVotersInstance(e, rng.choice(sorted(e.candidates)), rng.randint(0, 4), shape, goal)

    if action in ("add_candidates", "add_candidates_unlimited"):
        k = rng.randint(2, min(5, len(universe)))
        names = rng.sample(universe, k)
        n_base = rng.randint(1, min(3, k - 1))
        C, A = frozenset(names[:n_base]), frozenset(names[n_base:])
        voters = random_voters(rng, C | A, rng.randint(0, 3))
        limit = None if action == "add_candidates_unlimited" else rng.randint(0, len(A))
        return AddCandidatesInstance(C, A, voters, rng.choice(sorted(C)), limit, shape, goal)

    if action == "delete_candidates":
        e = random_election(rng, universe, 5, 3)
        return DeleteCandidatesInstance(e, rng.choice(sorted(e.candidates)), rng.randint(0, 4), shape, goal)

    kind, rule = shape
    e = random_election(rng, universe, 5, 3)
    if rule is TieRule.TP:
        goal = NONUNIQUE
    return PartitionInstance(e, rng.choice(sorted(e.candidates)), kind, rule, DESTRUCTIVE, goal)


def random_vote_instance(rng: random.Random, universe=None):
    """Random small manipulation or bribery instance (for CLI sampling)."""
    e = random_election(rng, universe, 4, 3)
    p = rng.choice(sorted(e.candidates))
    direction = rng.choice((CONSTRUCTIVE, DESTRUCTIVE))
    if rng.random() < 0.5:
        return ManipulationInstance(e.candidates, e.voters, ("m1",), p, direction)
    return BriberyInstance(e, p, rng.randint(0, 2), direction)


def hardness_universe(target, d_formulas=None) -> list:
    """Candidate names of the smallest hardness instances of ``target``."""
    from elecmanip.systems.hardness import Target, build_hardness_instance

    target = Target(target)
    if d_formulas is None:
        if target is Target.E3_PV:
            d_formulas = (formula(2, [1, 2]), formula(2, [-1, -2]))
        else:
            d_formulas = (formula(1, [1]), formula(1, [-1]))
    out = []
    for F in d_formulas:
        inst = build_hardness_instance(target, F)
        C = inst.candidates if hasattr(inst, "candidates") else inst.election.candidates
        out.extend(sorted_candidates(C))
    return list(dict.fromkeys(out))


def relabel_voters(rng: random.Random, e: Election) -> Election:
    """Same ballots under fresh, shuffled voter names."""
    names = [f"r{j}" for j in range(len(e.voters))]
    rng.shuffle(names)
    voters = [Voter(n, v.pref) for n, v in zip(names, e.voters)]
    rng.shuffle(voters)
    return e.with_voters(voters)


def with_p(inst, p):
    return replace(inst, p=p)
