import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elecmanip.actions import (
    DESTRUCTIVE,
    IMPOSSIBLE,
    UNIQUE,
    AddVotersInstance,
    BriberyInstance,
    DeleteCandidatesInstance,
    DeletedSet,
    DeleteVotersInstance,
    InvalidInstance,
    ManipulationInstance,
    ManipVotes,
    Partition,
    PartitionInstance,
    is_successful,
    with_limit,
)
from elecmanip.bd import formula, satisfies
from elecmanip.bruteforce import (
    BudgetExceeded,
    SearchBudget,
    bf_decide,
    bf_search,
    enumerate_preferences,
    subsets_by_size,
)
from elecmanip.core import Election, PartitionKind, TieRule, Voter
from elecmanip.generators import (
    REDUCIBLE_FAMILIES,
    random_reducible_instance,
    random_vote_instance,
    small_names,
)
from elecmanip.systems import (
    E1,
    AliceSystem,
    PluralitySystem,
    RandomTableSystem,
    Target,
    build_hardness_instance,
    extract_assignment,
)

import oracles

ALICE, BOB, CAROL = "0", "10", "11"
ABC = Election(frozenset((ALICE, BOB, CAROL)))


def test_enumerate_preferences_examples():
    assert list(enumerate_preferences({"0"})) == [("0",)]
    assert list(enumerate_preferences({"0", "1"})) == [("0", "1"), ("1", "0")]
    four = list(enumerate_preferences(set(small_names(4))))
    assert len(four) == len(set(four)) == 24
    assert four[0] == ("0", "1", "00", "01")


def test_enumerate_preferences_bound():
    with pytest.raises(BudgetExceeded):
        enumerate_preferences(set(small_names(6)))
    assert len(list(enumerate_preferences(set(small_names(6)), SearchBudget(max_candidates=6)))) == 720


def test_subsets_by_size_order():
    assert [sorted(s) for s in subsets_by_size(["a", "b", "c"], 2)] == [[], ["a"], ["b"], ["c"], ["a", "b"], ["a", "c"], ["b", "c"]]


def test_noop_suffices():
    e = Election.build(["0", "1"], [("a", ["0", "1"])])
    inst = DeleteVotersInstance(e, "0", 0)
    assert bf_decide(inst, PluralitySystem())
    assert bf_search(inst, PluralitySystem()) == DeletedSet(frozenset())


def test_separation_instances():
    rpc = PartitionInstance(ABC, ALICE, PartitionKind.RPC, TieRule.TP, DESTRUCTIVE, UNIQUE)
    pc = PartitionInstance(ABC, ALICE, PartitionKind.PC, TieRule.TP, DESTRUCTIVE, UNIQUE)
    assert not bf_decide(rpc, AliceSystem())
    assert bf_search(rpc, AliceSystem()) is IMPOSSIBLE
    assert bf_decide(pc, AliceSystem())
    sol = bf_search(pc, AliceSystem())
    assert sol == Partition(frozenset(), ABC.candidates)  # first in canonical order
    assert is_successful(pc, sol, AliceSystem())


def test_e1_hardness_search_yields_satisfying_vote():
    F = formula(2, [1, -2], [2])
    inst = build_hardness_instance(Target.E1_MANIP, F)
    budget = SearchBudget(max_candidates=10**4, max_steps=10**6)
    sol = bf_search(inst, E1(), budget)
    assert isinstance(sol, ManipVotes)
    assert satisfies(F, extract_assignment(Target.E1_MANIP, inst, sol))


def test_budget_errors_are_not_answers():
    e = Election.build(small_names(6))
    inst = PartitionInstance(e, "0", PartitionKind.RPC, TieRule.TP)
    with pytest.raises(BudgetExceeded):
        bf_decide(inst, PluralitySystem())
    big = Election.build(["0", "1"], [(f"v{j}", ["0", "1"]) for j in range(6)])
    with pytest.raises(BudgetExceeded):
        bf_decide(DeleteVotersInstance(big, "1", 2), PluralitySystem())
    # bounds only bite on dimensions that are enumerated
    assert bf_decide(DeleteVotersInstance(big, "0", 0), PluralitySystem())


def test_step_cap():
    C = frozenset(small_names(5))
    inst = ManipulationInstance(C, (), ("m",), "01")
    with pytest.raises(BudgetExceeded):
        bf_decide(inst, AliceSystem(), SearchBudget(max_steps=3))


def test_invalid_instance_is_rejected():
    e = Election.build(["0", "1"])
    with pytest.raises(InvalidInstance):
        bf_decide(DeleteCandidatesInstance(e, "11", 0), PluralitySystem())


SYSTEMS = [PluralitySystem(), AliceSystem()] + [RandomTableSystem(s) for s in range(6)]


def _random_instance(rng):
    if rng.random() < 0.25:
        return random_vote_instance(rng)
    return random_reducible_instance(rng, rng.choice(REDUCIBLE_FAMILIES))


@given(st.integers(0, 10**6), st.sampled_from(SYSTEMS))
def test_bf_matches_naive_existential(seed, system):
    inst = _random_instance(random.Random(seed))
    sol = bf_search(inst, system)
    assert (sol is not IMPOSSIBLE) == oracles.naive_decide(inst, system)
    if sol is not IMPOSSIBLE:
        assert is_successful(inst, sol, system)


@given(st.integers(0, 10**6), st.sampled_from(SYSTEMS))
def test_add_delete_monotone_in_limit(seed, system):
    rng = random.Random(seed)
    fam = rng.choice([f for f in REDUCIBLE_FAMILIES if f[0] in ("add_voters", "delete_voters", "add_candidates", "delete_candidates")])
    inst = random_reducible_instance(rng, fam)
    if bf_decide(inst, system):
        assert bf_decide(with_limit(inst, inst.limit + 1), system)


def test_bribery_uses_shortlex_voter_order():
    e = Election.build(["0", "1"], [("b", ["0", "1"]), ("a", ["0", "1"])])
    sol = bf_search(BriberyInstance(e, "1", 1), PluralitySystem())
    assert set(sol.votes) == {"a"}


def test_add_voters_prefers_smaller_sets():
    pool = (Voter("w2", ("1", "0")), Voter("w1", ("1", "0")))
    inst = AddVotersInstance(frozenset("01"), (Voter("v", ("0", "1")),), pool, "1", 2)
    sol = bf_search(inst, PluralitySystem())
    assert sol.names == {"w1"}
