import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elecmanip.core import (
    Election,
    ElectionError,
    InvalidPartition,
    InvalidRestriction,
    PartitionKind,
    TieRule,
    Voter,
    apply_tie_rule,
    canonical_encode,
    evaluate,
    restrict_vote,
    run_two_stage,
    shortlex_compare,
    shortlex_sorted,
    sorted_candidates,
    validate_election,
)
from elecmanip.systems import AliceSystem, PluralitySystem, RandomTableSystem

import oracles
from strategies import bitstrings, elections

ALICE, BOB, CAROL = "0", "10", "11"
PC, RPC, PV = PartitionKind.PC, PartitionKind.RPC, PartitionKind.PV
TP, TE = TieRule.TP, TieRule.TE


# -- ordering --------------------------------------------------------------

@pytest.mark.parametrize("a,b,want", [("", "0", -1), ("01", "01", 0), ("10", "011", -1), ("1", "0", 1), ("00", "1", 1)])
def test_shortlex_compare_examples(a, b, want):
    assert shortlex_compare(a, b) == want


@given(bitstrings, bitstrings, bitstrings)
def test_shortlex_is_a_total_order(a, b, c):
    assert shortlex_compare(a, b) == -shortlex_compare(b, a)
    assert (shortlex_compare(a, b) == 0) == (a == b)
    if shortlex_compare(a, b) <= 0 and shortlex_compare(b, c) <= 0:
        assert shortlex_compare(a, c) <= 0


@given(st.lists(bitstrings, unique=True, max_size=8))
def test_shortlex_sort_matches_definition(names):
    assert shortlex_sorted(names) == oracles.ordered(names)
    assert list(sorted_candidates(frozenset(names))) == oracles.ordered(names)


# -- elections ---------------------------------------------------------------

def test_build_rejects_duplicate_candidate():
    with pytest.raises(ElectionError, match="'0'"):
        Election.build(["0", "1", "0"])


def test_build_rejects_duplicate_voter_name():
    with pytest.raises(ElectionError, match="duplicate voter name 'a'"):
        Election.build(["0", "1"], [("a", ["0", "1"]), ("a", ["1", "0"])])


def test_build_rejects_partial_preference():
    with pytest.raises(ElectionError):
        Election.build(["0", "1"], [("a", ["0"])])


def test_build_rejects_non_bitstring():
    with pytest.raises(ElectionError):
        Election.build(["0", "2"])


def test_empty_name_is_a_candidate():
    e = Election.build(["", "0"], [("a", ["0", ""])])
    validate_election(e)
    assert sorted_candidates(e.candidates) == ("", "0")


def test_empty_election_is_legal():
    e = Election.build([])
    assert evaluate(PluralitySystem(), e) == frozenset()


# -- restriction -------------------------------------------------------------

PREF = ("10", "0", "11")


def test_restrict_vote_examples():
    assert restrict_vote(PREF, {"0", "11"}) == ("0", "11")
    assert restrict_vote(PREF, set(PREF)) == PREF
    assert restrict_vote(PREF, set()) == ()


def test_restrict_vote_rejects_absent_candidate():
    with pytest.raises(InvalidRestriction):
        restrict_vote(PREF, {"0", "1"})


@given(st.permutations(["", "0", "1", "00", "01"]), st.data())
def test_restrict_vote_composes(pref, data):
    a = data.draw(st.sets(st.sampled_from(pref)))
    b = data.draw(st.sets(st.sampled_from(sorted(a)))) if a else set()
    assert restrict_vote(restrict_vote(pref, a), b) == restrict_vote(pref, b)


# -- tie rules ---------------------------------------------------------------

def test_apply_tie_rule_examples():
    assert apply_tie_rule({"0", "1"}, TP) == {"0", "1"}
    assert apply_tie_rule({"0", "1"}, TE) == frozenset()
    assert apply_tie_rule({"0"}, TE) == {"0"}
    assert apply_tie_rule(set(), TE) == frozenset()


# -- two-stage elections -------------------------------------------------------

ABC = Election(frozenset((ALICE, BOB, CAROL)))


def test_alice_rpc_alice_alone():
    assert run_two_stage(AliceSystem(), ABC, RPC, ({ALICE}, {BOB, CAROL}), TP) == {ALICE}


def test_alice_pc_all_byes():
    assert run_two_stage(AliceSystem(), ABC, PC, (set(), ABC.candidates), TP) == {ALICE, BOB}


def test_pc_orientation_matters():
    # round one {Alice, Bob}: Alice wins; final {Alice, Carol}: Alice
    assert run_two_stage(AliceSystem(), ABC, PC, ({ALICE, BOB}, {CAROL}), TP) == {ALICE}
    # round one {Carol}: Carol wins; final {Alice, Bob, Carol}
    assert run_two_stage(AliceSystem(), ABC, PC, ({CAROL}, {ALICE, BOB}), TP) == {ALICE, BOB}


def test_non_partition_is_rejected():
    with pytest.raises(InvalidPartition):
        run_two_stage(AliceSystem(), ABC, RPC, ({ALICE}, {BOB}), TP)
    with pytest.raises(InvalidPartition):
        run_two_stage(AliceSystem(), ABC, RPC, ({ALICE, BOB}, {BOB, CAROL}), TP)


SYSTEMS = [AliceSystem(), PluralitySystem(), RandomTableSystem(3), RandomTableSystem(11)]


@given(elections(min_candidates=1), st.sampled_from(SYSTEMS))
def test_pc_empty_first_round_is_plain_election(e, system):
    assert run_two_stage(system, e, PC, (frozenset(), e.candidates), TP) == evaluate(system, e)
    assert run_two_stage(system, e, PC, (frozenset(), e.candidates), TE) == evaluate(system, e)


@given(elections(min_candidates=1, max_voters=3), st.sampled_from(SYSTEMS), st.sampled_from([PC, RPC, PV]),
       st.sampled_from([TP, TE]), st.data())
def test_two_stage_matches_reference(e, system, kind, rule, data):
    universe = sorted(e.voter_names) if kind is PV else sorted(e.candidates)
    first = frozenset(data.draw(st.sets(st.sampled_from(universe)))) if universe else frozenset()
    second = frozenset(universe) - first
    got = run_two_stage(system, e, kind, (first, second), rule)
    assert got == oracles.two_stage(system, e, kind, first, second, rule)
    assert got <= e.candidates


# -- canonical encoding --------------------------------------------------------

def test_encoding_ignores_voter_names():
    a = Election(frozenset("01"), (Voter("x", ("0", "1")), Voter("y", ("1", "0"))))
    b = Election(frozenset("01"), (Voter("q", ("1", "0")), Voter("r", ("0", "1"))))
    assert canonical_encode(a) == canonical_encode(b)


def test_encoding_separates_candidate_sets():
    assert canonical_encode(Election(frozenset({"0"}))) != canonical_encode(Election(frozenset({"1"})))
    assert canonical_encode(Election(frozenset({"", "0"}))) != canonical_encode(Election(frozenset({"0"})))


def test_empty_election_sentinel():
    assert canonical_encode(Election(frozenset())) == b"C:|V:"


def test_encoding_is_injective_on_small_space():
    seen = {}
    cands = ["", "0", "1"]
    for r in range(len(cands) + 1):
        for C in itertools.combinations(cands, r):
            orders = list(itertools.permutations(C))
            for n in range(3):
                for ballots in itertools.combinations_with_replacement(orders, n):
                    e = Election(frozenset(C), tuple(Voter(f"v{j}", b) for j, b in enumerate(ballots)))
                    key = canonical_encode(e)
                    sig = (frozenset(C), tuple(sorted(ballots)))
                    assert seen.setdefault(key, sig) == sig
