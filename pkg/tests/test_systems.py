import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elecmanip.bd import BdSet, craft_vote, encode_formula, formula
from elecmanip.core import Election, Voter
from elecmanip.generators import hardness_universe, random_election, relabel_voters
from elecmanip.systems import (
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    AliceSystem,
    PluralitySystem,
    RandomTableSystem,
    make_system,
    system_name,
)
from elecmanip.systems import names

import oracles
from strategies import elections

V1 = formula(1, [1])
X = encode_formula(V1)
EQ2 = formula(2, [1, -2], [-1, 2])
X2 = encode_formula(EQ2)
B = BdSet()


# -- baselines ------------------------------------------------------------------

@given(elections())
def test_plurality_matches_tally(e):
    assert PluralitySystem()(e) == oracles.naive_plurality(e)


@given(elections(max_candidates=5))
def test_alice_matches_definition(e):
    assert AliceSystem()(e) == oracles.naive_alice(e)


def test_alice_examples():
    abc = Election(frozenset(("0", "10", "11")))
    assert AliceSystem()(abc) == {"0", "10"}
    assert AliceSystem()(Election(frozenset(("10", "11")))) == frozenset()
    assert AliceSystem()(Election(frozenset(("11",)))) == {"11"}


@given(elections(), st.integers(0, 50))
def test_random_table_is_a_function_of_the_election(e, seed):
    sys = RandomTableSystem(seed)
    w = sys(e)
    assert w <= e.candidates
    assert w == sys(relabel_voters(random.Random(seed), e))


def test_random_tables_differ():
    e = Election.build(["0", "1", "00", "01"])
    assert len({RandomTableSystem(s)(e) for s in range(40)}) > 4


def test_make_system():
    assert make_system("E4") == E4()
    assert make_system("random:7") == RandomTableSystem(7)
    assert system_name(make_system("alice")) == "alice"
    assert make_system("e3").bset == BdSet(min_vars=2)
    with pytest.raises(ValueError, match="unknown system"):
        make_system("borda")
    with pytest.raises(ValueError):
        make_system("random:x")


# -- name grammars ------------------------------------------------------------------

@pytest.mark.parametrize("k,i,a", [(1, 1, 0), (2, 3, 1), (8, 100, 1)])
def test_counter_names_round_trip(k, i, a):
    n = names.bare_name(k, i, a)
    assert len(n) == 5 * k
    assert names.parse_bare(n, k) == (i, a)
    p = names.pair_name("1" * k, i, a)
    assert len(p) == 4 + 6 * k
    assert names.parse_pair(p) == ("1" * k, i, a)


def test_counter_overflow():
    with pytest.raises(ValueError):
        names.counter(1, 16, 0)
    with pytest.raises(ValueError):
        names.counter(1, 0, 0)


def test_parsers_reject_strays():
    assert names.parse_bare("00000", 1) is None  # counter 0 names no variable
    assert names.parse_pair("0" * 10) is None
    assert names.parse_core("1") is None
    assert names.parse_core("0110") == "11"


def test_one_per_variable():
    assert names.one_per_variable([(2, 1), (1, 0)], 2) == (False, True)
    assert names.one_per_variable([(1, 1), (1, 0)], 2) is None
    assert names.one_per_variable([(1, 1)], 2) is None
    assert names.covers_all_pairs([(1, 0), (1, 1)], 1)


def test_index_names_spell_the_puzzle():
    x = "0110"
    ns = names.index_names(x)
    assert [n[-1] for n in ns] == list(x)
    assert ns == oracles.ordered(ns)


# -- constructed systems: worked elections ------------------------------------------------

def _index_election(x, votes):
    cands = names.index_names(x)
    C = frozenset(cands)
    return C, Election(C, tuple(Voter(f"v{j}", craft_vote(C, top, bits)) for j, (top, bits) in enumerate(votes)))


def test_e1_winner_is_top_of_a_solver():
    C, e = _index_election(X, [])
    top = sorted(C)[0]
    bits = "1".ljust(len(C) // 2 - 1, "0")
    e = Election(C, (Voter("a", craft_vote(C, top, bits)),))
    assert E1()(e) == {top}
    bad = Election(C, (Voter("a", craft_vote(C, top, "0" * (len(C) // 2 - 1))),))
    assert E1()(bad) == frozenset()
    assert E1()(Election(frozenset("01"))) == frozenset()  # puzzle not in B


def test_e2_everyone_unless_solved():
    C, _ = _index_election(X, [])
    top = sorted(C)[0]
    n = len(C) // 2 - 1
    assert E2()(Election(C, (Voter("a", craft_vote(C, top, "0" * n)),))) == C
    assert E2()(Election(C, (Voter("a", craft_vote(C, top, "1" * n)),))) == frozenset()


def test_e3_cases():
    e3 = E3()
    assert e3(Election(frozenset())) == frozenset()
    assert e3(Election(frozenset(("0", "1")))) == {"1"}
    cands = names.index_names(X2)
    C = frozenset(cands)
    first, last = {cands[0]}, {cands[-1]}
    vote = lambda name, top: Voter(name, (top, *(c for c in cands if c != top)))  # noqa: E731
    assert e3(Election(C)) == first  # no voters
    assert e3(Election(C, (vote("a", cands[0]), vote("b", cands[0])))) == first  # repeated top
    # tops c1, c3: x1=0, x2=0 satisfies x1 <-> x2
    assert e3(Election(C, (vote("a", cands[0]), vote("b", cands[2])))) == first
    # tops c1, c4: x1=0, x2=1 fails, and so does its complement
    assert e3(Election(C, (vote("a", cands[0]), vote("b", cands[3])))) == last


def test_e4_cases():
    core = names.core_name(X)
    p10, p11 = names.pair_name(X, 1, 0), names.pair_name(X, 1, 1)
    assert E4()(Election(frozenset((core, p11)))) == {core}
    # v1=0 fails, but its complement satisfies
    assert E4()(Election(frozenset((core, p10)))) == {core}
    assert E4()(Election(frozenset((core, p10, p11)))) == {p10, p11}
    assert E4()(Election(frozenset((p10, p11)))) == {p10, p11}  # no core: everyone


def test_e5_cases():
    a, b, c = names.A_NAME, names.B_NAME, names.C_NAME
    p10, p11 = names.pair_name(X, 1, 0), names.pair_name(X, 1, 1)
    e5 = E5()
    assert e5(Election(frozenset((a, b, c)))) == {b, c}
    assert e5(Election(frozenset((a, b, p11)))) == {a}
    assert e5(Election(frozenset((a, c, p10)))) == {a, c}
    assert e5(Election(frozenset((a, b)))) == frozenset()
    assert e5(Election(frozenset((b, p10)))) == {b}
    assert e5(Election(frozenset((a, p10)))) == frozenset()
    assert e5(Election(frozenset((c,)))) == frozenset()


def test_e6_cases():
    x0, x1 = X + "0", X + "1"
    k = len(X)
    bare = [names.bare_name(k, 1, 0), names.bare_name(k, 1, 1)]
    e6 = E6()
    assert e6(Election(frozenset((x0, x1)))) == {x0}
    assert e6(Election(frozenset((x0, bare[1])))) == {x0}
    assert e6(Election(frozenset((x0, bare[0])))) == frozenset()
    assert e6(Election(frozenset((x1, bare[0])))) == {x1}
    assert e6(Election(frozenset((x0, x1, *bare)))) == frozenset()
    assert e6(Election(frozenset(("0", "1")))) == frozenset()


# -- structural laws -------------------------------------------------------------

CONSTRUCTED = [E1(), E2(), E3(), E4(), E5(), E6()]
TARGET_OF = {"e1": "e1-bribery", "e2": "e2-manip", "e3": "e3-pv", "e4": "e4-pc-tp", "e5": "e5-pc-te", "e6": "e6-rpc"}


@pytest.mark.parametrize("system", CONSTRUCTED, ids=lambda s: s.name)
def test_winners_are_candidates_and_anonymous(system):
    rng = random.Random(11)
    universe = hardness_universe(TARGET_OF[system.name])
    for _ in range(300):
        e = random_election(rng, universe, 5, 3)
        w = system(e)
        assert w <= e.candidates
        assert system(relabel_voters(rng, e)) == w


def test_e3_single_winner_and_e6_at_most_one():
    rng = random.Random(5)
    for _ in range(500):
        e3e = random_election(rng, hardness_universe("e3-pv"), 6, 4)
        if e3e.candidates:
            assert len(E3()(e3e)) == 1
        assert len(E6()(random_election(rng, hardness_universe("e6-rpc"), 5, 2))) <= 1
