import itertools
import json

from hypothesis import given
from hypothesis import strategies as st

from elecmanip.actions import Partition, apply_solution
from elecmanip.core import Election, PartitionKind, TieRule
from elecmanip.systems import E4, E5, E6, AliceSystem, PluralitySystem, RandomTableSystem
from elecmanip.theorems import (
    VerificationReport,
    characterization_decide,
    collapse_values,
    default_collapse_systems,
    election_space,
    hardness_subelections,
    separation_instances,
    verify_collapse,
    verify_separation,
)

import oracles
from strategies import elections

ALICE, BOB, CAROL = "0", "10", "11"


def test_election_space_size():
    # |C| = 1: 1 + 1 + 1; |C| = 2: 1 + 2 + 3; |C| = 3: 1 + 6 + 21, times the subsets of each size
    space = list(election_space())
    assert len(space) == 3 * 3 + 3 * 6 + 1 * 28
    assert len({(e.candidates, tuple(sorted(v.pref for v in e.voters))) for e in space}) == len(space)


def test_characterization_examples():
    abc = Election(frozenset((ALICE, BOB, CAROL)))
    assert not characterization_decide(AliceSystem(), abc, ALICE, TieRule.TP)
    # {Alice, Bob, Carol} itself has winners {Alice, Bob}: Alice is not the unique winner
    assert characterization_decide(AliceSystem(), abc, ALICE, TieRule.TE)


def _naive_characterization(system, e, p, rule):
    others = sorted(e.candidates - {p})
    for sub in oracles.subsets(others):
        w = system(oracles.sub_election(e, {p, *sub}))
        if (p not in w) if rule is TieRule.TP else (w != {p}):
            return True
    return False


@given(elections(min_candidates=1, max_candidates=4, max_voters=2), st.integers(0, 40), st.sampled_from([TieRule.TP, TieRule.TE]))
def test_characterization_matches_naive(e, seed, rule):
    system = RandomTableSystem(seed)
    for p in e.candidates:
        assert characterization_decide(system, e, p, rule) == _naive_characterization(system, e, p, rule)


@given(elections(min_candidates=1, max_candidates=3, max_voters=2), st.integers(0, 500))
def test_collapse_holds_for_random_systems(e, seed):
    system = RandomTableSystem(seed)
    for p in e.candidates:
        v = collapse_values(system, e, p)
        assert v["dc_rpc_tp"] == v["dc_pc_tp"] == v["char_tp"]
        assert v["dc_rpc_te"] == v["dc_pc_te"] == v["dc_rpc_te_unique"] == v["dc_pc_te_unique"] == v["char_te"]


def test_verify_collapse_small_sweep():
    report = verify_collapse([AliceSystem(), PluralitySystem(), RandomTableSystem(1)])
    assert report.verified
    assert report.systems_checked == 3
    assert report.instances_checked == 3 * sum(len(e.candidates) for e in election_space())


def test_hardness_subelections_cover_the_partition_systems():
    pairs = hardness_subelections()
    assert [type(s) for s, _ in pairs] == [E4, E4, E5, E5, E6, E6]
    assert verify_collapse(pairs).verified


def test_default_collapse_systems():
    systems = default_collapse_systems(5)
    assert sum(isinstance(s, RandomTableSystem) for s in systems) == 5
    assert AliceSystem() in systems and PluralitySystem() in systems


def test_separation():
    report = verify_separation()
    assert report.verified
    assert report.values[0]["dc_pc_tp_unique"] is True
    assert report.values[0]["dc_rpc_tp_unique"] is False
    pc, _ = separation_instances()
    w = apply_solution(pc, Partition(frozenset(), pc.election.candidates), AliceSystem())
    assert w == {ALICE, BOB}


def test_separation_by_hand():
    # no run-off partition leaves Alice out of a unique win; PC with all byes does
    abc = frozenset((ALICE, BOB, CAROL))
    e = Election(abc)
    rpc_hits, pc_hits = [], []
    for r in range(4):
        for first in itertools.combinations(sorted(abc), r):
            first = frozenset(first)
            for kind, hits in ((PartitionKind.RPC, rpc_hits), (PartitionKind.PC, pc_hits)):
                w = oracles.two_stage(AliceSystem(), e, kind, first, abc - first, TieRule.TP)
                if w != {ALICE}:
                    hits.append(first)
    assert rpc_hits == [] and frozenset() in pc_hits


def test_report_serializes():
    r = VerificationReport(1, 2, [], [{"x": True}])
    assert json.loads(r.to_json())["verified"] is True
    merged = r.merge(VerificationReport(1, 1, [{"bad": 1}]))
    assert not merged.verified and merged.instances_checked == 3
