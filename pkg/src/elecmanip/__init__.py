"""Election manipulation, control and bribery: brute-force oracles,
search-to-decision reducers and systems whose search is SAT-hard."""
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
    ManipulationInstance,
    ManipVotes,
    Partition,
    PartitionInstance,
    apply_solution,
    goal_met,
    is_successful,
)
from elecmanip.bruteforce import BudgetExceeded, SearchBudget, bf_decide, bf_search
from elecmanip.core import Election, PartitionKind, TieRule, Voter, evaluate, run_two_stage
from elecmanip.fastpaths import decide, fast_decide, search, slow_search
from elecmanip.reducers import DecisionOracle, UnsupportedAction, brute_force_oracle, reduce_search
from elecmanip.systems import make_system

__version__ = "0.1.0"

__all__ = [
    "ACTIONS",
    "IMPOSSIBLE",
    "AddCandidatesInstance",
    "AddedSet",
    "AddVotersInstance",
    "Bribe",
    "BriberyInstance",
    "BudgetExceeded",
    "DecisionOracle",
    "DeleteCandidatesInstance",
    "DeletedSet",
    "DeleteVotersInstance",
    "Direction",
    "Election",
    "GoalMode",
    "Impossible",
    "ManipulationInstance",
    "ManipVotes",
    "Partition",
    "PartitionInstance",
    "PartitionKind",
    "SearchBudget",
    "TieRule",
    "UnsupportedAction",
    "Voter",
    "apply_solution",
    "bf_decide",
    "bf_search",
    "brute_force_oracle",
    "decide",
    "evaluate",
    "fast_decide",
    "goal_met",
    "is_successful",
    "make_system",
    "reduce_search",
    "run_two_stage",
    "search",
    "slow_search",
]
