"""Liveness of free-choice Petri nets by siphons and traps, with an explicit-state oracle."""

from .commoner import (
    AnalysisReport,
    DeadWitness,
    PriorityPlan,
    build_priority_plan,
    check_commoner,
    run_priority_strategy,
    siphon_from_dead_marking,
)
from .errors import (
    ContractError,
    FiringError,
    GraphIncompleteError,
    InadmissibleNetError,
    NetError,
    ParseError,
    ResourceLimitError,
    StructuralError,
    TokenOverflowError,
)
from .net import Marking, Net, fire, fire_sequence, is_enabled, postset, preset, validate
from .netgen import GenParams, generate
from .reachability import ReachGraph, Verdict, dead_set, explore, live_set, liveness_oracle
from .structural import (
    brute_force_siphons,
    brute_force_traps,
    is_siphon,
    is_trap,
    maximal_siphon_within,
    maximal_trap_within,
    minimal_siphons,
)
from .textformat import format_net, parse

__version__ = "0.1.0"
