"""Schulze elections: winners, manipulation, electoral control, reduction gadgets."""

from .batch import SearchBudgetExceeded
from .cnf import CnfFormula, parse_dimacs, to_dimacs
from .control import ControlAction, ControlInstance, ControlResult, Family, apply, decide_bruteforce, evaluate
from .control_poly import characterization_subset, dc_pc, dc_pc_te, dc_pc_tp
from .election import (
    Election,
    PairMatrix,
    ValidationError,
    compute_advantage,
    compute_net_advantage,
    strongest_paths,
    winners,
)
from .enums import Goal, TieModel, WinnerModel
from .manipulation import (
    GapNotFound,
    GapSearchConfig,
    ManipulationInstance,
    decide_identical,
    find_unique_winner_gap,
    single_manipulator_feasibility,
)
from .manipulation import decide_bruteforce as decide_manipulation
from .mcgarvey import synthesize, synthesize_relations
from .ppvc import PpvcInstance, dc_candidates_via_ppvc, ppvc_bruteforce
from .reductions import GeneratedInstance, generate, verify_reduction

__all__ = [
    "CnfFormula", "ControlAction", "ControlInstance", "ControlResult", "Election", "Family",
    "GapNotFound", "GapSearchConfig", "GeneratedInstance", "Goal", "ManipulationInstance",
    "PairMatrix", "PpvcInstance", "SearchBudgetExceeded", "TieModel", "ValidationError",
    "WinnerModel", "apply", "characterization_subset", "compute_advantage",
    "compute_net_advantage", "dc_candidates_via_ppvc", "dc_pc", "dc_pc_te", "dc_pc_tp",
    "decide_bruteforce", "decide_identical", "decide_manipulation", "evaluate",
    "find_unique_winner_gap", "generate", "parse_dimacs", "ppvc_bruteforce",
    "single_manipulator_feasibility", "strongest_paths", "synthesize", "synthesize_relations",
    "to_dimacs", "verify_reduction", "winners",
]
