"""Observation, diagnosis and control problems over regular languages.

The three decentralized problem classes are mutually reducible; this package
makes the equivalence executable: typed instances over deterministic finite
automata, the four constructive reductions, exact solvers for the decidable
fragments (with an honest bounded semi-decision where none exists), and
independent brute-force oracles over explicit finite languages that certify
it all in the test suite.
"""

from ._backend import backend_name
from .automata import (
    Alphabet,
    Automaton,
    FiniteLanguage,
    Word,
    accepts,
    are_equivalent,
    concat_letter,
    difference,
    embed,
    enumerate_upto,
    fresh_symbol,
    from_words,
    has_finite_language,
    intersect,
    inverse_project,
    is_empty,
    is_sublanguage,
    minimize,
    prefix_closure,
    project,
    project_word,
    shortest_word,
    union,
)
from .errors import (
    ContractError,
    FormatError,
    InputError,
    InvalidInstanceError,
    OdcError,
    OracleBudgetError,
)
from .oracle import oracle_solve_con, oracle_solve_dx, oracle_solve_obs
from .problems import (
    ConInstance,
    DxInstance,
    FusionRule,
    ObsInstance,
    ValidationReport,
    Violation,
    is_controllable,
    positive_for_m_steps,
    validate_con,
    validate_dx,
    validate_obs,
)
from .reductions import (
    con_to_obs,
    control_sublanguages,
    dx_to_obs,
    obs_to_con,
    obs_to_dx,
    strip_generated_suffix,
    verify_obs_to_con,
)
from .solvers import (
    DEFAULT_DEPTH,
    SolveReport,
    Verdict,
    solve_con,
    solve_con_direct,
    solve_dx,
    solve_dx_direct,
    solve_obs,
    synthesize_conjunctive,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Automaton",
    "ConInstance",
    "ContractError",
    "DEFAULT_DEPTH",
    "DxInstance",
    "FiniteLanguage",
    "FormatError",
    "FusionRule",
    "InputError",
    "InvalidInstanceError",
    "ObsInstance",
    "OdcError",
    "OracleBudgetError",
    "SolveReport",
    "ValidationReport",
    "Verdict",
    "Violation",
    "Word",
    "accepts",
    "are_equivalent",
    "backend_name",
    "con_to_obs",
    "concat_letter",
    "control_sublanguages",
    "difference",
    "dx_to_obs",
    "embed",
    "enumerate_upto",
    "fresh_symbol",
    "from_words",
    "has_finite_language",
    "intersect",
    "inverse_project",
    "is_controllable",
    "is_empty",
    "is_sublanguage",
    "minimize",
    "obs_to_con",
    "obs_to_dx",
    "oracle_solve_con",
    "oracle_solve_dx",
    "oracle_solve_obs",
    "positive_for_m_steps",
    "prefix_closure",
    "project",
    "project_word",
    "shortest_word",
    "solve_con",
    "solve_con_direct",
    "solve_dx",
    "solve_dx_direct",
    "solve_obs",
    "strip_generated_suffix",
    "synthesize_conjunctive",
    "union",
    "validate_con",
    "validate_dx",
    "validate_obs",
    "verify_obs_to_con",
]
