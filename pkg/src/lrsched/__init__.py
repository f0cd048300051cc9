"""Single-machine min-sum scheduling via due-date covering.

Solvers for minimizing sums of per-job, non-decreasing completion-time costs
on one machine: a primal-dual procedure with explicit dual variables, a
local-ratio reformulation with a certified lower bound, its release-date /
preemptive generalization, and an exact brute-force oracle for verification.
"""

from .demand import (
    DemandPoint,
    demand,
    demand_rd,
    demand_set,
    edd_schedule,
    edd_schedule_preemptive,
    is_feasible,
    max_demand_point,
    truncated_ptime,
    truncated_ptime_rd,
)
from .factory import (
    COST_MODELS,
    counterexample,
    instance_from_dict,
    instance_to_dict,
    properize,
    random_instance,
    read_instance,
    write_instance,
)
from .local_ratio import (
    DecompositionStep,
    InvariantReport,
    LevelBoundReport,
    ModelCosts,
    SolveResult,
    build_model_costs,
    check_level_bound,
    compute_alpha,
    local_ratio_solve,
    select_tight_pair,
    verify_solve_invariants,
)
from .local_ratio_rd import (
    build_model_costs_rd,
    check_level_bound_rd,
    local_ratio_solve_rd,
    verify_solve_invariants_rd,
)
from .model import (
    INFINITY,
    Cost,
    CostFunction,
    InfeasibleAssignmentError,
    Instance,
    InvalidInstanceError,
    Job,
    Schedule,
    UnboundedAlphaError,
    ValidationReport,
    as_cost,
    format_cost,
    is_infinite,
    total_cost,
    validate_instance,
)
from .oracle import (
    ExhaustiveReport,
    OracleResult,
    brute_force_opt,
    exhaustive_duedate_check,
    smith_rule_cost,
)
from .primal_dual import (
    CoverageReport,
    DualVariable,
    PDIteration,
    PDResult,
    check_dual_coverage,
    check_dual_feasibility,
    dual_objective,
    primal_dual_solve,
)

__version__ = "0.1.0"
