"""Cyclic sums of Diananda type: values, floors, ceilings, witnesses, minimizers.

The package evaluates the normalized cyclic sums (k/n) * sum_i x_i / (x_{i+1}
+ ... + x_{i+k}) on the nonnegative cone, reproduces their closed-form floor
k (2^{1/k} - 1), solves the common-tangent system whose y-intercept gamma_k
caps the large-n infimum, builds sparse-geometric witness vectors driving the
normalized sum below gamma_k + eps, and cross-checks a log-coordinate
minimizer against a brute-force grid oracle.
"""

from .errors import (
    AmbiguousBracketError,
    CapacityError,
    CyclicBoundsError,
    DegenerateFamilyError,
    DomainError,
    InvalidSpecError,
    NoBracketError,
    ShapeError,
    SolverError,
    WindowError,
)
from .funcs import (
    INFINITY,
    ReferenceLowerBounds,
    eval_f,
    eval_f_derivative,
    eval_g,
    eval_g_derivative,
    eval_p,
    lower_bound_theorem2,
    reference_lower_bounds,
)
from .sums import (
    BlockDiagnostics,
    CyclicVector,
    as_cyclic_vector,
    baston_sum,
    block_diagnostics,
    diananda_sum,
    interval_sum,
    replicate,
    vector_from_json,
    vector_from_lines,
    vector_to_json,
    vector_to_lines,
    zero_insert,
)
from .tangent import TangentSolution, eval_minorant, gamma_table, solve_tangent
from .witness import (
    WitnessReport,
    WitnessSpec,
    build_witness,
    plan_witness,
    witness_value_and_bound,
)
from .optimize import (
    MinimizationResult,
    MinimizeConfig,
    grid_oracle,
    gradient,
    minimize,
)
from .bounds import (
    BoundsRow,
    BoarderDaykinReport,
    LimitIdentityRecord,
    boarder_daykin_check,
    bounds_table,
    limit_identity_demo,
)

__version__ = "0.1.0"
