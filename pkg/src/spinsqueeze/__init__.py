"""Collective spin squeezing toolkit.

Exact Dicke-subspace dynamics (one-axis twisting) plus a truncated-Fock
simulation of the trapped-ion geometric phase gate that engineers the
twisting interaction.
"""

__version__ = "0.1.0"

from .dicke import (
    CollectiveOperator,
    DickeBasis,
    SpinState,
    TangentFrame,
    apply,
    build_operator,
    covariance_tangent,
    custom_operator,
    expectation,
    make_basis,
    mean_spin,
    pole_state,
    rotate,
)
from .errors import (
    CutoffOverflowError,
    DegenerateDirectionError,
    OpenLoopError,
    ResourceError,
    StepSizeError,
)
from .gate import (
    GateParams,
    GateTrace,
    JointState,
    effective_chi_t,
    evolve_analytic,
    evolve_numeric,
    fock_cutoff,
    fock_dicke,
    gate_as_squeezer,
    ground_joint,
    phase_vs_m,
)
from .io import SweepResult
from .squeezing import (
    OverlapGrid,
    SqueezeParams,
    coherent_state,
    find_min_xi,
    oat_evolve,
    overlap_grid,
    squeezing_db,
    squeezing_xi,
    xi_sweep,
)
from .oracle import FullState, collective_full, dicke_to_full, verify_subspace
