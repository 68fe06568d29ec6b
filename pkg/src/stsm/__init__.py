"""Space-time statistical mechanics toolkit for qubits and single photons."""

from .bloch import (
    BELL_STATE,
    BlochDirection,
    DensityMatrix,
    PureQubitState,
    TwoQubitState,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    bell_joint_probability,
    born_conditional,
    projector,
    state_from_direction,
    transition_probability,
)
from .ensemble import (
    Arrangement,
    ConfigurationDistribution,
    RunRecord,
    StateAsDistributionSet,
    ensemble_bell,
    ensemble_single,
    sample,
    state_as_distribution_set,
)
from .interferometer import (
    Layout,
    OpticalSetup,
    Placement,
    delayed_choice_report,
    detector_distribution,
    run_experiment,
)
from .maxent import (
    JointDensity,
    LagrangeSolution,
    MarginalDensity,
    estimate,
    expectation_sigma_z,
    maxent_density,
    reconstruct_density_matrix,
    relative_entropy_joint,
    relative_entropy_marginal,
    solve_lambda,
    von_neumann_check,
)
from .quadrature import SphericalGrid, make_grid

__version__ = "0.1.0"
