from .matcore import (
    SUBSYSTEM,
    DensityMatrix4,
    InvalidStateError,
    NotXShapedError,
    eig_hermitian,
    kron,
    partial_trace,
    validate_density,
    von_neumann_entropy,
)
from .states import (
    BellDiagonalParams,
    PerturbedBDSParams,
    SampleSeed,
    XStateParams,
    bds_eigenvalues,
    bds_to_density,
    bell_state,
    density_to_xparams,
    perturbed_bds_to_density,
    sample_random_xstate,
    xstate_to_density,
)
from .channel import (
    REGIME,
    DephasingChannel,
    DimensionlessTime,
    apply_two_qubit,
    kraus_ops,
    lambda_envelope,
    volterra_coherence,
)
from .correlations import (
    CorrelationBreakdown,
    MeasurementBasis,
    classical_correlation,
    classical_correlation_at,
    measure_on_B,
    mutual_information,
    quantum_discord,
)
from .transitions import (
    BASIS,
    CHEN,
    KIND,
    TransitionReport,
    TrajectoryPoint,
    chen_classify,
    detect_transitions,
    evolve_trajectory,
    random_survey,
    scan_basis,
    sudden_capable,
)
