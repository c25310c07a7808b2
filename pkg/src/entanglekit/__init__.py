"""Entanglement measures, twirling channels, local-orthogonality checks, and
maximum-entropy state searches for small bipartite quantum states."""

from .errors import (
    CapacityError,
    DimensionError,
    EntangleKitError,
    ParameterError,
    ParseError,
    PreconditionError,
    SizeError,
    ValidationError,
)
from .states import (
    BELL_LABELS,
    MAX_TOTAL_DIM,
    DensityMatrix,
    Dims,
    Ensemble,
    PureState,
    bell_basis_matrix,
    bell_diagonal,
    bell_state,
    eigenvalues_hermitian,
    isotropic,
    make_state,
    max_entangled,
    partial_trace,
    partial_transpose,
    product_basis,
    projector,
    psi_m,
    random_density,
    random_pure,
    rho_p,
    schmidt_pair,
    state_from_spec,
    tensor,
    werner,
)
from .measures import (
    MeasureReport,
    PptResult,
    binary_entropy,
    coherent_info_bound,
    concurrence,
    ensemble_eof,
    eof_from_concurrence,
    eof_two_qubit,
    eof_werner_closed_form,
    measure_state,
    ppt_check,
    pure_entanglement,
    rel_ent_entanglement,
    relative_entropy,
    von_neumann_entropy,
)
from .twirl import (
    PreservationResult,
    check_preservation,
    isotropic_eof_upper_bound,
    maxent_fidelity,
    twirl_isotropic,
    twirl_two_qubit_werner,
)
from .localorth import (
    LOCertificate,
    ensemble_locally_orthogonal,
    k_locally_orthogonal,
    lo_ensemble_eof,
    reduction_overlap,
    single_party_reduction,
)
from .thermo import (
    ThermoReport,
    bell_weights,
    hashing_yield,
    rains_upper_bound_werner,
    temperature_proxy,
    werner_thermo_rows,
)
from .maxent import (
    ConcurrenceComparison,
    MaxEntResult,
    SweepPoint,
    compare_equal_concurrence,
    entropy_rho_p,
    entropy_werner,
    maxent_search,
    maxent_sweep,
)
from .fileio import (
    EnsembleFile,
    ensemble_loads,
    qmx_dumps,
    qmx_loads,
    read_ensemble,
    read_qmx,
    write_ensemble,
    write_qmx,
)

__version__ = "0.1.0"
