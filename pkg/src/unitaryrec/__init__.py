"""Reconstruct the unitary part of a (possibly noisy) quantum channel.

The package builds channels from a GKLS master equation, probes them with
small state sets, and recovers the closest coherent description through
three routes (mixed probe, pure probes, Choi matrix), together with the
fidelity and unitarity metrics and the channel-use cost model needed to
compare them.
"""

from .channels import (
    ChoiMatrix,
    DensityMatrix,
    JumpTerm,
    KrausSet,
    NoiseSpec,
    Superoperator,
    apply_map,
    build_liouvillian,
    choi_of_unitary,
    choi_to_kraus,
    jump_terms_for_noise,
    kraus_to_superop,
    multi_control_not_unitary,
    propagate,
    random_haar_unitary,
    scenario_hamiltonian,
    to_choi,
    unitary_superop,
    unvec,
    vec,
)
from .errors import (
    ConfigInvalid,
    DegenerateBranchWarning,
    DegenerateImage,
    DimensionMismatch,
    InvalidRank,
    IoFailure,
    LinearDependence,
    NonRealResult,
    NotHermitian,
    NotPSD,
    NotUnitary,
    NumericalFailure,
    PhaseUndefined,
    RankDeficientWarning,
    TraceViolation,
    Unsupported,
    UnitaryRecError,
)
from .harness import (
    ResourceQuery,
    SweepConfig,
    SweepNoise,
    SweepRecord,
    channel_uses,
    run_sweep,
    summarize,
    write_csv,
)
from .linalg import (
    HermitianEigSystem,
    eig_hermitian,
    matrix_exp,
    principal_log_unitary,
    svd,
)
from .metrics import (
    UnitarityEstimate,
    average_fidelity,
    estimate_unitarity,
    gate_fidelity,
    process_fidelity,
    sample_clifford,
)
from .probes import (
    make_mixed_basis_probe,
    make_mixed_basis_probe_from,
    make_phase_probe,
    make_pure_basis_probes,
    mixed_probe_eigenvalues,
)
from .reconstruct import (
    Diagnostics,
    ReconstructionResult,
    closest_unitary,
    reconstruct_choi,
    reconstruct_mixed,
    reconstruct_pure,
)

__version__ = "0.1.0"
