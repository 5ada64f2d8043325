"""Steady-state quantum-optical scattering of a three-mode nonreciprocal
loop and its reciprocal two-mode-squeezer baseline: output-field
entanglement, purity, nonreciprocity, stability, thermal-noise routing, and
the supporting dense small-matrix kernel.
"""

from .backend import backend_name
from .circuits import (
    CircuitPrediction,
    GaussianCircuitOp,
    PolarCheck,
    SwapConfig,
    SwapReport,
    beam_splitter,
    predicted_factors,
    swap_figure_of_merit,
    two_mode_squeezer,
    verify_polar,
)
from .errors import (
    ConvergenceError,
    FrequencyCollisionError,
    SingularMatrixError,
    UnstableSystemError,
)
from .gaussian import (
    CovarianceMatrix,
    EntanglementReport,
    InputCovariance,
    SimonCheck,
    entanglement_from_covariance,
    entanglement_report,
    full_purity,
    output_covariance,
    simon_separability_nrl,
    symplectic_eig_2mode,
    tms_output_covariance,
)
from .linalg import (
    ComplexMat,
    PolarFactors,
    RealMat,
    abs_entrywise,
    det,
    eig_general,
    expm,
    frobenius,
    invert,
    polar,
    sqrt_spd,
    sym_eig,
    symplectic_defect,
)
from .model import (
    LoopParams,
    ModeParams,
    StabilityVerdict,
    TmsParams,
    drift_eigenvalues,
    dynamical_matrix,
    is_stable,
    lyapunov_steady_state,
    nrl_matched,
    routh_hurwitz,
    tms_dynamical_matrix,
)
from .pumpplan import (
    FrequencyPlan,
    PumpAmplitudes,
    RwaCheck,
    plan_frequencies,
    pump_amplitudes,
    rwa_check,
)
from .scattering import (
    NonreciprocityReport,
    ScatteringResult,
    nonreciprocity,
    scattering_at,
    scattering_resonant,
    symmetric_matched_scattering,
    tms_scattering,
    tms_scattering_at,
    tms_squeeze_parameter,
)

__version__ = "0.1.0"
