"""Central numeric tolerances.

Every residual bound used by the library and asserted by the test suite lives
here, so the two can never drift apart.  Values are absolute unless noted.
"""

# --- linear-algebra kernel -------------------------------------------------
INV_RESIDUAL = 1e-10          # max-abs of A @ inv(A) - I
SINGULAR_PIVOT_REL = 1e-12    # pivot threshold, relative to max input magnitude
SYMMETRY_TOL = 1e-12          # max-abs asymmetry accepted by sym_eig
SYM_EIG_RESIDUAL = 1e-9       # max-abs of V diag(w) V^T - A
SQRT_RESIDUAL = 1e-9          # max-abs of sqrt(A) @ sqrt(A) - A
EXPM_RELTOL = 1e-13           # Taylor-term truncation, relative
EXPM_INVERSE_RESIDUAL = 1e-9  # max-abs of expm(G) @ expm(-G) - I
POLAR_RECONSTRUCTION = 1e-8   # max-abs of R @ U - S (or U @ R - S)
POLAR_R_SYMMETRY = 1e-10      # max-abs of R - R^T
POLAR_U_ORTHOGONALITY = 1e-9  # max-abs of U^T @ U - I
GENERAL_EIG_RESIDUAL = 1e-8   # per-pair |M v - lambda v| for drift eigenvalues

# --- model / stability -----------------------------------------------------
PHASE_AT_HALF_PI = 1e-9       # |cos(phi)| below this selects the closed-form test
LYAPUNOV_RESIDUAL = 1e-9      # max-abs of M V + V M^T + D

# --- scattering ------------------------------------------------------------
SYMPLECTIC_DEFECT = 1e-9      # max-abs of S Omega S^T - Omega (lossless, omega=0)
CLOSED_FORM_MATCH = 1e-10     # numeric vs closed-form resonant scattering
PERFECT_BLOCK_ZERO = 1e-10    # forbidden-direction block norm at perfect points
REAL_AT_RESONANCE = 1e-12     # residual imaginary part at omega -> 0
T_INT_DECOUPLED = 1e-12       # decoupled internal-noise diagonal blocks

# --- gaussian states -------------------------------------------------------
COVARIANCE_SYMMETRY = 1e-10   # max-abs of V - V^T
PHYSICALITY = 1e-9            # min eig of V + i Omega / 2 >= -PHYSICALITY
PT_DISCRIMINANT = 1e-12       # allowed negative slack in the nu_- discriminant
SEPARABILITY_BOUNDARY = 1e-9  # |2 nu_- - 1| band reported as boundary
SIMON_GRID_AGREEMENT = 1e-8   # closed-form vs numeric verdict boundary band
THERMAL_FLATNESS = 1e-9       # allowed variation of rerouted-noise metrics

# --- circuits --------------------------------------------------------------
CIRCUIT_RECONSTRUCTION = 1e-8  # max-abs of (-S) - predicted factor product
MANIFOLD_TOL = 1e-9            # accepted deviation from the matched condition
