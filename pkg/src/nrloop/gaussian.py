"""Output-field covariance matrices and Gaussian entanglement metrics.

Propagates thermal/vacuum input covariances through the scattering matrices,
then evaluates logarithmic negativity (natural-log units), marginal purity,
symplectic eigenvalues, and the closed-form separability inequalities for
the loop's two distinguished mode pairs.
"""

import math
from dataclasses import dataclass

from . import linalg
from . import model
from . import scattering
from . import tolerances as tol
from .errors import UnstableSystemError
from .linalg import RealMat

__all__ = [
    "CovarianceMatrix",
    "InputCovariance",
    "EntanglementReport",
    "SimonCheck",
    "output_covariance",
    "tms_output_covariance",
    "symplectic_eig_2mode",
    "entanglement_report",
    "entanglement_from_covariance",
    "simon_separability_nrl",
    "full_purity",
]


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetric, physical output covariance in (X1, P1, X2, P2, ...)
    ordering with vacuum variance 1/2 per quadrature.

    Construction validates symmetry and the uncertainty relation
    V + i Omega / 2 >= 0 (up to the central tolerances).
    """

    v: RealMat

    def __post_init__(self):
        v = self.v
        if not v.is_square or v.rows % 2 != 0:
            raise ValueError("covariance matrix must be square with even dimension")
        scale = max(1.0, v.max_abs())
        if linalg.max_abs_diff(v, v.T) > tol.COVARIANCE_SYMMETRY * scale:
            raise ValueError("covariance matrix is not symmetric")
        min_eig = linalg.hermitian_part_eigvals(v, 0.5 * linalg.omega_form(v.rows // 2))[0]
        if min_eig < -tol.PHYSICALITY * scale:
            raise ValueError(f"covariance matrix violates the uncertainty relation (min eig {min_eig:.3e})")

    @property
    def n_modes(self):
        return self.v.rows // 2

    def mode_block(self, j, k):
        """4 x 4 two-mode block for modes j < k (1-based)."""
        if not 1 <= j < k <= self.n_modes:
            raise ValueError("mode_block requires 1 <= j < k <= n_modes")
        idx = [2 * j - 2, 2 * j - 1, 2 * k - 2, 2 * k - 1]
        return self.v.gather(idx, idx)

    def single_mode(self, j):
        """2 x 2 marginal block of mode j (1-based)."""
        return self.v.submatrix(2 * j - 2, 2 * j - 2, 2, 2)


@dataclass(frozen=True)
class InputCovariance:
    """Uncorrelated thermal inputs: block-diagonal (n + 1/2) I per mode for
    the monitored and internal baths separately."""

    n_th: tuple
    n_th_int: tuple

    @classmethod
    def from_params(cls, p):
        return cls(
            n_th=tuple(m.n_th for m in p.modes),
            n_th_int=tuple(m.thermal_int for m in p.modes),
        )

    def monitored(self):
        return RealMat.diag([n + 0.5 for n in self.n_th for _ in range(2)])

    def internal(self):
        return RealMat.diag([n + 0.5 for n in self.n_th_int for _ in range(2)])


@dataclass(frozen=True)
class EntanglementReport:
    """Entanglement metrics of one output mode pair.

    ``nu_minus`` is the minimum symplectic eigenvalue of the partially
    transposed two-mode block; ``log_negativity`` is max(0, -ln(2 nu_minus))
    in natural-log units; ``purity`` is 1 / (4 sqrt(det V_pair)).
    ``boundary`` flags |2 nu_minus - 1| within the separability band, which
    is reported as separable (closed set).
    """

    pair: tuple
    nu_minus: float
    log_negativity: float
    purity: float
    separable: bool
    boundary: bool


@dataclass(frozen=True)
class SimonCheck:
    """Closed-form separability inequality: separable iff lhs <= rhs.
    ``decoupled`` marks a vanishing cooperativity in a denominator, where the
    ratio is undefined."""

    pair: tuple
    lhs: float | None
    rhs: float | None
    separable: bool
    decoupled: bool


def _sym2(s_w, s_mw, v_in):
    """Real part of the symmetrized propagation
    (S[w] V S[-w]^T + S[-w] V S[w]^T) / 2."""
    a = s_w @ v_in @ s_mw.T
    b = s_mw @ v_in @ s_w.T
    if isinstance(a, RealMat):
        return 0.5 * (a + b)
    half = 0.5 * (a + b)
    if half.max_abs_imag() > tol.REAL_AT_RESONANCE * max(1.0, half.max_abs()):
        raise ArithmeticError("output covariance has non-negligible imaginary part")
    return half.real()


def _output_covariance(scatter_fn, p, omega):
    if not model.is_stable(p):
        raise UnstableSystemError("output covariance requires a stable system")
    vin = InputCovariance.from_params(p)
    v_mon = vin.monitored()
    v_int = vin.internal()
    if omega == 0.0:
        res = scatter_fn(p, 0.0)
        v = res.s_e @ v_mon @ res.s_e.T + res.t_int @ v_int @ res.t_int.T
    else:
        res_p = scatter_fn(p, omega)
        res_m = scatter_fn(p, -omega)
        v = (_sym2(res_p.s_e, res_m.s_e, v_mon)
             + _sym2(res_p.t_int, res_m.t_int, v_int))
    return CovarianceMatrix(v=0.5 * (v + v.T))


def output_covariance(p, omega=0.0):
    """Output-field covariance of the loop at detuning ``omega``; on
    resonance this reduces to S_e V_in S_e^T + T_int V_int T_int^T."""
    return _output_covariance(scattering.scattering_at, p, float(omega))


def tms_output_covariance(p, omega=0.0):
    """Output-field covariance of the open two-mode squeezer."""
    return _output_covariance(scattering.tms_scattering_at, p, float(omega))


def _det2(m):
    return m.data[0] * m.data[3] - m.data[1] * m.data[2]


def symplectic_eig_2mode(v4, partial_transpose=False):
    """Symplectic eigenvalues (nu_minus, nu_plus) of a 4 x 4 two-mode
    covariance block via the closed-form invariants

        nu_-+^2 = (Delta -+ sqrt(Delta^2 - 4 det V)) / 2,
        Delta = det A + det B + 2 det C  (sign of det C flipped under
        partial transposition).
    """
    if v4.rows != 4 or v4.cols != 4:
        raise ValueError("symplectic_eig_2mode expects a 4 x 4 block")
    det_a = _det2(v4.submatrix(0, 0, 2, 2))
    det_b = _det2(v4.submatrix(2, 2, 2, 2))
    det_c = _det2(v4.submatrix(0, 2, 2, 2))
    det_v = linalg.det(v4)
    delta = det_a + det_b + (-2.0 if partial_transpose else 2.0) * det_c
    disc = delta * delta - 4.0 * det_v
    scale = max(1.0, delta * delta)
    if disc < -tol.PT_DISCRIMINANT * scale:
        raise ValueError(f"unphysical two-mode block (discriminant {disc:.3e})")
    root = math.sqrt(max(disc, 0.0))
    nu_minus = math.sqrt(max(0.5 * (delta - root), 0.0))
    nu_plus = math.sqrt(max(0.5 * (delta + root), 0.0))
    return nu_minus, nu_plus


def entanglement_from_covariance(cov, pair):
    """Entanglement report for one mode pair of an output covariance."""
    v4 = cov.mode_block(*pair)
    nu_minus, _ = symplectic_eig_2mode(v4, partial_transpose=True)
    two_nu = 2.0 * nu_minus
    boundary = abs(two_nu - 1.0) < tol.SEPARABILITY_BOUNDARY
    separable = boundary or two_nu >= 1.0
    log_neg = 0.0 if separable else -math.log(two_nu)
    det_v = linalg.det(v4)
    if det_v <= 0.0:
        raise ValueError("two-mode block has non-positive determinant")
    purity = 1.0 / (4.0 * math.sqrt(det_v))
    return EntanglementReport(pair=tuple(pair), nu_minus=nu_minus,
                              log_negativity=log_neg, purity=purity,
                              separable=separable, boundary=boundary)


def entanglement_report(p, pair, omega=0.0):
    """Entanglement metrics of the output pair for loop or squeezer
    parameters."""
    if isinstance(p, model.TmsParams):
        cov = tms_output_covariance(p, omega)
    else:
        cov = output_covariance(p, omega)
    return entanglement_from_covariance(cov, pair)


def full_purity(cov):
    """Purity of the full n-mode Gaussian output state,
    1 / (2^n sqrt(det V))."""
    d = linalg.det(cov.v)
    if d <= 0.0:
        raise ValueError("covariance matrix has non-positive determinant")
    return 1.0 / (2.0 ** cov.n_modes * math.sqrt(d))


def simon_separability_nrl(p, pair):
    """Closed-form separability inequality of the loop's output pairs.

    Pair (1, 2): sqrt(C12 / (C13 C23)) + sqrt((C13 C23) / C12) <= -2 sin phi;
    pair (2, 3): sqrt(C23 / (C12 C13)) + sqrt((C12 C13) / C23) <= +2 sin phi.
    The outputs are separable iff the inequality holds.
    """
    pair = tuple(pair)
    c12, c13, c23 = p.c12, p.c13, p.c23
    if pair == (1, 2):
        num, den, rhs = c12, c13 * c23, -2.0 * math.sin(p.phi)
    elif pair == (2, 3):
        num, den, rhs = c23, c12 * c13, 2.0 * math.sin(p.phi)
    else:
        raise ValueError("closed-form criterion available for pairs (1, 2) and (2, 3) only")
    if num == 0.0 and den == 0.0:
        # Fully decoupled pair; the ratio is 0/0 and the outputs are trivially
        # separable.
        return SimonCheck(pair=pair, lhs=None, rhs=rhs, separable=True, decoupled=True)
    if num == 0.0 or den == 0.0:
        # One cooperativity sits alone in a denominator; the inequality's
        # limit is lhs -> inf, i.e. never separable, but the ratio itself is
        # degenerate, which the marker flags.
        return SimonCheck(pair=pair, lhs=math.inf, rhs=rhs, separable=False, decoupled=True)
    ratio = num / den
    lhs = math.sqrt(ratio) + 1.0 / math.sqrt(ratio)
    return SimonCheck(pair=pair, lhs=lhs, rhs=rhs, separable=lhs <= rhs + tol.SEPARABILITY_BOUNDARY,
                      decoupled=False)
