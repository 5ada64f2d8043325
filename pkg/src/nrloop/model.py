"""System parameterizations, drift matrix, and stability.

Builds the quadrature-space dynamical matrix of the three-mode loop (and the
two-mode squeezer baseline), evaluates the closed-form Routh-Hurwitz
stability conditions at loop phase +-pi/2, and provides the drift-eigenvalue
and Lyapunov steady-state cross-checks.

Quadrature ordering is (X1, P1, X2, P2, X3, P3) throughout.  Rates are
unit-agnostic; the CLI convention is kappa_1 = 1.
"""

import math
from dataclasses import dataclass, field

from . import linalg
from . import tolerances as tol
from .errors import UnstableSystemError
from .linalg import RealMat

__all__ = [
    "ModeParams",
    "LoopParams",
    "TmsParams",
    "StabilityVerdict",
    "nrl_matched",
    "dynamical_matrix",
    "tms_dynamical_matrix",
    "routh_hurwitz",
    "drift_eigenvalues",
    "max_real_eigenvalue",
    "is_stable",
    "lyapunov_steady_state",
]


@dataclass(frozen=True)
class ModeParams:
    """Decay and bath parameters of a single mode.

    ``kappa_e`` is the monitored (external) decay rate, ``kappa_int`` the
    unmonitored internal one; the total decay ``kappa_e + kappa_int`` must be
    positive.  ``n_th`` is the thermal occupation of the monitored bath and
    ``n_th_int`` that of the internal bath; the latter defaults to ``n_th``
    (both channels of a mode see the same temperature unless overridden).
    """

    kappa_e: float = 1.0
    kappa_int: float = 0.0
    n_th: float = 0.0
    n_th_int: float | None = None

    def __post_init__(self):
        if self.kappa_e < 0.0 or self.kappa_int < 0.0:
            raise ValueError("decay rates must be non-negative")
        if self.kappa_e + self.kappa_int <= 0.0:
            raise ValueError("total decay rate must be positive")
        if self.n_th < 0.0 or (self.n_th_int is not None and self.n_th_int < 0.0):
            raise ValueError("thermal occupations must be non-negative")

    @property
    def kappa(self):
        return self.kappa_e + self.kappa_int

    @property
    def thermal_int(self):
        return self.n_th if self.n_th_int is None else self.n_th_int


def _mode_from_spec(kappa, loss_ratio, n_th, n_th_int):
    if not 0.0 <= loss_ratio < 1.0:
        raise ValueError("internal-loss ratio must lie in [0, 1)")
    return ModeParams(
        kappa_e=kappa * (1.0 - loss_ratio),
        kappa_int=kappa * loss_ratio,
        n_th=n_th,
        n_th_int=n_th_int,
    )


@dataclass(frozen=True)
class LoopParams:
    """Three coupled modes: squeezing links 1-2 and 2-3, beam-splitter link
    1-3, with the gauge-invariant loop phase ``phi`` on the 2-3 link."""

    modes: tuple[ModeParams, ModeParams, ModeParams]
    g12: float = 0.0
    g13: float = 0.0
    g23: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if len(self.modes) != 3:
            raise ValueError("LoopParams requires exactly three modes")
        if self.g12 < 0.0 or self.g13 < 0.0 or self.g23 < 0.0:
            raise ValueError("coupling strengths must be non-negative")

    @classmethod
    def from_cooperativities(cls, c12, c13, c23, phi, kappas=(1.0, 1.0, 1.0),
                             loss_ratios=(0.0, 0.0, 0.0), n_th=(0.0, 0.0, 0.0),
                             n_th_int=(None, None, None)):
        """Construct from dimensionless cooperativities C_jk = 4 g_jk^2 /
        (kappa_j kappa_k); the loop-internal canonical parameterization."""
        if min(c12, c13, c23) < 0.0:
            raise ValueError("cooperativities must be non-negative")
        modes = tuple(
            _mode_from_spec(kappas[i], loss_ratios[i], n_th[i], n_th_int[i])
            for i in range(3)
        )
        k1, k2, k3 = (m.kappa for m in modes)
        return cls(
            modes=modes,
            g12=0.5 * math.sqrt(c12 * k1 * k2),
            g13=0.5 * math.sqrt(c13 * k1 * k3),
            g23=0.5 * math.sqrt(c23 * k2 * k3),
            phi=phi,
        )

    @property
    def kappas(self):
        return tuple(m.kappa for m in self.modes)

    @property
    def c12(self):
        k = self.kappas
        return 4.0 * self.g12 ** 2 / (k[0] * k[1])

    @property
    def c13(self):
        k = self.kappas
        return 4.0 * self.g13 ** 2 / (k[0] * k[2])

    @property
    def c23(self):
        k = self.kappas
        return 4.0 * self.g23 ** 2 / (k[1] * k[2])

    @property
    def eta(self):
        """Coupling asymmetry g23 / g13."""
        if self.g13 == 0.0:
            raise ValueError("eta undefined for g13 = 0")
        return self.g23 / self.g13


def nrl_matched(c23, c13, phi, **kwargs):
    """Loop with the perfect-nonreciprocity condition C12 = C13 * C23 applied
    explicitly.  Keyword arguments are forwarded to
    :meth:`LoopParams.from_cooperativities`."""
    return LoopParams.from_cooperativities(c12=c13 * c23, c13=c13, c23=c23, phi=phi, **kwargs)


@dataclass(frozen=True)
class TmsParams:
    """Reciprocal two-mode-squeezer baseline; stable below C12 = 1."""

    modes: tuple[ModeParams, ModeParams]
    g12: float = 0.0

    def __post_init__(self):
        if len(self.modes) != 2:
            raise ValueError("TmsParams requires exactly two modes")
        if self.g12 < 0.0:
            raise ValueError("coupling strength must be non-negative")

    @classmethod
    def from_cooperativity(cls, c12, kappas=(1.0, 1.0), loss_ratios=(0.0, 0.0),
                           n_th=(0.0, 0.0), n_th_int=(None, None)):
        if c12 < 0.0:
            raise ValueError("cooperativity must be non-negative")
        modes = tuple(
            _mode_from_spec(kappas[i], loss_ratios[i], n_th[i], n_th_int[i])
            for i in range(2)
        )
        k1, k2 = (m.kappa for m in modes)
        return cls(modes=modes, g12=0.5 * math.sqrt(c12 * k1 * k2))

    @property
    def kappas(self):
        return tuple(m.kappa for m in self.modes)

    @property
    def c12(self):
        k = self.kappas
        return 4.0 * self.g12 ** 2 / (k[0] * k[1])


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of a stability test.  ``conditions`` holds (label, value,
    satisfied) rows; ``stable`` is true iff all conditions are satisfied."""

    stable: bool
    conditions: tuple
    max_eig_real_part: float


def dynamical_matrix(p):
    """6 x 6 quadrature-space drift matrix of the loop.

    Block structure: -kappa_j/2 on mode diagonals, -g12 X on the 1-2 link,
    +g13 J on the 1-3 link, and g23 (sin(phi) Z - cos(phi) X) on the 2-3
    link, placed symmetrically.
    """
    k1, k2, k3 = p.kappas
    i2 = RealMat.identity(2)
    b12 = -p.g12 * linalg.mat_x()
    b13 = p.g13 * linalg.mat_j()
    b23 = p.g23 * (math.sin(p.phi) * linalg.mat_z() - math.cos(p.phi) * linalg.mat_x())
    return RealMat.from_blocks([
        [-0.5 * k1 * i2, b12, b13],
        [b12, -0.5 * k2 * i2, b23],
        [b13, b23, -0.5 * k3 * i2],
    ])


def tms_dynamical_matrix(p):
    """4 x 4 drift matrix of the open two-mode squeezer (quadrature-basis
    squeezing axis fixed so the resonant scattering matches the loop's
    squeezer block convention)."""
    k1, k2 = p.kappas
    i2 = RealMat.identity(2)
    b12 = p.g12 * linalg.mat_z()
    return RealMat.from_blocks([
        [-0.5 * k1 * i2, b12],
        [b12, -0.5 * k2 * i2],
    ])


def _drift(p):
    if isinstance(p, LoopParams):
        return dynamical_matrix(p)
    if isinstance(p, TmsParams):
        return tms_dynamical_matrix(p)
    raise TypeError(f"unsupported parameter record {type(p).__name__}")


def drift_eigenvalues(p):
    """Eigenvalues of the drift matrix, sorted by (real, imag)."""
    return linalg.eig_general(_drift(p))


def max_real_eigenvalue(p):
    return max(z.real for z in drift_eigenvalues(p))


def is_stable(p):
    return max_real_eigenvalue(p) < 0.0


def routh_hurwitz(p):
    """Stability verdict for the loop.

    At loop phase +-pi/2 the three closed-form conditions are evaluated
    (sum of decay rates, the cooperativity balance, and the kappa-ratio
    weighted balance); away from those phases the verdict falls back to the
    numeric eigenvalue test and the single condition row is labelled
    "numeric".
    """
    maxre = max_real_eigenvalue(p)
    if abs(math.cos(p.phi)) > tol.PHASE_AT_HALF_PI:
        cond = (("numeric: max Re eig(M) < 0", -maxre, maxre < 0.0),)
        return StabilityVerdict(stable=maxre < 0.0, conditions=cond, max_eig_real_part=maxre)

    k1, k2, k3 = p.kappas
    c12, c13, c23 = p.c12, p.c13, p.c23
    v1 = k1 + k2 + k3
    v2 = 1.0 - c12 + c13 - c23
    v3 = (1.0
          - c12 / ((1.0 + k3 / k1) * (1.0 + k3 / k2))
          + c13 / ((1.0 + k2 / k1) * (1.0 + k2 / k3))
          - c23 / ((1.0 + k1 / k2) * (1.0 + k1 / k3)))
    conditions = (
        ("kappa_1 + kappa_2 + kappa_3 > 0", v1, v1 > 0.0),
        ("1 - C12 + C13 - C23 > 0", v2, v2 > 0.0),
        ("kappa-ratio weighted balance > 0", v3, v3 > 0.0),
    )
    stable = all(ok for _, _, ok in conditions)
    return StabilityVerdict(stable=stable, conditions=conditions, max_eig_real_part=maxre)


def _diffusion_matrix(p):
    """D = sqrt(kappa_e) V_in sqrt(kappa_e) + sqrt(kappa_int) V_int
    sqrt(kappa_int); diagonal for uncorrelated thermal inputs."""
    entries = []
    for m in p.modes:
        d = m.kappa_e * (m.n_th + 0.5) + m.kappa_int * (m.thermal_int + 0.5)
        entries.extend([d, d])
    return RealMat.diag(entries)


def lyapunov_steady_state(p):
    """Intracavity steady-state covariance from M V + V M^T = -D.

    Serves as a time-domain-free cross-check of the frequency-domain output
    quantities.  Raises :class:`UnstableSystemError` for unstable parameters;
    validates the residual and physicality of the returned matrix.
    """
    m = _drift(p)
    maxre = max(z.real for z in linalg.eig_general(m))
    if maxre >= 0.0:
        raise UnstableSystemError(f"drift matrix has max Re eigenvalue {maxre:.3e} >= 0")
    n = m.rows
    d = _diffusion_matrix(p)
    # Row-major vectorization: vec(M V + V M^T) = (M kron I + I kron M) vec(V).
    nn = n * n
    a = [0.0] * (nn * nn)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                a[(i * n + j) * nn + (k * n + j)] += m.data[i * n + k]
                a[(i * n + j) * nn + (i * n + k)] += m.data[j * n + k]
    rhs = RealMat(nn, 1, [-v for v in d.data])
    vec = linalg.solve(RealMat(nn, nn, a), rhs)
    v = RealMat(n, n, vec.data)
    v = 0.5 * (v + v.T)

    residual = (m @ v + v @ m.T + d).max_abs()
    if residual > tol.LYAPUNOV_RESIDUAL:
        raise ArithmeticError(f"Lyapunov residual {residual:.3e} exceeds {tol.LYAPUNOV_RESIDUAL}")
    min_eig = linalg.hermitian_part_eigvals(v, 0.5 * linalg.omega_form(n // 2))[0]
    if min_eig < -tol.PHYSICALITY:
        raise ArithmeticError(f"steady-state covariance unphysical (min eig {min_eig:.3e})")
    return v
