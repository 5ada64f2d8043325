"""Frequency-dependent scattering of the loop and its squeezer baseline.

The monitored-channel scattering matrix is S_e[w] = I + sqrt(kappa_e)
(i w I + M)^-1 sqrt(kappa_e) and the internal-noise transfer matrix is
T_int[w] = sqrt(kappa_e) (i w I + M)^-1 sqrt(kappa_int); the sign convention
is pinned by the closed-form resonant blocks, which this module also provides
as independent oracles (the symmetric impedance-matched loop and the
two-mode squeezer).
"""

import math
from dataclasses import dataclass

from . import linalg
from . import model
from .errors import UnstableSystemError
from .linalg import ComplexMat, RealMat

__all__ = [
    "ScatteringResult",
    "NonreciprocityReport",
    "scattering_at",
    "tms_scattering_at",
    "scattering_resonant",
    "nonreciprocity",
    "tms_scattering",
    "symmetric_matched_scattering",
    "tms_squeeze_parameter",
]


@dataclass(frozen=True)
class ScatteringResult:
    """Scattering at one frequency: ``s_e`` maps monitored inputs to
    monitored outputs, ``t_int`` maps internal-bath noise to monitored
    outputs.  Both are real exactly on resonance and complex otherwise."""

    omega: float
    s_e: RealMat | ComplexMat
    t_int: RealMat | ComplexMat


@dataclass(frozen=True)
class NonreciprocityReport:
    """Amplitude asymmetry of scattering between one mode pair.

    ``n_jk`` is the normalized degree of nonreciprocity in [0, 1]
    (``None`` when the pair is fully decoupled); ``norm_forward`` is the
    Frobenius norm of the j -> k transmission block, ``norm_backward`` that
    of k -> j; ``impedance`` lists the reflection-block norms per mode.
    """

    pair: tuple
    n_jk: float | None
    norm_forward: float
    norm_backward: float
    impedance: tuple
    decoupled: bool


def _sqrt_rate_vectors(p):
    ke = []
    kint = []
    for m in p.modes:
        ke.extend([math.sqrt(m.kappa_e)] * 2)
        kint.extend([math.sqrt(m.kappa_int)] * 2)
    return ke, kint


def _scatter(drift, p, omega):
    n = drift.rows
    ke, kint = _sqrt_rate_vectors(p)
    if omega == 0.0:
        resolvent = linalg.invert(drift)
        s_e = RealMat.identity(n) + resolvent.scale_cols(ke).scale_rows(ke)
        t_int = resolvent.scale_cols(kint).scale_rows(ke)
        return ScatteringResult(omega=0.0, s_e=s_e, t_int=t_int)
    a = drift.to_complex() + (1j * omega) * ComplexMat.identity(n)
    resolvent = linalg.invert(a)
    s_e = ComplexMat.identity(n) + resolvent.scale_cols(ke).scale_rows(ke)
    t_int = resolvent.scale_cols(kint).scale_rows(ke)
    return ScatteringResult(omega=omega, s_e=s_e, t_int=t_int)


def scattering_at(p, omega=0.0):
    """Scattering matrices of the loop at detuning ``omega`` from resonance
    (rate units, rotating frame)."""
    return _scatter(model.dynamical_matrix(p), p, float(omega))


def tms_scattering_at(p, omega=0.0):
    """Scattering matrices of the open two-mode squeezer."""
    return _scatter(model.tms_dynamical_matrix(p), p, float(omega))


def scattering_resonant(p):
    """Resonant (w = 0) scattering matrix of the lossless loop.

    Requires all internal losses to vanish, in which case the result is a
    real symplectic 6 x 6 matrix.
    """
    if any(m.kappa_int != 0.0 for m in p.modes):
        raise ValueError("scattering_resonant requires a lossless system (kappa_int = 0)")
    return scattering_at(p, 0.0).s_e


def nonreciprocity(p, pair):
    """Normalized degree of nonreciprocity for one mode pair, from the
    resonant blocks:

        N = || abs S_jk - abs S_kj || / (||S_jk|| + ||S_kj||)

    with entrywise absolute values and Frobenius norms.  A fully decoupled
    pair (both transmission blocks identically zero) is reported with
    ``decoupled=True`` and ``n_jk=None`` instead of an undefined ratio.
    """
    j, k = pair
    if j == k:
        raise ValueError("nonreciprocity requires two distinct modes")
    s = scattering_at(p, 0.0).s_e
    back = s.block2x2(j - 1, k - 1)    # input k -> output j
    fwd = s.block2x2(k - 1, j - 1)     # input j -> output k
    norm_fwd = linalg.frobenius(fwd)
    norm_back = linalg.frobenius(back)
    impedance = tuple(linalg.frobenius(s.block2x2(i, i)) for i in range(3))
    denom = norm_fwd + norm_back
    if denom == 0.0:
        return NonreciprocityReport(pair=(j, k), n_jk=None, norm_forward=norm_fwd,
                                    norm_backward=norm_back, impedance=impedance,
                                    decoupled=True)
    n_jk = linalg.frobenius(linalg.abs_entrywise(back) - linalg.abs_entrywise(fwd)) / denom
    return NonreciprocityReport(pair=(j, k), n_jk=n_jk, norm_forward=norm_fwd,
                                norm_backward=norm_back, impedance=impedance,
                                decoupled=False)


def tms_squeeze_parameter(c):
    """Effective squeeze parameter of the resonant squeezer output,
    r = artanh(2 sqrt(C) / (1 + C)); equals 2 artanh(sqrt(C))."""
    if not 0.0 <= c < 1.0:
        raise UnstableSystemError(f"two-mode squeezer requires 0 <= C < 1, got {c}")
    return math.atanh(2.0 * math.sqrt(c) / (1.0 + c))


def tms_scattering(p):
    """Closed-form resonant scattering of the lossless two-mode squeezer:
    -cosh(r) I on the diagonal blocks and -sinh(r) Z off-diagonal."""
    c = p.c12
    if c >= 1.0:
        raise UnstableSystemError(f"two-mode squeezer unstable for C12 = {c} >= 1")
    ch = (1.0 + c) / (1.0 - c)
    sh = 2.0 * math.sqrt(c) / (1.0 - c)
    i2 = RealMat.identity(2)
    z = linalg.mat_z()
    return RealMat.from_blocks([
        [-ch * i2, -sh * z],
        [-sh * z, -ch * i2],
    ])


def symmetric_matched_scattering(c, phi):
    """Closed-form resonant scattering of the symmetric impedance-matched
    loop (C12 = C23 = C, C13 = 1) as a function of the loop phase.

    Serves as the independent oracle for the numeric resolvent path.  The
    removable (1 +- sin phi) factors are expanded so all entries stay finite
    at phi = -+pi/2.
    """
    sp = math.sin(phi)
    cp = math.cos(phi)
    d = (1.0 - c) ** 2 + c * c * cp * cp
    if d == 0.0:
        raise ValueError("closed form singular at C = 1, phi = +-pi/2")
    rc = math.sqrt(c)
    i2 = RealMat.identity(2)
    x = linalg.mat_x()
    z = linalg.mat_z()
    jm = linalg.mat_j()

    s11 = (c * c * cp * cp) * i2 - ((1.0 - c) * c * cp) * jm
    s12 = (rc * cp * (1.0 + c * sp)) * z - (rc * (2.0 * c - c * sp - 1.0) * (1.0 + sp)) * x
    s13 = (c * c * cp * (1.0 + sp)) * i2 + (-c * c * cp * cp - (1.0 - c) * (1.0 + c * sp)) * jm
    s21 = (-rc * cp * (1.0 - c * sp)) * z - (rc * (2.0 * c + c * sp - 1.0) * (1.0 - sp)) * x
    s22 = (-(1.0 - c * c) + c * c * cp * cp) * i2 + (2.0 * c * cp) * jm
    s23 = (-rc * (1.0 + sp) * (1.0 - c * sp)) * z + (rc * cp * (1.0 - 2.0 * c - c * sp)) * x
    s31 = (c * c * cp * (1.0 - sp)) * i2 + (-c * c * cp * cp - (1.0 - c) * (1.0 - c * sp)) * jm
    s32 = (rc * (1.0 - sp) * (1.0 + c * sp)) * z + (rc * cp * (1.0 - 2.0 * c + c * sp)) * x
    s33 = s11

    return (1.0 / d) * RealMat.from_blocks([
        [s11, s12, s13],
        [s21, s22, s23],
        [s31, s32, s33],
    ])
