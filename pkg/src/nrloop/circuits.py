"""Gaussian-circuit factorizations of the resonant scattering matrix.

At points of perfect nonreciprocity (C12 = C13 C23, phi = -+pi/2) the
scattering matrix factors, up to a global sign, into a single beam-splitter
between modes 1 and 3 and a single two-mode squeezer between modes 2 and 3;
at phi = +pi/2 with C13 = 1 an equivalent form uses a squeezer between modes
1 and 2 followed by a perfect swap.  This module constructs those predicted
factors from their generators, verifies them against numerically computed
polar decompositions, and evaluates the two-loop entanglement-swapping
figure of merit.
"""

import math
from dataclasses import dataclass

from . import linalg
from . import model
from . import scattering
from . import tolerances as tol
from .linalg import RealMat

__all__ = [
    "GaussianCircuitOp",
    "CircuitPrediction",
    "PolarCheck",
    "SwapConfig",
    "SwapReport",
    "beam_splitter",
    "two_mode_squeezer",
    "predicted_factors",
    "verify_polar",
    "swap_figure_of_merit",
]


@dataclass(frozen=True)
class GaussianCircuitOp:
    """One pairwise Gaussian operation embedded in the 6-mode quadrature
    space.

    ``parameter`` is the beam-splitter mixing angle or the squeeze strength;
    ``axis_angle`` orients the squeeze axis in quadrature space (0 gives +Z
    coupling blocks, pi gives -Z, 3 pi / 2 gives -X).  Beam-splitter
    symplectics are orthogonal; squeezer symplectics are symmetric
    positive-definite.
    """

    kind: str
    pair: tuple
    parameter: float
    symplectic: RealMat
    axis_angle: float = 0.0

    def __post_init__(self):
        if self.kind not in ("beam_splitter", "two_mode_squeezer"):
            raise ValueError(f"unknown circuit operation kind {self.kind!r}")
        defect = linalg.symplectic_defect(self.symplectic)
        if defect > 1e-10 * max(1.0, self.symplectic.max_abs() ** 2):
            raise ValueError(f"circuit operation is not symplectic (defect {defect:.3e})")


@dataclass(frozen=True)
class CircuitPrediction:
    """Predicted factorization of -S.  ``ops`` are given in matrix-product
    order (leftmost factor first); ``order`` is "left" when the squeezer is
    the left factor (R U) and "right" otherwise (U R).  ``product`` is the
    assembled matrix, which equals -S on the prediction manifold."""

    ops: tuple
    order: str
    product: RealMat


@dataclass(frozen=True)
class PolarCheck:
    """Comparison of a numeric polar decomposition against the predicted
    factors.  ``sign`` is -1 when the predicted product reconstructs -S,
    +1 for +S, and 0 when no prediction applies (off-manifold), in which
    case the dense numeric factors are still returned for inspection."""

    residual: float
    factor_match: bool
    sign: int
    r_factor: RealMat
    u_factor: RealMat


@dataclass(frozen=True)
class SwapConfig:
    """Two symmetric impedance-matched loops (C13 = 1, phi = +pi/2), each
    parameterized by its squeezing cooperativity in (0, 1)."""

    coop_a: float
    coop_b: float

    def __post_init__(self):
        # Zero is accepted as the degenerate no-squeezing limit; >= 1 is an
        # unstable loop.
        for label, c in (("coop_a", self.coop_a), ("coop_b", self.coop_b)):
            if not 0.0 <= c < 1.0:
                raise ValueError(f"{label} must lie in [0, 1) for a stable loop, got {c}")


@dataclass(frozen=True)
class SwapReport:
    r: float
    log_negativity: float
    purity: float


def _embed_pair_generator(pair, block, n_modes=3):
    """Symmetric placement of a 2 x 2 coupling block on one mode pair."""
    j, k = pair
    grid = [[None] * n_modes for _ in range(n_modes)]
    grid[j - 1][k - 1] = block
    grid[k - 1][j - 1] = block
    return RealMat.from_blocks(grid)


def beam_splitter(pair, theta, n_modes=3):
    """Beam-splitter between one mode pair: exponential of the antisymmetric
    generator with +theta J coupling blocks, giving cos(theta) I diagonal
    and +sin(theta) J off-diagonal blocks."""
    gen = _embed_pair_generator(pair, theta * linalg.mat_j(), n_modes)
    return GaussianCircuitOp(kind="beam_splitter", pair=tuple(pair), parameter=theta,
                             symplectic=linalg.expm(gen))


def two_mode_squeezer(pair, r, axis_angle=0.0, n_modes=3):
    """Two-mode squeezer between one mode pair: exponential of the symmetric
    generator r (cos(axis_angle) Z + sin(axis_angle) X), giving cosh(r) I
    diagonal blocks and sinh(r)-scaled coupling blocks along the chosen
    axis."""
    block = r * (math.cos(axis_angle) * linalg.mat_z() + math.sin(axis_angle) * linalg.mat_x())
    gen = _embed_pair_generator(pair, block, n_modes)
    return GaussianCircuitOp(kind="two_mode_squeezer", pair=tuple(pair), parameter=r,
                             symplectic=linalg.expm(gen), axis_angle=axis_angle)


def _on_manifold(p):
    scale = max(1.0, p.c12, p.c13 * p.c23)
    return (abs(p.c12 - p.c13 * p.c23) <= tol.MANIFOLD_TOL * scale
            and abs(math.cos(p.phi)) <= tol.PHASE_AT_HALF_PI)


def predicted_factors(p, form="polar"):
    """Predicted circuit factors whose product equals -S on the
    perfect-nonreciprocity manifold (C12 = C13 C23, phi = -+pi/2).

    ``form="polar"`` gives the simple polar factorizations: at phi = -pi/2
    the left order R(2,3) U(1,3), at phi = +pi/2 the right order
    U(1,3) R(2,3), with beam-splitter angle 2 arctan(sqrt(C13)) and squeeze
    strength 2 artanh(sqrt(C23)).  ``form="swap"`` gives the complementary
    left factorization R(1,2) U_swap(1,3), available at C13 = 1,
    phi = +pi/2.  The squeeze axis flips between the two phases; the
    reconstruction tests are the arbiter of these orientations.
    """
    if not _on_manifold(p):
        raise ValueError("predicted factors require C12 = C13 * C23 and phi = -+pi/2")
    if p.c23 >= 1.0:
        raise ValueError("predicted factors require C23 < 1 (stable squeezer)")
    theta = 2.0 * math.atan(math.sqrt(p.c13))
    u = 2.0 * math.atanh(math.sqrt(p.c23))
    bs = beam_splitter((1, 3), theta)
    if form == "swap":
        if math.sin(p.phi) < 0.0 or abs(p.c13 - 1.0) > tol.MANIFOLD_TOL:
            raise ValueError("the swap form requires phi = +pi/2 and C13 = 1")
        sq = two_mode_squeezer((1, 2), u, axis_angle=1.5 * math.pi)
        ops = (sq, bs)
        order = "left"
    elif form == "polar":
        if math.sin(p.phi) < 0.0:
            sq = two_mode_squeezer((2, 3), u, axis_angle=math.pi)
            ops = (sq, bs)
            order = "left"
        else:
            sq = two_mode_squeezer((2, 3), u, axis_angle=0.0)
            ops = (bs, sq)
            order = "right"
    else:
        raise ValueError("form must be 'polar' or 'swap'")
    product = ops[0].symplectic @ ops[1].symplectic
    return CircuitPrediction(ops=ops, order=order, product=product)


def _prediction_for_side(p, side):
    if not _on_manifold(p) or p.c23 >= 1.0:
        return None
    if math.sin(p.phi) < 0.0:
        return predicted_factors(p, form="polar") if side == "left" else None
    if side == "right":
        return predicted_factors(p, form="polar")
    if abs(p.c13 - 1.0) <= tol.MANIFOLD_TOL:
        return predicted_factors(p, form="swap")
    return None


def verify_polar(p, side="left"):
    """Numeric polar decomposition of the resonant scattering matrix,
    checked against the predicted factors where a prediction exists.

    The comparison allows the global sign freedom of the scattering matrix
    (the positive factor of +-S is identical; only the orthogonal factor
    flips sign).
    """
    s = scattering.scattering_at(p, 0.0).s_e
    factors = linalg.polar(s, side)
    residual = linalg.max_abs_diff(factors.reconstruct(), s)
    pred = _prediction_for_side(p, side)
    if pred is None:
        return PolarCheck(residual=residual, factor_match=False, sign=0,
                          r_factor=factors.r, u_factor=factors.u)
    if pred.order == "left":
        r_pred = pred.ops[0].symplectic
        u_pred = pred.ops[1].symplectic
    else:
        u_pred = pred.ops[0].symplectic
        r_pred = pred.ops[1].symplectic
    r_err = linalg.max_abs_diff(factors.r, r_pred)
    u_err_minus = linalg.max_abs_diff(factors.u, -1.0 * u_pred)
    u_err_plus = linalg.max_abs_diff(factors.u, u_pred)
    sign = -1 if u_err_minus <= u_err_plus else 1
    u_err = min(u_err_minus, u_err_plus)
    match = r_err < tol.CIRCUIT_RECONSTRUCTION and u_err < tol.CIRCUIT_RECONSTRUCTION
    return PolarCheck(residual=residual, factor_match=match, sign=sign,
                      r_factor=factors.r, u_factor=factors.u)


def swap_figure_of_merit(config):
    """Ideal entanglement-swapping output for two loops feeding a Bell-type
    measurement: the hot-mode outputs form a two-mode squeezed vacuum with

        tanh(r) = 4 sqrt(C_A C_B) / ((1 + C_A)(1 + C_B)),

    log-negativity 2 r (natural units) and unit purity, independent of the
    thermal noise entering either hot mode."""
    ca, cb = config.coop_a, config.coop_b
    t = 4.0 * math.sqrt(ca * cb) / ((1.0 + ca) * (1.0 + cb))
    if t >= 1.0:
        raise ValueError("swap argument reached the artanh domain boundary")
    r = math.atanh(t)
    return SwapReport(r=r, log_negativity=2.0 * r, purity=1.0)
