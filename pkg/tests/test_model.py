import math
import random

import numpy as np
import pytest

from conftest import to_np
from nrloop import linalg, model
from nrloop import tolerances as tol
from nrloop.errors import UnstableSystemError
from nrloop.linalg import RealMat
from nrloop.model import LoopParams, ModeParams, TmsParams


def unit_modes(n_th=(0.0, 0.0, 0.0)):
    return tuple(ModeParams(kappa_e=1.0, n_th=n) for n in n_th)


# ---------------------------------------------------------------------------
# parameter records


def test_mode_params_validation():
    with pytest.raises(ValueError):
        ModeParams(kappa_e=0.0, kappa_int=0.0)
    with pytest.raises(ValueError):
        ModeParams(kappa_e=-1.0)
    with pytest.raises(ValueError):
        ModeParams(n_th=-0.1)
    m = ModeParams(kappa_e=0.7, kappa_int=0.3, n_th=2.0)
    assert m.kappa == 1.0
    assert m.thermal_int == 2.0
    assert ModeParams(n_th=2.0, n_th_int=5.0).thermal_int == 5.0


def test_cooperativity_round_trip():
    p = LoopParams.from_cooperativities(c12=0.5, c13=1.0, c23=0.25, phi=0.3,
                                        kappas=(1.0, 2.0, 4.0))
    assert abs(p.c12 - 0.5) < 1e-14
    assert abs(p.c13 - 1.0) < 1e-14
    assert abs(p.c23 - 0.25) < 1e-14
    assert abs(p.eta - p.g23 / p.g13) == 0.0


def test_nrl_matched_applies_condition():
    p = model.nrl_matched(c23=0.4, c13=1.5, phi=-math.pi / 2)
    assert abs(p.c12 - 0.4 * 1.5) < 1e-14


def test_tms_params():
    p = TmsParams.from_cooperativity(0.5, kappas=(2.0, 0.5))
    assert abs(p.c12 - 0.5) < 1e-14


# ---------------------------------------------------------------------------
# dynamical matrix


def test_dynamical_matrix_decoupled():
    p = LoopParams(modes=unit_modes())
    m = model.dynamical_matrix(p)
    assert linalg.max_abs_diff(m, -0.5 * RealMat.identity(6)) == 0.0


def test_dynamical_matrix_beam_splitter_blocks():
    p = LoopParams(modes=unit_modes(), g13=0.8)
    m = model.dynamical_matrix(p)
    expected = 0.8 * linalg.mat_j()
    assert linalg.max_abs_diff(m.block2x2(0, 2), expected) == 0.0
    assert linalg.max_abs_diff(m.block2x2(2, 0), expected) == 0.0
    assert m.block2x2(0, 1).max_abs() == 0.0


def test_dynamical_matrix_phase_blocks():
    p = LoopParams(modes=unit_modes(), g23=0.6, phi=math.pi / 2)
    m = model.dynamical_matrix(p)
    assert linalg.max_abs_diff(m.block2x2(1, 2), 0.6 * linalg.mat_z()) < 1e-16
    p0 = LoopParams(modes=unit_modes(), g23=0.6, phi=0.0)
    m0 = model.dynamical_matrix(p0)
    assert linalg.max_abs_diff(m0.block2x2(1, 2), -0.6 * linalg.mat_x()) == 0.0


def test_dynamical_matrix_linear_in_couplings():
    base = dict(modes=unit_modes(), phi=0.9)
    m1 = model.dynamical_matrix(LoopParams(g12=0.3, **base))
    m2 = model.dynamical_matrix(LoopParams(g12=0.6, **base))
    m0 = model.dynamical_matrix(LoopParams(**base))
    assert linalg.max_abs_diff(m2 - m0, 2.0 * (m1 - m0)) < 1e-15


def test_dynamical_matrix_continuous_in_phi():
    p = lambda phi: LoopParams(modes=unit_modes(), g23=1.0, phi=phi)
    m1 = model.dynamical_matrix(p(1.0))
    m2 = model.dynamical_matrix(p(1.0 + 1e-9))
    assert linalg.max_abs_diff(m1, m2) < 1e-8


# ---------------------------------------------------------------------------
# stability


def test_routh_hurwitz_nonreciprocity_point():
    p = LoopParams.from_cooperativities(c12=0.5, c13=1.0, c23=0.5, phi=math.pi / 2)
    verdict = model.routh_hurwitz(p)
    assert verdict.stable
    # Under the matching constraint the second condition factorizes to
    # (1 - C23)(1 + C13) = 1.
    label, value, ok = verdict.conditions[1]
    assert ok and abs(value - (1.0 - 0.5) * (1.0 + 1.0)) < 1e-12
    assert verdict.max_eig_real_part < 0.0


def test_routh_hurwitz_zero_couplings():
    p = LoopParams(modes=unit_modes(), phi=math.pi / 2)
    verdict = model.routh_hurwitz(p)
    assert verdict.stable
    assert all(ok for _, _, ok in verdict.conditions)


def test_routh_hurwitz_unstable_matched():
    p = model.nrl_matched(c23=1.2, c13=1.0, phi=math.pi / 2)
    verdict = model.routh_hurwitz(p)
    assert not verdict.stable
    _, value, ok = verdict.conditions[1]
    assert not ok and value < 0.0 and abs(value - (1.0 - 1.2) * 2.0) < 1e-12
    assert verdict.max_eig_real_part > 0.0


def test_routh_hurwitz_general_phase_numeric_label():
    p = model.nrl_matched(c23=0.5, c13=1.0, phi=0.7)
    verdict = model.routh_hurwitz(p)
    assert len(verdict.conditions) == 1
    assert verdict.conditions[0][0].startswith("numeric")
    assert verdict.stable


def test_verdict_matches_eigenvalues_random():
    rng = random.Random(201)
    for _ in range(300):
        p = LoopParams.from_cooperativities(
            c12=rng.uniform(0.0, 2.0), c13=rng.uniform(0.0, 2.0), c23=rng.uniform(0.0, 2.0),
            phi=rng.choice((-math.pi / 2, math.pi / 2)),
            kappas=tuple(rng.uniform(0.1, 10.0) for _ in range(3)))
        verdict = model.routh_hurwitz(p)
        assert verdict.stable == (verdict.max_eig_real_part < 0.0)


# ---------------------------------------------------------------------------
# drift eigenvalues


def test_drift_eigenvalues_decoupled():
    p = LoopParams(modes=tuple(ModeParams(kappa_e=k) for k in (1.0, 2.0, 3.0)))
    vals = model.drift_eigenvalues(p)
    expected = [-1.5, -1.5, -1.0, -1.0, -0.5, -0.5]
    assert all(abs(v - e) < 1e-10 for v, e in zip(vals, expected))


def test_drift_eigenvalues_stable_nrl():
    p = model.nrl_matched(c23=0.5, c13=1.0, phi=math.pi / 2)
    assert all(z.real < 0.0 for z in model.drift_eigenvalues(p))


def test_drift_eigenvalues_residual_vs_numpy():
    rng = random.Random(202)
    for _ in range(50):
        p = LoopParams.from_cooperativities(
            c12=rng.uniform(0.0, 1.5), c13=rng.uniform(0.0, 1.5), c23=rng.uniform(0.0, 1.5),
            phi=rng.uniform(-math.pi, math.pi))
        m = to_np(model.dynamical_matrix(p))
        for lam in model.drift_eigenvalues(p):
            sigma_min = np.linalg.svd(m - lam * np.eye(6), compute_uv=False)[-1]
            assert sigma_min < tol.GENERAL_EIG_RESIDUAL


def test_threshold_approach():
    # Max real part approaches zero from below as C23 -> 1 on the matched
    # manifold.
    margins = []
    for c23 in (0.9, 0.99, 0.999):
        p = model.nrl_matched(c23=c23, c13=1.0, phi=math.pi / 2)
        margins.append(model.max_real_eigenvalue(p))
    assert all(m < 0.0 for m in margins)
    assert margins[0] < margins[1] < margins[2]
    assert margins[2] > -1e-2


# ---------------------------------------------------------------------------
# Lyapunov steady state


def test_lyapunov_vacuum():
    p = LoopParams(modes=unit_modes())
    v = model.lyapunov_steady_state(p)
    assert linalg.max_abs_diff(v, 0.5 * RealMat.identity(6)) < 1e-12


def test_lyapunov_thermal_fixed_point():
    p = LoopParams(modes=unit_modes(n_th=(10.0, 0.0, 0.0)))
    v = model.lyapunov_steady_state(p)
    expected = RealMat.diag([10.5, 10.5, 0.5, 0.5, 0.5, 0.5])
    assert linalg.max_abs_diff(v, expected) < 1e-10


def rk4_covariance(m, d, t_end, dt):
    """Independent oracle: integrate dV/dt = M V + V M^T + D to steady
    state."""
    v = np.zeros_like(m)

    def f(v):
        return m @ v + v @ m.T + d

    t = 0.0
    while t < t_end:
        k1 = f(v)
        k2 = f(v + 0.5 * dt * k1)
        k3 = f(v + 0.5 * dt * k2)
        k4 = f(v + dt * k3)
        v = v + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += dt
    return v


def test_lyapunov_matches_time_integration_tms():
    p = TmsParams.from_cooperativity(0.5, n_th=(1.0, 0.0))
    v = model.lyapunov_steady_state(p)
    m = to_np(model.tms_dynamical_matrix(p))
    d = np.diag([1.5, 1.5, 0.5, 0.5])
    ref = rk4_covariance(m, d, t_end=80.0, dt=0.002)
    assert np.abs(to_np(v) - ref).max() < 1e-8


def test_lyapunov_residual_and_physicality():
    rng = random.Random(203)
    count = 0
    while count < 20:
        p = LoopParams.from_cooperativities(
            c12=rng.uniform(0.0, 0.9), c13=rng.uniform(0.0, 1.5), c23=rng.uniform(0.0, 0.9),
            phi=rng.uniform(-math.pi, math.pi),
            n_th=tuple(rng.uniform(0.0, 5.0) for _ in range(3)))
        if not model.is_stable(p):
            continue
        count += 1
        v = model.lyapunov_steady_state(p)
        m = model.dynamical_matrix(p)
        d = RealMat.diag([mm.kappa_e * (mm.n_th + 0.5) + mm.kappa_int * (mm.thermal_int + 0.5)
                          for mm in p.modes for _ in range(2)])
        assert (m @ v + v @ m.T + d).max_abs() < tol.LYAPUNOV_RESIDUAL
        min_eig = linalg.hermitian_part_eigvals(v, 0.5 * linalg.omega_form(3))[0]
        assert min_eig > -tol.PHYSICALITY


def test_lyapunov_rejects_unstable():
    p = model.nrl_matched(c23=1.5, c13=1.0, phi=math.pi / 2)
    with pytest.raises(UnstableSystemError):
        model.lyapunov_steady_state(p)
