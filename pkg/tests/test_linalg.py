import math
import random

import numpy as np
import pytest

from conftest import from_np, to_np
from nrloop import linalg
from nrloop import tolerances as tol
from nrloop.errors import SingularMatrixError
from nrloop.linalg import ComplexMat, RealMat


def random_mat(rng, n, lo=-10.0, hi=10.0):
    return RealMat(n, n, [rng.uniform(lo, hi) for _ in range(n * n)])


def random_sym(rng, n, lo=-10.0, hi=10.0):
    m = random_mat(rng, n, lo, hi)
    return 0.5 * (m + m.T)


def random_symplectic(rng, n_modes, scale=1.0):
    """exp(Omega G) for random symmetric G; exactly symplectic up to expm
    accuracy."""
    n = 2 * n_modes
    g = random_sym(rng, n, -scale, scale)
    return linalg.expm(linalg.omega_form(n_modes) @ g)


# ---------------------------------------------------------------------------
# inversion


def test_invert_identity():
    m = RealMat.identity(6)
    assert linalg.max_abs_diff(linalg.invert(m), m) == 0.0


def test_invert_diagonal():
    m = RealMat.diag([2.0, 4.0])
    assert linalg.max_abs_diff(linalg.invert(m), RealMat.diag([0.5, 0.25])) == 0.0


def test_invert_random_residual():
    rng = random.Random(101)
    eye = RealMat.identity(6)
    for _ in range(1000):
        m = random_mat(rng, 6)
        inv = linalg.invert(m)
        assert linalg.max_abs_diff(m @ inv, eye) < tol.INV_RESIDUAL


def test_invert_complex_resolvent():
    rng = random.Random(102)
    eye = ComplexMat.identity(6)
    for _ in range(200):
        m = random_mat(rng, 6)
        omega = rng.uniform(-3.0, 3.0)
        a = m.to_complex() + (1j * omega) * eye
        inv = linalg.invert(a)
        assert (a @ inv - eye).max_abs() < tol.INV_RESIDUAL


def test_invert_singular_reports_pivot():
    m = RealMat.from_rows([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(SingularMatrixError) as err:
        linalg.invert(m)
    assert err.value.pivot >= 0.0


def test_invert_near_singular_threshold():
    eps = 1e-14
    m = RealMat.from_rows([[1.0, 1.0], [1.0, 1.0 + eps]])
    with pytest.raises(SingularMatrixError):
        linalg.invert(m)


def test_invert_rejects_nonsquare():
    with pytest.raises(ValueError):
        linalg.invert(RealMat.zeros(2, 3))


def test_solve_matches_invert():
    rng = random.Random(103)
    a = random_mat(rng, 6)
    b = RealMat(6, 2, [rng.uniform(-5, 5) for _ in range(12)])
    x = linalg.solve(a, b)
    assert linalg.max_abs_diff(a @ x, b) < 1e-10


# ---------------------------------------------------------------------------
# symmetric eigendecomposition


def test_sym_eig_diagonal():
    vals, vecs = linalg.sym_eig(RealMat.diag([3.0, 1.0]))
    assert vals == [1.0, 3.0]
    assert linalg.max_abs_diff(vecs @ vecs.T, RealMat.identity(2)) < 1e-14


def test_sym_eig_exchange():
    vals, _ = linalg.sym_eig(linalg.mat_x())
    assert abs(vals[0] + 1.0) < 1e-14 and abs(vals[1] - 1.0) < 1e-14


def test_sym_eig_reconstruction_random():
    rng = random.Random(104)
    for _ in range(1000):
        n = rng.choice([2, 4, 6])
        m = random_sym(rng, n)
        vals, vecs = linalg.sym_eig(m)
        assert vals == sorted(vals)
        recon = vecs @ RealMat.diag(vals) @ vecs.T
        assert linalg.max_abs_diff(recon, m) < tol.SYM_EIG_RESIDUAL
        assert linalg.max_abs_diff(vecs.T @ vecs, RealMat.identity(n)) < 1e-12


def test_sym_eig_matches_numpy():
    rng = random.Random(105)
    for _ in range(100):
        m = random_sym(rng, 6)
        vals, _ = linalg.sym_eig(m)
        ref = np.linalg.eigvalsh(to_np(m))
        assert np.abs(np.array(vals) - ref).max() < 1e-10


def test_sym_eig_rejects_asymmetric():
    with pytest.raises(ValueError):
        linalg.sym_eig(RealMat.from_rows([[0.0, 1.0], [0.5, 0.0]]))


# ---------------------------------------------------------------------------
# SPD square root


def test_sqrt_spd_identity():
    m = RealMat.identity(4)
    assert linalg.max_abs_diff(linalg.sqrt_spd(m), m) < 1e-14


def test_sqrt_spd_diagonal():
    r = linalg.sqrt_spd(RealMat.diag([4.0, 9.0]))
    assert linalg.max_abs_diff(r, RealMat.diag([2.0, 3.0])) < 1e-14


def test_sqrt_spd_of_symplectic_gram():
    rng = random.Random(106)
    for _ in range(50):
        s = random_symplectic(rng, 3, scale=0.6)
        gram = s @ s.T
        r = linalg.sqrt_spd(gram)
        assert linalg.max_abs_diff(r @ r, gram) < tol.SQRT_RESIDUAL
        assert linalg.max_abs_diff(r, r.T) < 1e-10


def test_sqrt_spd_rejects_indefinite():
    with pytest.raises(ValueError):
        linalg.sqrt_spd(RealMat.diag([1.0, -1.0]))


# ---------------------------------------------------------------------------
# matrix exponential


def test_expm_zero():
    assert linalg.max_abs_diff(linalg.expm(RealMat.zeros(3)), RealMat.identity(3)) == 0.0


def test_expm_rotation_closed_form():
    theta = math.pi / 2.0
    g = RealMat.from_rows([[0.0, theta], [-theta, 0.0]])
    expected = RealMat.from_rows([[0.0, 1.0], [-1.0, 0.0]])
    assert linalg.max_abs_diff(linalg.expm(g), expected) < 1e-12


def test_expm_two_mode_squeezer_closed_form():
    # Generator with Z coupling blocks exponentiates to hyperbolic blocks.
    for r in (0.3, 1.0, 2.2):
        z = linalg.mat_z()
        gen = RealMat.from_blocks([[None, r * z], [r * z, None]])
        expected = RealMat.from_blocks([
            [math.cosh(r) * RealMat.identity(2), math.sinh(r) * z],
            [math.sinh(r) * z, math.cosh(r) * RealMat.identity(2)],
        ])
        assert linalg.max_abs_diff(linalg.expm(gen), expected) < 1e-11


def test_expm_inverse_identity():
    rng = random.Random(107)
    eye = RealMat.identity(6)
    for _ in range(300):
        g = random_mat(rng, 6, -1.0, 1.0)
        scale = 5.0 * rng.random() / max(linalg.frobenius(g), 1e-12)
        g = scale * g
        assert linalg.max_abs_diff(linalg.expm(g) @ linalg.expm(-g), eye) < tol.EXPM_INVERSE_RESIDUAL


def test_expm_symplectic_generator():
    rng = random.Random(108)
    om = linalg.omega_form(3)
    for _ in range(100):
        g = random_sym(rng, 6, -1.0, 1.0)
        s = linalg.expm(om @ g)
        assert linalg.symplectic_defect(s) < tol.SYMPLECTIC_DEFECT


def test_expm_matches_scipy():
    sla = pytest.importorskip("scipy.linalg")
    rng = random.Random(109)
    for _ in range(50):
        g = random_mat(rng, 6, -1.5, 1.5)
        ours = to_np(linalg.expm(g))
        ref = sla.expm(to_np(g))
        assert np.abs(ours - ref).max() < 1e-10 * max(1.0, np.abs(ref).max())


# ---------------------------------------------------------------------------
# polar decomposition


def test_polar_orthogonal_input():
    theta = 0.7
    u_in = RealMat.from_blocks([
        [math.cos(theta) * RealMat.identity(2), math.sin(theta) * linalg.mat_j()],
        [math.sin(theta) * linalg.mat_j(), math.cos(theta) * RealMat.identity(2)],
    ])
    pf = linalg.polar(u_in, "left")
    assert linalg.max_abs_diff(pf.r, RealMat.identity(4)) < 1e-10
    assert linalg.max_abs_diff(pf.u, u_in) < 1e-10


def test_polar_spd_input():
    rng = random.Random(110)
    s = random_symplectic(rng, 2, 0.5)
    spd = s @ s.T
    pf = linalg.polar(spd, "right")
    assert linalg.max_abs_diff(pf.u, RealMat.identity(4)) < 1e-9
    assert linalg.max_abs_diff(pf.r, spd) < 1e-9


@pytest.mark.parametrize("side", ["left", "right"])
def test_polar_reconstruction_random(side):
    rng = random.Random(111)
    for _ in range(100):
        m = random_mat(rng, 6, -3.0, 3.0)
        try:
            pf = linalg.polar(m, side)
        except SingularMatrixError:
            continue
        assert linalg.max_abs_diff(pf.reconstruct(), m) < tol.POLAR_RECONSTRUCTION
        assert linalg.max_abs_diff(pf.r, pf.r.T) < tol.POLAR_R_SYMMETRY
        assert linalg.max_abs_diff(pf.u.T @ pf.u, RealMat.identity(6)) < tol.POLAR_U_ORTHOGONALITY


def test_polar_rejects_singular():
    with pytest.raises((SingularMatrixError, ValueError)):
        linalg.polar(RealMat.zeros(4), "left")


# ---------------------------------------------------------------------------
# norms, determinant, misc


def test_frobenius_zero():
    assert linalg.frobenius(RealMat.zeros(2)) == 0.0


def test_frobenius_pythagorean():
    assert linalg.frobenius(RealMat.diag([3.0, 4.0])) == 5.0


def test_abs_entrywise():
    m = RealMat.from_rows([[-1.0, 2.0], [0.0, -3.0]])
    expected = RealMat.from_rows([[1.0, 2.0], [0.0, 3.0]])
    assert linalg.max_abs_diff(linalg.abs_entrywise(m), expected) == 0.0


def test_frobenius_zero_iff_zero():
    rng = random.Random(112)
    for _ in range(50):
        m = random_mat(rng, 3)
        assert (linalg.frobenius(m) == 0.0) == (m.max_abs() == 0.0)


def test_det_matches_numpy():
    rng = random.Random(113)
    for _ in range(100):
        n = rng.choice([2, 4, 6])
        m = random_mat(rng, n, -3.0, 3.0)
        assert abs(linalg.det(m) - np.linalg.det(to_np(m))) < 1e-8 * max(1.0, abs(linalg.det(m)))


def test_eig_general_matches_numpy():
    rng = random.Random(114)
    for _ in range(200):
        n = rng.choice([2, 3, 4, 6])
        m = random_mat(rng, n, -5.0, 5.0)
        mine = linalg.eig_general(m)
        ref = list(np.linalg.eigvals(to_np(m)))
        for z in mine:
            j = min(range(len(ref)), key=lambda i: abs(ref[i] - z))
            assert abs(ref[j] - z) < 1e-9
            ref.pop(j)


def test_eig_general_degenerate_pairs():
    m = RealMat.diag([-0.5, -0.5, -1.0, -1.0, -1.5, -1.5])
    vals = linalg.eig_general(m)
    expected = [-1.5, -1.5, -1.0, -1.0, -0.5, -0.5]
    assert all(abs(v - e) < 1e-12 for v, e in zip(vals, expected))


def test_hermitian_part_eigvals():
    rng = random.Random(115)
    for _ in range(50):
        n = 6
        a = random_sym(rng, n)
        b = random_mat(rng, n)
        b = 0.5 * (b - b.T)
        vals = linalg.hermitian_part_eigvals(a, b)
        ref = np.linalg.eigvalsh(to_np(a) + 1j * to_np(b))
        assert np.abs(np.array(vals) - ref).max() < 1e-9


def test_quadrature_blocks():
    x, z, j = linalg.mat_x(), linalg.mat_z(), linalg.mat_j()
    assert linalg.max_abs_diff(x @ x, RealMat.identity(2)) == 0.0
    assert linalg.max_abs_diff(z @ z, RealMat.identity(2)) == 0.0
    assert linalg.max_abs_diff(j @ j, -1.0 * RealMat.identity(2)) == 0.0
    om = linalg.omega_form(3)
    assert linalg.max_abs_diff(om.T, -1.0 * om) == 0.0


# ---------------------------------------------------------------------------
# backend agreement


def test_backends_agree():
    from nrloop import _kernels_py

    try:
        from nrloop import _kernels_cy
    except ImportError:
        pytest.skip("compiled kernel backend not built")
    rng = random.Random(116)
    for _ in range(50):
        n = rng.choice([2, 4, 6])
        a = [rng.uniform(-5, 5) for _ in range(n * n)]
        b = [rng.uniform(-5, 5) for _ in range(n * n)]
        assert max(abs(x - y) for x, y in zip(
            _kernels_py.rmul(a, b, n, n, n), _kernels_cy.rmul(a, b, n, n, n))) < 1e-13
        assert max(abs(x - y) for x, y in zip(
            _kernels_py.rinv(a, n), _kernels_cy.rinv(a, n))) < 1e-10
        assert max(abs(x - y) for x, y in zip(
            _kernels_py.rexpm([v * 0.3 for v in a], n),
            _kernels_cy.rexpm([v * 0.3 for v in a], n))) < 1e-11
        sym = [0.5 * (a[i * n + j] + a[j * n + i]) for i in range(n) for j in range(n)]
        vp, _ = _kernels_py.jacobi_eig(sym, n)
        vc, _ = _kernels_cy.jacobi_eig(sym, n)
        assert max(abs(x - y) for x, y in zip(vp, vc)) < 1e-11
        ep = _kernels_py.eig_general(a, n)
        ec = _kernels_cy.eig_general(a, n)
        for z in ep:
            j = min(range(len(ec)), key=lambda i: abs(ec[i] - z))
            assert abs(ec[j] - z) < 1e-9
            ec.pop(j)
