"""Dense small-matrix layer.

Value-semantic real and complex matrices (row-major) plus the operations the
rest of the package is built on: inversion, symmetric eigendecomposition,
SPD square root, matrix exponential, polar decomposition, determinants and
norms.  Also provides the 2 x 2 quadrature-basis building blocks (X, Z, J)
and the symplectic form.  Everything here is pure and safe to call from
concurrent sweep workers; the heavy loops live in the selected kernel
backend.
"""

import math
from dataclasses import dataclass

from .backend import kernels
from . import tolerances as tol

__all__ = [
    "RealMat",
    "ComplexMat",
    "PolarFactors",
    "invert",
    "det",
    "sym_eig",
    "sqrt_spd",
    "expm",
    "polar",
    "frobenius",
    "abs_entrywise",
    "eig_general",
    "hermitian_part_eigvals",
    "symplectic_defect",
    "max_abs_diff",
    "mat_x",
    "mat_z",
    "mat_j",
    "omega_form",
]


def _check_finite_real(data):
    for v in data:
        if not math.isfinite(v):
            raise ValueError("matrix entries must be finite")


def _check_finite_complex(data):
    for v in data:
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError("matrix entries must be finite")


class RealMat:
    """Dense real matrix with row-major storage.

    Treated as immutable by convention: all operations return new instances.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data):
        rows = int(rows)
        cols = int(cols)
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        data = [float(v) for v in data]
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        _check_finite_real(data)
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls(rows, cols, [0.0] * (rows * cols))

    @classmethod
    def identity(cls, n):
        data = [0.0] * (n * n)
        for i in range(n):
            data[i * n + i] = 1.0
        return cls(n, n, data)

    @classmethod
    def diag(cls, values):
        values = list(values)
        n = len(values)
        data = [0.0] * (n * n)
        for i, v in enumerate(values):
            data[i * n + i] = float(v)
        return cls(n, n, data)

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0])
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        flat = [float(v) for r in rows for v in r]
        return cls(n, m, flat)

    @classmethod
    def from_blocks(cls, grid, block=2):
        """Assemble from a grid of ``block x block`` matrices (None = zero)."""
        nb = len(grid)
        mb = len(grid[0])
        n, m = nb * block, mb * block
        data = [0.0] * (n * m)
        for bi, row in enumerate(grid):
            if len(row) != mb:
                raise ValueError("ragged block grid")
            for bj, blk in enumerate(row):
                if blk is None:
                    continue
                if blk.rows != block or blk.cols != block:
                    raise ValueError("block size mismatch")
                for i in range(block):
                    for j in range(block):
                        data[(bi * block + i) * m + (bj * block + j)] = blk.data[i * block + j]
        return cls(n, m, data)

    # -- shape / access -------------------------------------------------
    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, key):
        i, j = key
        return self.data[i * self.cols + j]

    def to_rows(self):
        return [self.data[i * self.cols:(i + 1) * self.cols] for i in range(self.rows)]

    def submatrix(self, r0, c0, nr, nc):
        out = [0.0] * (nr * nc)
        for i in range(nr):
            for j in range(nc):
                out[i * nc + j] = self.data[(r0 + i) * self.cols + (c0 + j)]
        return RealMat(nr, nc, out)

    def gather(self, row_idx, col_idx):
        out = [self.data[i * self.cols + j] for i in row_idx for j in col_idx]
        return RealMat(len(row_idx), len(col_idx), out)

    def block2x2(self, bi, bj):
        """2 x 2 sub-block at block coordinates (0-based)."""
        return self.submatrix(2 * bi, 2 * bj, 2, 2)

    # -- arithmetic -------------------------------------------------
    def __matmul__(self, other):
        if isinstance(other, ComplexMat):
            return self.to_complex() @ other
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        return RealMat(self.rows, other.cols,
                       kernels.rmul(self.data, other.data, self.rows, self.cols, other.cols))

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in add")
        return RealMat(self.rows, self.cols, [x + y for x, y in zip(self.data, other.data)])

    def __sub__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in sub")
        return RealMat(self.rows, self.cols, [x - y for x, y in zip(self.data, other.data)])

    def __neg__(self):
        return RealMat(self.rows, self.cols, [-x for x in self.data])

    def __mul__(self, scalar):
        s = float(scalar)
        return RealMat(self.rows, self.cols, [s * x for x in self.data])

    __rmul__ = __mul__

    @property
    def T(self):
        out = [0.0] * (self.rows * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out[j * self.rows + i] = self.data[i * self.cols + j]
        return RealMat(self.cols, self.rows, out)

    def scale_rows(self, factors):
        """diag(factors) @ self; len(factors) == rows."""
        out = list(self.data)
        for i, f in enumerate(factors):
            base = i * self.cols
            for j in range(self.cols):
                out[base + j] *= f
        return RealMat(self.rows, self.cols, out)

    def scale_cols(self, factors):
        """self @ diag(factors); len(factors) == cols."""
        out = list(self.data)
        for i in range(self.rows):
            base = i * self.cols
            for j, f in enumerate(factors):
                out[base + j] *= f
        return RealMat(self.rows, self.cols, out)

    def max_abs(self):
        return max(abs(v) for v in self.data)

    def to_complex(self):
        return ComplexMat(self.rows, self.cols, [complex(v) for v in self.data])

    def __repr__(self):
        body = "\n ".join(
            "[" + ", ".join(f"{v: .6g}" for v in row) + "]" for row in self.to_rows()
        )
        return f"RealMat({self.rows}x{self.cols},\n {body})"


class ComplexMat:
    """Dense complex matrix with row-major storage; used for the resolvent
    (i omega I + M)^-1 away from resonance."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data):
        rows = int(rows)
        cols = int(cols)
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        data = [complex(v) for v in data]
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        _check_finite_complex(data)
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def identity(cls, n):
        data = [0j] * (n * n)
        for i in range(n):
            data[i * n + i] = 1.0 + 0j
        return cls(n, n, data)

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, key):
        i, j = key
        return self.data[i * self.cols + j]

    def submatrix(self, r0, c0, nr, nc):
        out = [0j] * (nr * nc)
        for i in range(nr):
            for j in range(nc):
                out[i * nc + j] = self.data[(r0 + i) * self.cols + (c0 + j)]
        return ComplexMat(nr, nc, out)

    def block2x2(self, bi, bj):
        return self.submatrix(2 * bi, 2 * bj, 2, 2)

    def __matmul__(self, other):
        if isinstance(other, RealMat):
            other = other.to_complex()
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        return ComplexMat(self.rows, other.cols,
                          kernels.cmul(self.data, other.data, self.rows, self.cols, other.cols))

    def __add__(self, other):
        if isinstance(other, RealMat):
            other = other.to_complex()
        return ComplexMat(self.rows, self.cols, [x + y for x, y in zip(self.data, other.data)])

    def __sub__(self, other):
        if isinstance(other, RealMat):
            other = other.to_complex()
        return ComplexMat(self.rows, self.cols, [x - y for x, y in zip(self.data, other.data)])

    def __mul__(self, scalar):
        s = complex(scalar)
        return ComplexMat(self.rows, self.cols, [s * x for x in self.data])

    __rmul__ = __mul__

    @property
    def T(self):
        out = [0j] * (self.rows * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out[j * self.rows + i] = self.data[i * self.cols + j]
        return ComplexMat(self.cols, self.rows, out)

    def conj(self):
        return ComplexMat(self.rows, self.cols, [v.conjugate() for v in self.data])

    def real(self):
        return RealMat(self.rows, self.cols, [v.real for v in self.data])

    def imag(self):
        return RealMat(self.rows, self.cols, [v.imag for v in self.data])

    def max_abs(self):
        return max(abs(v) for v in self.data)

    def max_abs_imag(self):
        return max(abs(v.imag) for v in self.data)

    def scale_rows(self, factors):
        out = list(self.data)
        for i, f in enumerate(factors):
            base = i * self.cols
            for j in range(self.cols):
                out[base + j] *= f
        return ComplexMat(self.rows, self.cols, out)

    def scale_cols(self, factors):
        out = list(self.data)
        for i in range(self.rows):
            base = i * self.cols
            for j, f in enumerate(factors):
                out[base + j] *= f
        return ComplexMat(self.rows, self.cols, out)

    def __repr__(self):
        return f"ComplexMat({self.rows}x{self.cols})"


@dataclass(frozen=True)
class PolarFactors:
    """Polar factorization of an invertible matrix.

    ``side == "left"`` means ``r @ u`` reconstructs the input, ``"right"``
    means ``u @ r``.  ``r`` is symmetric positive-definite and ``u`` is
    orthogonal; for symplectic input both factors are symplectic.
    """

    r: RealMat
    u: RealMat
    side: str

    def reconstruct(self):
        return self.r @ self.u if self.side == "left" else self.u @ self.r


# ---------------------------------------------------------------------------
# quadrature-basis building blocks


def mat_x():
    """Pauli-X-like quadrature swap [[0, 1], [1, 0]]."""
    return RealMat(2, 2, [0.0, 1.0, 1.0, 0.0])


def mat_z():
    """Quadrature reflection [[1, 0], [0, -1]]."""
    return RealMat(2, 2, [1.0, 0.0, 0.0, -1.0])


def mat_j():
    """Single-mode symplectic form [[0, 1], [-1, 0]]."""
    return RealMat(2, 2, [0.0, 1.0, -1.0, 0.0])


def omega_form(n_modes):
    """Symplectic form diag(J, ..., J) for n modes in (X1, P1, X2, P2, ...)
    ordering."""
    n = 2 * n_modes
    data = [0.0] * (n * n)
    for k in range(n_modes):
        data[(2 * k) * n + (2 * k + 1)] = 1.0
        data[(2 * k + 1) * n + (2 * k)] = -1.0
    return RealMat(n, n, data)


# ---------------------------------------------------------------------------
# operations


def _require_square(m, what):
    if not m.is_square:
        raise ValueError(f"{what} requires a square matrix, got {m.rows}x{m.cols}")


def invert(m):
    """Inverse of a square real or complex matrix via partial-pivot Gaussian
    elimination.  Raises :class:`nrloop.errors.SingularMatrixError` (carrying
    the pivot magnitude) for singular or near-singular input."""
    _require_square(m, "invert")
    if isinstance(m, ComplexMat):
        return ComplexMat(m.rows, m.cols, kernels.cinv(m.data, m.rows))
    return RealMat(m.rows, m.cols, kernels.rinv(m.data, m.rows))


def solve(a, b):
    """Solve ``a @ x = b`` for real or complex square ``a``."""
    _require_square(a, "solve")
    if a.rows != b.rows:
        raise ValueError("shape mismatch in solve")
    if isinstance(a, ComplexMat) or isinstance(b, ComplexMat):
        ac = a.to_complex() if isinstance(a, RealMat) else a
        bc = b.to_complex() if isinstance(b, RealMat) else b
        return ComplexMat(b.rows, b.cols, kernels.csolve(ac.data, bc.data, a.rows, b.cols))
    return RealMat(b.rows, b.cols, kernels.rsolve(a.data, b.data, a.rows, b.cols))


def det(m):
    """Determinant of a square real matrix."""
    _require_square(m, "det")
    return kernels.rdet(m.data, m.rows)


def sym_eig(m):
    """Eigendecomposition of a symmetric real matrix.

    Returns ``(values, vectors)``: eigenvalues ascending, eigenvectors
    orthonormal in the columns of ``vectors`` so that
    ``m @ v_k = values[k] * v_k``.  Input asymmetry beyond
    ``tolerances.SYMMETRY_TOL`` violates the contract and raises.
    """
    _require_square(m, "sym_eig")
    if max_abs_diff(m, m.T) > tol.SYMMETRY_TOL * max(1.0, m.max_abs()):
        raise ValueError("sym_eig requires a symmetric matrix")
    vals, vecs = kernels.jacobi_eig(m.data, m.rows)
    return vals, RealMat(m.rows, m.rows, vecs)


def sqrt_spd(m):
    """Principal square root of a symmetric positive-definite matrix."""
    vals, vecs = sym_eig(m)
    if vals[0] <= 0.0:
        raise ValueError(f"matrix is not positive-definite (min eigenvalue {vals[0]:.3e})")
    roots = [math.sqrt(v) for v in vals]
    return vecs @ RealMat.diag(roots) @ vecs.T


def expm(g):
    """Matrix exponential of a square real matrix (scaling and squaring)."""
    _require_square(g, "expm")
    return RealMat(g.rows, g.rows, kernels.rexpm(g.data, g.rows))


def polar(s, side="left"):
    """Polar decomposition of an invertible real matrix.

    ``side="left"`` returns factors with ``r @ u == s`` where
    ``r = sqrt_spd(s @ s.T)``; ``side="right"`` returns ``u @ r == s`` with
    ``r = sqrt_spd(s.T @ s)``.
    """
    _require_square(s, "polar")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if side == "left":
        r = sqrt_spd(s @ s.T)
        u = invert(r) @ s
    else:
        r = sqrt_spd(s.T @ s)
        u = s @ invert(r)
    return PolarFactors(r=r, u=u, side=side)


def frobenius(m):
    """Frobenius norm."""
    if isinstance(m, ComplexMat):
        return math.sqrt(sum((v.real * v.real + v.imag * v.imag) for v in m.data))
    return math.sqrt(sum(v * v for v in m.data))


def abs_entrywise(m):
    """Entrywise absolute value; complex input yields the entrywise modulus
    as a real matrix."""
    if isinstance(m, ComplexMat):
        return RealMat(m.rows, m.cols, [abs(v) for v in m.data])
    return RealMat(m.rows, m.cols, [abs(v) for v in m.data])


def eig_general(m):
    """Eigenvalues of a general square real matrix, sorted by (real, imag)."""
    _require_square(m, "eig_general")
    return kernels.eig_general(m.data, m.rows)


def hermitian_part_eigvals(a, b):
    """Eigenvalues of the Hermitian matrix A + iB (A symmetric, B
    antisymmetric), computed through the real symmetric embedding
    [[A, -B], [B, A]] whose spectrum is that of A + iB with each eigenvalue
    doubled.  Returns the n distinct-slot eigenvalues ascending."""
    n = a.rows
    embed = [0.0] * (4 * n * n)
    w = 2 * n
    for i in range(n):
        for j in range(n):
            embed[i * w + j] = a.data[i * n + j]
            embed[(i + n) * w + (j + n)] = a.data[i * n + j]
            embed[i * w + (j + n)] = -b.data[i * n + j]
            embed[(i + n) * w + j] = b.data[i * n + j]
    vals, _ = kernels.jacobi_eig(embed, w)
    return vals[::2]


def symplectic_defect(s):
    """Max-abs of S Omega S^T - Omega; zero for exactly symplectic S."""
    n_modes = s.rows // 2
    om = omega_form(n_modes)
    return max_abs_diff(s @ om @ s.T, om)


def max_abs_diff(a, b):
    """Max-abs entrywise difference of two same-shape matrices."""
    if a.rows != b.rows or a.cols != b.cols:
        raise ValueError("shape mismatch")
    return max(abs(x - y) for x, y in zip(a.data, b.data))
