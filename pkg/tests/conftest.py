import numpy as np
import pytest

from nrloop.linalg import ComplexMat, RealMat


def to_np(m):
    """Matrix -> numpy array, for cross-checks against numpy/scipy."""
    dtype = complex if isinstance(m, ComplexMat) else float
    return np.array(m.data, dtype=dtype).reshape(m.rows, m.cols)


def from_np(a):
    a = np.asarray(a)
    if np.iscomplexobj(a):
        return ComplexMat(a.shape[0], a.shape[1], [complex(v) for v in a.ravel()])
    return RealMat(a.shape[0], a.shape[1], [float(v) for v in a.ravel()])


@pytest.fixture
def np_helpers():
    return to_np, from_np
