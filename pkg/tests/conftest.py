import sys

import numpy as np
import pytest

from padelog.gallery import GallerySpec, build

FOVFAILURE = np.array([[0.1, 1e6], [0.0, 0.1]])


def svd2x2(A):
    """Closed-form singular values of a 2x2 matrix, largest first.

    Small one taken as |det| / sigma_max to avoid cancellation.
    """
    A = np.asarray(A, dtype=complex)
    f2 = np.sum(np.abs(A) ** 2)
    det = abs(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0])
    smax = np.sqrt((f2 + np.sqrt(max(f2 * f2 - 4 * det * det, 0.0))) / 2)
    return smax, det / smax


def random_strip_log(rng, n, max_norm=2.0):
    """Random real X with ||X||_2 <= max_norm, so eigenvalues sit in |Im| < pi."""
    X = rng.standard_normal((n, n))
    return X * (max_norm * rng.uniform(0.2, 1.0) / np.linalg.norm(X, 2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def fovfailure():
    return FOVFAILURE.copy()


GALLERY_SPECS = [
    GallerySpec("forsythe_exp", 10, (1e-10, 0.0)),
    GallerySpec("rotation", 2, (100.0,)),
    GallerySpec("triw_shift", 100),
    GallerySpec("parter", 10),
    GallerySpec("hanowa_neg", 10),
    GallerySpec("dorr", 10, (0.05,)),
    GallerySpec("toeplitz_t", 50),
]


@pytest.fixture(scope="session")
def gallery_matrices():
    return {s.family: build(s) for s in GALLERY_SPECS}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
