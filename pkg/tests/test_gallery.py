import numpy as np
import pytest

from padelog.errors import BadParams, UnknownFamily
from padelog.gallery import (
    FAMILIES,
    GallerySpec,
    build,
    dorr,
    forsythe,
    hanowa,
    known_log,
    parse_spec,
    parter,
    rotation,
    symbol,
    symbol_range,
    toeplitz_t,
)
from padelog.linalg import expm_ref


def test_toeplitz_entries():
    T = toeplitz_t(8)
    assert T[0, 0] == 2.5 and T[1, 0] == -1 and T[0, 5] == 1
    mask = np.zeros_like(T, dtype=bool)
    i, j = np.indices(T.shape)
    mask |= (i == j) | (i - j == 1) | (j - i == 5)
    assert np.all(T[~mask] == 0)
    for off, val in [(0, 2.5), (-1, -1.0), (5, 1.0)]:
        assert np.all(np.diag(T, off) == val)


def test_toeplitz_three_diagonals():
    T = toeplitz_t(30)
    offsets = {j - i for i, j in zip(*np.nonzero(T))}
    assert offsets == {0, -1, 5}


def test_toeplitz_rayleigh_near_symbol_hull(rng):
    # Rayleigh quotients of T_n are Rayleigh quotients of the symbol's Laurent operator,
    # so they lie in the convex hull of the symbol curve
    T = toeplitz_t(300)
    V = rng.standard_normal((300, 200)) + 1j * rng.standard_normal((300, 200))
    q = np.einsum("ij,ij->j", V.conj(), T @ V) / np.einsum("ij,ij->j", V.conj(), V)
    from padelog.spectral import points_in_polygon
    curve, _, _ = symbol_range(4096)
    from scipy.spatial import ConvexHull
    pts = np.column_stack([curve.real, curve.imag])
    hull = curve[ConvexHull(pts).vertices]
    assert np.all(points_in_polygon(q, hull, dilation=1e-3))


def test_rotation_orthogonal():
    R = rotation(100.0)
    np.testing.assert_array_equal(R, [[np.cos(100.0), np.sin(100.0)], [-np.sin(100.0), np.cos(100.0)]])
    assert np.linalg.norm(R.T @ R - np.eye(2)) <= 1e-15


def test_forsythe_structure_and_eigenvalues():
    A = forsythe(10, 1e-10, 0.0)
    assert np.all(np.diag(A, 1) == 1) and A[9, 0] == 1e-10 and np.all(np.diag(A) == 0)
    assert np.count_nonzero(A) == 10
    # characteristic polynomial lambda^10 - 1e-10 vanishes at the tenth roots of 1e-10
    roots = 0.1 * np.exp(2j * np.pi * np.arange(10) / 10)
    for lam in roots:
        assert abs(np.linalg.det(lam * np.eye(10) - A)) <= 1e-20


def test_parter_entries():
    P = parter(6)
    for i in range(6):
        for j in range(6):
            assert P[i, j] == 1.0 / (i - j + 0.5)


def test_hanowa_neg_eigenvalues():
    A = build(GallerySpec("hanowa_neg", 10))
    # det(lambda I - A) = prod_m ((lambda - 1)^2 + m^2)
    for lam in [0.3, 2.0 + 1.0j, -1.5j, 4.0]:
        expected = np.prod([(lam - 1) ** 2 + m**2 for m in range(1, 6)])
        assert np.linalg.det(lam * np.eye(10) - A) == pytest.approx(expected, rel=1e-12)


def test_hanowa_odd():
    with pytest.raises(BadParams):
        hanowa(5)


def test_dorr_structure():
    A = dorr(10, 0.05)
    assert np.count_nonzero(np.triu(A, 2)) == 0 and np.count_nonzero(np.tril(A, -2)) == 0
    # interior rows of the convection-diffusion stencil sum to zero
    np.testing.assert_allclose(A[1:-1].sum(axis=1), 0.0, atol=1e-10 * np.abs(A).max())
    assert np.all(np.diag(A) > 0)


def test_symbol_values():
    assert symbol(0.0) == pytest.approx(2.5)
    assert symbol(np.pi) == pytest.approx(2.5)
    curve, lo, hi = symbol_range(10_000)
    assert curve.size == 10_000
    assert 0.5 <= lo <= hi <= 4.5
    dense = np.abs(symbol(np.linspace(-np.pi, np.pi, 200_001)))
    assert lo == pytest.approx(dense.min(), abs=1e-3)
    assert hi == pytest.approx(dense.max(), abs=1e-3)


def test_symbol_range_too_few():
    with pytest.raises(BadParams):
        symbol_range(8)


@pytest.mark.parametrize("family", FAMILIES)
def test_every_family_builds_deterministically(family):
    spec = {"rotation": GallerySpec("rotation", 2, (100.0,)),
            "hanowa_neg": GallerySpec("hanowa_neg", 10)}.get(family, GallerySpec(family, 6))
    A, B = build(spec), build(spec)
    np.testing.assert_array_equal(A, B)
    assert np.all(np.isfinite(A))


@pytest.mark.parametrize("spec", [
    GallerySpec("forsythe_exp", 10, (1e-10, 0.0)),
    GallerySpec("triw_shift", 20),
    GallerySpec("rotation", 2, (100.0,)),
])
def test_known_log_exponentiates_back(spec):
    L = known_log(spec)
    A = build(spec)
    assert np.linalg.norm(expm_ref(L) - A) <= 1e-13 * np.linalg.norm(A)
    # principal: eigenvalues of L in the strip |Im| < pi
    assert np.all(np.abs(np.linalg.eigvals(L).imag) < np.pi)


def test_known_log_none():
    assert known_log(GallerySpec("parter", 10)) is None


def test_errors():
    with pytest.raises(UnknownFamily):
        build(GallerySpec("magic", 4))
    with pytest.raises(BadParams):
        build(GallerySpec("parter", 0))
    with pytest.raises(BadParams):
        build(GallerySpec("parter", 4, (1.0, 2.0)))


def test_parse_spec():
    assert parse_spec("dorr:10,0.05") == GallerySpec("dorr", 10, (0.05,))
    assert parse_spec("rotation:100") == GallerySpec("rotation", 2, (100.0,))
    with pytest.raises(BadParams):
        parse_spec("parter")
    with pytest.raises(BadParams):
        parse_spec("parter:2.5")
