import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padelog.errors import EmptyLevel, InvalidParams
from padelog.gallery import GallerySpec, build
from padelog.spectral import (
    CROUZEIX_CONSTANT,
    GRID_CAP,
    SpectralSet,
    branch_cut_clearance,
    crouzeix_bound,
    fov_boundary,
    interval_set,
    is_convex,
    points_in_polygon,
    pseudo_contour,
    pseudo_prefactor,
    resolvent_grid,
    set_prefactor,
    signed_area,
)

from conftest import FOVFAILURE, GALLERY_SPECS, svd2x2


def rayleigh_quotients(A, count, rng):
    n = A.shape[0]
    V = rng.standard_normal((n, count)) + 1j * rng.standard_normal((n, count))
    return np.einsum("ij,ij->j", V.conj(), A @ V) / np.einsum("ij,ij->j", V.conj(), V)



class TestFovBoundary:
    def test_hermitian_segment(self):
        S = fov_boundary(np.diag([1.0, 3.0]), 64)
        assert S.kind == "fov" and S.source_dimension == 2
        assert np.all(np.abs(S.boundary.imag) <= 1e-10)
        assert np.all((S.boundary.real >= 1 - 1e-12) & (S.boundary.real <= 3 + 1e-12))

    def test_fovfailure_disk(self):
        S = fov_boundary(FOVFAILURE, 64)
        r = np.abs(S.boundary - 0.1)
        np.testing.assert_allclose(r, 5e5, rtol=1e-9)
        assert points_in_polygon(0.0, S.boundary)[0]
        assert branch_cut_clearance(S) < 0

    def test_counterclockwise(self):
        S = fov_boundary(FOVFAILURE, 32)
        assert signed_area(S.boundary) > 0

    def test_too_few_angles(self):
        with pytest.raises(InvalidParams):
            fov_boundary(np.eye(2), 4)

    def test_toeplitz_contains_rayleigh_quotients(self, rng):
        T = build(GallerySpec("toeplitz_t", 100))
        S = fov_boundary(T, 64)
        q = rayleigh_quotients(T, 1000, rng)
        assert np.all(points_in_polygon(q, S.boundary, dilation=1e-8))

    @pytest.mark.parametrize("spec", GALLERY_SPECS, ids=lambda s: s.family)
    def test_gallery_convex_and_contains(self, spec, gallery_matrices, rng):
        A = gallery_matrices[spec.family]
        S = fov_boundary(A, 64)
        assert is_convex(S.boundary, rtol=1e-10)
        q = rayleigh_quotients(A, 1000, rng)
        tol = 1e-8 * max(1.0, S.diameter)
        assert np.all(points_in_polygon(q, S.boundary, dilation=tol))

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
                    min_size=2, max_size=6), st.sampled_from([16, 64]))
    def test_normal_matrix_hausdorff(self, eigs, m):
        d = np.array(eigs)
        S = fov_boundary(np.diag(d), m)
        diam = np.max(np.abs(d[:, None] - d[None, :]))
        # support points of a diagonal matrix are eigenvalues, hence in the hull ...
        near = np.min(np.abs(S.boundary[:, None] - d[None, :]), axis=1)
        assert np.all(near <= 1e-9 * max(1.0, diam))
        # ... and the hull (spanned by the eigenvalues) lies in the dilated polygon
        # (the dilation also covers flat, segment-like polygons)
        assert np.all(points_in_polygon(d, S.boundary, dilation=2 * np.pi * diam / m + 1e-9))

    def test_workers_deterministic(self):
        T = build(GallerySpec("toeplitz_t", 60))
        a = fov_boundary(T, 64, workers=1).boundary
        b = fov_boundary(T, 64, workers=4).boundary
        np.testing.assert_array_equal(a, b)


class TestClearance:
    def test_segment(self):
        assert branch_cut_clearance(interval_set(1.0, 3.0)) == pytest.approx(1.0)

    def test_vertical_segment(self):
        S = SpectralSet("fov", [0.5 + 1j, 0.5 - 1j])
        assert branch_cut_clearance(S) == pytest.approx(0.5)

    def test_left_half_plane_off_axis(self):
        S = SpectralSet("fov", [-2 + 1j, -1 + 1j, -1 + 3j])
        assert branch_cut_clearance(S) == pytest.approx(1.0)

    def test_touching(self):
        assert branch_cut_clearance(interval_set(0.0, 1.0)) == 0.0

    def test_crossing_negative(self):
        assert branch_cut_clearance(interval_set(-2.0, 1.0)) == pytest.approx(-2.0)

    def test_union_takes_minimum(self):
        assert branch_cut_clearance([interval_set(1, 2), interval_set(0.25, 0.5)]) == pytest.approx(0.25)


class TestResolventGrid:
    def test_scalar(self):
        g = resolvent_grid(np.array([[1.0]]), (0.0, 2.0, -1.0, 1.0), 3, 3)
        assert g.values[1, 1] == GRID_CAP
        assert g.values[1, 2] == pytest.approx(1.0)
        assert np.all(g.values >= 0)

    def test_normal_distance_oracle(self):
        d = np.array([1.0, 2 + 1j, -0.5j])
        Q, _ = np.linalg.qr(np.random.default_rng(3).standard_normal((3, 3)))
        A = Q @ np.diag(d) @ Q.T
        g = resolvent_grid(A, (-1.3, 3.1, -1.7, 2.3), 23, 19)
        dist = np.min(np.abs(g.z[..., None] - d), axis=-1)
        np.testing.assert_allclose(g.values, 1 / dist, rtol=1e-6)

    def test_fovfailure_origin(self):
        g = resolvent_grid(FOVFAILURE, (-1.0, 1.0, -1.0, 1.0), 3, 3)
        _, smin = svd2x2(-FOVFAILURE)
        assert g.values[1, 1] == pytest.approx(1 / smin, rel=1e-6)
        assert g.values[1, 1] == pytest.approx(1e8, rel=1e-4)

    def test_bad_args(self):
        with pytest.raises(InvalidParams):
            resolvent_grid(np.eye(2), (0, 1, 0, 1), 1, 5)
        with pytest.raises(InvalidParams):
            resolvent_grid(np.eye(2), (1, 0, 0, 1), 5, 5)

    def test_workers_deterministic(self):
        A = build(GallerySpec("parter", 10))
        a = resolvent_grid(A, (-1, 4, -3, 3), 40, 30, workers=1).values
        b = resolvent_grid(A, (-1, 4, -3, 3), 40, 30, workers=3).values
        np.testing.assert_array_equal(a, b)


class TestPseudoContour:
    def test_scalar_circle(self):
        g = resolvent_grid(np.array([[1.0]]), (0.0, 2.0, -1.0, 1.0), 101, 101)
        cs = pseudo_contour(g, 0.5)
        assert len(cs) == 1
        c = cs[0]
        assert c.kind == "pseudo" and c.epsilon == 0.5
        h = g.x[1] - g.x[0]
        assert np.max(np.abs(np.abs(c.boundary - 1.0) - 0.5)) <= 2 * h
        assert pseudo_prefactor(cs, 0.5) == pytest.approx(1.0, rel=1e-2)

    def test_fovfailure_in_right_half_plane(self):
        g = resolvent_grid(FOVFAILURE, (-0.2, 0.4, -0.3, 0.3), 200, 200)
        cs = pseudo_contour(g, 10**-8.5)
        assert min(c.boundary.real.min() for c in cs) > 0
        assert branch_cut_clearance(cs) > 0

    def test_nesting(self):
        A = np.array([[1.0, 2.0, 0.0], [0.0, 1.5, 2.0], [0.0, 0.0, 2.0 + 0.5j]])
        g = resolvent_grid(A, (-2.0, 5.0, -3.0, 3.5), 120, 120)
        inner = pseudo_contour(g, 1e-3)
        outer = pseudo_contour(g, 1e-1)
        for c in inner:
            inside = np.zeros(c.boundary.size, dtype=bool)
            for o in outer:
                inside |= points_in_polygon(c.boundary, o.boundary)
            assert inside.all()

    def test_empty_level(self):
        g = resolvent_grid(np.array([[1.0]]), (2.0, 3.0, -1.0, 1.0), 10, 10)
        with pytest.raises(EmptyLevel):
            pseudo_contour(g, 1e-6)

    def test_bad_eps(self):
        g = resolvent_grid(np.array([[1.0]]), (0.0, 2.0, -1.0, 1.0), 10, 10)
        with pytest.raises(InvalidParams):
            pseudo_contour(g, 0.0)


class TestPrefactors:
    def test_crouzeix(self):
        assert crouzeix_bound(0.0) == 0.0
        assert crouzeix_bound(1.0) == pytest.approx(2.41421356, rel=1e-8)
        assert crouzeix_bound(2.5) == pytest.approx(2 * crouzeix_bound(1.25))

    def test_square(self):
        sq = SpectralSet("pseudo", [0, 2, 2 + 2j, 2j], epsilon=1.0)
        assert pseudo_prefactor([sq], 1.0) == pytest.approx(8 / (2 * np.pi))

    @pytest.mark.parametrize("eps", [0.2, 0.4])
    def test_circle_normal_stays_one(self, eps):
        g = resolvent_grid(np.diag([1.0, 5.0]), (0.0, 6.0, -1.0, 1.0), 301, 101)
        cs = pseudo_contour(g, eps)
        assert len(cs) == 2
        assert pseudo_prefactor(cs, eps) == pytest.approx(2.0, rel=1e-2)

    def test_empty(self):
        with pytest.raises(EmptyLevel):
            pseudo_prefactor([], 1.0)

    def test_set_prefactor_kinds(self):
        assert set_prefactor([interval_set(1, 2)]) == CROUZEIX_CONSTANT
        sq = SpectralSet("pseudo", [0, 2, 2 + 2j, 2j], epsilon=1.0)
        assert set_prefactor([sq]) == pytest.approx(8 / (2 * np.pi))
