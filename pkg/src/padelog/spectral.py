"""Field of values and pseudospectral sets.

A :class:`SpectralSet` is a closed polygon standing in for a region of the
complex plane that contains the spectrum of a matrix: its field of values
W(A) (Johnson's supporting-line sweep) or an epsilon-pseudospectrum (level
curves of the resolvent norm on a grid). The error estimates only ever need
the boundary, since the functions bounded on these sets are holomorphic there.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import EmptyLevel, InvalidParams
from .linalg import as_matrix

CROUZEIX_CONSTANT = 1.0 + np.sqrt(2.0)
GRID_CAP = 1e300


@dataclass(frozen=True)
class SpectralSet:
    """Closed polygon (implicitly closed: last vertex joins the first).

    ``kind`` is ``"fov"``, ``"pseudo"`` (with ``epsilon``), ``"interval"``
    (a real segment standing in for the field of values), or ``"points"``.
    """

    kind: str
    boundary: np.ndarray
    source_dimension: int = 0
    epsilon: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "boundary", np.asarray(self.boundary, dtype=complex).ravel())
        if self.boundary.size == 0:
            raise InvalidParams("spectral set needs at least one boundary point")

    def shifted(self, c) -> "SpectralSet":
        return SpectralSet(self.kind, self.boundary + c, self.source_dimension, self.epsilon)

    @property
    def diameter(self) -> float:
        b = self.boundary
        return float(np.max(np.abs(b[:, None] - b[None, :])))

    def perimeter(self) -> float:
        b = self.boundary
        return float(np.sum(np.abs(np.roll(b, -1) - b))) if b.size > 1 else 0.0

    def sample(self, per_edge: int = 4) -> np.ndarray:
        """Vertices plus ``per_edge - 1`` equispaced points on every edge."""
        b = self.boundary
        if b.size == 1 or per_edge <= 1:
            return b.copy()
        t = np.arange(per_edge) / per_edge
        nxt = np.roll(b, -1)
        return (b[:, None] + t[None, :] * (nxt - b)[:, None]).ravel()


def _fov_point(A: np.ndarray, theta: float) -> complex:
    n = A.shape[0]
    B = np.exp(1j * theta) * A
    H = 0.5 * (B + B.conj().T)
    if n == 1:
        return complex(A[0, 0])
    _, V = scipy.linalg.eigh(H, subset_by_index=[n - 1, n - 1], check_finite=False)
    v = V[:, 0]
    return complex(np.vdot(v, A @ v) / np.vdot(v, v))


def fov_boundary(A, m: int = 64, workers: int | None = None) -> SpectralSet:
    """Polygon approximating the boundary of the field of values of ``A``.

    For each angle ``theta_j = 2 pi j / m`` the top eigenvector of the Hermitian
    part of ``exp(i theta_j) A`` gives a boundary point of W(A) (its Rayleigh
    quotient). The returned polygon is counterclockwise.
    """
    A = as_matrix(A)
    if m < 8:
        raise InvalidParams("need at least 8 angles")
    thetas = 2 * np.pi * np.arange(m) / m
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            pts = list(pool.map(lambda t: _fov_point(A, t), thetas))
    else:
        pts = [_fov_point(A, t) for t in thetas]
    # increasing theta walks the support points clockwise
    pts = np.array(pts[::-1])
    return SpectralSet("fov", pts, A.shape[0])


def interval_set(lo: float, hi: float, n: int = 0) -> SpectralSet:
    """Real segment ``[lo, hi]`` used as a stand-in for a field of values."""
    return SpectralSet("interval", np.array([lo, hi], dtype=complex), n)


def signed_area(points) -> float:
    p = np.asarray(points, dtype=complex)
    return 0.5 * float(np.sum(p.real * np.roll(p.imag, -1) - np.roll(p.real, -1) * p.imag))


def is_convex(points, rtol: float = 1e-10) -> bool:
    """True if the closed polygon turns only one way (collinear steps allowed)."""
    p = np.asarray(points, dtype=complex)
    if p.size < 3:
        return True
    d1 = np.roll(p, -1) - p
    d2 = np.roll(p, -2) - np.roll(p, -1)
    cross = d1.real * d2.imag - d1.imag * d2.real
    diam = np.max(np.abs(p - p.mean())) * 2
    tol = rtol * diam * diam
    return bool(np.all(cross >= -tol) or np.all(cross <= tol))


def points_in_polygon(z, polygon, dilation: float = 0.0) -> np.ndarray:
    """Even-odd test; points within ``dilation`` of an edge count as inside."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    p = np.asarray(polygon, dtype=complex)
    q = np.roll(p, -1)
    x, y = z.real[:, None], z.imag[:, None]
    crosses = ((p.imag[None, :] > y) != (q.imag[None, :] > y))
    # near-horizontal edges never count as crossings, so their overflow is harmless
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        xint = p.real + (y - p.imag) * (q.real - p.real) / (q.imag - p.imag)
    inside = np.sum(crosses & (x < xint), axis=1) % 2 == 1
    if dilation > 0:
        inside |= _dist_to_segments(z, p, q) <= dilation
    return inside


def _dist_to_segments(z, p, q) -> np.ndarray:
    d = q - p
    dd = np.abs(d) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(dd > 0, ((z[:, None] - p) * d.conj()).real / dd, 0.0)
    t = np.clip(t, 0.0, 1.0)
    # take the endpoint itself at t == 1; p + d can round away from q
    foot = np.where(t >= 1.0, q, p + t * d)
    return np.min(np.abs(z[:, None] - foot), axis=1)


def branch_cut_clearance(S: SpectralSet | Sequence[SpectralSet]) -> float:
    """Distance from the filled polygon(s) to the ray (-inf, 0].

    Zero when touching and minus the length of the overlap with the ray when
    they intersect.
    """
    sets = [S] if isinstance(S, SpectralSet) else list(S)
    best = np.inf
    for s in sets:
        best = min(best, _clearance_one(s.boundary))
    return float(best)


def _clearance_one(b: np.ndarray) -> float:
    p = b
    q = np.roll(b, -1)
    # real-axis crossings of the polygon
    xs = [x.real for x in b if x.imag == 0.0]
    mask = p.imag * q.imag < 0
    if np.any(mask):
        t = p.imag[mask] / (p.imag[mask] - q.imag[mask])
        xs.extend((p.real[mask] + t * (q.real[mask] - p.real[mask])).tolist())
    if xs:
        lo = min(xs)
        hi = max(xs)
        if lo <= 0.0:
            return -(min(hi, 0.0) - lo)
    # disjoint: nearest approach is at a vertex or at the ray's endpoint
    vert = np.where(b.real <= 0, np.abs(b.imag), np.abs(b))
    return float(min(vert.min(), _dist_to_segments(np.array([0j]), p, q)[0]))


@dataclass(frozen=True)
class ResolventGrid:
    """Resolvent norm ``1/sigma_min(zI - A)`` sampled on a rectangle.

    ``values[j, i]`` belongs to ``z = x[i] + 1j * y[j]``.
    """

    x: np.ndarray
    y: np.ndarray
    values: np.ndarray
    source_dimension: int = 0

    @property
    def z(self) -> np.ndarray:
        return self.x[None, :] + 1j * self.y[:, None]


def _resolvent_norms(A: np.ndarray, zs: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    eye = np.eye(n)
    M = zs[:, None, None] * eye - A
    # batched SVD has no failure mode at eigenvalues, unlike a batched inverse
    smin = np.linalg.svd(M, compute_uv=False)[:, -1]
    with np.errstate(divide="ignore"):
        vals = 1.0 / smin
    return np.minimum(vals, GRID_CAP)


def resolvent_grid(A, box, nx: int, ny: int, workers: int | None = None) -> ResolventGrid:
    """Sample ``||(zI - A)^{-1}||_2`` on ``box = (xmin, xmax, ymin, ymax)``."""
    A = as_matrix(A)
    if nx < 2 or ny < 2:
        raise InvalidParams("grid needs at least 2 points per direction")
    xmin, xmax, ymin, ymax = map(float, box)
    if not (xmax > xmin and ymax > ymin):
        raise InvalidParams(f"degenerate box {box}")
    x = np.linspace(xmin, xmax, nx)
    y = np.linspace(ymin, ymax, ny)
    zs = (x[None, :] + 1j * y[:, None]).ravel()
    n = A.shape[0]
    chunk = max(1, int(2e6 // (n * n)))
    pieces = [zs[i:i + chunk] for i in range(0, zs.size, chunk)]
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            vals = list(pool.map(lambda c: _resolvent_norms(A, c), pieces))
    else:
        vals = [_resolvent_norms(A, c) for c in pieces]
    return ResolventGrid(x, y, np.concatenate(vals).reshape(ny, nx), n)


def pseudo_contour(grid: ResolventGrid, epsilon: float) -> list[SpectralSet]:
    """Boundary curves of the epsilon-pseudospectrum found on ``grid``.

    Marching squares on ``log10`` of the resolvent norm at level
    ``log10(1/epsilon)``. Curves cut by the box edge are closed with a
    straight segment.
    """
    from skimage.measure import find_contours

    if epsilon <= 0:
        raise InvalidParams("epsilon must be positive")
    level = -np.log10(epsilon)
    logv = np.log10(grid.values)
    if not (logv.min() < level < logv.max()):
        raise EmptyLevel(f"level 1/eps={1 / epsilon:.3e} outside grid range")
    dx = grid.x[1] - grid.x[0]
    dy = grid.y[1] - grid.y[0]
    out = []
    for c in find_contours(logv, level):
        z = (grid.x[0] + c[:, 1] * dx) + 1j * (grid.y[0] + c[:, 0] * dy)
        if z.size > 1 and z[0] == z[-1]:
            z = z[:-1]
        if z.size >= 3:
            out.append(SpectralSet("pseudo", z, grid.source_dimension, epsilon))
    if not out:
        raise EmptyLevel("level set misses the box")
    return out


def crouzeix_bound(max_abs: float) -> float:
    """``(1 + sqrt 2) * max_abs``: the field-of-values bound on ``||g(A)||``."""
    return CROUZEIX_CONSTANT * max_abs


def pseudo_prefactor(contours: Sequence[SpectralSet], epsilon: float) -> float:
    """Total arc length of the contours over ``2 pi epsilon``."""
    if not contours:
        raise EmptyLevel("no contours")
    if epsilon <= 0:
        raise InvalidParams("epsilon must be positive")
    return sum(c.perimeter() for c in contours) / (2 * np.pi * epsilon)


def set_prefactor(sets: Sequence[SpectralSet]) -> float:
    """Constant multiplying ``max |g|`` for a union of sets of a single kind."""
    if all(s.kind == "pseudo" for s in sets):
        return pseudo_prefactor(sets, sets[0].epsilon)
    return CROUZEIX_CONSTANT
