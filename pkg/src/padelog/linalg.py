"""Dense linear-algebra kernels.

Matrices are plain :class:`numpy.ndarray` objects. Real input stays real
wherever the operation permits, so real matrices get real square roots and
real logarithms without a complex round trip.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    BranchCutSpectrum,
    InvalidMatrix,
    NonConvergence,
    NotHermitian,
    Overflow,
    SingularSystem,
)

#: Unit round-off of IEEE double precision.
UNIT_ROUNDOFF = 2.0**-53


def as_matrix(A, square: bool = True) -> np.ndarray:
    """Validate and return ``A`` as a 2-D float or complex array."""
    A = np.asarray(A)
    if A.ndim != 2:
        raise InvalidMatrix(f"expected a 2-D array, got ndim={A.ndim}")
    if square and A.shape[0] != A.shape[1]:
        raise InvalidMatrix(f"expected a square matrix, got shape {A.shape}")
    if A.size == 0:
        raise InvalidMatrix("empty matrix")
    if not np.iscomplexobj(A):
        A = A.astype(float, copy=False)
    else:
        A = A.astype(complex, copy=False)
    if not np.all(np.isfinite(A)):
        raise InvalidMatrix("matrix has NaN or Inf entries")
    return A


@dataclass(frozen=True)
class LuFactorization:
    """Row-pivoted LU factors, ``P A = L U``, in LAPACK packed form."""

    lu: np.ndarray
    piv: np.ndarray

    @property
    def n(self) -> int:
        return self.lu.shape[0]

    def solve(self, B, trans: int = 0) -> np.ndarray:
        return scipy.linalg.lu_solve((self.lu, self.piv), B, trans=trans, check_finite=False)

    def log_abs_det(self) -> float:
        return float(np.sum(np.log(np.abs(np.diag(self.lu)))))

    def factors(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return explicit ``(P, L, U)`` with ``P @ A = L @ U``."""
        n = self.n
        L = np.tril(self.lu, -1) + np.eye(n)
        U = np.triu(self.lu)
        perm = np.arange(n)
        for i, p in enumerate(self.piv):
            perm[i], perm[p] = perm[p], perm[i]
        P = np.eye(n)[perm]
        return P, L, U


def lu_factor(A, strict: bool = True) -> LuFactorization:
    """Factor ``A`` with partial pivoting.

    Raises :class:`SingularSystem` when a pivot is below ``n * u * ||A||_1``,
    or, with ``strict=False``, only when a pivot is exactly zero or the factors
    are not finite. Graded matrices (triangular ones in particular) can carry
    tiny but perfectly usable pivots.
    """
    A = as_matrix(A)
    n = A.shape[0]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=False)
    pivots = np.abs(np.diag(lu))
    threshold = n * UNIT_ROUNDOFF * np.linalg.norm(A, 1) if strict else 0.0
    if not np.all(np.isfinite(pivots)) or pivots.min() <= threshold:
        raise SingularSystem(
            f"pivot {pivots.min():.3e} below threshold {threshold:.3e}"
        )
    return LuFactorization(lu, piv)


def lu_solve(A, B) -> np.ndarray:
    """Solve ``A X = B`` by LU with partial pivoting."""
    B = np.asarray(B)
    if B.shape[0] != np.shape(A)[0]:
        raise InvalidMatrix(f"right-hand side has {B.shape[0]} rows, expected {np.shape(A)[0]}")
    return lu_factor(A).solve(B)


def norm2(A) -> float:
    """Spectral norm (largest singular value)."""
    A = as_matrix(A, square=False)
    try:
        return float(scipy.linalg.svdvals(A, check_finite=False)[0])
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc


def hermitian_eig(H) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix."""
    H = as_matrix(H)
    scale = np.linalg.norm(H, 1)
    if np.linalg.norm(H - H.conj().T, 1) > 1e-12 * scale:
        raise NotHermitian("matrix is not Hermitian to 1e-12 relative")
    try:
        return scipy.linalg.eigh(H, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc


def sigma_min(A, rtol: float = 1e-8, maxiter: int = 500) -> float:
    """Smallest singular value by inverse iteration on ``A^H A``.

    Each step applies ``A^{-1} A^{-H}`` through one LU factorization. A
    numerically singular ``A`` gives 0.
    """
    A = as_matrix(A)
    n = A.shape[0]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=False)
    if np.min(np.abs(np.diag(lu))) <= n * UNIT_ROUNDOFF * np.linalg.norm(A, 1):
        return 0.0
    if n == 1:
        return float(abs(A[0, 0]))
    # fixed start vector keeps the result deterministic
    x = np.exp(1j * np.arange(1, n + 1)) + 0.5
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(maxiter):
        y = scipy.linalg.lu_solve((lu, piv), x, trans=2, check_finite=False)
        w = scipy.linalg.lu_solve((lu, piv), y, check_finite=False)
        # ||A^{-H} x||^2 = x^H (A^H A)^{-1} x is the Rayleigh quotient
        lam_new = float(np.vdot(y, y).real)
        nw = np.linalg.norm(w)
        if not np.isfinite(nw) or nw == 0.0:
            return 0.0
        x = w / nw
        if abs(lam_new - lam) <= rtol * lam_new:
            return float(1.0 / np.sqrt(lam_new))
        lam = lam_new
    # clustered small singular values converge slowly; the SVD settles it
    return float(scipy.linalg.svdvals(A, check_finite=False)[-1])


def sqrtm(A, tol: float = 1e-14, maxiter: int = 60) -> np.ndarray:
    """Principal square root by the scaled product-form Denman-Beavers iteration.

    Parameters
    ----------
    A : array_like
        Square matrix with no eigenvalues on the closed negative real axis.
    tol : float
        Relative tolerance on successive iterates.
    maxiter : int
        Iteration cap.

    Returns
    -------
    X : ndarray
        ``X @ X == A`` with ``X`` having eigenvalues in the open right half-plane.

    Raises
    ------
    BranchCutSpectrum
        The iteration hits a singular matrix, overflows, or never approaches
        convergence, which is what eigenvalues on (or numerically on) the
        negative real axis produce.
    NonConvergence
        The iteration did not settle within ``maxiter`` steps.
    """
    A = as_matrix(A)
    n = A.shape[0]
    eye = np.eye(n)
    M = A.copy()
    X = A.copy()
    scaling = True
    prev_res = np.inf
    for _ in range(maxiter):
        try:
            fac = lu_factor(M, strict=False)
        except SingularSystem as exc:
            raise BranchCutSpectrum(f"square root iteration hit a singular matrix: {exc}") from exc
        Minv = fac.solve(eye)
        mu = np.exp(-fac.log_abs_det() / (2 * n)) if scaling else 1.0
        X_new = 0.5 * mu * (X @ (eye + Minv / mu**2))
        M = 0.5 * (eye + 0.5 * (mu**2 * M + Minv / mu**2))
        res = np.linalg.norm(M - eye, "fro")
        if not np.isfinite(res):
            raise BranchCutSpectrum("square root iteration diverged")
        delta = np.linalg.norm(X_new - X, "fro") / np.linalg.norm(X_new, "fro")
        X = X_new
        if res < 1e-2:
            scaling = False
        # stop when converged, or when M - I stagnates at round-off level
        if res <= tol * np.sqrt(n) or delta <= tol or (res <= 1e-8 and res > 0.5 * prev_res):
            return X
        prev_res = res
    if res >= 1.0:
        # no sign of convergence at all: typical of eigenvalues on the cut
        raise BranchCutSpectrum(f"square root iteration did not settle (||M-I||={res:.2e})")
    raise NonConvergence(f"square root did not converge in {maxiter} iterations (||M-I||={res:.2e})")


def expm_ref(X) -> np.ndarray:
    """Reference exponential used to build test inputs (scaling and squaring Pade)."""
    X = as_matrix(X)
    with np.errstate(over="ignore", invalid="ignore"):
        E = scipy.linalg.expm(X)
    if not np.all(np.isfinite(E)):
        raise Overflow("matrix exponential overflowed")
    return E


def cond2(A) -> float:
    """2-norm condition number ``||A|| ||A^{-1}||``."""
    A = as_matrix(A)
    Ainv = lu_factor(A).solve(np.eye(A.shape[0]))
    return norm2(A) * norm2(Ainv)
