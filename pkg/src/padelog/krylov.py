"""log(A) v in a rational Krylov space whose poles are the quadrature poles.

The k-node rule ``z R(z) = z sum_i w_i / (z (1 + x_i) + 2)`` has its poles at
``xi_i = -2 / (1 + x_i)``. Projecting ``log(I + M)``, ``M = A - I``, onto the
rational Krylov space with exactly those poles reproduces the quadrature
rational function on the subspace, so the quadrature error estimate carries
over to the Krylov approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import error_functional, logm_auto
from .errors import FovCrossesBranchCut, InvalidParams
from .linalg import as_matrix, lu_factor
from .quadrature import QuadratureRule, gauss_legendre
from .spectral import SpectralSet, branch_cut_clearance, fov_boundary


@dataclass(frozen=True)
class RationalKrylovBasis:
    """Orthonormal basis ``V`` (n x m) and the poles used to build it.

    ``breakdown`` is set when the space became invariant before all poles were
    used; ``V`` then holds the smaller exact basis.
    """

    V: np.ndarray
    poles: np.ndarray
    breakdown: bool = False

    @property
    def dim(self) -> int:
        return self.V.shape[1]


def poles_from_rule(rule: QuadratureRule) -> np.ndarray:
    """``-2 / (1 + x_i)`` in node order: real, below -1, most negative first."""
    return -2.0 / (1.0 + rule.nodes)


def rational_arnoldi(M, v, poles, breakdown_tol: float = 1e-14) -> RationalKrylovBasis:
    """Orthonormal basis of ``span{v, (M - xi_1)^{-1} v_1, (M - xi_2)^{-1} v_2, ...}``.

    One shift-and-invert step per pole applied to the newest basis vector,
    then modified Gram-Schmidt with a second pass. At most ``len(poles) + 1``
    columns (and never more than ``n``).
    """
    M = as_matrix(M)
    n = M.shape[0]
    v = np.asarray(v)
    if v.shape != (n,):
        raise InvalidParams(f"start vector must have shape ({n},)")
    nv = np.linalg.norm(v)
    if nv == 0:
        raise InvalidParams("start vector is zero")
    poles = np.asarray(poles)
    dtype = np.result_type(M, v, poles, float)
    V = np.zeros((n, min(n, len(poles) + 1)), dtype=dtype)
    V[:, 0] = v / nv
    eye = np.eye(n)
    used = 0
    for j, xi in enumerate(poles):
        if j + 1 >= V.shape[1]:
            break
        w = lu_factor(M - xi * eye).solve(V[:, j])
        nw = np.linalg.norm(w)
        for _ in range(2):
            for i in range(j + 1):
                w = w - np.vdot(V[:, i], w) * V[:, i]
        h = np.linalg.norm(w)
        if h <= breakdown_tol * nw:
            return RationalKrylovBasis(V[:, : j + 1].copy(), poles[:used], True)
        V[:, j + 1] = w / h
        used += 1
    return RationalKrylovBasis(V, poles[:used], False)


def log_action(A, v, k: int, tol: float = 1e-15, fov: SpectralSet | None = None,
               m: int = 64) -> tuple[np.ndarray, float]:
    """Approximate ``log(A) v`` from the rational Krylov space with the k quadrature poles.

    Returns ``(f_k, bound)`` where ``bound`` is the field-of-values error
    estimate ``E(0, k)`` for the k-node rule. Pass ``fov`` to reuse a
    precomputed W(A).

    Raises
    ------
    FovCrossesBranchCut
        W(A) reaches (-inf, 0]. The projected matrix ``I + V^H (A - I) V`` has
        its field of values inside W(A), so a clear W(A) covers it too.
    """
    A = as_matrix(A)
    n = A.shape[0]
    v = np.asarray(v)
    if fov is None:
        fov = fov_boundary(A, m)
    clearance = branch_cut_clearance(fov)
    if not clearance > 0:
        raise FovCrossesBranchCut(clearance)
    Mmat = A - np.eye(n)
    basis = rational_arnoldi(Mmat, v, poles_from_rule(gauss_legendre(k)))
    V = basis.V
    H = V.conj().T @ Mmat @ V
    small = np.eye(V.shape[1]) + H
    if np.allclose(H, 0, atol=0):
        Lh = np.zeros_like(H)
    else:
        Lh = logm_auto(small, tol, kappa=False).X
    f = V @ (Lh @ (V.conj().T @ v))
    return f, error_functional(fov, 0, k)
