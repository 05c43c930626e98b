"""Matrix logarithm by Gauss-Legendre quadrature with inverse scaling and squaring.

With ``R = A^(1/2^s)``, nodes ``x_i`` and weights ``w_i`` of the k-point rule,

    log(A) = 2^s (R - I) sum_i w_i ((1 - x_i) I + (1 + x_i) R)^{-1}  + error.

The error is estimated a priori from a set ``S`` containing W(A) by

    E(s, k) = 2 pi C max_{x in S} |(1 - x^(1/2^(s+1))) / (1 + x^(1/2^(s+1)))|^(2k+1)

with ``C = 1 + sqrt 2`` for fields of values (or the arc-length constant for a
pseudospectral set), and ``(s, k)`` is the cheapest pair with ``E <= tol``
under the cost model ``28 s / 3 + 2 k / 3`` (in units of ``n^3`` flops).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    BranchCutSpectrum,
    FovCrossesBranchCut,
    InvalidParams,
    NoFeasibleParams,
    NormTooLarge,
)
from .linalg import UNIT_ROUNDOFF, as_matrix, cond2, lu_factor, norm2, sqrtm
from .quadrature import gauss_legendre
from .scalar import scalar_error_bound
from .spectral import SpectralSet, branch_cut_clearance, fov_boundary, set_prefactor

S_MAX = 20
K_MAX = 18
EDGE_SAMPLES = 4


def cost(s: int, k: int) -> Fraction:
    """Flop count of ``s`` square roots and ``k`` LU solves, in units of ``n^3``."""
    return Fraction(28 * s + 2 * k, 3)


@dataclass(frozen=True)
class ParamChoice:
    s: int
    k: int
    predicted_error: float

    @property
    def cost(self) -> Fraction:
        return cost(self.s, self.k)

    @property
    def cost_floor(self) -> int:
        return int(self.cost)


@dataclass
class LogmReport:
    X: np.ndarray
    choice: ParamChoice
    kappa: float | None = None
    sqrt_residuals: list[float] = field(default_factory=list)
    set_kind: str | None = None

    @property
    def achievable_error(self) -> float | None:
        """``kappa * u``: the accuracy floor set by the shifted solves."""
        return None if self.kappa is None else self.kappa * UNIT_ROUNDOFF

    def to_text(self) -> str:
        c = self.choice
        rows = [
            ("s", c.s),
            ("k", c.k),
            ("cost", f"{float(c.cost):.6g}"),
            ("cost_floor", c.cost_floor),
            ("predicted_error", f"{c.predicted_error:.6e}"),
            ("kappa", "nan" if self.kappa is None else f"{self.kappa:.6e}"),
            ("achievable_error", "nan" if self.kappa is None else f"{self.achievable_error:.6e}"),
            ("sqrt_residuals", " ".join(f"{r:.3e}" for r in self.sqrt_residuals)),
            ("set", self.set_kind or "none"),
            ("norm2_X", f"{norm2(self.X):.6e}"),
            ("normF_X", f"{np.linalg.norm(self.X, 'fro'):.6e}"),
        ]
        return "\n".join(f"{k} = {v}" for k, v in rows) + "\n"


def _as_sets(S) -> list[SpectralSet]:
    return [S] if isinstance(S, SpectralSet) else list(S)


def _root_ratios(points: np.ndarray, levels: int) -> np.ndarray:
    # repeated principal square roots keep the argument in (-pi/2, pi/2]
    w = points.astype(complex)
    for _ in range(levels):
        w = np.sqrt(w)
    return np.abs((1.0 - w) / (1.0 + w))


def _check_clear(sets) -> None:
    clearance = branch_cut_clearance(sets)
    if not clearance > 0:
        raise BranchCutSpectrum(f"spectral set touches (-inf, 0] (clearance {clearance:.3e})")


def max_ratio(S, s: int) -> float:
    """``max |(1 - x^(1/2^(s+1))) / (1 + x^(1/2^(s+1)))|`` over the sampled boundary."""
    sets = _as_sets(S)
    _check_clear(sets)
    pts = np.concatenate([t.sample(EDGE_SAMPLES) for t in sets])
    return float(np.max(_root_ratios(pts, s + 1)))


def error_functional(S, s: int, k: int, prefactor: float | None = None) -> float:
    """Predicted error ``E(s, k)`` of the k-node rule after ``s`` square roots.

    ``S`` is a :class:`SpectralSet` (or a list of them, read as a union)
    containing W(A) or an epsilon-pseudospectrum of A.
    """
    sets = _as_sets(S)
    if prefactor is None:
        prefactor = set_prefactor(sets)
    return 2 * np.pi * prefactor * max_ratio(sets, s) ** (2 * k + 1)


def _select(ratios, tol, k_max, prefactor) -> ParamChoice:
    best = None
    for s, rho in enumerate(ratios):
        if rho is None:
            break
        for k in range(1, k_max + 1):
            err = 2 * np.pi * prefactor * rho ** (2 * k + 1)
            if err <= tol:
                cand = ParamChoice(s, k, float(err))
                # strict comparison keeps the smaller s, then smaller k, on ties
                if best is None or cand.cost < best.cost:
                    best = cand
                break
    if best is None:
        raise NoFeasibleParams(f"tolerance {tol:g} unreachable with s <= {len(ratios) - 1}, k <= {k_max}")
    return best


def select_params(S, tol: float = 1e-15, s_max: int = S_MAX, k_max: int = K_MAX,
                  prefactor: float | None = None) -> ParamChoice:
    """Cheapest ``(s, k)`` on the grid ``[0, s_max] x [1, k_max]`` with ``E(s, k) <= tol``."""
    if not tol > 0:
        raise InvalidParams("tolerance must be positive")
    sets = _as_sets(S)
    if prefactor is None:
        prefactor = set_prefactor(sets)
    ratios = [max_ratio(sets, s) for s in range(s_max + 1)]
    return _select(ratios, tol, k_max, prefactor)


def select_params_recompute(A, tol: float = 1e-15, s_max: int = S_MAX, k_max: int = K_MAX,
                            m: int = 64, workers: int | None = None) -> ParamChoice:
    """Like :func:`select_params`, re-estimating W(A^(1/2^s)) from actual square roots.

    The default mode maps W(A) through the root map, which only matches
    W(A^(1/2^s)) for normal matrices.
    """
    R = as_matrix(A)
    ratios = []
    best_k1 = None
    for s in range(s_max + 1):
        if s:
            R = sqrtm(R)
        S = fov_boundary(R, m, workers)
        if not branch_cut_clearance(S) > 0:
            ratios.append(np.inf)
        else:
            ratios.append(float(np.max(_root_ratios(S.sample(EDGE_SAMPLES), 1))))
        try:
            best_k1 = _select(ratios, tol, k_max, set_prefactor([S]))
        except NoFeasibleParams:
            continue
        # further square roots cost more than the best pair found so far
        if cost(s + 1, 1) > best_k1.cost:
            break
    ratios = [r if np.isfinite(r) else 1.0 for r in ratios]
    return _select(ratios, tol, k_max, set_prefactor([S]))


def _solve_node(R, B, x, w):
    n = R.shape[0]
    M = (1.0 - x) * np.eye(n) + (1.0 + x) * R
    return w * lu_factor(M).solve(B)


def logm_fixed(A, s: int, k: int, workers: int | None = None, kappa: bool = True) -> LogmReport:
    """Logarithm with ``s`` square roots and the ``k``-point rule.

    The ``k`` shifted solves may run on ``workers`` threads; the weighted sum
    is always reduced in ascending node order, so the result does not depend
    on the thread count.
    """
    A = as_matrix(A)
    if s < 0 or k < 1:
        raise InvalidParams(f"need s >= 0 and k >= 1, got s={s}, k={k}")
    n = A.shape[0]
    eye = np.eye(n)
    R = A
    residuals = []
    for _ in range(s):
        R_next = sqrtm(R)
        residuals.append(float(np.linalg.norm(R_next @ R_next - R, "fro") / np.linalg.norm(R, "fro")))
        R = R_next
    B = R - eye
    rule = gauss_legendre(k)
    args = list(zip(rule.nodes, rule.weights))
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            terms = list(pool.map(lambda xw: _solve_node(R, B, *xw), args))
    else:
        terms = [_solve_node(R, B, x, w) for x, w in args]
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    X = 2.0**s * total
    kap = None
    if kappa:
        kap = max(cond2((2 * eye + (1 + x) * B) / w) for x, w in args)
    return LogmReport(X, ParamChoice(s, k, float("nan")), kap, residuals)


def logm_auto(A, tol: float = 1e-15, spectral_set=None, m: int = 64,
              s_max: int = S_MAX, k_max: int = K_MAX, mode: str = "mapped",
              workers: int | None = None, kappa: bool = True) -> LogmReport:
    """Principal logarithm with ``(s, k)`` chosen a priori for accuracy ``tol``.

    Parameters
    ----------
    A : array_like
        Square matrix with no eigenvalues on the closed negative real axis.
    tol : float
        Target for the predicted error ``E(s, k)``.
    spectral_set : SpectralSet or list of SpectralSet, optional
        Set containing the spectrum, e.g. pseudospectral contours. Defaults to
        the field of values sampled at ``m`` angles.
    mode : {"mapped", "recompute"}
        ``"recompute"`` re-estimates the field of values after every square
        root instead of mapping W(A) (field-of-values sets only).

    Raises
    ------
    FovCrossesBranchCut
        W(A) reaches (-inf, 0] in the default mode. Passing a pseudospectral
        set or ``mode="recompute"`` may still work.
    """
    A = as_matrix(A)
    if mode not in ("mapped", "recompute"):
        raise InvalidParams(f"unknown mode {mode!r}")
    if spectral_set is None:
        S = fov_boundary(A, m, workers)
        clearance = branch_cut_clearance(S)
        # recompute mode only needs the fields of values of the square roots to clear
        if not clearance > 0 and mode != "recompute":
            raise FovCrossesBranchCut(clearance)
        sets = [S]
    else:
        sets = _as_sets(spectral_set)
        _check_clear(sets)
    if mode == "recompute" and spectral_set is None:
        choice = select_params_recompute(A, tol, s_max, k_max, m, workers)
    else:
        choice = select_params(sets, tol, s_max, k_max)
    report = logm_fixed(A, choice.s, choice.k, workers, kappa)
    report.choice = choice
    report.set_kind = sets[0].kind
    return report


def matrix_error_bound_restricted(norm_b: float, k: int) -> float:
    """Error estimate from ``||B||`` alone, valid only for ``||B|| < 1``."""
    if not 0 <= norm_b < 1:
        raise NormTooLarge(f"||B|| = {norm_b:g} is not below 1")
    return scalar_error_bound(norm_b, k)
