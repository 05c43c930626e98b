"""Scalar rational approximation of log(1+z) and its error estimate.

The k-point Gauss-Legendre rule applied to

    log(1+z)/z = int_{-1}^{1} dx / (z(1+x) + 2)

gives ``R(z) = sum_i w_i / (z(1+x_i) + 2)``, the [k-1/k] Pade approximant of
``log(1+z)/z``. This module evaluates it, its exact numerator/denominator
coefficients, and the large-k error estimate

    |log(1+z) - z R(z)| ~ 2 pi |((1 - sqrt(1+z)) / (1 + sqrt(1+z)))^(2k+1)|.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import numpy as np

from .errors import BranchCut, InvalidOrder, InvalidParams, Overflow, PoleHit
from .linalg import UNIT_ROUNDOFF
from .quadrature import QuadratureRule

MAX_COEFF_ORDER = 30


def eval_R(z, rule: QuadratureRule):
    """Evaluate the quadrature approximant ``sum w_i / (z (1 + x_i) + 2)``.

    ``z * eval_R(z, rule)`` approximates ``log(1 + z)``. Accepts scalars or arrays.
    """
    z = np.asarray(z)
    denom = z[..., None] * (1.0 + rule.nodes) + 2.0
    if np.any(np.abs(denom) < 1e-300):
        raise PoleHit("z(1+x_i)+2 vanishes for some node")
    out = np.sum(rule.weights / denom, axis=-1)
    return out[()] if out.ndim == 0 else out


def _check_off_cut(z) -> np.ndarray:
    z = np.asarray(z)
    zc = z.astype(complex)
    if np.any((zc.imag == 0) & (zc.real <= -1)):
        raise BranchCut("z lies on the branch cut (-inf, -1]")
    return zc


def pade_ratio(z):
    """``(1 - sqrt(1+z)) / (1 + sqrt(1+z))`` with the principal square root."""
    r = np.sqrt(1.0 + _check_off_cut(z))
    return (1.0 - r) / (1.0 + r)


def scalar_error_bound(z, k: int, floor: float = UNIT_ROUNDOFF):
    """Large-k estimate of ``|log(1+z) - z R(z)|`` for the k-point rule.

    Floored at ``floor`` (unit round-off by default) since nothing smaller is
    observable in double precision.
    """
    if k < 1:
        raise InvalidOrder(f"order must be positive, got {k}")
    val = 2 * np.pi * np.abs(pade_ratio(z)) ** (2 * k + 1)
    out = np.maximum(val, floor)
    return float(out) if np.ndim(out) == 0 else out


def legendre_eval(k: int, w):
    """Legendre polynomial ``L_k(w)`` by the three-term recurrence."""
    w = np.asarray(w, dtype=np.result_type(w, float))
    p_prev, p = np.ones_like(w), w.copy()
    if k == 0:
        return p_prev[()]
    for j in range(1, k):
        p_prev, p = p, ((2 * j + 1) * w * p - j * p_prev) / (j + 1)
    return p[()] if np.ndim(p) == 0 else p


def pochhammer(q, j: int):
    """Rising factorial ``(q)_j``; exact for int/Fraction arguments."""
    out = q ** 0 if not isinstance(q, float) else 1.0
    for i in range(j):
        out *= q + i
    return out


def _check_order(k: int) -> None:
    if k < 1:
        raise InvalidOrder(f"order must be positive, got {k}")
    if k > MAX_COEFF_ORDER:
        raise Overflow(f"coefficient formulas limited to k <= {MAX_COEFF_ORDER}")


def pade_denominator_exact(k: int) -> list[Fraction]:
    """Ascending coefficients of 2F1(-k, -k; -2k; -z) as exact fractions.

    Closed form: ``C(k, j) C(2k-j, k) / C(2k, k)``.
    """
    _check_order(k)
    c = comb(2 * k, k)
    return [Fraction(comb(k, j) * comb(2 * k - j, k), c) for j in range(k + 1)]


def pade_numerator_exact(k: int) -> list[Fraction]:
    """Ascending coefficients (in z) of the numerator ``P_{k-1,k}(-z)``.

    Double Pochhammer sum with a=1, c=2, m=k-1, evaluated at ``-z``.
    """
    _check_order(k)
    coeffs = []
    for j in range(k):
        acc = Fraction(0)
        for ell in range(j + 1):
            num = pochhammer(1, j - ell) * pochhammer(-k, ell) ** 2
            den = factorial(ell) * pochhammer(-2 * k, ell) * pochhammer(2, j - ell)
            acc += Fraction(num, den)
        coeffs.append(acc * (-1) ** j)
    return coeffs


def pade_denominator_coeffs(k: int) -> np.ndarray:
    return np.array([float(c) for c in pade_denominator_exact(k)])


def pade_numerator_coeffs(k: int) -> np.ndarray:
    return np.array([float(c) for c in pade_numerator_exact(k)])


def denominator_from_legendre(k: int, z):
    """``(-z)^k L_k(-2/z - 1) / C(2k, k)``: the Legendre form of the denominator."""
    z = np.asarray(z, dtype=complex)
    return (-z) ** k * legendre_eval(k, -2.0 / z - 1.0) / comb(2 * k, k)


def legendre_power_coeffs(k: int) -> np.ndarray:
    """Ascending monomial coefficients of ``L_k`` from the three-term recurrence."""
    p_prev, p = np.array([1.0]), np.array([0.0, 1.0])
    if k == 0:
        return p_prev
    for j in range(1, k):
        nxt = (2 * j + 1) * np.concatenate([[0.0], p]) / (j + 1)
        nxt[: j] -= j * p_prev / (j + 1)
        p_prev, p = p, nxt
    return p


def denominator_legendre_coeffs(k: int) -> np.ndarray:
    """Ascending coefficients of the Legendre form ``(-z)^k L_k(-2/z - 1) / C(2k, k)``.

    Each ``w^j`` term expands to ``(-1)^(k+j) z^(k-j) (2 + z)^j``.
    """
    a = legendre_power_coeffs(k)
    out = np.zeros(k + 1)
    for j, aj in enumerate(a):
        if aj == 0:
            continue
        two_plus_z = np.array([float(comb(j, i)) * 2.0 ** (j - i) for i in range(j + 1)])
        out[k - j:] += (-1) ** (k + j) * aj * two_plus_z
    return out / comb(2 * k, k)


def node_product_coeffs(rule: QuadratureRule, normalize: bool = True) -> np.ndarray:
    """Ascending coefficients of ``prod_i (z (1 + x_i) + 2)``.

    With ``normalize`` the product is divided by ``2^k`` so the constant term is 1.
    """
    poly = np.array([1.0])
    for x in rule.nodes:
        poly = np.convolve(poly, [2.0, 1.0 + x])
    return poly / 2.0**rule.k if normalize else poly


def polyval_asc(coeffs, z):
    """Evaluate an ascending-order coefficient list at ``z`` (Horner)."""
    out = 0.0 * np.asarray(z)
    for c in reversed(list(coeffs)):
        out = out * z + c
    return out


def _is_nonpos_int(q) -> bool:
    return float(q) == int(q) and q <= 0


def hyp2f1_trunc(a, b, c, z, terms: int):
    """Partial sum of the Gauss series ``sum_j (a)_j (b)_j / (c)_j z^j / j!``.

    Terminating series (``a`` or ``b`` a non-positive integer) are summed in
    full regardless of ``terms`` exceeding the degree. ``c`` may be a
    non-positive integer only if the series terminates before ``(c)_j`` vanishes.
    """
    stop = terms
    for p in (a, b):
        if _is_nonpos_int(p):
            stop = min(stop, int(-p) + 1)
    terminating = stop < terms or any(_is_nonpos_int(p) for p in (a, b))
    if _is_nonpos_int(c) and stop > int(-c):
        raise InvalidParams(f"(c)_j vanishes at j={int(-c) + 1} before the series terminates")
    if not terminating and np.any(np.abs(z) >= 1):
        raise InvalidParams("non-terminating series needs |z| < 1")
    total = 0.0 * np.asarray(z, dtype=complex) + 1.0
    term = total.copy()
    for j in range(1, stop):
        term = term * ((a + j - 1) * (b + j - 1) / ((c + j - 1) * j)) * z
        total = total + term
    return total[()] if np.ndim(total) == 0 else total
