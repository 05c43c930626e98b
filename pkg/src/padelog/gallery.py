"""Test matrix families, following the classical MATLAB gallery constructions.

Families (``GallerySpec.params`` in order):

* ``forsythe(n, alpha=sqrt(eps), lam=0)``: Jordan block ``lam I + N`` (ones on
  the superdiagonal) perturbed by ``alpha`` in the bottom-left corner.
  Eigenvalues: ``lam + alpha^(1/n) * (n-th roots of unity)``.
* ``forsythe_exp(n, alpha, lam)``: ``expm`` of the above.
* ``rotation(theta)``: ``[[cos t, sin t], [-sin t, cos t]]``.
* ``triw_shift(n)``: ``expm(T)`` with ``T`` unit upper bidiagonal whose
  diagonal is replaced by ``-(n-1)/2, ..., (n-1)/2``.
* ``parter(n)``: ``A[i, j] = 1 / (i - j + 1/2)``; singular values cluster at pi.
* ``hanowa_neg(n, d=-1)``: minus ``[[d I, -D], [D, d I]]``, ``D = diag(1..n/2)``;
  eigenvalues ``-d +/- i m``, ``m = 1..n/2``.
* ``dorr(n, theta=0.01)``: tridiagonal upwind convection-diffusion matrix,
  ``h = 1/(n+1)``; each interior row sums to zero.
* ``toeplitz_t(n)``: 2.5 on the diagonal, -1 on the first subdiagonal, 1 on
  the fifth superdiagonal; symbol ``a(t) = 2.5 - exp(i t) + exp(-5 i t)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParams, UnknownFamily
from .linalg import expm_ref

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class GallerySpec:
    family: str
    n: int = 2
    params: tuple = ()


def forsythe(n: int, alpha: float = np.sqrt(EPS), lam: float = 0.0) -> np.ndarray:
    A = lam * np.eye(n) + np.diag(np.ones(n - 1), 1)
    A[n - 1, 0] = alpha
    return A


def rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def triw_shift_log(n: int) -> np.ndarray:
    """The matrix whose exponential is ``triw_shift(n)``."""
    T = np.eye(n) + np.diag(np.ones(n - 1), 1)
    np.fill_diagonal(T, np.arange(n) - (n - 1) / 2)
    return T


def parter(n: int) -> np.ndarray:
    i = np.arange(1, n + 1)
    return 1.0 / (i[:, None] - i[None, :] + 0.5)


def hanowa(n: int, d: float = -1.0) -> np.ndarray:
    if n % 2:
        raise BadParams("hanowa needs even n")
    m = n // 2
    D = np.diag(np.arange(1, m + 1, dtype=float))
    I = np.eye(m)
    return np.block([[d * I, -D], [D, d * I]])


def dorr(n: int, theta: float = 0.01) -> np.ndarray:
    h = 1.0 / (n + 1)
    m = (n + 1) // 2
    term = theta / h**2
    c = np.empty(n)
    d = np.empty(n)
    e = np.empty(n)
    i = np.arange(1, m + 1)
    c[:m] = -term
    e[:m] = c[:m] - (0.5 - i * h) / h
    i = np.arange(m + 1, n + 1)
    e[m:] = -term
    c[m:] = e[m:] + (0.5 - i * h) / h
    d[:] = -(c + e)
    return np.diag(d) + np.diag(c[1:], -1) + np.diag(e[:-1], 1)


def toeplitz_t(n: int) -> np.ndarray:
    T = 2.5 * np.eye(n) - np.diag(np.ones(n - 1), -1)
    if n > 5:
        T += np.diag(np.ones(n - 5), 5)
    return T


def symbol(theta) -> np.ndarray:
    """Generating function of ``toeplitz_t``: ``2.5 - exp(i t) + exp(-5 i t)``."""
    theta = np.asarray(theta)
    return 2.5 - np.exp(1j * theta) + np.exp(-5j * theta)


def symbol_range(n_samples: int = 10_000) -> tuple[np.ndarray, float, float]:
    """Sample the symbol on ``[-pi, pi]``; return the curve and ``min |a|``, ``max |a|``."""
    if n_samples < 16:
        raise BadParams("need at least 16 samples")
    curve = symbol(np.linspace(-np.pi, np.pi, n_samples))
    mod = np.abs(curve)
    return curve, float(mod.min()), float(mod.max())


_FAMILIES = {
    "forsythe": (lambda n, *p: forsythe(n, *p), True),
    "forsythe_exp": (lambda n, *p: expm_ref(forsythe(n, *p)), True),
    "rotation": (lambda n, theta=100.0: rotation(theta), False),
    "triw_shift": (lambda n: expm_ref(triw_shift_log(n)), True),
    "parter": (lambda n: parter(n), True),
    "hanowa_neg": (lambda n, d=-1.0: -hanowa(n, d), True),
    "dorr": (lambda n, theta=0.01: dorr(n, theta), True),
    "toeplitz_t": (lambda n: toeplitz_t(n), True),
}

FAMILIES = tuple(_FAMILIES)


def build(spec: GallerySpec) -> np.ndarray:
    try:
        make, sized = _FAMILIES[spec.family]
    except KeyError:
        raise UnknownFamily(f"unknown gallery family {spec.family!r}; known: {', '.join(FAMILIES)}") from None
    if sized and (int(spec.n) != spec.n or spec.n < 1):
        raise BadParams(f"dimension must be a positive integer, got {spec.n!r}")
    try:
        return make(int(spec.n), *spec.params)
    except TypeError as exc:
        raise BadParams(f"bad parameters for {spec.family}: {spec.params}") from exc


def known_log(spec: GallerySpec) -> np.ndarray | None:
    """Exact principal logarithm for families built as an exponential, else None."""
    if spec.family == "forsythe_exp":
        return forsythe(int(spec.n), *spec.params)
    if spec.family == "triw_shift":
        return triw_shift_log(int(spec.n))
    if spec.family == "rotation":
        theta = spec.params[0] if spec.params else 100.0
        # wrap into (-pi, pi] via the matrix entries themselves
        phi = np.arctan2(np.sin(theta), np.cos(theta))
        return np.array([[0.0, phi], [-phi, 0.0]])
    return None


def parse_spec(text: str) -> GallerySpec:
    """Parse ``family[:n[,p1,p2,...]]``; for ``rotation`` the first number is theta."""
    family, _, rest = text.partition(":")
    nums = [float(t) for t in rest.split(",") if t.strip()] if rest else []
    if family == "rotation":
        return GallerySpec("rotation", 2, tuple(nums))
    if not nums:
        raise BadParams(f"{family} needs a dimension, e.g. {family}:10")
    n = nums[0]
    if n != int(n):
        raise BadParams(f"dimension must be an integer, got {n}")
    return GallerySpec(family, int(n), tuple(nums[1:]))
