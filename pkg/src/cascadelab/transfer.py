"""The Ruelle transfer operator of a low-pass filter and its spectrum.

``(R xi)(z) = 1/2 * sum_{w**2 = z} |m0(w)|**2 xi(w)``. In coefficients this
is "multiply by the power spectrum ``|m0|**2``, then keep the even-index
coefficients", which is what :func:`ruelle_apply` does.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .filters import WaveletFilter, m0_eval
from .laurent import LaurentPolynomial

DEFAULT_CLUSTER_TOL = 1e-7


class SpectrumError(RuntimeError):
    """The eigensolver failed or produced non-finite values."""


def power_spectrum(filt: WaveletFilter) -> LaurentPolynomial:
    """``|m0(z)|**2`` on the circle as a Laurent polynomial in ``z``.

    The coefficient of ``z**d`` is ``sum_{l - j = d} conj(a_j) a_l``.
    """
    m0 = LaurentPolynomial(filt.coefficients, 0)
    return m0.star() * m0


def ruelle_apply(filt: WaveletFilter, xi: LaurentPolynomial) -> LaurentPolynomial:
    """Apply ``R`` to a Laurent polynomial.

    Output coefficients are ``(R x)_k = sum_{j,l} conj(a_j) a_l x_{j-l+2k}``;
    for ``xi`` in ``P[n, m]`` the result lives in
    ``P[ceil((n-N)/2), floor((m+N)/2)]``.
    """
    N = filt.N
    lo = -((N - xi.lo) // 2)
    hi = (xi.hi + N) // 2
    out = (power_spectrum(filt) * xi).decimate()
    return LaurentPolynomial(out.vector(lo, hi), lo)


def adjoint_apply(filt: WaveletFilter, xi: LaurentPolynomial) -> LaurentPolynomial:
    """``(R* xi)(z) = |m0(z)|**2 xi(z**2)``, the adjoint on ``L2`` of the circle."""
    return power_spectrum(filt) * xi.dilate(2)


@dataclass(frozen=True, eq=False)
class RuelleMatrix:
    """Matrix of ``R`` on ``P[-N, N]`` acting on coefficient vectors ``(x_-N .. x_N)``."""

    entries: np.ndarray
    N: int

    @property
    def n(self) -> int:
        return 2 * self.N + 1

    def exponent_index(self, k: int) -> int:
        """Row/column position of the monomial ``z**k``."""
        return k + self.N

    def apply(self, xi: LaurentPolynomial) -> LaurentPolynomial:
        x = xi.vector(-self.N, self.N)
        return LaurentPolynomial(self.entries @ x, -self.N)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def ruelle_matrix(filt: WaveletFilter) -> RuelleMatrix:
    """Slant-Toeplitz matrix of ``R`` restricted to ``P[-N, N]``.

    Entry ``[k, i]`` (exponents ``k, i`` in ``-N..N``) is the coefficient
    of ``z**(2k - i)`` in ``|m0|**2``.
    """
    N = filt.N
    if N < 1:
        raise ValueError("filter must have N >= 1")
    h = power_spectrum(filt)
    k = np.arange(-N, N + 1)
    d = 2 * k[:, None] - k[None, :]
    inside = (d >= h.lo) & (d <= h.hi)
    M = np.zeros((2 * N + 1, 2 * N + 1), dtype=complex)
    M[inside] = h.coeffs[d[inside] - h.lo]
    M.setflags(write=False)
    return RuelleMatrix(M, N)


@dataclass
class Cluster:
    value: complex
    multiplicity: int

    def __abs__(self):
        return abs(self.value)


@dataclass
class SpectralReport:
    """Eigenvalues of a transfer matrix, clustered, with the simplicity verdict.

    ``condition_e`` is true when the cluster containing 1 is simple and
    every other cluster lies strictly inside the disk of radius
    ``1 - cluster_tol``. ``gap`` is the largest modulus among clusters
    other than the one at 1.
    """

    eigenvalues: np.ndarray
    clusters: list[Cluster]
    cluster_tol: float
    peripheral: list[Cluster] = field(default_factory=list)
    condition_e: bool = False
    gap: float = 0.0

    def multiplicity_of(self, value: complex) -> int:
        for c in self.clusters:
            if abs(c.value - value) <= self.cluster_tol:
                return c.multiplicity
        return 0

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [
                {"re": float(c.value.real), "im": float(c.value.imag), "mult": c.multiplicity}
                for c in self.clusters
            ],
            "condition_e": bool(self.condition_e),
            "gap": float(self.gap),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def cluster_eigenvalues(values, tol: float) -> list[Cluster]:
    """Single-linkage clustering: values closer than ``tol`` share a cluster.

    Each cluster is represented by its mean, which is far more accurate
    than the individual members when a multiple eigenvalue splits.
    """
    values = np.asarray(values, dtype=complex)
    n = values.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    clusters = [Cluster(complex(values[idx].mean()), len(idx)) for idx in groups.values()]
    clusters.sort(key=lambda c: (-abs(c.value), -c.value.real, -c.value.imag))
    return clusters


def spectrum(matrix, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> SpectralReport:
    """All eigenvalues of the transfer matrix and the simplicity verdict at 1."""
    if cluster_tol < 0:
        raise ValueError("cluster_tol must be nonnegative")
    A = np.asarray(matrix, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    if not np.all(np.isfinite(A)):
        raise SpectrumError("matrix has non-finite entries")
    try:
        ev = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise SpectrumError(f"eigensolver did not converge: {exc}") from exc
    if not np.all(np.isfinite(ev)):
        raise SpectrumError("eigensolver returned non-finite eigenvalues")

    clusters = cluster_eigenvalues(ev, cluster_tol)
    peripheral = [c for c in clusters if abs(c.value) >= 1 - cluster_tol]
    at_one = [c for c in clusters if abs(c.value - 1) <= cluster_tol]
    others = [c for c in clusters if abs(c.value - 1) > cluster_tol]
    gap = max((abs(c.value) for c in others), default=0.0)
    cond = (
        len(at_one) == 1
        and at_one[0].multiplicity == 1
        and all(abs(c.value) < 1 - cluster_tol for c in others)
    )
    return SpectralReport(ev, clusters, cluster_tol, peripheral, cond, float(gap))


def condition_e(filt: WaveletFilter, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> bool:
    return spectrum(ruelle_matrix(filt), cluster_tol).condition_e


def theta_b(theta: float) -> float:
    """``a_3 a_0`` for the 4-tap family, ``(1 + 2 sin(theta) - cos(2 theta)) / 8``."""
    return (1 + 2 * math.sin(theta) - math.cos(2 * theta)) / 8


def theta_eigenvalues_closed_form(theta: float) -> np.ndarray:
    """The seven eigenvalues of the 7x7 transfer matrix for the 4-tap family."""
    b = theta_b(theta)
    r = np.lib.scimath.sqrt(1 + 16 * b)
    return np.array([1, b, b, 0.5, -2 * b, (1 + r) / 4, (1 - r) / 4], dtype=complex)


def match_eigenvalues(a, b) -> float:
    """Max modulus error under the optimal one-to-one matching of two multisets."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError("multisets differ in size")
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def pn_function(filt: WaveletFilter, n: int, t):
    """``p_n`` at ``z = exp(-1j*t)`` by ``p_n(z) = 1/2 sum_{w**2=z} |m0(w)|**4 p_{n-1}(w)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    t = np.asarray(t, dtype=float)

    def rec(k, s):
        if k == 0:
            return np.ones_like(s)
        out = np.zeros_like(s)
        for w in (s / 2, s / 2 + np.pi):
            out += np.abs(m0_eval(filt, w)) ** 4 * rec(k - 1, w)
        return out / 2

    vals = rec(n, t)
    return vals if vals.ndim else float(vals)


def rho2_estimate(filt: WaveletFilter, n_max: int = 6, grid: int = 512) -> float:
    """``max_t p_n(t) ** (1/(2n))`` at ``n = n_max``; approximates the L2 spectral radius."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    t = 2 * np.pi * np.arange(grid) / grid
    return float(np.max(pn_function(filt, n_max, t)) ** (1.0 / (2 * n_max)))


def flip_covariance_residual(filt: WaveletFilter, xi: LaurentPolynomial) -> float:
    """Max coefficient gap between ``flip(R xi)`` and ``R(flip xi)``; real filters only."""
    if not filt.is_real:
        raise ValueError("flip covariance needs real filter coefficients")
    return ruelle_apply(filt, xi).flip().max_abs_diff(ruelle_apply(filt, xi.flip()))
