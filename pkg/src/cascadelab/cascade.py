"""Exact cascade iteration on dyadic step functions.

A :class:`DyadicStepFunction` at level ``m`` is constant on every interval
``[i 2**-m, (i+1) 2**-m)`` and vanishes outside ``[lo, hi)``. The cascade
operator ``(M psi)(x) = sqrt(2) sum_k a_k psi(2x - k)`` maps level ``m`` to
level ``m+1`` without any approximation.
"""

from __future__ import annotations

import csv
import io
import math

import numpy as np

from .filters import SQRT2, WaveletFilter, m0_eval
from .laurent import LaurentPolynomial

MAX_LEVEL = 24


class SupportError(ValueError):
    """The step-function window cannot hold the result."""


class LevelCapError(ValueError):
    """Refinement beyond ``MAX_LEVEL`` was requested."""


class DyadicStepFunction:
    """Piecewise-constant function on ``2**-level`` intervals inside ``[lo, hi)``.

    ``values[i]`` is the value on ``[lo + i 2**-level, lo + (i+1) 2**-level)``.
    """

    __slots__ = ("level", "lo", "hi", "values")

    def __init__(self, values, level: int = 0, lo: int = 0, hi: int | None = None):
        v = np.array(values, dtype=complex).ravel()
        level, lo = int(level), int(lo)
        if level < 0:
            raise ValueError("level must be >= 0")
        if level > MAX_LEVEL:
            raise LevelCapError(f"level {level} exceeds cap {MAX_LEVEL}")
        if hi is None:
            hi = lo + math.ceil(v.size / 2**level)
            v = np.concatenate([v, np.zeros((hi - lo) * 2**level - v.size, dtype=complex)])
        hi = int(hi)
        if hi <= lo:
            raise ValueError("need hi > lo")
        if v.size != (hi - lo) * 2**level:
            raise ValueError(f"expected {(hi - lo) * 2**level} values, got {v.size}")
        v.setflags(write=False)
        for name, val in (("level", level), ("lo", lo), ("hi", hi), ("values", v)):
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError("DyadicStepFunction is immutable")

    def __repr__(self):
        return f"DyadicStepFunction(level={self.level}, support=[{self.lo}, {self.hi}))"

    @property
    def support_hi(self) -> int:
        return self.hi

    @property
    def support_lo(self) -> int:
        return self.lo

    @property
    def h(self) -> float:
        return 2.0**-self.level

    @property
    def grid(self) -> np.ndarray:
        """Left endpoints of the intervals."""
        return self.lo + np.arange(self.values.size) * self.h

    def refine(self, level: int) -> "DyadicStepFunction":
        """Same function written on a finer grid."""
        if level < self.level:
            raise ValueError("cannot coarsen")
        if level == self.level:
            return self
        return DyadicStepFunction(np.repeat(self.values, 2 ** (level - self.level)), level, self.lo, self.hi)

    def widen(self, lo: int, hi: int) -> "DyadicStepFunction":
        """Embed in the larger window ``[min(lo, self.lo), max(hi, self.hi))``."""
        lo, hi = min(lo, self.lo), max(hi, self.hi)
        if (lo, hi) == (self.lo, self.hi):
            return self
        p = 2**self.level
        v = np.zeros((hi - lo) * p, dtype=complex)
        v[(self.lo - lo) * p : (self.hi - lo) * p] = self.values
        return DyadicStepFunction(v, self.level, lo, hi)

    def shift(self, k: int) -> "DyadicStepFunction":
        """``x -> psi(x - k)``."""
        return DyadicStepFunction(self.values, self.level, self.lo + k, self.hi + k)

    def __call__(self, x):
        """Right-continuous point evaluation."""
        x = np.asarray(x, dtype=float)
        i = np.floor((x - self.lo) * 2**self.level).astype(int)
        ok = (i >= 0) & (i < self.values.size)
        out = np.zeros(x.shape, dtype=complex)
        out[ok] = self.values[i[ok]]
        return out if out.ndim else complex(out)

    def __add__(self, other):
        a, b = _common(self, other)
        return DyadicStepFunction(a.values + b.values, a.level, a.lo, a.hi)

    def __sub__(self, other):
        a, b = _common(self, other)
        return DyadicStepFunction(a.values - b.values, a.level, a.lo, a.hi)

    def __mul__(self, c):
        return DyadicStepFunction(self.values * c, self.level, self.lo, self.hi)

    __rmul__ = __mul__

    def norm(self) -> float:
        return math.sqrt(self.h * float(np.sum(np.abs(self.values) ** 2)))

    def allclose(self, other, atol=1e-12) -> bool:
        a, b = _common(self, other)
        return bool(np.max(np.abs(a.values - b.values)) <= atol)

    # CSV: header "x,re,im", one row per interval, left endpoints

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "re", "im"])
        for x, v in zip(self.grid, self.values):
            w.writerow([repr(float(x)), repr(float(v.real)), repr(float(v.imag))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "DyadicStepFunction":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["x", "re", "im"]:
            raise ValueError("expected header 'x,re,im'")
        data = np.array([[float(c) for c in r] for r in rows[1:]])
        if data.shape[0] < 1:
            raise ValueError("no data rows")
        x = data[:, 0]
        if x.size > 1:
            level = int(round(-math.log2(x[1] - x[0])))
        else:
            level = 0
        lo = int(round(x[0]))
        return cls(data[:, 1] + 1j * data[:, 2], level, lo)


def _common(a: DyadicStepFunction, b: DyadicStepFunction):
    level = max(a.level, b.level)
    lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
    return a.refine(level).widen(lo, hi), b.refine(level).widen(lo, hi)


def haar_initial(support_hi: int = 1, support_lo: int = 0) -> DyadicStepFunction:
    """Indicator of ``[0, 1)`` at level 0 inside the window ``[support_lo, support_hi)``."""
    if support_lo > 0 or support_hi < 1:
        raise ValueError("window must contain [0, 1)")
    v = np.zeros(support_hi - support_lo)
    v[-support_lo] = 1.0
    return DyadicStepFunction(v, 0, support_lo, support_hi)


def _mask(filt) -> LaurentPolynomial:
    if isinstance(filt, WaveletFilter):
        return LaurentPolynomial(filt.coefficients, 0)
    if isinstance(filt, LaurentPolynomial):
        return filt
    raise TypeError("expected a WaveletFilter or a LaurentPolynomial mask")


def cascade_step(filt, psi: DyadicStepFunction) -> DyadicStepFunction:
    """One application of ``M``; ``filt`` may also be a Laurent mask with any index range.

    The window ``[lo, hi)`` of ``psi`` is kept; it must contain the mask's
    index range so that ``M psi`` stays inside it.
    """
    mask = _mask(filt)
    if psi.lo > mask.lo or psi.hi < mask.hi:
        raise SupportError(
            f"window [{psi.lo}, {psi.hi}) must contain the mask indices {mask.lo}..{mask.hi}"
        )
    m = psi.level
    if m + 1 > MAX_LEVEL:
        raise LevelCapError(f"level {m + 1} exceeds cap {MAX_LEVEL}")
    p = 2**m
    # fine value I (level m+1, same window) is sqrt(2) sum_k a_k psi.values[I - (k - lo) p]
    out = np.zeros((psi.hi - psi.lo) * 2 * p, dtype=complex)
    for k, a in zip(mask.indices, mask.coeffs):
        if a == 0:
            continue
        start = (k - psi.lo) * p
        stop = min(start + psi.values.size, out.size)
        out[start:stop] += a * psi.values[: stop - start]
    out *= SQRT2
    return DyadicStepFunction(out, m + 1, psi.lo, psi.hi)


def cascade_run(filt, psi0: DyadicStepFunction, n: int, keep_all: bool = True):
    """``n`` cascade steps from ``psi0``; returns all stages (``[psi0, ..., psi_n]``) or the last."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if psi0.level + n > MAX_LEVEL:
        raise LevelCapError(f"{n} stages from level {psi0.level} exceed cap {MAX_LEVEL}")
    stages = [psi0]
    psi = psi0
    for _ in range(n):
        psi = cascade_step(filt, psi)
        if keep_all:
            stages.append(psi)
    return stages if keep_all else psi


def cascade_from_haar(filt: WaveletFilter, n: int, keep_all: bool = True):
    """Cascade started at the indicator of ``[0, 1)`` inside ``[0, max(N, 1))``."""
    return cascade_run(filt, haar_initial(max(filt.N, 1)), n, keep_all)


def norms(stages) -> list[float]:
    return [s.norm() for s in stages]


def successive_distances(stages) -> list[float]:
    return [l2_distance(a, b) for a, b in zip(stages, stages[1:])]


def l2_inner(psi1: DyadicStepFunction, psi2: DyadicStepFunction) -> complex:
    """``integral conj(psi1) psi2``, exact."""
    a, b = _common(psi1, psi2)
    return complex(a.h * np.vdot(a.values, b.values))


def l2_distance(psi1: DyadicStepFunction, psi2: DyadicStepFunction) -> float:
    return (psi1 - psi2).norm()


def _unit_blocks(psi: DyadicStepFunction) -> np.ndarray:
    return psi.values.reshape(psi.hi - psi.lo, 2**psi.level)


def relative_polynomial(psi1: DyadicStepFunction, psi2: DyadicStepFunction) -> LaurentPolynomial:
    """``sum_k z**k integral conj(psi1(x - k)) psi2(x) dx``."""
    level = max(psi1.level, psi2.level)
    a, b = psi1.refine(level), psi2.refine(level)
    # G[u, v]: integral of conj(psi1) on [a.lo+u, a.lo+u+1) against psi2 on [b.lo+v, ...)
    # after aligning both unit cells
    G = np.conj(_unit_blocks(a)) @ _unit_blocks(b).T * 2.0**-level
    # psi1(x - k) on cell a.lo+u+k meets psi2 cell b.lo+v when a.lo+u+k = b.lo+v
    kmin = b.lo - (a.hi - 1)
    kmax = (b.hi - 1) - a.lo
    coeffs = np.zeros(kmax - kmin + 1, dtype=complex)
    for off in range(-(G.shape[0] - 1), G.shape[1]):
        # off = v - u, k = b.lo + v - a.lo - u
        k = b.lo - a.lo + off
        coeffs[k - kmin] = np.trace(G, offset=off)
    return LaurentPolynomial(coeffs, kmin)


def convolve_poly(xi: LaurentPolynomial, psi: DyadicStepFunction) -> DyadicStepFunction:
    """``(xi * psi)(x) = sum_k xi_k psi(x - k)``."""
    out = DyadicStepFunction(
        np.zeros((psi.hi - psi.lo + xi.hi - xi.lo) * 2**psi.level),
        psi.level,
        psi.lo + xi.lo,
        psi.hi + xi.hi,
    )
    for k, c in zip(xi.indices, xi.coeffs):
        if c != 0:
            out = out + psi.shift(int(k)) * c
    return out


def verify_cascade_covariance(filt: WaveletFilter, psi1, psi2) -> float:
    """Max coefficient gap between ``p(M psi1, M psi2)`` and ``R p(psi1, psi2)``."""
    from .transfer import ruelle_apply

    lhs = relative_polynomial(_step_in_window(filt, psi1), _step_in_window(filt, psi2))
    rhs = ruelle_apply(filt, relative_polynomial(psi1, psi2))
    return lhs.max_abs_diff(rhs)


def _step_in_window(filt, psi):
    mask = _mask(filt)
    return cascade_step(filt, psi.widen(min(psi.lo, mask.lo), max(psi.hi, mask.hi)))


def fourier_partial_product(filt: WaveletFilter, n: int, t):
    """``prod_{k=1..n} m0(t 2**-k) / sqrt(2)``; vectorized over ``t``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t = np.asarray(t, dtype=float)
    out = np.ones(t.shape, dtype=complex)
    for k in range(1, n + 1):
        out = out * (m0_eval(filt, t * 2.0**-k) / SQRT2)
    return out if out.ndim else complex(out)


def step_fourier(psi: DyadicStepFunction, t):
    """``integral psi(x) exp(-1j t x) dx`` in closed form."""
    t = np.asarray(t, dtype=float)
    h = psi.h
    mid = psi.grid + h / 2
    phase = np.exp(-1j * np.multiply.outer(t, mid))
    # np.sinc(u) = sin(pi u)/(pi u)
    env = h * np.sinc(t * h / (2 * np.pi))
    out = env * (phase @ psi.values)
    return out if out.ndim else complex(out)


def strang_fix_check(psi: DyadicStepFunction) -> float:
    """``max_x |sum_k psi(x + k) - 1|`` over the grid."""
    return float(np.max(np.abs(_unit_blocks(psi).sum(axis=0) - 1.0)))


def reference_approximant(filt: WaveletFilter, stage: int = 20) -> DyadicStepFunction:
    """High-stage cascade from the Haar start, used as a stand-in for the limit."""
    return cascade_from_haar(filt, stage, keep_all=False)
