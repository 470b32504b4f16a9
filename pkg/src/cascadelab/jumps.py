"""One-sided limits of cascade iterates at dyadic points, and the local 2x2 iteration.

The fixed-resolution scheme tracks ``psi_+(n)`` and ``psi_-(n)``, the right
and left limits of ``M**m chi_[0,1)`` at ``x_n = n 2**-N``. Because
``2 x_n - k`` lies on the same grid, both arrays update by

    psi_pm^(m)(n) = sqrt(2) sum_k a_k psi_pm^(m-1)(2n - k 2**N)

with reads outside ``0 .. S 2**N`` taken as zero (``S`` = support length).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .filters import SQRT2, WaveletFilter, theta_family

MAX_RESOLUTION = 16
DEGENERACY_TOL = 1e-9

# Peak-table rows: theta = k pi / 20 for k = -9 .. 9.
TABLE_THETAS = tuple(k * math.pi / 20 for k in range(-9, 10))


class DegenerateThetaError(ValueError):
    """No limit formula: the second eigenvalue of the local matrix is on the unit circle."""


@dataclass(frozen=True, eq=False)
class OneSidedTrace:
    resolution: int
    psi_plus: np.ndarray
    psi_minus: np.ndarray
    stage: int = 0
    support: int = 3

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.psi_plus.size)

    @property
    def x(self) -> np.ndarray:
        return self.n * 2.0**-self.resolution

    @property
    def jump(self) -> np.ndarray:
        return self.psi_plus - self.psi_minus

    def max_jump(self) -> float:
        return float(np.max(np.abs(self.jump)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "x", "psi_plus", "psi_minus", "jump"])
        for row in zip(self.n, self.x, self.psi_plus, self.psi_minus, self.jump):
            w.writerow([int(row[0])] + [repr(float(v)) for v in row[1:]])
        return buf.getvalue()


def trace_init(N: int, support: int = 3) -> OneSidedTrace:
    """Right and left limits of ``chi_[0,1)`` on ``n 2**-N``, ``n = 0 .. support 2**N``."""
    if not 1 <= N <= MAX_RESOLUTION:
        raise ValueError(f"resolution must be in 1..{MAX_RESOLUTION}")
    if support < 1:
        raise ValueError("support must be >= 1")
    n = np.arange(support * 2**N + 1)
    plus = (n < 2**N).astype(float)
    minus = ((n >= 1) & (n <= 2**N)).astype(float)
    return OneSidedTrace(N, plus, minus, 0, support)


def _check_taps(filt: WaveletFilter, generalized: bool):
    if not generalized and len(filt) != 4:
        raise ValueError("the fixed-resolution scheme expects a 4-tap filter (pass generalized=True)")
    if not filt.is_real:
        raise ValueError("one-sided traces are real; the filter must have real taps")


def trace_step(filt: WaveletFilter, trace: OneSidedTrace, generalized: bool = False) -> OneSidedTrace:
    _check_taps(filt, generalized)
    if generalized and trace.support < filt.N:
        raise ValueError(f"trace support {trace.support} is shorter than the filter length N={filt.N}")
    size = trace.psi_plus.size
    P = 2**trace.resolution
    n = np.arange(size)
    plus = np.zeros(size)
    minus = np.zeros(size)
    for k, a in enumerate(filt.coefficients.real):
        src = 2 * n - k * P
        ok = (src >= 0) & (src < size)
        plus[ok] += a * trace.psi_plus[src[ok]]
        minus[ok] += a * trace.psi_minus[src[ok]]
    return OneSidedTrace(trace.resolution, SQRT2 * plus, SQRT2 * minus, trace.stage + 1, trace.support)


def trace_run(filt: WaveletFilter, N: int, stages: int, generalized: bool = False) -> OneSidedTrace:
    support = filt.N if generalized else 3
    tr = trace_init(N, support)
    for _ in range(stages):
        tr = trace_step(filt, tr, generalized)
    return tr


def _four_taps(filt: WaveletFilter) -> np.ndarray:
    if len(filt) != 4:
        raise ValueError("expected a 4-tap filter")
    return SQRT2 * filt.coefficients.real


def local_matrix(filt: WaveletFilter) -> np.ndarray:
    """2x2 matrix taking the two values left of a dyadic point one stage further."""
    c = _four_taps(filt)
    return np.array([[c[2], c[0]], [c[3], c[1]]])


def local_matrix_3(filt: WaveletFilter) -> np.ndarray:
    """3x3 extension tracking a third interval; its extra eigenvalue is ``sqrt(2) a_3``."""
    c = _four_taps(filt)
    return np.array([[c[3], c[1], 0.0], [0.0, c[2], c[0]], [0.0, c[3], c[1]]])


def second_eigenvalue(filt: WaveletFilter) -> float:
    """Eigenvalue of the local matrix other than 1; equals ``-sin(theta)`` in the family."""
    return float(np.trace(local_matrix(filt)) - 1.0)


def local_limit(filt: WaveletFilter, start) -> np.ndarray:
    """``lim A**n start``; both components equal ``(c2 s1 - c1 s2) / (c2 - c1)``."""
    lam = second_eigenvalue(filt)
    if abs(lam - 1) < DEGENERACY_TOL or abs(lam + 1) < DEGENERACY_TOL:
        raise DegenerateThetaError(f"second eigenvalue {lam!r} is on the unit circle")
    c = _four_taps(filt)
    s1, s2 = start
    v = (c[2] * s1 - c[1] * s2) / (c[2] - c[1])
    return np.array([v, v])


@dataclass
class PeakRow:
    theta: float
    x1: float | None
    x15: float | None
    x2: float | None

    @property
    def degenerate(self) -> bool:
        return self.x1 is None


def peak_row(theta: float) -> PeakRow:
    filt = theta_family(theta)
    c = _four_taps(filt)
    try:
        x1 = local_limit(filt, (0.0, 1.0))[0]
        x15 = local_limit(filt, (c[1], c[2]))[0]
        x2 = local_limit(filt, (1.0, 0.0))[0]
    except DegenerateThetaError:
        return PeakRow(theta, None, None, None)
    return PeakRow(theta, float(x1), float(x15), float(x2))


def peak_table(thetas=TABLE_THETAS) -> list[PeakRow]:
    """Limits of the cascade at ``x = 1, 3/2, 2`` for each ``theta``."""
    return [peak_row(t) for t in thetas]


def peak_table_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theta", "x1", "x15", "x2"])
    for r in rows:
        if r.degenerate:
            w.writerow([repr(r.theta), "degenerate", "degenerate", "degenerate"])
        else:
            # 4 decimals; "-0.0000" normalized to "0.0000"
            w.writerow([repr(r.theta)] + [f"{v:.4f}".replace("-0.0000", "0.0000") for v in (r.x1, r.x15, r.x2)])
    return buf.getvalue()
