"""Finite low-pass filters and the quadrature-mirror checks.

Frequency convention, used everywhere in the package: a trigonometric
polynomial ``sum_k x_k z**k`` is evaluated on the circle at ``z = exp(-1j*t)``.
So ``m0(t) = sum_k a_k exp(-1j*k*t)`` and ``m0(0) = sum_k a_k``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SQRT2 = math.sqrt(2.0)
DEFAULT_TOL = 1e-12


class FilterFormatError(ValueError):
    """Raised when a filter description cannot be parsed."""


@dataclass(frozen=True, eq=False)
class WaveletFilter:
    """Low-pass filter taps ``a_0 .. a_N`` of the refinement equation.

    Coefficients are always stored as a complex array. ``theta`` is set
    when the filter came from :func:`theta_family`.
    """

    coefficients: np.ndarray
    name: str = ""
    theta: float | None = None

    def __post_init__(self):
        a = np.array(self.coefficients, dtype=complex).ravel()
        if a.size < 2:
            raise ValueError("a filter needs at least two taps")
        a.setflags(write=False)
        object.__setattr__(self, "coefficients", a)

    @property
    def N(self) -> int:
        """Largest tap index."""
        return self.coefficients.size - 1

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.coefficients.imag == 0))

    def __len__(self):
        return self.coefficients.size

    def __repr__(self):
        label = self.name or (f"theta={self.theta!r}" if self.theta is not None else "")
        return f"WaveletFilter({label}, N={self.N})"

    def to_dict(self) -> dict:
        if self.theta is not None:
            return {"name": self.name or "theta", "theta": self.theta}
        return {
            "name": self.name,
            "coefficients": [[float(c.real), float(c.imag)] for c in self.coefficients],
        }

    @classmethod
    def from_dict(cls, data) -> "WaveletFilter":
        if not isinstance(data, dict):
            raise FilterFormatError("filter description must be a JSON object")
        name = data.get("name", "")
        if not isinstance(name, str):
            raise FilterFormatError("'name' must be a string")
        if "theta" in data:
            theta = data["theta"]
            if isinstance(theta, bool) or not isinstance(theta, (int, float)):
                raise FilterFormatError("'theta' must be a number")
            return theta_family(float(theta), name=name)
        if "coefficients" not in data:
            raise FilterFormatError("filter needs 'coefficients' or 'theta'")
        raw = data["coefficients"]
        if not isinstance(raw, list) or len(raw) < 2:
            raise FilterFormatError("'coefficients' must be a list of at least two [re, im] pairs")
        taps = []
        for pair in raw:
            if isinstance(pair, (int, float)) and not isinstance(pair, bool):
                taps.append(complex(pair))
                continue
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
            ):
                raise FilterFormatError(f"bad coefficient entry {pair!r}")
            taps.append(complex(pair[0], pair[1]))
        if not all(np.isfinite(taps)):
            raise FilterFormatError("coefficients must be finite")
        return cls(np.array(taps), name=name)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "WaveletFilter":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FilterFormatError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)


def load_filter(path) -> WaveletFilter:
    """Read a filter JSON file. Raises ``OSError`` or :class:`FilterFormatError`."""
    return WaveletFilter.from_json(Path(path).read_text(encoding="utf-8"))


def save_filter(filt: WaveletFilter, path) -> None:
    Path(path).write_text(filt.to_json() + "\n", encoding="utf-8")


def haar() -> WaveletFilter:
    return WaveletFilter(np.array([1.0, 1.0]) / SQRT2, name="haar")


def theta_family(theta: float, name: str = "") -> WaveletFilter:
    """The one-parameter family of 4-tap orthogonal filters.

    ``a_k = (1 +/- cos(theta) +/- sin(theta)) / (2*sqrt(2))`` with sign
    patterns (-,+), (-,-), (+,-), (+,+) for k = 0..3.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    c, s = math.cos(theta), math.sin(theta)
    k = 1.0 / (2.0 * SQRT2)
    taps = k * np.array([1 - c + s, 1 - c - s, 1 + c - s, 1 + c + s])
    return WaveletFilter(taps, name=name, theta=theta)


@dataclass
class QMFReport:
    """Residuals of the orthogonality and low-pass conditions.

    ``orthogonality`` maps each shift ``l`` (with overlapping taps) to
    ``|sum_k conj(a_k) a_{k+2l} - delta_l|``; ``lowpass`` is
    ``|sum_k a_k - sqrt(2)|``.
    """

    orthogonality: dict[int, float]
    lowpass: float
    tol: float

    @property
    def violations(self) -> list[tuple[str, float]]:
        out = [(f"orthogonality l={l}", r) for l, r in sorted(self.orthogonality.items()) if r > self.tol]
        if self.lowpass > self.tol:
            out.append(("lowpass", self.lowpass))
        return out

    @property
    def ok(self) -> bool:
        return not self.violations

    def max_residual(self) -> float:
        return max([self.lowpass, *self.orthogonality.values()])


def validate_qmf(filt: WaveletFilter, tol: float = DEFAULT_TOL) -> QMFReport:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    a = filt.coefficients
    N = filt.N
    ortho = {}
    for l in range(-(N // 2), N // 2 + 1):
        # overlap of a_k and a_{k+2l}
        lo, hi = max(0, -2 * l), min(N, N - 2 * l)
        s = np.sum(np.conj(a[lo : hi + 1]) * a[lo + 2 * l : hi + 2 * l + 1])
        ortho[l] = float(abs(s - (1.0 if l == 0 else 0.0)))
    lowpass = float(abs(a.sum() - SQRT2))
    return QMFReport(ortho, lowpass, tol)


def m0_eval(filt: WaveletFilter, t):
    """``m0(z) = sum_k a_k z**k`` at ``z = exp(-1j*t)``; vectorized over ``t``."""
    t = np.asarray(t, dtype=float)
    k = np.arange(filt.N + 1)
    vals = np.exp(-1j * np.multiply.outer(t, k)) @ filt.coefficients
    return vals if vals.ndim else complex(vals)


def qmf_identity_residual(filt: WaveletFilter, t):
    """``| |m0(t)|^2 + |m0(t+pi)|^2 - 2 |``."""
    t = np.asarray(t, dtype=float)
    r = np.abs(np.abs(m0_eval(filt, t)) ** 2 + np.abs(m0_eval(filt, t + np.pi)) ** 2 - 2.0)
    return r if np.ndim(r) else float(r)
