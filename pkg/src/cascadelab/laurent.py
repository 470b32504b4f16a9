"""Trigonometric (Laurent) polynomials ``sum_k x_k z**k`` with a finite index window."""

from __future__ import annotations

import csv
import io
from numbers import Number

import numpy as np

TRIM_TOL = 1e-13


class LaurentPolynomial:
    """Coefficients ``x_lo .. x_hi`` of ``sum_k x_k z**k``.

    Values are immutable. ``==`` trims fringe coefficients of modulus
    ``<= 1e-13`` on both sides and then compares exactly; use
    :meth:`identical` for untrimmed equality and :meth:`allclose` for
    tolerance-based comparison.
    """

    __slots__ = ("lo", "coeffs")

    def __init__(self, coeffs, lo: int = 0):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "lo", int(lo))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    # construction helpers

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls([1.0], 0)

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "LaurentPolynomial":
        return cls([c], k)

    @classmethod
    def from_dict(cls, d: dict) -> "LaurentPolynomial":
        if not d:
            return cls([0.0], 0)
        lo, hi = min(d), max(d)
        c = np.zeros(hi - lo + 1, dtype=complex)
        for k, v in d.items():
            c[k - lo] += v
        return cls(c, lo)

    @classmethod
    def from_vector(cls, x, lo: int) -> "LaurentPolynomial":
        return cls(x, lo)

    # shape

    @property
    def hi(self) -> int:
        return self.lo + self.coeffs.size - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    def coefficient(self, k: int) -> complex:
        if self.lo <= k <= self.hi:
            return complex(self.coeffs[k - self.lo])
        return 0j

    def to_dict(self) -> dict[int, complex]:
        return {int(k): complex(v) for k, v in zip(self.indices, self.coeffs) if v != 0}

    def vector(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients on the window ``lo..hi``; raises if nonzero data falls outside."""
        out = np.zeros(hi - lo + 1, dtype=complex)
        t = self.trim(0.0)
        if t.is_zero():
            return out
        if t.lo < lo or t.hi > hi:
            raise ValueError(f"polynomial with indices {t.lo}..{t.hi} does not fit in {lo}..{hi}")
        out[t.lo - lo : t.hi - lo + 1] = t.coeffs
        return out

    def trim(self, tol: float = TRIM_TOL) -> "LaurentPolynomial":
        """Drop leading/trailing coefficients with modulus ``<= tol``."""
        keep = np.nonzero(np.abs(self.coeffs) > tol)[0]
        if keep.size == 0:
            return LaurentPolynomial([0.0], 0)
        return LaurentPolynomial(self.coeffs[keep[0] : keep[-1] + 1], self.lo + keep[0])

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs) <= tol))

    # comparisons

    def identical(self, other: "LaurentPolynomial") -> bool:
        return self.lo == other.lo and np.array_equal(self.coeffs, other.coeffs)

    def __eq__(self, other):
        if isinstance(other, Number):
            other = LaurentPolynomial([other])
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.trim().identical(other.trim())

    __hash__ = None

    def max_abs_diff(self, other: "LaurentPolynomial") -> float:
        return float(np.max(np.abs((self - other).coeffs)))

    def allclose(self, other: "LaurentPolynomial", atol: float = 1e-12) -> bool:
        return self.max_abs_diff(other) <= atol

    # evaluation

    def __call__(self, t):
        return self.evaluate(t)

    def evaluate(self, t):
        """``sum_k x_k exp(-1j*k*t)``; vectorized over ``t``."""
        t = np.asarray(t, dtype=float)
        vals = np.exp(-1j * np.multiply.outer(t, self.indices)) @ self.coeffs
        return vals if vals.ndim else complex(vals)

    def at_one(self) -> complex:
        """Value at ``z = 1``, i.e. the coefficient sum."""
        return complex(self.coeffs.sum())

    # ring operations

    def flip(self) -> "LaurentPolynomial":
        """``xi(z**-1)``."""
        return LaurentPolynomial(self.coeffs[::-1], -self.hi)

    def conj(self) -> "LaurentPolynomial":
        """Coefficient-wise complex conjugate."""
        return LaurentPolynomial(np.conj(self.coeffs), self.lo)

    def star(self) -> "LaurentPolynomial":
        """The polynomial whose values on the circle are ``conj(xi(z))``."""
        return self.conj().flip()

    def dilate(self, q: int = 2) -> "LaurentPolynomial":
        """``xi(z**q)``."""
        c = np.zeros((self.coeffs.size - 1) * q + 1, dtype=complex)
        c[::q] = self.coeffs
        return LaurentPolynomial(c, self.lo * q)

    def decimate(self) -> "LaurentPolynomial":
        """Keep the even-index coefficients, reindexed by ``k -> k/2``."""
        lo = -((-self.lo) // 2)  # ceil
        start = 2 * lo - self.lo
        c = self.coeffs[start::2]
        return LaurentPolynomial(c, lo) if c.size else LaurentPolynomial([0.0], 0)

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``z**k``."""
        return LaurentPolynomial(self.coeffs, self.lo + k)

    def __neg__(self):
        return LaurentPolynomial(-self.coeffs, self.lo)

    def __add__(self, other):
        if isinstance(other, Number):
            other = LaurentPolynomial([other])
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        c = np.zeros(hi - lo + 1, dtype=complex)
        c[self.lo - lo : self.hi - lo + 1] += self.coeffs
        c[other.lo - lo : other.hi - lo + 1] += other.coeffs
        return LaurentPolynomial(c, lo)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Number):
            other = LaurentPolynomial([other])
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return LaurentPolynomial(self.coeffs * other, self.lo)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return LaurentPolynomial(np.convolve(self.coeffs, other.coeffs), self.lo + other.lo)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = LaurentPolynomial.one()
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        terms = ", ".join(f"{k}: {v:.6g}" for k, v in self.to_dict().items())
        return f"LaurentPolynomial({{{terms}}})"

    # debugging dump

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "re", "im"])
        for k, v in zip(self.indices, self.coeffs):
            w.writerow([int(k), repr(float(v.real)), repr(float(v.imag))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "LaurentPolynomial":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["index", "re", "im"]:
            raise ValueError("expected header 'index,re,im'")
        return cls.from_dict({int(k): complex(float(re), float(im)) for k, re, im in rows[1:]})


def l2_norm_squared(poly: LaurentPolynomial) -> float:
    """``(1/2pi) * integral |xi|^2 dt`` via the coefficient sum (Parseval)."""
    return float(np.sum(np.abs(poly.coeffs) ** 2))


def circle_mean(f, n: int = 4096) -> complex:
    """``(1/2pi) * integral_0^{2pi} f(t) dt`` by the uniform trapezoid rule."""
    t = 2 * np.pi * np.arange(n) / n
    return complex(np.mean(f(t)))
