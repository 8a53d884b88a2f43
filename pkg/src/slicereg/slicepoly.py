"""Slice-regular polynomials f(x) = sum_m x^m a_m with right quaternionic
coefficients.

The stem lifting F(z) = F1(z) + iota*F2(z) drives everything: evaluation
off the real axis is F1(z) + J*F2(z) at z = alpha + i*beta, the slice
product is coefficient convolution, the conjugate flips coefficients,
and the normal function N(f) = f * f^c is slice-preserving with real
coefficients.  Spherical value/derivative come from the stem as F1 and
F2/beta; the spherical derivative extends to the real axis with the
slice derivative (hard switch below BETA_SWITCH).

Array-valued stem evaluation (``stem_arrays``) backs the quadrature
pipeline; scalar evaluation backs everything pointwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .quaternions import ONE, ZERO, Quaternion, decompose

__all__ = [
    "SlicePolynomial",
    "StemValue",
    "FunctionClassFlags",
    "NormalNotRealError",
    "LogOfZeroError",
    "slice_product",
    "normal",
    "spherical_value",
    "spherical_derivative",
    "log_abs",
]

DEGREE_CAP = 64
TRIM_REL = 1e-13
# below this |Im x| the spherical derivative switches to the slice derivative
BETA_SWITCH = 1e-8


class NormalNotRealError(RuntimeError):
    """N(f) came out with non-real coefficients: arithmetic bug upstream."""


class LogOfZeroError(ZeroDivisionError):
    """log|f(x)| requested at a (near-)zero of f."""


@dataclass(frozen=True, slots=True)
class StemValue:
    """Components of F(z) = F1 + iota*F2 at one z."""

    F1: Quaternion
    F2: Quaternion


@dataclass(frozen=True, slots=True)
class FunctionClassFlags:
    is_slice_preserving: bool
    is_circular: bool


class SlicePolynomial:
    """f(x) = sum_m x^m a_m, coefficients on the right."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Quaternion | float]):
        cs = [c if isinstance(c, Quaternion) else Quaternion.real(c) for c in coeffs]
        scale = max((c.abs() for c in cs), default=0.0)
        tol = TRIM_REL * scale
        while cs and cs[-1].abs() <= tol:
            cs.pop()
        if len(cs) - 1 > DEGREE_CAP:
            raise ValueError(f"degree {len(cs) - 1} exceeds cap {DEGREE_CAP}")
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("SlicePolynomial is immutable")

    # -- construction helpers ------------------------------------------

    @staticmethod
    def from_real(coeffs: Sequence[float]) -> "SlicePolynomial":
        return SlicePolynomial([Quaternion.real(c) for c in coeffs])

    @staticmethod
    def monomial(degree: int, coeff: Quaternion | float = 1.0) -> "SlicePolynomial":
        c = coeff if isinstance(coeff, Quaternion) else Quaternion.real(coeff)
        return SlicePolynomial([ZERO] * degree + [c])

    @staticmethod
    def linear(root: Quaternion) -> "SlicePolynomial":
        """x - root."""
        return SlicePolynomial([-root, ONE])

    # -- basic queries ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient_scale(self) -> float:
        return max((c.abs() for c in self.coeffs), default=0.0)

    def coefficient(self, m: int) -> Quaternion:
        return self.coeffs[m] if 0 <= m < len(self.coeffs) else ZERO

    def is_slice_preserving(self, rel_tol: float = 1e-12) -> bool:
        scale = self.coefficient_scale()
        return all(c.abs_im() <= rel_tol * (1.0 + scale) for c in self.coeffs)

    def flags(self) -> FunctionClassFlags:
        # F2 == 0 identically forces all coefficients of positive index to
        # vanish, so circular polynomials are exactly the constants.
        return FunctionClassFlags(self.is_slice_preserving(), self.degree <= 0)

    def real_coeffs(self) -> np.ndarray:
        """Ascending real coefficient array; requires slice-preserving f."""
        if not self.is_slice_preserving(1e-10):
            raise ValueError("polynomial is not slice-preserving")
        return np.array([c.w for c in self.coeffs], dtype=float)

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "SlicePolynomial") -> "SlicePolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return SlicePolynomial([self.coefficient(m) + other.coefficient(m) for m in range(n)])

    def __sub__(self, other: "SlicePolynomial") -> "SlicePolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return SlicePolynomial([self.coefficient(m) - other.coefficient(m) for m in range(n)])

    def __neg__(self) -> "SlicePolynomial":
        return SlicePolynomial([-c for c in self.coeffs])

    def scale(self, s: float) -> "SlicePolynomial":
        return SlicePolynomial([c * s for c in self.coeffs])

    def scale_left(self, q: Quaternion) -> "SlicePolynomial":
        """q * f in the slice-product sense: coefficients q*a_m."""
        return SlicePolynomial([q * c for c in self.coeffs])

    def __mul__(self, other: "SlicePolynomial") -> "SlicePolynomial":
        return slice_product(self, other)

    def __pow__(self, n: int) -> "SlicePolynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = SlicePolynomial([ONE])
        base = self
        while n:
            if n & 1:
                out = slice_product(out, base)
            base_needed = n > 1
            if base_needed:
                base = slice_product(base, base)
            n >>= 1
        return out

    # -- evaluation -------------------------------------------------------

    def __call__(self, x: Quaternion) -> Quaternion:
        return self.eval(x)

    def eval(self, x: Quaternion) -> Quaternion:
        """Horner from the left: powers of x sit left of the coefficients."""
        if not self.coeffs:
            return ZERO
        acc = self.coeffs[-1]
        for m in range(len(self.coeffs) - 2, -1, -1):
            acc = x * acc + self.coeffs[m]
        return acc

    def stem_components(self, alpha: float, beta: float) -> StemValue:
        """F1 = sum Re(z^m) a_m and F2 = sum Im(z^m) a_m at z = alpha+i*beta."""
        z = complex(alpha, beta)
        f1 = ZERO
        f2 = ZERO
        zm = complex(1.0, 0.0)
        for c in self.coeffs:
            f1 = f1 + c * zm.real
            f2 = f2 + c * zm.imag
            zm *= z
        return StemValue(f1, f2)

    def stem_partials(self, alpha: float, beta: float) -> tuple[Quaternion, Quaternion, Quaternion, Quaternion]:
        """Exact partials (dF1/da, dF1/db, dF2/da, dF2/db) at z = a+ib.

        From d(z^m)/da = m z^{m-1} and d(z^m)/db = i m z^{m-1}.
        """
        z = complex(alpha, beta)
        d1a = d1b = d2a = d2b = ZERO
        zm = complex(1.0, 0.0)
        for m in range(1, len(self.coeffs)):
            c = self.coeffs[m] * float(m)
            d1a = d1a + c * zm.real
            d1b = d1b - c * zm.imag
            d2a = d2a + c * zm.imag
            d2b = d2b + c * zm.real
            zm *= z
        return d1a, d1b, d2a, d2b

    def stem_scale(self, radius: float) -> float:
        """sum |a_m| * radius^m, the natural evaluation scale at |z| = radius."""
        s = 0.0
        rm = 1.0
        for c in self.coeffs:
            s += c.abs() * rm
            rm *= radius
        return s

    def stem_arrays(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized stems: returns (F1, F2) with shape z.shape + (4,)."""
        shape = z.shape + (4,)
        f1 = np.zeros(shape)
        f2 = np.zeros(shape)
        zm = np.ones_like(z)
        for c in self.coeffs:
            ca = c.to_array()
            f1 += zm.real[..., None] * ca
            f2 += zm.imag[..., None] * ca
            zm = zm * z
        return f1, f2

    def eval_complex(self, z: complex) -> complex:
        """Evaluate as a complex polynomial; requires slice-preserving f."""
        if not self.is_slice_preserving(1e-10):
            raise ValueError("complex evaluation requires a slice-preserving polynomial")
        acc = 0.0 + 0.0j
        for c in reversed(self.coeffs):
            acc = acc * z + c.w
        return acc

    # -- calculus ----------------------------------------------------------

    def slice_derivative(self) -> "SlicePolynomial":
        return SlicePolynomial([self.coeffs[m] * float(m) for m in range(1, len(self.coeffs))])

    def translate(self, a: float) -> "SlicePolynomial":
        """f(x + a) for real a: shifts a real expansion point to 0.

        Real shifts are central, so the binomial expansion applies
        coefficientwise; corpus preprocessing uses this to restate a
        check at a real center as one at the origin.
        """
        d = self.degree
        out = [ZERO] * (d + 1)
        binom = [1.0]
        for m, c in enumerate(self.coeffs):
            power = 1.0
            for k in range(m, -1, -1):
                out[k] = out[k] + c * (binom[k] * power)
                power *= a
            nxt = [1.0] + [binom[i] + binom[i + 1] for i in range(len(binom) - 1)] + [1.0]
            binom = nxt
        return SlicePolynomial(out)

    def conjugate(self) -> "SlicePolynomial":
        return SlicePolynomial([c.conj() for c in self.coeffs])

    def __repr__(self) -> str:  # pragma: no cover
        return f"SlicePolynomial({list(self.coeffs)!r})"


def slice_product(f: SlicePolynomial, g: SlicePolynomial) -> SlicePolynomial:
    """Coefficient convolution c_n = sum_m a_m b_{n-m} (a left of b)."""
    if f.is_zero or g.is_zero:
        return SlicePolynomial([])
    out = [ZERO] * (f.degree + g.degree + 1)
    for m, a in enumerate(f.coeffs):
        for n, b in enumerate(g.coeffs):
            out[m + n] = out[m + n] + a * b
    return SlicePolynomial(out)


def normal(f: SlicePolynomial) -> SlicePolynomial:
    """N(f) = f * f^c; always slice-preserving."""
    nf = slice_product(f, f.conjugate())
    scale = nf.coefficient_scale()
    for c in nf.coeffs:
        if c.abs_im() > 1e-10 * (1.0 + scale):
            raise NormalNotRealError(
                f"N(f) coefficient has imaginary part {c.abs_im():.3e} vs scale {scale:.3e}"
            )
    return SlicePolynomial([Quaternion.real(c.w) for c in nf.coeffs])


def spherical_value(f: SlicePolynomial, x: Quaternion) -> Quaternion:
    """v_s f(x) = (f(x) + f(conj x))/2 = F1(z); constant on each sphere."""
    p = decompose(x)
    return f.stem_components(p.alpha, p.beta).F1


def spherical_derivative(f: SlicePolynomial, x: Quaternion) -> Quaternion:
    """f'_s(x) = Im(x)^{-1} (f(x) - f(conj x))/2 = F2(z)/beta.

    Below BETA_SWITCH the slice-derivative extension takes over.
    """
    p = decompose(x)
    if p.beta < BETA_SWITCH:
        return f.slice_derivative().eval(Quaternion.real(p.alpha))
    return f.stem_components(p.alpha, p.beta).F2 / p.beta


def log_abs(f: SlicePolynomial, x: Quaternion) -> float:
    """log|f(x)| for slice-preserving f (a circular function of x)."""
    if not f.is_slice_preserving(1e-10):
        raise ValueError("log_abs requires a slice-preserving polynomial")
    p = decompose(x)
    v = f.eval_complex(p.z)
    a2 = v.real * v.real + v.imag * v.imag
    scale = f.stem_scale(abs(p.z))
    if a2 <= (1e-13 * (1.0 + scale)) ** 2:
        raise LogOfZeroError(f"|f(x)| ~ {math.sqrt(a2):.3e} at x with z = {p.z}")
    return 0.5 * math.log(a2)
