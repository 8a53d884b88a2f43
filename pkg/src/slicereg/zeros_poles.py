"""Zero classification, total multiplicities, pole structure and Blaschke
regularization.

Zeros of a slice polynomial f live on spheres S_x = alpha + beta*S: the
real-coefficient normal function N(f) vanishes exactly on the union of
those spheres, so zero location reduces to root finding for a real
polynomial in one complex variable.  Roots come from the companion
matrix, are clustered into spheres, re-centered by Newton iteration on a
derivative of matching order, and validated by repeated division with
the real factor (x - r) or Delta_y(x) = x^2 - t(y) x + n(y).  The
division count is the authoritative multiplicity; when eigenvalue
scatter of a multiple root splits a cluster, the cluster tolerance is
escalated until the division counts account for the whole degree.

Rational (semiregular) functions are pairs f = den^{-1} * num with a
slice-preserving denominator.  Poles sit on the spheres of den; on each
pole sphere the point orders are constant except possibly at one point
where the numerator vanishes, which carries an isolated multiplicity
equal to its total multiplicity as a zero of the numerator.  Blaschke
reciprocals with unit modulus on the boundary sphere absorb the poles;
``regularize`` multiplies them onto f and returns the pole-free product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import (
    ClassificationInconsistencyError,
    InvalidPoleError,
    PoleOnBoundaryError,
    PoleOutsideRegionError,
    ZeroDenominatorError,
    ZeroPolynomialError,
)
from .quaternions import Quaternion, decompose, validate_unit
from .slicepoly import SlicePolynomial, normal, slice_product

__all__ = [
    "ZeroRecord",
    "PoleRecord",
    "SemiregularFunction",
    "characteristic_poly",
    "zero_spheres",
    "classify_zeros",
    "total_multiplicity",
    "pole_structure",
    "blaschke_real",
    "blaschke_spherical",
    "regularize",
    "root_spheres",
]

EPS_CLASS = 1e-8
TOL_CLUSTER = 1e-7
# Division centers are Newton-polished to ~1e-12 relative, so genuine
# factors leave remainders far below this.  The tolerance must stay well
# under beta^(2m) for pole/zero spheres, or the vertex of an even factor
# (x-alpha)^2 + beta^2 raised to a high power would pass for a real root.
TOL_DIVIDE = 1e-9
BOUNDARY_BAND = 1e-9


# ---------------------------------------------------------------------------
# real-coefficient root machinery
# ---------------------------------------------------------------------------


def _poly_trim(c: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    if c.size == 0:
        return c
    scale = np.max(np.abs(c))
    if scale == 0.0:
        return np.zeros(0)
    keep = np.nonzero(np.abs(c) > 1e-13 * scale)[0]
    return c[: keep[-1] + 1] if keep.size else np.zeros(0)


def _poly_deriv(c: np.ndarray) -> np.ndarray:
    return c[1:] * np.arange(1, len(c))


def _poly_eval(c: np.ndarray, z: complex) -> complex:
    acc = 0.0 + 0.0j
    for coef in reversed(c):
        acc = acc * z + coef
    return acc


def _newton_on_derivative(c: np.ndarray, z0: complex, mult: int, real_root: bool) -> tuple[complex, bool]:
    """Polish a root of multiplicity `mult` by Newton on the (mult-1)-th
    derivative, where the root should be simple.

    Also reports whether the step size reached 1e-12 relative within the
    iteration budget.  When the hypothesized multiplicity is too low the
    iteration contracts only linearly inside the noise basin of the true
    root; slow stalls fail this flag outright, and faster ones land on
    off-center points that the division-count match and the distinctness
    check in ``root_spheres`` reject.
    """
    d = c
    for _ in range(mult - 1):
        d = _poly_deriv(d)
    if len(d) <= 1:
        return z0, False
    dp = _poly_deriv(d)
    z = complex(z0.real, 0.0) if real_root else z0
    best, best_res = z, abs(_poly_eval(d, z))
    converged = False
    for _ in range(60):
        fp = _poly_eval(dp, z)
        if abs(fp) < 1e-300:
            break
        step = _poly_eval(d, z) / fp
        z = z - step
        if real_root:
            z = complex(z.real, 0.0)
        res = abs(_poly_eval(d, z))
        if res < best_res:
            best, best_res = z, res
        if abs(step) <= 1e-12 * (1.0 + abs(z)):
            converged = True
            break
    return best, converged


def _division_multiplicity(c: np.ndarray, alpha: float, beta: float, tol_rel: float = TOL_DIVIDE) -> int:
    """Largest s such that the real factor of (alpha, beta) divides c^s times.

    The factor is (x - alpha) for beta == 0 and the characteristic
    quadratic x^2 - 2 alpha x + (alpha^2 + beta^2) otherwise.
    """
    if beta == 0.0:
        divisor = np.array([1.0, -alpha])
    else:
        divisor = np.array([1.0, -2.0 * alpha, alpha * alpha + beta * beta])
    cur = _poly_trim(c)[::-1]  # descending for polydiv
    s = 0
    while len(cur) >= len(divisor):
        scale = np.max(np.abs(cur))
        q, rem = np.polydiv(cur, divisor)
        if np.max(np.abs(rem), initial=0.0) > tol_rel * max(scale, 1e-300):
            break
        s += 1
        cur = q
    return s


def _cluster_folded(roots: np.ndarray, tol: float) -> list[np.ndarray]:
    """Single-linkage clusters of companion roots folded to Im >= 0."""
    pts = np.array([complex(r.real, abs(r.imag)) for r in roots])
    n = len(pts)
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(n):
        for b in range(a + 1, n):
            lim = tol * (1.0 + 0.5 * (abs(pts[a]) + abs(pts[b])))
            if abs(pts[a] - pts[b]) <= lim:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
    groups: dict[int, list[complex]] = {}
    for idx in range(n):
        groups.setdefault(find(idx), []).append(pts[idx])
    return [np.array(g) for g in groups.values()]


def _scatter_radius(mult: int, size: float) -> float:
    # companion eigenvalues of an m-fold root scatter like eps**(1/m)
    return 10.0 * (1e-16 ** (1.0 / max(mult, 1))) * (1.0 + size) + 1e-9


def _all_distinct(spheres: list[tuple[float, float, int]]) -> bool:
    """Reject clusterings where two validated spheres coincide.

    Fragments of one eigenvalue cloud can each Newton-converge to the
    same nearby multiple root and pass the division test at slightly
    offset centers (offsets up to ~1e-4, set by the division tolerance).
    Genuine duplicate locations therefore mean the clustering split a
    root and a coarser tolerance is needed.  Inputs with distinct
    spheres closer than ~1e-3 apart are rejected loudly rather than
    folded together.
    """
    for i in range(len(spheres)):
        for j in range(i + 1, len(spheres)):
            a1, b1, _ = spheres[i]
            a2, b2, _ = spheres[j]
            lim = 1e-3 * (1.0 + max(math.hypot(a1, b1), math.hypot(a2, b2)))
            if math.hypot(a1 - a2, b1 - b2) <= lim:
                return False
    return True


def _validate_cluster(c: np.ndarray, pts: np.ndarray) -> tuple[float, float, int] | None:
    k = len(pts)
    center = complex(np.mean(pts))
    hypotheses: list[str] = []
    if abs(center.imag) <= _scatter_radius(k, abs(center)):
        hypotheses = ["real", "complex"]
    else:
        hypotheses = ["complex", "real"]
    for hyp in hypotheses:
        if hyp == "real":
            z, converged = _newton_on_derivative(c, center, k, real_root=True)
            if not converged:
                continue
            s = _division_multiplicity(c, z.real, 0.0)
            if s == k:
                return (z.real, 0.0, k)
        else:
            if k % 2:
                continue
            z, converged = _newton_on_derivative(c, center, k // 2, real_root=False)
            if not converged:
                continue
            beta = abs(z.imag)
            if beta <= _scatter_radius(k // 2, abs(z)):
                continue
            s = _division_multiplicity(c, z.real, beta)
            if s == k // 2:
                return (z.real, beta, k)
    return None


def root_spheres(coeffs: Sequence[float]) -> list[tuple[float, float, int]]:
    """Roots of a real polynomial folded onto the closed upper half-plane.

    Returns (alpha, beta, mult) triples where mult counts a conjugate
    pair jointly for beta > 0 (so mult is even there) and is the plain
    multiplicity for real roots.  The triples always account for the
    full degree; escalating cluster tolerances repair eigenvalue scatter
    of multiple roots, with repeated-division counts as the arbiter.
    """
    c = _poly_trim(np.asarray(coeffs, dtype=float))
    if c.size == 0:
        raise ZeroPolynomialError("root finding on the zero polynomial")
    deg = len(c) - 1
    if deg == 0:
        return []
    roots = np.roots(c[::-1])
    # eigenvalue clouds of an m-fold root have radius ~eps^(1/m), which
    # reaches ~1e-2 at m = 8; the ladder must extend past that
    for tol_mult in (1.0, 10.0, 1e2, 1e3, 1e4, 1e5, 1e6):
        clusters = _cluster_folded(roots, TOL_CLUSTER * tol_mult)
        spheres: list[tuple[float, float, int]] = []
        for pts in clusters:
            res = _validate_cluster(c, pts)
            if res is None:
                spheres = []
                break
            spheres.append(res)
        if spheres and sum(m for _, _, m in spheres) == deg and _all_distinct(spheres):
            return sorted(spheres, key=lambda t: (round(t[0], 9), round(t[1], 9)))
    raise ClassificationInconsistencyError(
        f"could not reconcile root multiplicities for degree-{deg} polynomial"
    )


# ---------------------------------------------------------------------------
# quaternion-coefficient division by real (central) factors
# ---------------------------------------------------------------------------


def divide_by_real(p: SlicePolynomial, divisor: Sequence[float]) -> tuple[SlicePolynomial, SlicePolynomial]:
    """Divide p by a monic real-coefficient polynomial; exact long division.

    A real-coefficient divisor is central for the slice product, so the
    division runs componentwise on the quaternion coefficients.
    """
    d = np.asarray(divisor, dtype=float)
    if abs(d[-1] - 1.0) > 1e-12:
        raise ValueError("divisor must be monic")
    if p.degree < len(d) - 1:
        return SlicePolynomial([]), p
    rem = list(reversed(p.coeffs))  # descending
    ddesc = d[::-1]
    qlen = len(rem) - len(ddesc) + 1
    quot = []
    for i in range(qlen):
        lead = rem[i]
        quot.append(lead)
        for j in range(1, len(ddesc)):
            rem[i + j] = rem[i + j] - lead * float(ddesc[j])
    remainder = list(reversed(rem[qlen:]))
    return SlicePolynomial(list(reversed(quot))), SlicePolynomial(remainder)


def _real_factor(alpha: float, beta: float) -> np.ndarray:
    if beta == 0.0:
        return np.array([-alpha, 1.0])
    return np.array([alpha * alpha + beta * beta, -2.0 * alpha, 1.0])


def _divides_count(p: SlicePolynomial, alpha: float, beta: float, tol_rel: float = TOL_DIVIDE) -> tuple[int, SlicePolynomial]:
    """How many times the real factor of (alpha, beta) divides p; also the
    deflated quotient."""
    divisor = _real_factor(alpha, beta)
    cur = p
    s = 0
    while cur.degree >= len(divisor) - 1 and not cur.is_zero:
        q, rem = divide_by_real(cur, divisor)
        if rem.coefficient_scale() > tol_rel * max(cur.coefficient_scale(), 1e-300):
            break
        s += 1
        cur = q
    return s, cur


# ---------------------------------------------------------------------------
# zeros of slice polynomials
# ---------------------------------------------------------------------------

ZeroKind = Literal["real", "spherical", "isolated"]


@dataclass(frozen=True, slots=True)
class ZeroRecord:
    kind: ZeroKind
    representative: Quaternion
    alpha: float
    beta: float
    multiplicity: int

    @property
    def point_radius(self) -> float:
        return math.hypot(self.alpha, self.beta)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "representative": list(self.representative.components()),
            "sphere": [self.alpha, self.beta],
            "total_multiplicity": self.multiplicity,
        }


def characteristic_poly(y: Quaternion) -> SlicePolynomial:
    """Delta_y(x) = N(x - y) = x^2 - t(y) x + n(y)."""
    return SlicePolynomial.from_real([y.norm2(), -y.trace(), 1.0])


def zero_spheres(f: SlicePolynomial) -> list[tuple[float, float, int]]:
    """Spheres carrying zeros of f, with multiplicities counted in N(f)."""
    if f.is_zero:
        raise ZeroPolynomialError("zero set of the zero polynomial is everything")
    return root_spheres(normal(f).real_coeffs())


def total_multiplicity(f: SlicePolynomial, y: Quaternion) -> int:
    """Largest s with Delta_y^s dividing N(f); 0 when y is not a zero."""
    if f.is_zero:
        raise ZeroPolynomialError("total multiplicity undefined for the zero polynomial")
    p = decompose(y)
    if f.is_slice_preserving(1e-10):
        # N(f) = f^2, so the multiplicity in N is twice the one in f and
        # the doubling cancels against the Delta^s accounting.
        target = f.real_coeffs()
        spheres = root_spheres(target)
        mult = _matching_mult(spheres, p.alpha, p.beta)
        return mult
    spheres = root_spheres(normal(f).real_coeffs())
    mult = _matching_mult(spheres, p.alpha, p.beta)
    return mult // 2


def _matching_mult(spheres: list[tuple[float, float, int]], alpha: float, beta: float) -> int:
    for a, b, m in spheres:
        tol = 1e-6 * (1.0 + math.hypot(a, b))
        if math.hypot(a - alpha, b - beta) <= tol:
            return m
    return 0


def classify_zeros(f: SlicePolynomial) -> list[ZeroRecord]:
    """Classified zero records for every sphere carrying zeros of f.

    Spherical zeros use the representative alpha + i*beta; isolated
    nonreal zeros are located from the stem by J* = -F1(z) F2(z)^{-1}.
    """
    if f.is_zero:
        raise ZeroPolynomialError("cannot classify zeros of the zero polynomial")
    records: list[ZeroRecord] = []
    for alpha, beta, mult in zero_spheres(f):
        tmult = mult // 2
        if beta == 0.0:
            records.append(ZeroRecord("real", Quaternion.real(alpha), alpha, 0.0, tmult))
            continue
        stem = f.stem_components(alpha, beta)
        scale = f.stem_scale(math.hypot(alpha, beta))
        f1, f2 = stem.F1, stem.F2
        if f1.abs() <= EPS_CLASS * scale and f2.abs() <= EPS_CLASS * scale:
            rep = Quaternion(alpha, beta, 0.0, 0.0)  # alpha + i*beta
            records.append(ZeroRecord("spherical", rep, alpha, beta, tmult))
            continue
        if f2.abs() <= EPS_CLASS * scale:
            raise ClassificationInconsistencyError(
                f"sphere ({alpha:.6g}, {beta:.6g}) reported by N(f) but F2 ~ 0 != F1"
            )
        jstar = validate_unit(-(f1 * f2.inverse()))
        rep = Quaternion(alpha, 0.0, 0.0, 0.0) + jstar * beta
        if f.eval(rep).abs() > EPS_CLASS * scale:
            raise ClassificationInconsistencyError(
                f"candidate isolated zero at sphere ({alpha:.6g}, {beta:.6g}) does not annihilate f"
            )
        records.append(ZeroRecord("isolated", rep, alpha, beta, tmult))
    return records


# ---------------------------------------------------------------------------
# semiregular functions
# ---------------------------------------------------------------------------


class SemiregularFunction:
    """f = den^{-1} * num with a slice-preserving denominator.

    Construction normalizes den to be monic and cancels shared factors:
    real-linear factors present in both, and full characteristic
    quadratics Delta_b dividing both.  Partial vanishing of num on a
    pole sphere (a single point) is deliberately kept: it is pole
    structure, not a common factor.
    """

    __slots__ = ("den", "num")

    def __init__(self, den: SlicePolynomial, num: SlicePolynomial, *, reduce: bool = True):
        if den.is_zero:
            raise ZeroDenominatorError("denominator is identically zero")
        if not den.is_slice_preserving(1e-10):
            raise ValueError("denominator must have real coefficients")
        lead = den.coeffs[-1].w
        den = den.scale(1.0 / lead)
        num = num.scale(1.0 / lead)
        if reduce and den.degree > 0 and not num.is_zero:
            den, num = _reduce_pair(den, num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "num", num)

    def __setattr__(self, name, value):
        raise AttributeError("SemiregularFunction is immutable")

    @staticmethod
    def from_polynomial(p: SlicePolynomial) -> "SemiregularFunction":
        return SemiregularFunction(SlicePolynomial.from_real([1.0]), p, reduce=False)

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def eval(self, x: Quaternion) -> Quaternion:
        return self.den.eval(x).inverse() * self.num.eval(x)

    __call__ = eval

    def stem_components(self, alpha: float, beta: float):
        """Stems of den^{-1} * num: complex scalar 1/d(z) times the num stem."""
        from .slicepoly import StemValue

        dz = self.den.eval_complex(complex(alpha, beta))
        inv = 1.0 / dz
        f1, f2 = self.num.stem_components(alpha, beta).F1, self.num.stem_components(alpha, beta).F2
        return StemValue(f1 * inv.real - f2 * inv.imag, f1 * inv.imag + f2 * inv.real)

    def stem_arrays(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        f1, f2 = self.num.stem_arrays(z)
        dcoef = self.den.real_coeffs()
        dz = np.zeros_like(z)
        for coef in reversed(dcoef):
            dz = dz * z + coef
        inv = 1.0 / dz
        u, v = inv.real[..., None], inv.imag[..., None]
        return f1 * u - f2 * v, f1 * v + f2 * u

    def stem_scale(self, radius: float) -> float:
        return self.num.stem_scale(radius)

    def derivatives_at_origin(self) -> tuple[Quaternion, Quaternion, Quaternion]:
        """(f(0), f'(0), f''(0)) by the quotient rule; den is scalar on R."""
        n0 = self.num.coefficient(0)
        n1 = self.num.coefficient(1)
        n2 = self.num.coefficient(2) * 2.0
        d0 = self.den.coefficient(0).w
        d1 = self.den.coefficient(1).w
        d2 = self.den.coefficient(2).w * 2.0
        f0 = n0 / d0
        f1 = n1 / d0 - n0 * (d1 / (d0 * d0))
        f2 = n2 / d0 - n1 * (2.0 * d1 / (d0 * d0)) + n0 * (2.0 * d1 * d1 / d0**3 - d2 / (d0 * d0))
        return f0, f1, f2

    def __repr__(self) -> str:  # pragma: no cover
        return f"SemiregularFunction(den={self.den!r}, num={self.num!r})"


def _reduce_pair(den: SlicePolynomial, num: SlicePolynomial) -> tuple[SlicePolynomial, SlicePolynomial]:
    for alpha, beta, mult in root_spheres(den.real_coeffs()):
        avail = mult if beta == 0.0 else mult // 2
        cancel, _ = _divides_count(num, alpha, beta)
        k = min(avail, cancel)
        if k == 0:
            continue
        factor = _real_factor(alpha, beta)
        for _ in range(k):
            den, _ = divide_by_real(den, factor)
            num, _ = divide_by_real(num, factor)
    lead = den.coeffs[-1].w
    return den.scale(1.0 / lead), num.scale(1.0 / lead)


# ---------------------------------------------------------------------------
# pole structure
# ---------------------------------------------------------------------------

PoleKind = Literal["real", "spherical_uniform", "spherical_nonuniform"]


@dataclass(frozen=True, slots=True)
class PoleRecord:
    kind: PoleKind
    representative: Quaternion  # real point, or alpha + i*beta on the sphere
    alpha: float
    beta: float
    order: int  # order of the real pole / generic point order on the sphere
    spherical_order: int = 0  # 2 * max point order; 0 for real poles
    exceptional_point: Quaternion | None = None
    exceptional_order: int = 0
    isolated_multiplicity: int = 0

    @property
    def point_radius(self) -> float:
        return math.hypot(self.alpha, self.beta)

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "representative": list(self.representative.components()),
            "sphere": [self.alpha, self.beta],
            "order": self.order,
            "spherical_order": self.spherical_order,
        }
        if self.kind == "spherical_nonuniform":
            d["exceptional_point"] = list(self.exceptional_point.components())
            d["exceptional_order"] = self.exceptional_order
            d["isolated_multiplicity"] = self.isolated_multiplicity
        return d


def pole_structure(f: SemiregularFunction, region_radius: float) -> list[PoleRecord]:
    """Pole records of f inside the closed ball of the given radius.

    Real poles carry their order (denominator multiplicity after
    reduction).  Spherical poles have generic point order nu = the power
    of Delta_b left in den; when the numerator vanishes at one point of
    the sphere, that point has lesser order max(nu - m, 0) and isolated
    multiplicity m, its total multiplicity as a zero of the numerator.
    """
    if f.is_polynomial:
        return []
    records: list[PoleRecord] = []
    nnum = normal(f.num) if not f.num.is_zero else None
    for alpha, beta, mult in root_spheres(f.den.real_coeffs()):
        if math.hypot(alpha, beta) > region_radius * (1.0 + BOUNDARY_BAND):
            continue
        if beta == 0.0:
            records.append(
                PoleRecord("real", Quaternion.real(alpha), alpha, 0.0, order=mult)
            )
            continue
        nu = mult // 2
        rep = Quaternion(alpha, beta, 0.0, 0.0)
        m_exc = 0
        if nnum is not None:
            # total multiplicity of the exceptional point as a zero of num:
            # the number of times Delta_b divides N(num)
            m_exc = _division_multiplicity(nnum.real_coeffs(), alpha, beta)
        if m_exc == 0:
            records.append(
                PoleRecord("spherical_uniform", rep, alpha, beta, order=nu, spherical_order=2 * nu)
            )
            continue
        stem = f.num.stem_components(alpha, beta)
        scale = f.num.stem_scale(math.hypot(alpha, beta))
        if stem.F2.abs() <= EPS_CLASS * scale:
            raise ClassificationInconsistencyError(
                "numerator vanishes on a whole pole sphere after reduction"
            )
        jstar = validate_unit(-(stem.F1 * stem.F2.inverse()))
        zj = Quaternion(alpha, 0.0, 0.0, 0.0) + jstar * beta
        records.append(
            PoleRecord(
                "spherical_nonuniform",
                rep,
                alpha,
                beta,
                order=nu,
                spherical_order=2 * nu,
                exceptional_point=zj,
                exceptional_order=max(nu - m_exc, 0),
                isolated_multiplicity=m_exc,
            )
        )
    return records


def pole_counts(records: Sequence[PoleRecord]) -> tuple[float, float, float]:
    """(s1, s2, s): half-sums of spherical orders over uniform and
    nonuniform pole spheres."""
    s1 = sum(0.5 * rec.spherical_order for rec in records if rec.kind == "spherical_uniform")
    s2 = sum(0.5 * rec.spherical_order for rec in records if rec.kind == "spherical_nonuniform")
    return s1, s2, s1 + s2


# ---------------------------------------------------------------------------
# Blaschke factors and regularization
# ---------------------------------------------------------------------------


def blaschke_real(p: float, r: float) -> SemiregularFunction:
    """Reciprocal r-Blaschke factor -(x - r^2/p)^{-1} (x - p) r/p.

    Slice-preserving, modulus 1 on the boundary sphere of radius r,
    vanishing at p, with its pole at r^2/p outside the closed ball.
    """
    if not 0.0 < abs(p) < r:
        raise InvalidPoleError(f"real Blaschke base point needs 0 < |p| < r, got p={p}, r={r}")
    den = SlicePolynomial.from_real([-r * r / p, 1.0])
    num = SlicePolynomial.from_real([r, -r / p])
    return SemiregularFunction(den, num, reduce=False)


def blaschke_spherical(b: Quaternion, r: float) -> SemiregularFunction:
    """Reciprocal normal Blaschke factor Delta_{r^2 b^{-1}}^{-1} Delta_b r^2/|b|^2."""
    nb = b.norm2()
    if not 0.0 < math.sqrt(nb) < r:
        raise InvalidPoleError(f"spherical Blaschke base point needs 0 < |b| < r, got |b|={math.sqrt(nb)}, r={r}")
    if decompose(b).beta == 0.0:
        raise InvalidPoleError("spherical Blaschke base point must be nonreal")
    tb = b.trace()
    den = SlicePolynomial.from_real([r**4 / nb, -r * r * tb / nb, 1.0])
    num = SlicePolynomial.from_real([r * r, -tb * r * r / nb, r * r / nb])
    return SemiregularFunction(den, num, reduce=False)


def regularize(f: SemiregularFunction, r: float) -> tuple[SemiregularFunction, SemiregularFunction]:
    """Blaschke product g matching every pole of f, and h = g * f.

    h has no poles on a neighbourhood of the closed ball (its remaining
    denominator roots are the Blaschke reflections outside).  Poles of f
    on the boundary raise PoleOnBoundaryError; poles outside the ball
    raise PoleOutsideRegionError instead of being silently ignored.
    """
    if f.is_polynomial:
        one = SemiregularFunction.from_polynomial(SlicePolynomial.from_real([1.0]))
        return one, f
    for alpha, beta, _ in root_spheres(f.den.real_coeffs()):
        rad = math.hypot(alpha, beta)
        if abs(rad - r) <= 1e-9 * max(r, 1.0):
            raise PoleOnBoundaryError(f"pole sphere at radius {rad:.12g} sits on the boundary r={r}")
        if rad > r:
            raise PoleOutsideRegionError(
                f"pole sphere at radius {rad:.12g} lies outside the ball r={r}; shrink r"
            )
    g_den = SlicePolynomial.from_real([1.0])
    g_num = SlicePolynomial.from_real([1.0])
    for rec in pole_structure(f, r):
        if rec.kind == "real":
            fac = blaschke_real(rec.alpha, r)
            power = rec.order
        else:
            fac = blaschke_spherical(rec.representative, r)
            power = rec.spherical_order // 2
        for _ in range(power):
            g_den = slice_product(g_den, fac.den)
            g_num = slice_product(g_num, fac.num)
    g = SemiregularFunction(g_den, g_num, reduce=False)
    # h = (g_den f_den)^{-1} (g_num f_num); f_den divides g_num f_num by
    # construction, so divide it out explicitly rather than re-detecting.
    h_num_full = slice_product(g_num, f.num)
    h_num, rem = divide_by_real(h_num_full, f.den.real_coeffs())
    if rem.coefficient_scale() > 1e-8 * max(h_num_full.coefficient_scale(), 1e-300):
        raise ClassificationInconsistencyError(
            "Blaschke numerator failed to cancel the denominator poles"
        )
    h = SemiregularFunction(g_den, h_num, reduce=False)
    return g, h


# ---------------------------------------------------------------------------
# limit-growth test oracle for pole/zero orders
# ---------------------------------------------------------------------------


def estimate_point_order(f: SemiregularFunction, y: Quaternion, rng=None, n_rays: int = 8) -> float:
    """Growth exponent of |f| into y: median slope of log|f| vs log(dist).

    Positive values estimate pole orders, negative values zero orders;
    used only as an independent oracle against the algebraic structure.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    slopes = []
    ts = np.geomspace(1e-3, 1e-5, 7)
    for _ in range(n_rays):
        d = rng.normal(size=4)
        d /= np.linalg.norm(d)
        dq = Quaternion.from_array(d)
        vals = []
        for t in ts:
            x = y + dq * float(t)
            vals.append(math.log(max(f.eval(x).abs(), 1e-300)))
        slope = np.polyfit(np.log(ts), vals, 1)[0]
        slopes.append(-slope)
    return float(np.median(slopes))
