"""Surface quadrature on the 3-sphere of radius r in R^4, the sphere
conjugation maps T_f and S_f, and the two boundary integral means of the
Jensen formula.

Parameterization: x = r (cos t1, sin t1 cos t2, sin t1 sin t2 cos p,
sin t1 sin t2 sin p) with surface measure r^3 sin^2(t1) sin(t2)
dt1 dt2 dp and total measure |bd B_r| = 2 pi^2 r^3.  Gauss-Legendre
nodes in t1 and t2 (angular weights absorbed into the quadrature
weights) and a uniform grid in p, which is spectrally exact for the
periodic direction.

Circular integrands (constant on every sphere S_x) reduce to a single
polar integral with weight 4 pi (r sin t)^2 r dt, used as the
independent cross-check of the 3D product rule.

The boundary-mean pipeline is vectorized: each node needs only the
stems F1(z), F2(z) at its complex shadow z, because f(x), the spherical
derivative direction and f at the reflected point S_f(x) all live on
the same sphere and reuse the same stem values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegeneratePointError, NonFiniteIntegrandError
from .quaternions import (
    Quaternion,
    decompose,
    qconj_array,
    qinv_array,
    qmul_array,
    qnorm2_array,
)
from .slicepoly import normal
from .zeros_poles import SemiregularFunction

__all__ = [
    "SphereQuadratureRule",
    "build_rule",
    "integrate",
    "integrate_values",
    "circular_reduction",
    "T_map",
    "S_map",
    "s_inverse_map",
    "boundary_means",
    "BoundaryMeans",
    "boundary_identity_residual",
    "sf_roundtrip_errors",
    "log_normal_values",
]

SPHERE_MEASURE = 2.0 * math.pi**2  # |bd B_1|

# S_f falls back to the conjugation branch when the spherical derivative
# is this small relative to the stem scale
DEGENERATE_REL = 1e-12


@dataclass(frozen=True)
class SphereQuadratureRule:
    radius: float
    orders: tuple[int, int, int]
    nodes: np.ndarray  # (N, 4)
    weights: np.ndarray  # (N,)
    alpha: np.ndarray  # (N,) real parts
    beta: np.ndarray  # (N,) imaginary radii, > 0 at Gauss nodes
    junits: np.ndarray  # (N, 4) imaginary units Im(x)/beta

    @property
    def measure(self) -> float:
        return SPHERE_MEASURE * self.radius**3

    def __len__(self) -> int:
        return len(self.weights)


def build_rule(r: float, n: int) -> SphereQuadratureRule:
    """Product rule with n Gauss-Legendre nodes in each polar angle and
    2n uniform nodes in the azimuth."""
    if r <= 0.0:
        raise ValueError("radius must be positive")
    if n < 4:
        raise ValueError("need at least 4 nodes per angle")
    t, wt = np.polynomial.legendre.leggauss(n)
    theta1 = 0.5 * math.pi * (t + 1.0)
    w1 = 0.5 * math.pi * wt * np.sin(theta1) ** 2
    theta2 = 0.5 * math.pi * (t + 1.0)
    w2 = 0.5 * math.pi * wt * np.sin(theta2)
    nphi = 2 * n
    phi = 2.0 * math.pi * np.arange(nphi) / nphi
    wphi = np.full(nphi, 2.0 * math.pi / nphi)

    s1 = np.sin(theta1)[:, None, None]
    c1 = np.cos(theta1)[:, None, None]
    s2 = np.sin(theta2)[None, :, None]
    c2 = np.cos(theta2)[None, :, None]
    sp = np.sin(phi)[None, None, :]
    cp = np.cos(phi)[None, None, :]

    x0 = (r * c1) * np.ones_like(s2) * np.ones_like(sp)
    x1 = r * s1 * c2 * np.ones_like(sp)
    x2 = r * s1 * s2 * cp
    x3 = r * s1 * s2 * sp
    nodes = np.stack([x0, x1, x2, x3], axis=-1).reshape(-1, 4)

    weights = (r**3 * w1[:, None, None] * w2[None, :, None] * wphi[None, None, :]).reshape(-1)
    alpha = nodes[:, 0].copy()
    beta = (r * s1 * np.ones_like(s2) * np.ones_like(sp)).reshape(-1)
    junits = np.zeros_like(nodes)
    junits[:, 1:] = nodes[:, 1:] / beta[:, None]
    return SphereQuadratureRule(r, (n, n, nphi), nodes, weights, alpha, beta, junits)


def integrate(rule: SphereQuadratureRule, u: Callable[[Quaternion], float]) -> float:
    """Sum w_i u(x_i) over the rule nodes for a pointwise integrand."""
    values = np.fromiter(
        (u(Quaternion.from_array(row)) for row in rule.nodes), dtype=float, count=len(rule)
    )
    return integrate_values(rule, values)


def integrate_values(rule: SphereQuadratureRule, values: np.ndarray) -> float:
    bad = ~np.isfinite(values)
    if np.any(bad):
        k = int(np.argmax(bad))
        node = Quaternion.from_array(rule.nodes[k])
        raise NonFiniteIntegrandError(
            f"integrand not finite at node {k} = {node}; "
            "a zero or pole sits on or near the integration sphere",
            node=node,
        )
    return float(np.dot(rule.weights, values))


def circular_reduction(r: float, m: int, u: Callable[[Quaternion], float]) -> float:
    """Integral over the sphere of a circular integrand via one polar
    integral: spheres S_x of imaginary radius beta carry measure
    4 pi beta^2, and the polar arc contributes r dtheta."""
    t, wt = np.polynomial.legendre.leggauss(m)
    theta = 0.5 * math.pi * (t + 1.0)
    w = 0.5 * math.pi * wt
    total = 0.0
    for th, wk in zip(theta, w):
        x = Quaternion(r * math.cos(th), r * math.sin(th), 0.0, 0.0)
        val = u(x)
        if not math.isfinite(val):
            raise NonFiniteIntegrandError(f"circular integrand not finite at theta={th}", node=x)
        total += wk * val * 4.0 * math.pi * (r * math.sin(th)) ** 2 * r
    return total


# ---------------------------------------------------------------------------
# sphere conjugation maps
# ---------------------------------------------------------------------------


def _eval_conjugate(f, x: Quaternion) -> Quaternion:
    """f^c(x) from the stems: conj(F1)(z) + J conj(F2)(z)."""
    p = decompose(x)
    stem = f.stem_components(p.alpha, p.beta)
    if p.beta == 0.0:
        return stem.F1.conj()
    return stem.F1.conj() + p.unit * stem.F2.conj()


def T_map(f, x: Quaternion) -> Quaternion:
    """T_f(x) = f^c(x)^{-1} x f^c(x); maps each sphere S_x onto itself."""
    fc = _eval_conjugate(f, x)
    scale = f.stem_scale(x.abs())
    if fc.abs() <= DEGENERATE_REL * (1.0 + scale):
        raise DegeneratePointError("f^c vanishes at the requested point")
    return fc.inverse() * x * fc


def S_map(f, x: Quaternion) -> Quaternion:
    """S_f(x): conjugate of x within its sphere by f'_s and f.

    On the closure of the degenerate set (vanishing spherical
    derivative) the map is plain quaternionic conjugation.
    """
    p = decompose(x)
    if p.beta == 0.0:
        return x.conj()
    stem = f.stem_components(p.alpha, p.beta)
    scale = f.stem_scale(x.abs())
    if stem.F2.abs() <= DEGENERATE_REL * (1.0 + scale):
        return x.conj()
    v = stem.F1 + p.unit * stem.F2
    if v.abs() <= DEGENERATE_REL * (1.0 + scale):
        raise DegeneratePointError("S_f undefined where f vanishes")
    # f'_s = F2 / beta; the positive scalar 1/beta cancels in the conjugation
    s = stem.F2
    return s * (v.inverse() * x.conj() * v) * s.inverse()


def s_inverse_map(f, y: Quaternion) -> Quaternion:
    """Inverse of S_f: y -> T_f(conj(f'_s(y)^{-1} y f'_s(y)))."""
    p = decompose(y)
    stem = f.stem_components(p.alpha, p.beta)
    s = stem.F2  # f'_s direction; scalar factor cancels
    scale = f.stem_scale(y.abs())
    if s.abs() <= DEGENERATE_REL * (1.0 + scale):
        raise DegeneratePointError("inverse of S_f undefined on the degenerate set")
    w = (s.inverse() * y * s).conj()
    return T_map(f, w)


# ---------------------------------------------------------------------------
# boundary means
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryMeans:
    """Raw means (1/|bd B_r|) int log|f| and log|f o S_f|; the 1/2
    prefactors of the Jensen statement are applied by the caller."""

    mean_log_f: float
    mean_log_f_sf: float


def _stem_node_values(f, rule: SphereQuadratureRule):
    z = rule.alpha + 1j * rule.beta
    f1, f2 = f.stem_arrays(z)
    junits = rule.junits
    fx = f1 + qmul_array(junits, f2)
    return f1, f2, fx


def _sf_points(rule: SphereQuadratureRule, f1: np.ndarray, f2: np.ndarray, fx: np.ndarray, scale: np.ndarray) -> np.ndarray:
    """S_f at every node, vectorized; degenerate nodes use conjugation.

    A vanishing f at a node produces non-finite entries here; they are
    reported downstream when the log integrand is checked.
    """
    xbar = qconj_array(rule.nodes)
    n2 = qnorm2_array(f2)
    degenerate = n2 <= (DEGENERATE_REL * (1.0 + scale)) ** 2
    safe_f2 = np.where(degenerate[:, None], np.array([1.0, 0.0, 0.0, 0.0]), f2)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = qmul_array(qinv_array(fx), qmul_array(xbar, fx))
        y = qmul_array(safe_f2, qmul_array(w, qinv_array(safe_f2)))
    return np.where(degenerate[:, None], xbar, y)


def _node_scale(f, rule: SphereQuadratureRule) -> np.ndarray:
    return np.full(len(rule), f.stem_scale(rule.radius))


def boundary_means(f, rule: SphereQuadratureRule) -> BoundaryMeans:
    """The two normalized boundary means of the Jensen right-hand side.

    Requires f nonvanishing and pole-free on the sphere; a (near-)zero
    at a node surfaces as NonFiniteIntegrandError.
    """
    f1, f2, fx = _stem_node_values(f, rule)
    scale = _node_scale(f, rule)
    y = _sf_points(rule, f1, f2, fx, scale)
    beta = rule.beta
    jy = np.zeros_like(y)
    jy[:, 1:] = y[:, 1:] / beta[:, None]
    fy = f1 + qmul_array(jy, f2)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_fx = 0.5 * np.log(qnorm2_array(fx))
        log_fy = 0.5 * np.log(qnorm2_array(fy))
    m1 = integrate_values(rule, log_fx) / rule.measure
    m2 = integrate_values(rule, log_fy) / rule.measure
    return BoundaryMeans(m1, m2)


def log_normal_values(f, rule: SphereQuadratureRule) -> np.ndarray:
    """log|N(f)| at the rule nodes; N(f) is circular so only z matters."""
    z = rule.alpha + 1j * rule.beta
    if isinstance(f, SemiregularFunction):
        nnum = normal(f.num).real_coeffs()
        den = f.den.real_coeffs()
        return np.log(np.abs(_polyval_complex(nnum, z))) - 2.0 * np.log(
            np.abs(_polyval_complex(den, z))
        )
    nf = normal(f).real_coeffs()
    return np.log(np.abs(_polyval_complex(nf, z)))


def _polyval_complex(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z)
    for coef in reversed(c):
        acc = acc * z + coef
    return acc


def boundary_identity_residual(f, rule: SphereQuadratureRule) -> float:
    """max over nodes of |log|N(f)| - log|f| - log|f o S_f||."""
    f1, f2, fx = _stem_node_values(f, rule)
    scale = _node_scale(f, rule)
    y = _sf_points(rule, f1, f2, fx, scale)
    jy = np.zeros_like(y)
    jy[:, 1:] = y[:, 1:] / rule.beta[:, None]
    fy = f1 + qmul_array(jy, f2)
    lhs = log_normal_values(f, rule)
    rhs = 0.5 * np.log(qnorm2_array(fx)) + 0.5 * np.log(qnorm2_array(fy))
    return float(np.max(np.abs(lhs - rhs)))


def sf_roundtrip_errors(f, r: float, n_points: int, rng: np.random.Generator) -> np.ndarray:
    """Inverse-roundtrip distances |x - S_f^{-1}(S_f(x))| at seeded
    boundary points, restricted to the domain of the diffeomorphism
    (away from the degenerate set and zeros of N(f))."""
    errors = []
    attempts = 0
    while len(errors) < n_points and attempts < 40 * n_points:
        attempts += 1
        d = rng.normal(size=4)
        x = Quaternion.from_array(r * d / np.linalg.norm(d))
        p = decompose(x)
        if p.beta < 1e-3 * r:
            continue
        stem = f.stem_components(p.alpha, p.beta)
        scale = f.stem_scale(r)
        # conditioning guard: conjugating by a tiny spherical derivative
        # amplifies its own rounding error
        if stem.F2.abs() <= 1e-4 * (1.0 + scale):
            continue
        v = stem.F1 + p.unit * stem.F2
        if v.abs() <= 1e-9 * (1.0 + scale):
            continue
        y = S_map(f, x)
        x_back = s_inverse_map(f, y)
        errors.append((x_back - x).abs())
    if len(errors) < n_points:
        raise DegeneratePointError(
            "could not sample enough boundary points in the S_f domain"
        )
    return np.array(errors)
