"""Seeded verification suites for the differential identities, the
quadrature construction, and multiplicity bookkeeping.

Each finite-difference suite evaluates an identity at a step h and at
h/2 against an exact algebraic side, records per-case residual rows,
and checks second-order convergence (residual ratio in [3.5, 4.5]) plus
a terminal residual threshold.  Bilaplacian identities run the raw
composed stencil for the convergence pair and one Richardson halving
for the terminal value, which is how those operators are meant to be
used.

The random corpora are shaped so the identities are exercised away from
degenerate configurations: points keep |Im x| >= 0.25 (the angular
operators lose meaning on the real axis), bilaplacian polynomials have
degree >= 6 (lower degrees are annihilated exactly by the stencils and
leave nothing to converge), and log|N(f)| is probed at points well
separated from the zero set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .diffops import (
    fd_bilaplace4,
    fd_bilaplace4_richardson,
    fd_crf,
    fd_crf_conj,
    fd_gamma,
    fd_laplace4,
    fd_laplace4_richardson,
)
from .jensen import delta4_logNf_at0
from .quadrature import build_rule, circular_reduction, integrate_values, log_normal_values
from .quaternions import Quaternion
from .slicepoly import SlicePolynomial, log_abs, normal, spherical_derivative, spherical_value
from .zeros_poles import characteristic_poly, classify_zeros, total_multiplicity

__all__ = ["SuiteResult", "ResidualRow", "run_suite", "SUITES", "SUITE_ORDER"]

RATIO_WINDOW = (3.5, 4.5)
TOL_FIRST_ORDER = 1e-6
TOL_BILAPLACIAN = 1e-3
TOL_DELTA4_AT_0 = 1e-4
TOL_MEASURE_REL = 1e-10
TOL_CROSS_METHOD = 1e-8


@dataclass(frozen=True)
class ResidualRow:
    identity: str
    case: int
    point: list[float]
    h: float
    residual: float
    expected_order: int

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "case": self.case,
            "point": self.point,
            "h": self.h,
            "residual": self.residual,
            "expected_order": self.expected_order,
        }


@dataclass
class SuiteResult:
    name: str
    passed: bool
    summary: dict
    rows: list[ResidualRow] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "summary": self.summary,
            "rows": [r.to_dict() for r in self.rows],
        }


# ---------------------------------------------------------------------------
# random corpora
# ---------------------------------------------------------------------------


def _random_poly(rng: np.random.Generator, lo: int, hi: int, decay: float = 0.5) -> SlicePolynomial:
    deg = int(rng.integers(lo, hi + 1))
    coeffs = []
    for m in range(deg + 1):
        coeffs.append(Quaternion.from_array(rng.uniform(-1.0, 1.0, 4) * decay**m))
    lead = coeffs[-1]
    if lead.abs() < 0.25 * decay**deg:
        coeffs[-1] = lead + Quaternion.real(0.5 * decay**deg)
    return SlicePolynomial(coeffs)


def _random_point(rng: np.random.Generator, rmin: float = 0.4, rmax: float = 1.2, beta_min: float = 0.25) -> Quaternion:
    while True:
        v = rng.normal(size=4)
        v /= np.linalg.norm(v)
        x = Quaternion.from_array(v * rng.uniform(rmin, rmax))
        if x.abs_im() >= beta_min:
            return x


def _product_poly(rng: np.random.Generator, rmin: float, rmax: float, max_factors: int = 4) -> SlicePolynomial:
    """Product of linear factors with roots in an annulus: f(0) != 0 and
    the zero locations are known by construction."""
    f = SlicePolynomial([Quaternion.from_array(rng.uniform(-1, 1, 4))])
    if f.coefficient(0).abs() < 0.3:
        f = SlicePolynomial([f.coefficient(0) + Quaternion.real(0.5)])
    for _ in range(int(rng.integers(1, max_factors + 1))):
        root = Quaternion.from_array(rng.normal(size=4))
        root = root * (rng.uniform(rmin, rmax) / root.abs())
        f = f * SlicePolynomial.linear(root)
    return f


# ---------------------------------------------------------------------------
# exact algebraic sides
# ---------------------------------------------------------------------------


def _exact_sd(f: SlicePolynomial, x: Quaternion) -> Quaternion:
    return spherical_derivative(f, x)


def _exact_two_dx_sd(f: SlicePolynomial, x: Quaternion) -> Quaternion:
    """2 d/dx (f'_s) from exact stem partials of the circular stem
    G1 = F2/beta."""
    from .quaternions import decompose

    p = decompose(x)
    stem = f.stem_components(p.alpha, p.beta)
    _, _, d2a, d2b = f.stem_partials(p.alpha, p.beta)
    g1a = d2a / p.beta
    g1b = d2b / p.beta - stem.F2 / (p.beta * p.beta)
    return g1a - p.unit * g1b


def _exact_two_dxc_vs(f: SlicePolynomial, x: Quaternion) -> Quaternion:
    """2 d/dx^c (v_s f) from exact stem partials of the circular stem
    G1 = F1."""
    from .quaternions import decompose

    p = decompose(x)
    d1a, d1b, _, _ = f.stem_partials(p.alpha, p.beta)
    return d1a + p.unit * d1b


# ---------------------------------------------------------------------------
# finite-difference suites
# ---------------------------------------------------------------------------


def _fd_pair_suite(name: str, cases, identities, seed: int) -> SuiteResult:
    """Generic first-order suite: run each identity at h and h/2."""
    rows: list[ResidualRow] = []
    res_h: list[float] = []
    res_h2: list[float] = []
    for idx, (f, x) in enumerate(cases):
        h = 1e-3 * (1.0 + x.abs())
        for ident, fd_side, exact_side in identities:
            exact = exact_side(f, x)
            for step, sink in ((h, res_h), (0.5 * h, res_h2)):
                r = (fd_side(f, x, step) - exact).abs()
                sink.append(r)
                rows.append(ResidualRow(ident, idx, list(x.components()), step, r, 2))
    mean_h, mean_h2 = float(np.mean(res_h)), float(np.mean(res_h2))
    ratio = mean_h / mean_h2 if mean_h2 > 0 else float("inf")
    terminal = float(np.max(res_h2))
    passed = RATIO_WINDOW[0] <= ratio <= RATIO_WINDOW[1] and float(np.max(res_h)) <= TOL_FIRST_ORDER
    summary = {
        "mean_residual_h": mean_h,
        "mean_residual_h_half": mean_h2,
        "convergence_ratio": ratio,
        "ratio_window": list(RATIO_WINDOW),
        "max_residual_at_h": float(np.max(res_h)),
        "max_residual_at_h_half": terminal,
        "tolerance": TOL_FIRST_ORDER,
    }
    return SuiteResult(name, passed, summary, rows)


def suite_crf(seed: int, n_cases: int = 20) -> SuiteResult:
    """Cauchy-Riemann-Fueter identities, including the conjugated
    operator and the circular-function variant with a nonvanishing
    d/dx^c side."""
    rng = np.random.default_rng(seed)
    cases = [(_random_poly(rng, 2, 4, decay=0.25), _random_point(rng, 0.4, 0.85)) for _ in range(n_cases)]

    identities = [
        (
            "dbar_crf(f) = -2 f'_s",
            lambda f, x, h: fd_crf(f.eval, x, h),
            lambda f, x: _exact_sd(f, x) * (-2.0),
        ),
        (
            "d_crf(f) - 2 df/dx = 2 f'_s",
            lambda f, x, h: fd_crf_conj(f.eval, x, h) - f.slice_derivative().eval(x) * 2.0,
            lambda f, x: _exact_sd(f, x) * 2.0,
        ),
        (
            "2 d/dx f'_s = d_crf(f'_s)",
            lambda f, x, h: fd_crf_conj(lambda y: spherical_derivative(f, y), x, h),
            _exact_two_dx_sd,
        ),
        (
            "dbar_crf(v_s f) = 2 d/dx^c (v_s f)",
            lambda f, x, h: fd_crf(lambda y: spherical_value(f, y), x, h),
            _exact_two_dxc_vs,
        ),
    ]
    return _fd_pair_suite("crf", cases, identities, seed)


def suite_gamma(seed: int, n_cases: int = 20) -> SuiteResult:
    rng = np.random.default_rng(seed)
    cases = [(_random_poly(rng, 2, 4, decay=0.25), _random_point(rng, 0.4, 0.85)) for _ in range(n_cases)]
    identities = [
        (
            "gamma(f) = 2 Im(x) f'_s",
            lambda f, x, h: fd_gamma(f.eval, x, h),
            lambda f, x: (x.im() * _exact_sd(f, x)) * 2.0,
        ),
    ]
    return _fd_pair_suite("gamma", cases, identities, seed)


def suite_harmonic(seed: int, n_cases: int = 20) -> SuiteResult:
    """Harmonicity of the spherical derivative; degree >= 6 so the
    stencil is not exact on the integrand."""
    rng = np.random.default_rng(seed)
    cases = [(_random_poly(rng, 6, 7, decay=0.3), _random_point(rng, 0.4, 0.9)) for _ in range(n_cases)]
    identities = [
        (
            "laplace4(f'_s) = 0",
            lambda f, x, h: fd_laplace4(lambda y: spherical_derivative(f, y), x, h),
            lambda f, x: Quaternion.real(0.0),
        ),
    ]
    return _fd_pair_suite("harmonic", cases, identities, seed)


def _bilaplacian_suite(name: str, cases, make_u, seed: int) -> SuiteResult:
    rows: list[ResidualRow] = []
    res_h: list[float] = []
    res_h2: list[float] = []
    res_term: list[float] = []
    for idx, (f, x) in enumerate(cases):
        u = make_u(f)
        h = 3e-2 * (1.0 + x.abs())
        raw_h = fd_bilaplace4(u, x, h).abs()
        raw_h2 = fd_bilaplace4(u, x, 0.5 * h).abs()
        rich = fd_bilaplace4_richardson(u, x, h).abs()
        res_h.append(raw_h)
        res_h2.append(raw_h2)
        res_term.append(rich)
        pt = list(x.components())
        rows.append(ResidualRow(name + " raw", idx, pt, h, raw_h, 2))
        rows.append(ResidualRow(name + " raw", idx, pt, 0.5 * h, raw_h2, 2))
        rows.append(ResidualRow(name + " richardson", idx, pt, h, rich, 4))
    mean_h, mean_h2 = float(np.mean(res_h)), float(np.mean(res_h2))
    ratio = mean_h / mean_h2 if mean_h2 > 0 else float("inf")
    terminal = float(np.max(res_term))
    passed = RATIO_WINDOW[0] <= ratio <= RATIO_WINDOW[1] and terminal <= TOL_BILAPLACIAN
    summary = {
        "mean_residual_h": mean_h,
        "mean_residual_h_half": mean_h2,
        "convergence_ratio": ratio,
        "ratio_window": list(RATIO_WINDOW),
        "max_richardson_residual": terminal,
        "tolerance": TOL_BILAPLACIAN,
    }
    return SuiteResult(name, passed, summary, rows)


def suite_biharmonic(seed: int, n_cases: int = 20) -> SuiteResult:
    """Slice-regular functions are biharmonic; also dbar of the
    finite-difference laplacian vanishes."""
    rng = np.random.default_rng(seed)
    cases = [(_random_poly(rng, 6, 8, decay=0.45), _random_point(rng, 0.3, 0.8)) for _ in range(n_cases)]
    result = _bilaplacian_suite("bilaplace4(f)", cases, lambda f: f.eval, seed)

    # dbar_crf of the FD laplacian, composed at matching steps; one
    # Richardson halving for the terminal value, as for the bilaplacian
    rows = []
    res = []
    for idx, (f, x) in enumerate(cases):
        h = 3e-2 * (1.0 + x.abs())

        def composed(step: float) -> Quaternion:
            return fd_crf(lambda y: fd_laplace4(f.eval, y, step), x, step)

        raw_h = composed(h)
        raw_h2 = composed(0.5 * h)
        rich = ((raw_h2 * 4.0 - raw_h) / 3.0).abs()
        res.append(rich)
        pt = list(x.components())
        rows.append(ResidualRow("dbar_crf(laplace4 f) raw", idx, pt, h, raw_h.abs(), 2))
        rows.append(ResidualRow("dbar_crf(laplace4 f) richardson", idx, pt, h, rich, 4))
    result.rows.extend(rows)
    result.summary["max_dbar_laplace_residual"] = float(np.max(res))
    result.passed = result.passed and float(np.max(res)) <= TOL_BILAPLACIAN
    return result


def suite_bilaplacian_logn(seed: int, n_cases: int = 20) -> SuiteResult:
    """log|N(f)| is biharmonic away from the zero set; zeros are placed
    outside an annulus around the evaluation points."""
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(n_cases):
        f = _product_poly(rng, 2.2, 3.0, max_factors=3)
        x = _random_point(rng, 0.3, 0.6, beta_min=0.15)
        cases.append((f, x))
    return _bilaplacian_suite("bilaplace4(log|N(f)|)", cases, lambda f: (lambda y: log_abs(normal(f), y)), seed)


def suite_delta4_at_0(seed: int, n_cases: int = 20) -> SuiteResult:
    """Closed-form Laplacian of log|N(f)| at 0 against Richardson FD,
    plus the analytic anchor at f = x + 1 (exact value 4)."""
    rng = np.random.default_rng(seed)
    rows: list[ResidualRow] = []
    worst = 0.0
    origin = Quaternion.real(0.0)
    for idx in range(n_cases):
        f = _product_poly(rng, 0.8, 1.8)
        closed = delta4_logNf_at0(f)
        nf = normal(f)
        fd = fd_laplace4_richardson(lambda y: log_abs(nf, y), origin, 3e-2).w
        err = abs(closed - fd)
        worst = max(worst, err)
        rows.append(ResidualRow("delta4 log|N| at 0: closed vs FD", idx, [0.0, 0.0, 0.0, 0.0], 3e-2, err, 4))
    anchor = abs(delta4_logNf_at0(SlicePolynomial.from_real([1.0, 1.0])) - 4.0)
    rows.append(ResidualRow("anchor x+1 -> 4", n_cases, [0.0, 0.0, 0.0, 0.0], 0.0, anchor, 0))
    passed = worst <= TOL_DELTA4_AT_0 and anchor <= 1e-12
    summary = {
        "max_closed_vs_fd": worst,
        "tolerance": TOL_DELTA4_AT_0,
        "anchor_error": anchor,
    }
    return SuiteResult("delta4-at-0", passed, summary, rows)


# ---------------------------------------------------------------------------
# quadrature and multiplicity suites
# ---------------------------------------------------------------------------


def suite_quadrature(seed: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    rows: list[ResidualRow] = []
    worst_measure = 0.0
    for r in (0.8, 1.0, 1.5, 2.0):
        for n in (12, 24, 48):
            rule = build_rule(r, n)
            rel = abs(float(np.sum(rule.weights)) - rule.measure) / rule.measure
            worst_measure = max(worst_measure, rel)
            rows.append(ResidualRow("sum(w) vs 2 pi^2 r^3", n, [r, 0.0, 0.0, 0.0], 0.0, rel, 0))
    worst_cross = 0.0
    r = 1.0
    rule = build_rule(r, 48)
    for idx in range(5):
        f = _product_poly(rng, 0.3, 0.6, max_factors=3)
        nf = normal(f)
        full = integrate_values(rule, log_normal_values(f, rule)) / rule.measure
        circ = circular_reduction(r, 2048, lambda x: log_abs(nf, x)) / rule.measure
        err = abs(full - circ)
        worst_cross = max(worst_cross, err)
        rows.append(ResidualRow("3D rule vs circular reduction (mean log|N|)", idx, [r, 0, 0, 0], 0.0, err, 0))
    passed = worst_measure <= TOL_MEASURE_REL and worst_cross <= TOL_CROSS_METHOD
    summary = {
        "max_measure_rel_error": worst_measure,
        "measure_tolerance": TOL_MEASURE_REL,
        "max_cross_method_error": worst_cross,
        "cross_method_tolerance": TOL_CROSS_METHOD,
    }
    return SuiteResult("quadrature", passed, summary, rows)


def suite_multiplicity(seed: int, n_cases: int = 50) -> SuiteResult:
    """Doubling law: total multiplicity in N(f) is twice the one in f,
    exactly, over random products of linear and quadratic factors with
    deliberate repetitions."""
    rng = np.random.default_rng(seed)
    rows: list[ResidualRow] = []
    failures = 0
    for idx in range(n_cases):
        # small pools so repeated factors (multiplicity > 1) are common
        reals = [0.5, -0.6]
        points = [Quaternion(0.3, 0.7, 0.0, 0.0), Quaternion(-0.4, 0.0, 0.5, 0.0)]
        f = SlicePolynomial.from_real([1.0])
        for _ in range(int(rng.integers(2, 5))):
            kind = rng.integers(0, 3)
            if kind == 0:
                f = f * SlicePolynomial.from_real([-rng.choice(reals), 1.0])
            elif kind == 1:
                f = f * SlicePolynomial.linear(points[int(rng.integers(0, 2))])
            else:
                f = f * characteristic_poly(points[int(rng.integers(0, 2))])
        nf = normal(f)
        ok = True
        for rec in classify_zeros(f):
            m_f = total_multiplicity(f, rec.representative)
            m_n = total_multiplicity(nf, rec.representative)
            if m_f != rec.multiplicity or m_n != 2 * m_f:
                ok = False
            rows.append(
                ResidualRow(
                    f"m_N = 2 m_f at ({rec.alpha:.3g},{rec.beta:.3g})",
                    idx,
                    list(rec.representative.components()),
                    0.0,
                    abs(m_n - 2 * m_f),
                    0,
                )
            )
        if not ok:
            failures += 1
    summary = {"cases": n_cases, "failures": failures}
    return SuiteResult("multiplicity", failures == 0, summary, rows)


SUITES = {
    "crf": suite_crf,
    "gamma": suite_gamma,
    "harmonic": suite_harmonic,
    "biharmonic": suite_biharmonic,
    "bilaplacian-logN": suite_bilaplacian_logn,
    "delta4-at-0": suite_delta4_at_0,
    "quadrature": suite_quadrature,
    "multiplicity": suite_multiplicity,
}
SUITE_ORDER = list(SUITES)


def run_suite(name: str, seed: int) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITE_ORDER)}")
    return SUITES[name](seed)
