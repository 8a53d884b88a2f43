import math

import numpy as np
import pytest

from slicereg.errors import NonFiniteIntegrandError
from slicereg.quaternions import I, J, ONE, Quaternion, decompose
from slicereg.quadrature import (
    S_map,
    SPHERE_MEASURE,
    T_map,
    boundary_identity_residual,
    boundary_means,
    build_rule,
    circular_reduction,
    integrate,
    integrate_values,
    log_normal_values,
    s_inverse_map,
    sf_roundtrip_errors,
)
from slicereg.slicepoly import SlicePolynomial, log_abs, normal, slice_product
from slicereg.zeros_poles import SemiregularFunction


def real_poly(*cs):
    return SlicePolynomial.from_real(list(cs))


def random_poly(rng, deg=4):
    return SlicePolynomial([Quaternion.from_array(rng.normal(size=4)) for _ in range(deg + 1)])


# -- rule construction ---------------------------------------------------


def test_rule_invariants():
    for r, n in ((1.0, 8), (0.8, 16), (2.0, 48)):
        rule = build_rule(r, n)
        measure = SPHERE_MEASURE * r**3
        assert abs(float(np.sum(rule.weights)) - measure) <= 1e-10 * measure
        radii = np.linalg.norm(rule.nodes, axis=1)
        assert np.max(np.abs(radii - r)) <= 1e-12 * r
        assert np.all(rule.weights > 0)
        assert np.allclose(rule.nodes[:, 0], rule.alpha)
        assert np.allclose(np.linalg.norm(rule.nodes[:, 1:], axis=1), rule.beta)


def test_rule_rejects_bad_parameters():
    with pytest.raises(ValueError):
        build_rule(-1.0, 8)
    with pytest.raises(ValueError):
        build_rule(1.0, 2)


def test_integrate_constant_and_moments():
    rule = build_rule(1.0, 24)
    total = integrate(rule, lambda x: 1.0)
    assert total == pytest.approx(2 * math.pi**2, rel=1e-12)
    # by symmetry int x0^2 = measure/4; 1e7-sample Monte-Carlo oracle
    m2 = integrate(rule, lambda x: x.re() ** 2)
    assert m2 == pytest.approx(math.pi**2 / 2, rel=1e-10)
    rng = np.random.default_rng(0)
    acc = 0.0
    n_samples = 10_000_000
    chunk = 1_000_000
    for _ in range(n_samples // chunk):
        samples = rng.normal(size=(chunk, 4))
        acc += float(np.sum(samples[:, 0] ** 2 / np.einsum("ij,ij->i", samples, samples)))
    mc = acc / n_samples * 2 * math.pi**2
    assert m2 == pytest.approx(mc, rel=1e-3)
    # odd moment vanishes
    m11 = integrate(rule, lambda x: x.re() * x.x1)
    assert abs(m11) <= 1e-12


def test_integrate_log_radius():
    r = 1.7
    rule = build_rule(r, 16)
    val = integrate(rule, lambda x: math.log(x.abs()))
    assert val == pytest.approx(2 * math.pi**2 * r**3 * math.log(r), rel=1e-12)


def test_integrate_nonfinite_reports_node():
    rule = build_rule(1.0, 8)
    with pytest.raises(NonFiniteIntegrandError) as err:
        integrate(rule, lambda x: math.inf if x.re() > 0 else 0.0)
    assert err.value.node is not None


# -- circular reduction ------------------------------------------------------


def test_circular_reduction_constant():
    r = 1.3
    assert circular_reduction(r, 64, lambda x: 1.0) == pytest.approx(
        2 * math.pi**2 * r**3, rel=1e-12
    )


def test_circular_reduction_cross_method():
    nf = normal(real_poly(-0.5, 1.0))
    rule = build_rule(1.0, 24)
    full = integrate(rule, lambda x: log_abs(nf, x))
    circ = circular_reduction(1.0, 256, lambda x: log_abs(nf, x))
    assert abs(full - circ) <= 1e-8

    # (Re x)^2 is circular as well
    full2 = integrate(rule, lambda x: x.re() ** 2)
    circ2 = circular_reduction(1.0, 256, lambda x: x.re() ** 2)
    assert abs(full2 - circ2) <= 1e-10


def test_log_x_minus_2_cross_method():
    f = real_poly(-2.0, 1.0)
    nf = normal(f)
    # log|x-2| = log|N|/2 is circular
    rule = build_rule(1.0, 24)
    full = integrate(rule, lambda x: 0.5 * log_abs(nf, x))
    circ = circular_reduction(1.0, 512, lambda x: 0.5 * log_abs(nf, x))
    assert abs(full - circ) <= 1e-8


def test_quadrature_convergence_doubling():
    cases = [
        real_poly(-0.3, 1.0) * real_poly(0.25, 0.0, 1.0),
        real_poly(0.36, 0.0, 1.0) * real_poly(0.45, 1.0),
        slice_product(SlicePolynomial.linear(I * 0.5), real_poly(-0.4, 1.0)),
    ]
    floor = 1e-10
    for f in cases:
        nf = normal(f)
        reference = circular_reduction(1.0, 2048, lambda x: log_abs(nf, x))
        errors = []
        for n in (6, 12, 24):
            rule = build_rule(1.0, n)
            errors.append(abs(integrate_values(rule, log_normal_values(f, rule)) - reference))
        for coarse, fine in zip(errors, errors[1:]):
            assert fine <= max(coarse / 4.0, floor)


# -- conjugation maps ---------------------------------------------------------


def test_t_map_slice_preserving_fixed_points():
    f = real_poly(2.0, 0.0, 1.0)
    x = Quaternion(0.4, 0.3, -0.2, 0.5)
    assert (T_map(f, x) - x).abs() <= 1e-12


def test_t_map_example_and_sphere_preservation():
    f = SlicePolynomial.linear(I)  # x - i; f^c(j) = j + i
    y = T_map(f, J)
    assert y.re() == pytest.approx(0.0, abs=1e-13)
    assert y.abs_im() == pytest.approx(1.0, rel=1e-13)
    assert y.isclose(I)  # direct quaternion arithmetic: (j+i)^{-1} j (j+i) = i


def test_t_map_roundtrip():
    rng = np.random.default_rng(1)
    f = random_poly(rng)
    fc = f.conjugate()
    for _ in range(10):
        x = Quaternion.from_array(rng.normal(size=4))
        if normal(f).eval(x).abs() < 1e-3:
            continue
        y = T_map(f, x)
        back = T_map(fc, y)
        assert (back - x).abs() <= 1e-10 * (1.0 + x.abs())


def test_s_map_slice_preserving_is_conjugation():
    f = real_poly(2.0, 0.0, 1.0)
    x = Quaternion(1, 0, 1, 0)
    assert S_map(f, x).isclose(Quaternion(1, 0, -1, 0))


def test_s_map_example():
    f = SlicePolynomial.linear(I)
    y = S_map(f, J)
    assert y.re() == pytest.approx(0.0, abs=1e-13)
    assert y.abs_im() == pytest.approx(1.0, rel=1e-13)
    assert y.isclose(I)  # (j-i)^{-1} (-j) (j-i) = i


def test_conjugation_maps_degenerate_points():
    from slicereg.errors import DegeneratePointError

    f = SlicePolynomial.linear(I)  # f^c = x + i vanishes at -i
    with pytest.raises(DegeneratePointError):
        T_map(f, -I)
    with pytest.raises(DegeneratePointError):
        S_map(f, I)  # f itself vanishes at i


def test_s_map_preserves_spheres():
    rng = np.random.default_rng(2)
    f = random_poly(rng)
    for _ in range(20):
        x = Quaternion.from_array(rng.normal(size=4))
        if x.abs_im() < 0.1:
            continue
        y = S_map(f, x)
        assert y.re() == pytest.approx(x.re(), abs=1e-10 * (1 + x.abs()))
        assert y.abs_im() == pytest.approx(x.abs_im(), abs=1e-10 * (1 + x.abs()))


def test_s_map_inverse_roundtrip():
    rng = np.random.default_rng(3)
    f = random_poly(rng)
    scale = f.stem_scale(1.0)
    count = 0
    while count < 50:
        v = rng.normal(size=4)
        x = Quaternion.from_array(v / np.linalg.norm(v))
        p = decompose(x)
        if p.beta < 0.1:
            continue
        stem = f.stem_components(p.alpha, p.beta)
        if stem.F2.abs() < 1e-4 * (1 + scale):
            continue
        y = S_map(f, x)
        back = s_inverse_map(f, y)
        assert (back - x).abs() <= 1e-9
        count += 1


# -- boundary means -------------------------------------------------------------


def test_boundary_means_slice_preserving_equal():
    f = real_poly(2.0, 1.0)
    rule = build_rule(1.0, 16)
    m = boundary_means(f, rule)
    assert m.mean_log_f == pytest.approx(m.mean_log_f_sf, abs=1e-14)


def test_boundary_means_sum_is_log_normal_mean():
    rng = np.random.default_rng(4)
    f = random_poly(rng, deg=3)
    rule = build_rule(1.2, 24)
    m = boundary_means(f, rule)
    mean_log_n = integrate_values(rule, log_normal_values(f, rule)) / rule.measure
    assert m.mean_log_f + m.mean_log_f_sf == pytest.approx(mean_log_n, abs=1e-11)


def test_boundary_means_rational():
    den = real_poly(0.25, 0.0, 1.0)
    num = SlicePolynomial([J, ONE])
    f = SemiregularFunction(den, num)
    rule = build_rule(1.3, 24)
    m = boundary_means(f, rule)
    # spot-check one node against pointwise evaluation
    x = Quaternion.from_array(rule.nodes[1234])
    val = f.eval(x)
    assert math.isfinite(m.mean_log_f) and math.isfinite(m.mean_log_f_sf)
    assert val.abs() > 0


def test_boundary_identity_pointwise():
    rng = np.random.default_rng(5)
    for _ in range(5):
        f = random_poly(rng, deg=4)
        rule = build_rule(1.1, 16)
        if normal(f).eval_complex(complex(0, 1.1)) == 0:
            continue
        assert boundary_identity_residual(f, rule) <= 1e-9


def test_boundary_zero_detected():
    # a zero exactly on the integration sphere is a hypothesis
    # violation; jensen_check flags it before any integration runs
    from slicereg.errors import ZeroOnBoundaryError
    from slicereg.jensen import jensen_check

    f = SlicePolynomial.linear(ONE)  # zero at 1 on the unit sphere
    with pytest.raises(ZeroOnBoundaryError):
        jensen_check(f, 1.0, 8)
    # an exact node hit still surfaces as a non-finite integrand
    rule = build_rule(1.0, 16)
    x0 = Quaternion.from_array(rule.nodes[7])
    g = SlicePolynomial.linear(x0)
    with pytest.raises(NonFiniteIntegrandError):
        boundary_means(g, rule)


def test_sf_roundtrip_errors_small():
    rng = np.random.default_rng(6)
    f = slice_product(SlicePolynomial.linear(I * 0.5), SlicePolynomial.linear(J * 0.5))
    errs = sf_roundtrip_errors(f, 1.0, 200, rng)
    assert len(errs) == 200
    assert float(np.max(errs)) <= 1e-9
