import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lemnisquircle import curves as cv
from lemnisquircle.numerics import DomainError

Q = math.pi / 4
SQRT2 = math.sqrt(2.0)


def lemniscate_eq(x, y):
    return (x * x + y * y) ** 2 - (x * x - y * y)


def squircle_eq(x, y):
    return x ** 4 + y ** 4 - 1.0


def mp_arc_theta(lo, hi):
    # The library places the node at the float Q; integrate in the distance
    # g = Q - theta so the oracle uses the same node.
    g_lo, g_hi = mpmath.mpf(Q) - hi, mpmath.mpf(Q) - lo
    return float(mpmath.quad(lambda g: 1 / mpmath.sqrt(mpmath.sin(2 * g)), [g_lo, g_hi]))


def mp_area(alpha):
    return float(mpmath.quad(lambda t: 1 / mpmath.sqrt(1 + mpmath.cos(2 * t) ** 2), [0, alpha]) / mpmath.sqrt(2))


# -- pointwise geometry ----------------------------------------------------- #

@pytest.mark.parametrize("theta, expected", [(0.0, 1.0), (Q, 0.0), (math.pi / 6, 0.7071067811865476)])
def test_lemniscate_r_values(theta, expected):
    assert cv.lemniscate_r(theta) == pytest.approx(expected, abs=1e-15)


def test_lemniscate_r_exact_zero_at_node():
    assert cv.lemniscate_r(Q) == 0.0


def test_lemniscate_point_from_r_values():
    assert tuple(cv.lemniscate_point_from_r(0.0)) == (0.0, 0.0)
    assert tuple(cv.lemniscate_point_from_r(1.0)) == (1.0, 0.0)
    p = cv.lemniscate_point_from_r(1 / SQRT2)
    assert p.x == pytest.approx(0.6123724356957945, abs=1e-15)
    assert p.y == pytest.approx(0.3535533905932738, abs=1e-15)
    assert abs(lemniscate_eq(p.x, p.y)) <= 1e-15


def test_on_curve_residuals_on_grids():
    for r in np.linspace(0.0, 1.0, 256):
        p = cv.lemniscate_point_from_r(float(r))
        assert abs(lemniscate_eq(p.x, p.y)) <= 1e-13
        assert math.hypot(p.x, p.y) == pytest.approx(r, abs=1e-15)
    for s in np.linspace(0.0, math.pi / 2, 256):
        p = cv.squircle_point_param(float(s))
        assert abs(squircle_eq(p.x, p.y)) <= 1e-13


def test_lemniscate_point_at_angle_on_curve():
    for t in np.linspace(0.0, Q, 64):
        p = cv.lemniscate_point_at_angle(float(t))
        assert abs(lemniscate_eq(p.x, p.y)) <= 1e-15


def test_squircle_point_param_values():
    assert tuple(cv.squircle_point_param(0.0)) == (1.0, 0.0)
    assert tuple(cv.squircle_point_param(math.pi / 2)) == (0.0, 1.0)
    p = cv.squircle_point_param(Q)
    assert p.x == pytest.approx(0.8408964152537145, abs=1e-15)
    assert p.y == pytest.approx(0.8408964152537145, abs=1e-15)


def test_squircle_polar_forms():
    assert cv.squircle_r2_tan(0.0) == 1.0
    assert cv.squircle_r2_tan(Q) == pytest.approx(SQRT2, abs=1e-15)
    assert cv.squircle_r2_cos(0.0) == pytest.approx(1.0, abs=1e-15)
    assert cv.squircle_r2_cos(Q) == pytest.approx(SQRT2, abs=1e-15)
    assert cv.squircle_r2_cos(math.pi / 2) == pytest.approx(1.0, abs=1e-15)
    assert abs(cv.squircle_r2_tan(Q / 2) - cv.squircle_r2_cos(Q / 2)) <= 1e-14


def test_squircle_polar_forms_agree_on_grid():
    for t in np.linspace(0.0, Q - 1e-6, 64):
        assert abs(cv.squircle_r2_tan(float(t)) - cv.squircle_r2_cos(float(t))) <= 1e-13


def test_squircle_r2_tan_open_at_half_pi():
    with pytest.raises(DomainError):
        cv.squircle_r2_tan(math.pi / 2)


def test_radial_projection():
    assert tuple(cv.radial_projection_to_squircle(0.0)) == (1.0, 0.0)
    p = cv.radial_projection_to_squircle(Q)
    assert p.x == pytest.approx(0.8408964152537145, abs=1e-15)
    assert p.y == pytest.approx(0.8408964152537145, abs=1e-15)
    p = cv.radial_projection_to_squircle(Q / 2)
    assert abs(p.y / p.x - math.tan(Q / 2)) <= 1e-14


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, Q))
def test_radial_projection_on_squircle_and_ray(theta):
    p = cv.radial_projection_to_squircle(theta)
    assert abs(squircle_eq(p.x, p.y)) <= 1e-14
    assert abs(math.atan2(p.y, p.x) - theta) <= 1e-15
    r2 = p.x ** 2 + p.y ** 2
    assert abs(r2 - cv.squircle_r2_cos(theta)) <= 1e-14


# -- beta(alpha) ------------------------------------------------------------ #

def test_beta_values():
    assert cv.beta_of_alpha(0.0) == 0.0
    assert cv.beta_of_alpha(Q) == pytest.approx(Q, abs=1e-16)
    assert abs(cv.beta_of_alpha(Q / 2) - math.pi / 6) <= 1e-12


def test_beta_consistency_and_monotone():
    grid = np.linspace(0.0, Q, 257)
    betas = [cv.beta_of_alpha(float(a)) for a in grid]
    for a, b in zip(grid, betas):
        assert abs(math.cos(2 * b) - math.cos(2 * a) ** 2) <= 1e-13
        assert a <= b + 1e-15  # C is never below B in angle
    assert all(b1 <= b2 for b1, b2 in zip(betas, betas[1:]))


def test_beta_matches_mpmath():
    for a in np.linspace(0.0, Q - 1e-3, 33):
        exact = mpmath.acos(mpmath.cos(2 * mpmath.mpf(float(a))) ** 2) / 2
        assert abs(cv.beta_of_alpha(float(a)) - float(exact)) <= 2e-16


def test_beta_near_node_matches_mpmath():
    # Within the node's neighbourhood, in terms of gaps from the float Q.
    for g in [1e-3, 1e-5, 1e-8, 1e-12]:
        a = Q - g
        ga = mpmath.mpf(Q) - a
        gap_beta = mpmath.asin(mpmath.sin(2 * ga) ** 2) / 2
        assert abs((Q - cv.beta_of_alpha(a)) - float(gap_beta)) <= 1e-16 + 1e-13 * float(gap_beta)


def test_beta_gap_matches_mpmath():
    for a in list(np.linspace(0.0, Q, 33)) + [Q - 1e-9, Q - 1e-13, Q]:
        a = float(a)
        ga = mpmath.mpf(Q) - a
        exact = mpmath.asin(mpmath.sin(2 * ga) ** 2) / 2
        assert abs(cv.beta_gap_of_alpha(a) - float(exact)) <= 1e-300 + 5e-16 * float(exact)
        assert abs((Q - cv.beta_gap_of_alpha(a)) - cv.beta_of_alpha(a)) <= 2e-16


def test_d_gap_matches_mpmath():
    for a in list(np.linspace(0.0, Q, 33)) + [Q - 1e-9, Q - 1e-13, Q]:
        a = float(a)
        ga = mpmath.mpf(Q) - a
        c, s = mpmath.sin(2 * ga), mpmath.cos(2 * ga)
        exact = 1 - s / mpmath.sqrt(1 + c * c)
        assert abs(cv.d_gap_of_alpha(a) - float(exact)) <= 1e-300 + 1e-15 * float(exact)


def test_arc_c_to_p_near_node(varpi_ref):
    for g in [1e-6, 1e-8]:
        a = Q - g
        gb = mpmath.asin(mpmath.sin(2 * mpmath.mpf(g)) ** 2) / 2
        exact = float(mpmath.quad(lambda t: 1 / mpmath.sqrt(mpmath.sin(2 * t)), [gb, Q]))
        assert abs(cv.arc_c_to_p(a) - exact) <= 1e-14


def test_d_beta_values():
    assert cv.d_beta_d_alpha(0.0) == pytest.approx(SQRT2, abs=1e-15)
    assert cv.d_beta_d_alpha(Q) == 0.0


def test_d_beta_finite_differences():
    h = 1e-5
    for a in np.linspace(0.01, Q - 0.01, 50):
        a = float(a)
        fd = (cv.beta_of_alpha(a + h) - cv.beta_of_alpha(a - h)) / (2 * h)
        assert abs(cv.d_beta_d_alpha(a) - fd) <= 1e-8


# -- arcs ------------------------------------------------------------------- #

def test_arc_theta_values(varpi_ref):
    assert cv.lemniscate_arc_theta(0.0, 0.0) == 0.0
    assert abs(cv.lemniscate_arc_theta(0.0, Q) - varpi_ref / 2) <= 1e-15
    split = cv.lemniscate_arc_theta(0.0, math.pi / 6) + cv.lemniscate_arc_theta(math.pi / 6, Q)
    assert abs(split - cv.lemniscate_arc_theta(0.0, Q)) <= 2e-12


@pytest.mark.parametrize("lo, hi", [(0.0, 0.1), (0.2, 0.5), (0.3, Q), (0.7, Q - 1e-9), (Q - 1e-6, Q)])
def test_arc_theta_matches_mpmath(lo, hi):
    assert abs(cv.lemniscate_arc_theta(lo, hi) - mp_arc_theta(lo, hi)) <= 1e-13


def test_arc_radial_values(varpi_ref):
    assert cv.lemniscate_arc_radial(0.0, 0.0) == 0.0
    assert abs(cv.lemniscate_arc_radial(0.0, 1.0) - varpi_ref / 2) <= 1e-15
    s = math.sqrt(SQRT2 - 1.0)
    assert abs(cv.lemniscate_arc_radial(0.0, s) - varpi_ref / 4) <= 1e-15


def test_arc_coordinates_partition_quarter_lobe(varpi_ref):
    for b in np.linspace(0.0, Q, 32):
        b = float(b)
        total = cv.lemniscate_arc_theta(0.0, b) + cv.lemniscate_arc_radial(0.0, cv.lemniscate_r(b))
        assert abs(total - varpi_ref / 2) <= 1e-10


def test_arc_radial_hi_gap_sees_below_rounding():
    # r_hi = 1 - 1e-24 rounds to 1.0; the arc it misses is ~sqrt(1e-24).
    full = cv.lemniscate_arc_radial(0.0, 1.0)
    short = cv.lemniscate_arc_radial(0.0, 1.0, hi_gap=1e-24)
    exact = float(mpmath.quad(lambda q: 2 / mpmath.sqrt((2 - q * q) * (1 + (1 - q * q) ** 2)), [0, mpmath.mpf("1e-12")]))
    assert abs((full - short) - exact) <= 1e-14  # difference of two O(1) quadratures
    assert cv.lemniscate_arc_radial(0.2, 0.7, hi_gap=0.3) == pytest.approx(cv.lemniscate_arc_radial(0.2, 0.7), abs=1e-15)
    with pytest.raises(DomainError):
        cv.lemniscate_arc_radial(0.0, 0.5, hi_gap=0.1)


def test_arc_rejects_reversed_limits():
    with pytest.raises(DomainError):
        cv.lemniscate_arc_theta(0.5, 0.1)
    with pytest.raises(DomainError):
        cv.lemniscate_arc_radial(0.5, 0.1)
    with pytest.raises(DomainError):
        cv.lemniscate_arc_theta(0.0, 1.0)


# -- areas ------------------------------------------------------------------ #

def test_area_values(varpi_ref):
    assert cv.squircle_sector_area(0.0) == 0.0
    # Reference values from the AGM oracle: varpi / (4 sqrt 2) and twice that.
    assert abs(cv.squircle_sector_area(Q) - 0.46351866932534298) <= 1e-15
    assert abs(cv.squircle_sector_area(math.pi / 2) - 0.92703733865068596) <= 1e-15
    assert abs(cv.squircle_sector_area(Q) - varpi_ref / (4 * SQRT2)) <= 1e-15


@pytest.mark.parametrize("alpha", [0.05, 0.4, Q, 1.1, math.pi / 2])
def test_area_matches_mpmath(alpha):
    assert abs(cv.squircle_sector_area(alpha) - mp_area(alpha)) <= 1e-14


def test_area_is_half_integral_of_r_squared():
    # Sector area straight from its definition, with the tan polar form.
    alpha = 0.6
    direct = float(mpmath.quad(lambda t: (1 + mpmath.tan(t) ** 2) / mpmath.sqrt(1 + mpmath.tan(t) ** 4), [0, alpha])) / 2
    assert abs(cv.squircle_sector_area(alpha) - direct) <= 1e-14


@pytest.mark.parametrize("alpha", [0.1, 0.3, 0.5, 0.7, Q, 1.2, math.pi / 2 - 0.01])
def test_area_forms_agree(alpha):
    assert abs(cv.squircle_sector_area(alpha) - cv.squircle_sector_area_tan(alpha)) <= 2e-12


def test_slope_integral_improper(varpi_ref):
    assert abs(cv.slope_area_integral(math.inf) - varpi_ref / SQRT2) <= 1e-15
    assert abs(cv.squircle_sector_area_tan(math.pi / 2) - varpi_ref / (2 * SQRT2)) <= 1e-15


@pytest.mark.parametrize("s", [0.3, 1.0, 2.5, 40.0, 1e6])
def test_slope_integral_matches_mpmath(s):
    exact = float(mpmath.quad(lambda v: 1 / mpmath.sqrt(1 + v ** 4), [0, 1, s]))
    assert abs(cv.slope_area_integral(s) - exact) <= 1e-14


# -- couplings -------------------------------------------------------------- #

def test_coupling_values():
    assert cv.siegel_R_of_T(0.0) == 0.0
    assert cv.siegel_R_of_T(1.0) == pytest.approx(1.0, abs=1e-16)
    assert cv.d_of_b(0.0) == 1.0
    assert cv.d_of_b(1.0) == 0.0
    assert cv.tan_alpha_of_R(0.0) == 1.0
    assert cv.tan_alpha_of_R(1.0) == 0.0
    assert cv.tan_alpha_of_R(0.6) == pytest.approx(0.6859943405700353, abs=2e-16)
    # sqrt(0.8704 / 1.1296), evaluated exactly.
    exact = float(mpmath.sqrt(mpmath.mpf("0.8704") / mpmath.mpf("1.1296")))
    assert abs(cv.d_of_b(0.6) - exact) <= 2e-16
    assert abs(cv.siegel_R_of_T(0.6859943405700353) - exact) <= 1e-15


def test_coupling_commutes():
    for R in np.linspace(0.0, 1.0, 257):
        R = float(R)
        assert abs(cv.d_of_b(R) - cv.siegel_R_of_T(cv.tan_alpha_of_R(R))) <= 1e-13


def test_d_of_alpha_matches_composition():
    for a in np.linspace(0.0, Q, 65):
        a = float(a)
        exact = mpmath.sqrt(1 - mpmath.cos(2 * mpmath.mpf(a)) ** 2) / mpmath.sqrt(1 + mpmath.cos(2 * mpmath.mpf(a)) ** 2)
        assert abs(cv.d_of_alpha(a) - float(exact)) <= 2e-16 + 1e-15 * float(exact)
        # Rounding OB costs ~1e-16 / alpha in d_of_b, nothing in d_of_alpha.
        if a > 0:
            assert abs(cv.d_of_alpha(a) - cv.d_of_b(cv.lemniscate_r(a))) <= 1e-15 + 1e-15 / a


def test_d_of_b_accurate_near_one():
    for R in [1 - 1e-3, 1 - 1e-8, 1 - 2 ** -40]:
        mR = mpmath.mpf(R)
        exact = mpmath.sqrt((1 - mR ** 4) / (1 + mR ** 4))
        assert abs(cv.d_of_b(R) - float(exact)) <= 1e-15 * float(exact)


def test_tan_alpha_is_lemniscate_slope():
    for R in np.linspace(0.01, 1.0, 50):
        p = cv.lemniscate_point_from_r(float(R))
        assert abs(p.y / p.x - cv.tan_alpha_of_R(float(R))) <= 1e-14


def test_domain_errors():
    for fn, bad in [
        (cv.lemniscate_r, -0.1),
        (cv.lemniscate_r, 1.0),
        (cv.lemniscate_point_from_r, 1.5),
        (cv.squircle_point_param, 2.0),
        (cv.beta_of_alpha, 0.9),
        (cv.squircle_sector_area, 2.0),
        (cv.siegel_R_of_T, 1.5),
        (cv.d_of_b, -1.0),
        (cv.slope_area_integral, -1.0),
    ]:
        with pytest.raises(DomainError):
            fn(bad)
    with pytest.raises(DomainError):
        cv.PolarPoint(-1.0, 0.0)
    with pytest.raises(DomainError):
        cv.CartesianPoint(math.nan, 0.0)


def test_polar_point_roundtrip():
    p = cv.PolarPoint(2.0, math.pi / 3).to_cartesian()
    assert p.x == pytest.approx(1.0) and p.y == pytest.approx(math.sqrt(3.0))
