import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fekete_szego.mclass import (
    HerglotzMeasure,
    MembershipError,
    SchwarzSeries,
    SectorAlpha,
    balpha_coeffs,
    balpha_value,
    build_member,
    caratheodory_series,
    extremal_f1,
    extremal_f2,
    member_from_measure,
    membership_check,
    p_from_schwarz,
    quotient_series,
    rotate,
    sample_rng,
    schwarz_from_p,
    strip_bounds,
)
from fekete_szego.series import NormalizedSeries, SeriesError, TruncatedSeries, compose

from conftest import ALPHAS

alphas = st.floats(math.pi / 2, math.pi - 1e-6)


def taylor_by_fft(func, n_coeffs, radius=0.5, n_points=256):
    """Taylor coefficients from samples on a circle (discrete Cauchy integral)."""
    t = 2 * np.pi * np.arange(n_points) / n_points
    vals = func(radius * np.exp(1j * t))
    return np.fft.fft(vals)[:n_coeffs] / n_points / radius ** np.arange(n_coeffs)


# -- strip geometry ---------------------------------------------------------------

def test_strip_at_right_angle():
    s = SectorAlpha(math.pi / 2)
    assert abs(s.lower - (1 - math.pi / 4)) < 1e-12
    assert abs(s.upper - (1 + math.pi / 4)) < 1e-12


@given(alphas)
def test_strip_width_and_range(a):
    s = SectorAlpha(a)
    lo, hi = strip_bounds(a)
    assert math.isclose(hi - lo, math.pi / (2 * s.sin), rel_tol=1e-13)
    assert lo < hi
    assert 1 - math.pi / 4 - 1e-12 <= lo < 0.5


@pytest.mark.parametrize("a", [1.0, math.pi, math.pi - 1e-7, float("nan")])
def test_sector_rejects_out_of_range(a):
    with pytest.raises(ValueError):
        SectorAlpha(a)


# -- B_alpha ----------------------------------------------------------------------

@pytest.mark.parametrize("a", ALPHAS)
def test_balpha_low_coefficients(a):
    s = SectorAlpha(a)
    A = balpha_coeffs(s, 5)
    assert A[0] == 0 and A[1] == 1
    assert abs(A[2] + math.cos(a)) < 1e-15


def test_balpha_third_coefficient_matches_log_form():
    s = SectorAlpha(math.pi / 2)
    A = balpha_coeffs(s, 3)
    assert abs(A[3] + 1 / 3) < 1e-15
    numeric = taylor_by_fft(lambda z: balpha_value(s, z), 12)
    assert abs(numeric[3] + 1 / 3) < 1e-12


@pytest.mark.parametrize("a", ALPHAS)
def test_balpha_coefficients_match_log_form(a):
    s = SectorAlpha(a)
    numeric = taylor_by_fft(lambda z: balpha_value(s, z), 20)
    assert np.max(np.abs(numeric - balpha_coeffs(s, 19).coeffs)) < 1e-11


@pytest.mark.parametrize("a", ALPHAS)
def test_balpha_series_agrees_with_closed_form(a):
    s = SectorAlpha(a)
    z = 0.3 * np.exp(1j * np.linspace(0, 2 * np.pi, 17))
    assert np.max(np.abs(balpha_coeffs(s, 32)(z) - balpha_value(s, z))) < 1e-8


@settings(max_examples=50)
@given(alphas)
def test_balpha_sign_pattern(a):
    s = SectorAlpha(a)
    A = balpha_coeffs(s, 40).coeffs.real
    for n in range(1, 41):
        sn = math.sin(n * a)
        if abs(sn) > 1e-9:
            assert np.sign(A[n] * (-1) ** (n - 1)) == np.sign(sn)


@settings(max_examples=50)
@given(alphas, st.floats(0, 0.999), st.floats(0, 2 * math.pi))
def test_balpha_maps_into_shifted_strip(a, r, t):
    s = SectorAlpha(a)
    v = balpha_value(s, r * complex(math.cos(t), math.sin(t)))
    assert s.lower - 1 < v.real < s.upper - 1


def test_balpha_value_examples_and_domain():
    s = SectorAlpha(math.pi / 2)
    assert balpha_value(s, 0) == 0
    assert abs(balpha_value(s, 0.9).real) < math.pi / 4
    with pytest.raises(ValueError):
        balpha_value(s, 1.0)


# -- Caratheodory / Schwarz -------------------------------------------------------

def test_caratheodory_examples():
    p = caratheodory_series(HerglotzMeasure((1.0,), (0.0,)), 6)
    assert np.allclose(p.coeffs, [1, 2, 2, 2, 2, 2, 2])
    p = caratheodory_series(HerglotzMeasure((0.5, 0.5), (0.0, math.pi)), 6)
    assert np.allclose(p.coeffs, [1, 0, 2, 0, 2, 0, 2], atol=1e-15)
    p = caratheodory_series(HerglotzMeasure((1.0,), (1.2,)), 3)
    assert abs(p[1] - 2 * np.exp(1.2j)) < 1e-15


def test_herglotz_validation():
    with pytest.raises(ValueError):
        HerglotzMeasure((0.5, 0.4), (0.0, 1.0))
    with pytest.raises(ValueError):
        HerglotzMeasure((1.5, -0.5), (0.0, 1.0))
    with pytest.raises(ValueError):
        HerglotzMeasure((1.0,), (7.0,))
    with pytest.raises(ValueError):
        HerglotzMeasure((1 / 9,) * 9, (0.0,) * 9)


def test_herglotz_json_round_trip():
    h = HerglotzMeasure.sample(sample_rng(42, 3))
    back = HerglotzMeasure.from_json(h.to_json())
    assert back == h
    assert set(json.loads(h.to_json())) == {"weights", "angles"}


def test_sampling_is_counter_based():
    a = [HerglotzMeasure.sample(sample_rng(7, i)) for i in range(5)]
    b = [HerglotzMeasure.sample(sample_rng(7, i)) for i in reversed(range(5))][::-1]
    assert a == b
    assert a[0] != a[1]


@pytest.mark.parametrize("i", range(20))
def test_carathodory_coefficients_bounded(i):
    p = caratheodory_series(HerglotzMeasure.sample(sample_rng(1, i)), 30)
    assert np.all(np.abs(p.coeffs[1:]) <= 2 + 1e-12)


def test_schwarz_examples():
    N = 10
    koebe_p = TruncatedSeries(np.r_[1, 2 * np.ones(N)])
    assert np.allclose(schwarz_from_p(koebe_p).coeffs, TruncatedSeries.monomial(1, N).coeffs)
    assert np.allclose(schwarz_from_p(TruncatedSeries.constant(1, N)).coeffs, 0)
    p = caratheodory_series(HerglotzMeasure((0.5, 0.5), (0.0, math.pi)), N)
    assert np.allclose(schwarz_from_p(p).coeffs, TruncatedSeries.monomial(2, N).coeffs, atol=1e-15)
    with pytest.raises(SeriesError):
        SchwarzSeries([0.1, 1])


@pytest.mark.parametrize("i", range(30))
def test_generated_schwarz_functions_stay_in_disk(i):
    h = HerglotzMeasure.sample(sample_rng(42, i))
    w = schwarz_from_p(caratheodory_series(h, 128))
    radii = np.linspace(0.05, 0.95, 19)
    angles = 2 * np.pi * np.arange(360) / 360
    # exact w from the closed-form p, then the truncated series against it
    z = np.outer(radii, np.exp(1j * angles))
    pz = h.value(z)
    exact = (pz - 1) / (pz + 1)
    assert np.abs(exact).max() < 1
    assert w.max_modulus(radii, angles) < 1
    inner = radii <= 0.8
    assert np.abs(w(z[inner]) - exact[inner]).max() < 1e-8


@pytest.mark.parametrize("i", range(30))
def test_p_and_w_are_mutually_inverse(i):
    h = HerglotzMeasure.sample(sample_rng(5, i))
    w = schwarz_from_p(caratheodory_series(h, 24))
    back = schwarz_from_p(p_from_schwarz(w))
    assert np.max(np.abs(back.coeffs - w.coeffs)) < 1e-10


# -- members ----------------------------------------------------------------------

def test_build_member_examples(sector):
    f = build_member(sector, TruncatedSeries.constant(0, 8))
    assert np.array_equal(f.coeffs, NormalizedSeries.identity(8).coeffs)
    p = TruncatedSeries(np.r_[1, 2 * np.ones(8)])
    f = build_member(sector, schwarz_from_p(p))
    assert abs(f[2] - 1) < 1e-15
    assert abs(f[3] - (1 - sector.cos) / 2) < 1e-15


@pytest.mark.parametrize("i", range(25))
def test_low_coefficients_follow_p(sector, i):
    h = HerglotzMeasure.sample(sample_rng(11, i))
    p = caratheodory_series(h, 8)
    f = member_from_measure(sector, h, 8)
    assert abs(f[2] - p[1] / 2) < 1e-14
    assert abs(f[3] - (p[2] - sector.cos * p[1] ** 2 / 2) / 4) < 1e-14


@pytest.mark.parametrize("i", range(10))
def test_quotient_reproduces_subordination(sector, i):
    h = HerglotzMeasure.sample(sample_rng(3, i))
    w = schwarz_from_p(caratheodory_series(h, 20))
    f = build_member(sector, w)
    q = quotient_series(f)
    expected = compose(balpha_coeffs(sector, 19), w.truncate(19)).coeffs.copy()
    expected[0] += 1
    assert np.max(np.abs(q.coeffs - expected)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ALPHAS), st.integers(0, 10_000), st.floats(0, 2 * math.pi))
def test_build_member_is_rotation_equivariant(a, index, theta):
    s = SectorAlpha(a)
    w = schwarz_from_p(caratheodory_series(HerglotzMeasure.sample(sample_rng(9, index)), 16))
    n = np.arange(w.order + 1)
    w_rot = TruncatedSeries(w.coeffs * np.exp(1j * n * theta))
    lhs = build_member(s, w_rot)
    rhs = rotate(build_member(s, w), theta)
    assert np.max(np.abs(lhs.coeffs - rhs.coeffs)) < 1e-10


def test_extremal_f1_expansion(sector):
    f = extremal_f1(sector, 12)
    c = sector.cos
    assert abs(f[2] - 1) < 1e-15
    assert abs(f[3] - (1 - c) / 2) < 1e-15
    assert abs(f[4] - (1 - 9 * c + 8 * c * c) / 18) < 1e-15


def test_extremal_f1_examples():
    f = extremal_f1(SectorAlpha(math.pi / 2), 5)
    assert np.allclose(f.coeffs[2:5], [1, 0.5, 1 / 18], atol=1e-15)
    assert abs(extremal_f1(SectorAlpha(2 * math.pi / 3))[3] - 0.75) < 1e-15


@pytest.mark.parametrize("a", ALPHAS)
def test_extremal_f1_matches_quadrature(a):
    # f1(z) = z exp(int_0^z B(xi)/xi dxi), integrated along the ray with Gauss-Legendre
    s = SectorAlpha(a)
    x, wts = np.polynomial.legendre.leggauss(40)
    t = (x + 1) / 2
    f = extremal_f1(s, 80)
    for z in (0.3, 0.5j, -0.4 + 0.2j):
        integral = np.sum(wts / 2 * balpha_value(s, t * z) / t)
        assert abs(f(z) - z * np.exp(integral)) < 1e-12


def test_extremal_f2(sector):
    f = extremal_f2(sector, 15)
    assert f[2] == 0 and abs(f[3] - 0.5) < 1e-15
    assert np.all(f.coeffs[0::2] == 0)


def test_rotate_examples(sector):
    f = extremal_f1(sector, 10)
    assert np.allclose(rotate(f, 0).coeffs, f.coeffs)
    assert abs(rotate(f, math.pi)[2] + 1) < 1e-15
    g = rotate(f, 0.77)
    assert np.allclose(np.abs(g.coeffs), np.abs(f.coeffs))


# -- membership -------------------------------------------------------------------

def test_identity_is_member(sector):
    rep = membership_check(NormalizedSeries.identity(12), sector)
    assert rep.accepted
    assert rep.worst_value == 1.0


def test_koebe_is_rejected(sector):
    koebe = NormalizedSeries(np.arange(65, dtype=float))
    rep = membership_check(koebe, sector)
    assert not rep.accepted
    assert rep.max_value > sector.upper
    # quotient is (1+z)/(1-z); its real part at 0.99 is 199
    assert abs((1 + 0.99) / (1 - 0.99) - 199) < 1e-9


def test_extremals_are_members(sector):
    for f in (extremal_f1(sector, 128), extremal_f2(sector, 128)):
        assert membership_check(f, sector).accepted


def test_rotated_extremal_stays_member(sector):
    f = rotate(extremal_f1(sector, 128), 2.1)
    assert membership_check(f, sector).accepted


def test_undecidable_tail_raises():
    s = SectorAlpha(5 * math.pi / 6)
    with pytest.raises(MembershipError):
        membership_check(extremal_f1(s, 12), s)


def test_membership_input_validation(sector):
    f = NormalizedSeries.identity(4)
    with pytest.raises(MembershipError):
        membership_check(f, sector, radii=[0.5, 1.0])
    with pytest.raises(MembershipError):
        membership_check(f, sector, radii=[])
    with pytest.raises(MembershipError):
        membership_check(f, sector, margin=-1)


def test_membership_report_json(sector):
    rep = membership_check(NormalizedSeries.identity(6), sector, radii=[0.5], angles=[0.0])
    d = json.loads(rep.to_json())
    assert d == {"accepted": True, "worst_value": 1.0, "worst_z": [0.5, 0.0]}


def test_sampled_members_pass_with_zero_margin(sector):
    for i in range(40):
        f = member_from_measure(sector, HerglotzMeasure.sample(sample_rng(42, i)), 128)
        assert membership_check(f, sector, margin=0.0).accepted
