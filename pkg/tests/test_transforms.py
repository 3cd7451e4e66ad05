import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fekete_szego.mclass import SectorAlpha, extremal_f2
from fekete_szego.series import NormalizedSeries, SeriesError, TruncatedSeries, dilate, power
from fekete_szego.transforms import (
    CapacityError,
    FSRecord,
    RootTransformSeries,
    b_from_a,
    fs_functional,
    fs_record,
    fs_records_to_csv,
    inverse_transfer_coeffs,
    invert_series,
    kth_root_transform,
)

from conftest import ALPHAS, random_normalized

KOEBE = NormalizedSeries(np.arange(13, dtype=float))
GEOMETRIC = NormalizedSeries(np.r_[0, np.ones(12)])


# -- root transform ---------------------------------------------------------------

def test_k1_is_identity(rng):
    f = random_normalized(rng)
    F = kth_root_transform(f, 1)
    assert np.allclose(F.F.coeffs, f.coeffs, atol=1e-15, rtol=0)


def test_koebe_square_root_transform():
    F = kth_root_transform(KOEBE, 2)
    assert abs(F.b_low - 1) < 1e-13 and abs(F.b_high - 1) < 1e-13
    # z/(1 - z^2)
    expected = np.zeros(F.F.order + 1)
    expected[1::2] = 1
    assert np.allclose(F.F.coeffs, expected, atol=1e-11)
    assert b_from_a(2, 3, 2) == (1, 1)


@pytest.mark.parametrize("a", ALPHAS)
@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_f2_transform_coefficients(a, k):
    F = kth_root_transform(extremal_f2(SectorAlpha(a), 12), k)
    assert abs(F.b_low) < 1e-15
    assert abs(F.b_high - 1 / (2 * k)) < 1e-14


def test_transform_is_kth_root(rng):
    f = random_normalized(rng, 8)
    for k in (2, 3):
        F = kth_root_transform(f, k)
        fk = dilate(f, k).truncate(F.F.order + k - 1)
        assert np.allclose(power(F.F, k).coeffs, fk.truncate(F.F.order).coeffs, atol=1e-9)


def test_capacity_errors():
    f = NormalizedSeries.from_tail([1, 1], 3)
    assert kth_root_transform(f, 3).F.order == 7
    with pytest.raises(CapacityError):
        kth_root_transform(f, 3, N=8)
    with pytest.raises(CapacityError):
        kth_root_transform(NormalizedSeries([0, 1, 1]), 2)
    with pytest.raises(CapacityError):
        kth_root_transform(f, 2).b(6)


def test_sparsity_invariant_rejects_dense_series():
    with pytest.raises(SeriesError):
        RootTransformSeries(2, NormalizedSeries([0, 1, 0.1, 0.2]))


def test_b_from_a_examples():
    assert b_from_a(0, 0, 3) == (0, 0)
    assert b_from_a(0.3 + 1j, -2j, 1) == (0.3 + 1j, -2j)
    with pytest.raises(ValueError):
        b_from_a(1, 1, 0)


def test_transform_matches_closed_forms_on_500_series():
    rng = np.random.default_rng(500)
    worst = 0.0
    for _ in range(500):
        f = random_normalized(rng, 6)
        for k in (1, 2, 3, 5):
            F = kth_root_transform(f, k)
            lo, hi = b_from_a(f[2], f[3], k)
            worst = max(worst, abs(F.b_low - lo), abs(F.b_high - hi))
    assert worst < 1e-10


# -- functional -------------------------------------------------------------------

@pytest.mark.parametrize("b_low,b_high,mu,expected", [
    (1, 0.5, 0, 0.5),
    (0, 1 / 6, 7.3, 1 / 6),
    (1, 1, 1, 0),
    (1j, 0, 1j, 1),
])
def test_fs_functional_examples(b_low, b_high, mu, expected):
    assert abs(fs_functional(b_low, b_high, mu) - expected) < 1e-15


def test_fs_functional_vectorizes():
    v = fs_functional(np.array([1, 2]), np.array([0, 0]), 1.0)
    assert np.array_equal(v, [1, 4])


def test_fs_record_and_csv():
    F = kth_root_transform(KOEBE, 2)
    rec = fs_record(F, 0.5)
    assert abs(rec.value - abs(rec.b_high - 0.5 * rec.b_low ** 2)) < 1e-14
    lines = fs_records_to_csv([rec]).splitlines()
    assert lines[0] == "k,mu,b_low_re,b_low_im,b_high_re,b_high_im,value"
    assert lines[1].split(",")[:2] == ["2", "0.5"]
    assert FSRecord(1, 0.0, 1j, 0j, 1.0).to_row()[2:4] == ["0", "1"]


# -- inverses ---------------------------------------------------------------------

def test_invert_examples():
    g = invert_series(GEOMETRIC)
    assert np.allclose(g.coeffs[:5], [0, 1, -1, 1, -1], atol=1e-14)
    assert np.array_equal(invert_series(NormalizedSeries.identity(6)).coeffs,
                          NormalizedSeries.identity(6).coeffs)
    g = invert_series(NormalizedSeries.from_tail([1, 1, 1], 5))
    assert np.allclose(g.coeffs[2:5], [-1, 1, -1], atol=1e-14)


complex_unit = st.builds(complex, st.floats(-1, 1), st.floats(-1, 1))


@settings(max_examples=80, deadline=None)
@given(st.lists(complex_unit, min_size=7, max_size=7))
def test_inverse_is_involution_on_low_degrees(tail):
    f = NormalizedSeries.from_tail(tail, 8)
    back = invert_series(invert_series(f))
    assert np.max(np.abs(back.coeffs[2:5] - f.coeffs[2:5])) < 1e-9


@settings(max_examples=80, deadline=None)
@given(st.lists(complex_unit, min_size=5, max_size=5))
def test_inverse_transfer_coefficients(tail):
    f = NormalizedSeries.from_tail(tail, 6)
    c2, c3 = inverse_transfer_coeffs(f)
    a2, a3 = f[2], f[3]
    assert abs(c2 + a2) < 1e-10
    assert abs(c3 - (3 * a2 * a2 - 2 * a3)) < 1e-10


def test_inverse_transfer_examples():
    assert inverse_transfer_coeffs(NormalizedSeries.identity(4)) == (0, 0)
    c2, c3 = inverse_transfer_coeffs(GEOMETRIC)
    assert abs(c2 + 1) < 1e-14 and abs(c3 - 1) < 1e-14
    # direct: g = w/(1+w), w g'/g - 1 = -w/(1+w) = -w + w^2 - ...
    c2, c3 = inverse_transfer_coeffs(extremal_f2(SectorAlpha(2.0), 8))
    assert abs(c2) < 1e-15 and abs(c3 + 1) < 1e-14
    with pytest.raises(CapacityError):
        inverse_transfer_coeffs(NormalizedSeries([0, 1, 1]))


def test_kernel_check_trips_on_wrong_closed_form(monkeypatch):
    import fekete_szego.transforms as tr
    monkeypatch.setattr(tr, "revert", lambda f: NormalizedSeries(f.coeffs))
    with pytest.raises(tr.SeriesKernelError):
        tr.invert_series(GEOMETRIC)
