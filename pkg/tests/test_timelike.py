from fractions import Fraction
from math import pi, sqrt

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bour import catalog, diffgeo, timelike
from bour.errors import BranchDomain, DegenerateNormal, ExcludedExponent, SingularPoint
from bour.lorentz import Signature, inner
from bour.timelike import (
    NullData,
    conjugate_immersion,
    magid_immersion,
    null_residual,
    null_residual_v,
    omega,
    psi,
)

TIMELIKE = [e for e in catalog.entries() if e.family == catalog.TIMELIKE]
B3 = NullData.bour(3)


def test_magid_examples():
    np.testing.assert_allclose(magid_immersion(B3, 1, 1), [0, 0.5, 4 / 3], atol=1e-15)
    np.testing.assert_array_equal(magid_immersion(B3, 0, 0), [0, 0, 0])
    np.testing.assert_allclose(magid_immersion(B3, 1, 0), [-0.75, 0.25, 2 / 3], atol=1e-15)


def test_conjugate_examples():
    np.testing.assert_allclose(conjugate_immersion(B3, 1, 1), [-1.5, 0, 0], atol=1e-15)
    np.testing.assert_allclose(conjugate_immersion(B3, 0.7, 0), magid_immersion(B3, 0.7, 0), atol=1e-15)


@given(st.sampled_from([2, 3, 4, 5, -2]), st.floats(-2, 2), st.floats(-2, 2))
def test_conjugate_relation(m, u, v):
    d = NullData.bour(m)
    if m < 0:
        u, v = u + 2.5, v + 2.5  # keep away from the pole
    x, xs = magid_immersion(d, u, v), conjugate_immersion(d, u, v)
    scale = 1 + np.abs(x).max()
    assert np.abs(x + xs - 2 * omega(d, u)).max() <= 1e-14 * scale
    assert np.abs(x - xs - 2 * psi(d, v)).max() <= 1e-14 * scale


def test_null_data_rules():
    with pytest.raises(ExcludedExponent):
        NullData.bour(1)
    with pytest.raises(BranchDomain):
        magid_immersion(NullData.bour(Fraction(5, 2)), -0.5, 0.5)
    assert NullData(1, 2).is_bour is False
    with pytest.raises(ValueError):
        NullData(1, 2).m


def test_null_residual_examples():
    assert null_residual(B3, 1.0) == 0
    assert abs(null_residual(B3, 0.37)) < 1e-14
    assert abs(null_residual(NullData.bour(4), 2.0)) < 1e-12


@pytest.mark.parametrize("entry", TIMELIKE, ids=lambda e: e.label)
def test_null_residual_random(entry):
    d = NullData.bour(entry.m)
    rng = np.random.default_rng(7)
    w = rng.uniform(-1, 1, 100)
    phi_scale = 1 + np.abs(timelike.phi(d, w)).max(axis=-1) ** 2
    assert np.max(np.abs(null_residual(d, w)) / phi_scale) < 1e-12
    assert np.max(np.abs(null_residual_v(d, w)) / phi_scale) < 1e-12


def test_first_form_examples():
    E, F, G = timelike.timelike_first_form(3, 1.0, pi / 4)
    assert E == pytest.approx(2.25)
    assert F == pytest.approx(0, abs=1e-15)
    assert G == pytest.approx(-2.25)
    assert timelike.timelike_det_first(3, 1.0, pi / 4) == pytest.approx(-5.0625)
    assert timelike.timelike_det_first(3, 1.0, 0.0) == 0


def test_gauss_map_examples():
    e0 = timelike.timelike_gauss_map(0.0, 0.4)
    np.testing.assert_allclose(e0, [0, 0, -1], atol=1e-15)
    assert inner(e0, e0, Signature.MPP) == 1
    e = timelike.timelike_gauss_map(1.0, pi / 4)
    np.testing.assert_allclose(e, [0, 2 * sqrt(2) / 3, -1 / 3], atol=1e-15)
    assert inner(e, e, Signature.MPP) == pytest.approx(1, abs=1e-15)
    f = timelike.null_forms(3, 1.0, 1.0)
    np.testing.assert_allclose(f["gauss"], [0, 1, 0], atol=1e-15)
    with pytest.raises(SingularPoint):
        timelike.timelike_gauss_map(sqrt(2), -pi / 4)


def test_second_form_examples():
    L, M, N = timelike.timelike_second_form(3, 1.0, pi / 4)
    assert L == pytest.approx(-sqrt(2))
    assert M == pytest.approx(0, abs=1e-15)
    assert N == pytest.approx(-sqrt(2))
    # the typeset determinant has the opposite sign of LN - M^2
    assert L * N - M * M == pytest.approx(2)
    assert timelike.timelike_det_second(3, 1.0, pi / 4) == pytest.approx(2)
    assert timelike.timelike_det_second(3, 1.0, pi / 4, printed=True) == pytest.approx(-2)
    f = timelike.null_forms(3, 1.0, 1.0)
    assert (f["L"], f["M"], f["N"]) == (-2, 0, -2)
    assert f["L"] * f["N"] - f["M"] ** 2 == 4


def test_curvature_examples():
    f = timelike.null_forms(3, 1.0, 1.0)
    assert f["K"] == pytest.approx(-0.0625, abs=1e-15)
    assert f["F"] == 8
    K, H = timelike.timelike_curvatures(3, 1.0, pi / 4)
    Kp, _ = timelike.timelike_curvatures(3, 1.0, pi / 4, printed=True)
    assert abs(Kp) == pytest.approx(1 / (0.5 * 1.5**4))
    assert K == pytest.approx(-Kp)
    assert H == 0
    with pytest.raises(SingularPoint):
        timelike.timelike_curvatures(3, 1.0, 0.0)


@given(st.sampled_from([2, 3, 4, 5]), st.floats(0.1, 2), st.floats(0.05, 1.5))
def test_closed_forms_consistent(m, r, theta):
    sc = np.sin(theta) * np.cos(theta)
    if abs(sc) < 1e-3 or abs(1 + r * r * sc) < 1e-3:
        return
    E, F, G = timelike.timelike_first_form(m, r, theta)
    L, M, N = timelike.timelike_second_form(m, r, theta)
    det1 = E * G - F * F
    assert det1 == pytest.approx(timelike.timelike_det_first(m, r, theta), rel=1e-9)
    assert L * N - M * M == pytest.approx(timelike.timelike_det_second(m, r, theta), rel=1e-9, abs=1e-12)
    K, _ = timelike.timelike_curvatures(m, r, theta)
    assert K == pytest.approx((L * N - M * M) / det1, rel=1e-8)
    trace = E * N - 2 * F * M + G * L
    assert abs(trace) <= 1e-10 * (abs(E * N) + abs(F * M) + abs(G * L))


def test_catalog_domains():
    cat = {e.label: e for e in timelike.timelike_catalog()}
    assert len(cat) == 6
    want = {
        "tB_3": (3, (-1, 1), (0, pi)),
        "tB_2": (2, (-2, 2), (-pi / 2, pi / 2)),
        "tB_2-wide": (2, (-3, 3), (-pi / 2, pi / 2)),
        "tB_4": (4, (-1, 1), (0, pi)),
        "tB_4-quadrant": (4, (-2, 2), (0, pi / 2)),
        "tB_5": (5, (-0.003, 0.003), (0, pi)),
    }
    for label, (m, rr, tr) in want.items():
        e = cat[label]
        assert (e.m, tuple(e.r_range), tuple(e.theta_range)) == (m, rr, tr), label
    r, t = 1.3, 0.4
    _, _, z = cat["tB_2"].printed(r, t)
    assert z == pytest.approx(r * r)


def test_printed_polar_map_of_value_3():
    e = catalog.lookup("tB_3")
    r = np.linspace(-1, 1, 21)[:, None]
    t = np.linspace(0, pi, 37)[None, :]
    printed = np.stack(np.broadcast_arrays(*e.printed(r, t)), axis=-1)
    np.testing.assert_allclose(printed, magid_immersion(B3, r * np.cos(t), r * np.sin(t)), atol=1e-14)


def interior_points(entry, n, cartesian=False):
    dom = catalog.sampling_domain(entry, cartesian)
    rng = np.random.default_rng(11)
    (s0, s1), (t0, t1) = dom.s_range, dom.t_range
    out = []
    while len(out) < n:
        s = rng.uniform(s0 + 0.01 * (s1 - s0), s1 - 0.01 * (s1 - s0))
        t = rng.uniform(t0 + 0.01 * (t1 - t0), t1 - 0.01 * (t1 - t0))
        if not catalog.singular_mask(entry, s, t, cartesian, verification=True):
            out.append((s, t))
    return out


@pytest.mark.parametrize("entry", TIMELIKE, ids=lambda e: e.label)
def test_oracle_equivalence(entry):
    p = catalog.patch(entry)
    checked = 0
    for s, t in interior_points(entry, 40):
        try:
            num = diffgeo.fundamental_forms(p, s, t)
        except DegenerateNormal:
            # high powers of sin cos make det I tiny next to the axes
            continue
        checked += 1
        ref = catalog.closed_forms(entry, s, t)
        scale1 = max(abs(ref["E"]), abs(ref["F"]), abs(ref["G"]))
        for k in "EFG":
            assert abs(getattr(num, k) - ref[k]) <= 1e-5 * scale1, (k, s, t)
        sign = float(np.sign(np.dot(num.gauss, ref["gauss"])))
        scale2 = max(abs(ref["L"]), abs(ref["M"]), abs(ref["N"]))
        for k in "LMN":
            assert abs(getattr(num, k) - sign * ref[k]) <= 1e-5 * scale2, (k, s, t)
        assert num.det_first < 0
        assert abs(num.H) < 1e-6
        assert num.K == pytest.approx(ref["K"], rel=1e-4)
        assert num.K * ref["K_printed"] < 0
        assert abs(inner(num.gauss, num.gauss, Signature.MPP) - 1) < 1e-9
    assert checked >= 30


def test_null_chart_oracle():
    entry = catalog.lookup("tB_3")
    p = catalog.patch(entry, cartesian=True)
    num = diffgeo.fundamental_forms(p, 1.0 - 1e-3, 1.0 - 1e-3)
    ref = catalog.closed_forms(entry, 1.0 - 1e-3, 1.0 - 1e-3, cartesian=True)
    assert num.K == pytest.approx(ref["K"], rel=1e-6)
    for s, t in interior_points(entry, 30, cartesian=True):
        num = diffgeo.fundamental_forms(p, s, t)
        ref = catalog.closed_forms(entry, s, t, cartesian=True)
        assert num.det_first < 0
        assert abs(num.H) < 1e-6
        assert num.K == pytest.approx(ref["K"], rel=1e-4)


def test_conjugate_is_minimal_at_random_points():
    p = catalog.conjugate_patch(cartesian=True)
    rng = np.random.default_rng(3)
    for u, v in rng.uniform(-0.95, 0.95, (30, 2)):
        if timelike.null_singular_mask(u, v, 1e-3):
            continue
        f = diffgeo.fundamental_forms(p, u, v)
        assert abs(f.H) < 1e-6
        assert f.det_first < 0


def test_conjugate_needs_timelike_entry():
    with pytest.raises(ValueError):
        catalog.conjugate_patch(catalog.lookup("B_3"))
