from math import pi

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bour import catalog, maximal, timelike
from bour.diffgeo import (
    FormSample,
    OracleConfig,
    SurfacePatch,
    curvatures_numeric,
    fundamental_forms,
    interior_grid,
    jacobian,
    scan,
)
from bour.errors import DegenerateNormal, DomainEdge
from bour.lorentz import CausalCharacter, Signature
from bour.weierstrass import b3_cartesian_xyz
from bour.weierstrass import bour_xyz as maximal_xyz

FLOAT = OracleConfig(precision=53)
BOTH = [OracleConfig(), FLOAT]


def plane(s, t, xp):
    return s, t, 0 * s


def hyperbolic_plane(s, t, xp):
    # upper sheet of x^2 + y^2 - z^2 = -1 as a graph
    return s, t, xp.sqrt(1 + s * s + t * t)


def de_sitter_sheet(s, t, xp):
    # x^2 + y^2 - z^2 = 1, a timelike surface
    w = xp.sqrt(1 + t * t)
    return w * xp.cos(s), w * xp.sin(s), t


def null_b3(u, v, xp):
    return timelike.magid_xyz(3, 3, u, v, xp)


BIG = ((-5.0, 5.0), (-5.0, 5.0))


@pytest.mark.parametrize("cfg", BOTH, ids=["mpfr", "float"])
def test_jacobian_examples(cfg):
    p = SurfacePatch(plane, BIG, Signature.PPM)
    xs, xt = jacobian(p, 0.3, -0.7, cfg)
    np.testing.assert_allclose(xs, [1, 0, 0], atol=1e-12)
    np.testing.assert_allclose(xt, [0, 1, 0], atol=1e-12)
    xu, _ = jacobian(SurfacePatch(null_b3, BIG, Signature.MPP), 1.0, 1.0, cfg)
    np.testing.assert_allclose(xu, [-2, 0, 2], atol=1e-8)
    xu, _ = jacobian(SurfacePatch(b3_cartesian_xyz, BIG, Signature.PPM), 1.0, 0.0, cfg)
    np.testing.assert_allclose(xu, [2, 0, 2], atol=1e-8)


@pytest.mark.parametrize("cfg", BOTH, ids=["mpfr", "float"])
def test_stencil_leaving_domain(cfg):
    p = SurfacePatch(plane, ((0.0, 1.0), (0.0, 1.0)), Signature.PPM)
    with pytest.raises(DomainEdge):
        jacobian(p, 1.0, 0.5, cfg)
    with pytest.raises(DomainEdge):
        fundamental_forms(p, 0.5, 0.0, cfg)


@pytest.mark.parametrize("cfg", BOTH, ids=["mpfr", "float"])
def test_lightlike_tangent_plane(cfg):
    p = SurfacePatch(lambda s, t, xp: (s, t, t), BIG, Signature.PPM)
    with pytest.raises(DegenerateNormal):
        fundamental_forms(p, 0.1, 0.2, cfg)


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(step=0)
    with pytest.raises(ValueError):
        OracleConfig(degeneracy_tol=-1)
    with pytest.raises(ValueError):
        OracleConfig(precision=24)


@pytest.mark.parametrize("cfg", BOTH, ids=["mpfr", "float"])
def test_fundamental_forms_examples(cfg):
    b3 = catalog.patch(catalog.lookup("B_3"))
    f = fundamental_forms(b3, 0.5, 0.3, cfg)
    E, F, G = maximal.first_form(3, 0.5)
    assert f.E == pytest.approx(E, rel=1e-5)
    assert f.G == pytest.approx(G, rel=1e-5)
    assert abs(f.F) < 1e-5 * E
    assert f.character is CausalCharacter.SPACELIKE
    t = fundamental_forms(SurfacePatch(null_b3, BIG, Signature.MPP), 1.0, 1.0, cfg)
    assert t.F == pytest.approx(8, abs=1e-5)
    assert t.character is CausalCharacter.TIMELIKE
    flat = fundamental_forms(SurfacePatch(plane, BIG, Signature.PPM), 0.2, 0.4, cfg)
    assert max(abs(flat.L), abs(flat.M), abs(flat.N)) < 1e-9
    assert flat.K == 0 and flat.H == 0


def test_curvature_anchors_from_closed_forms():
    E, F, G = maximal.first_form(3, 0.5)
    L, M, N = maximal.second_form(3, 0.5, 0.2)
    sample = FormSample(E, F, G, L, M, N, maximal.gauss_map(0.5, 0.2), 0, 0, CausalCharacter.SPACELIKE)
    K, H = curvatures_numeric(sample, Signature.PPM)
    assert K == pytest.approx(50.5679012, rel=1e-8)
    assert abs(H) < 1e-12
    f = timelike.null_forms(3, 1.0, 1.0)
    sample = FormSample(f["E"], f["F"], f["G"], f["L"], f["M"], f["N"], f["gauss"], 0, 0, CausalCharacter.TIMELIKE)
    K, H = curvatures_numeric(sample, Signature.MPP)
    assert K == pytest.approx(-0.0625, abs=1e-15)
    assert H == 0
    with pytest.raises(DegenerateNormal):
        curvatures_numeric(FormSample(1, 1, 1, 0, 0, 0, None, 0, 0, CausalCharacter.LIGHTLIKE))


@pytest.mark.parametrize("cfg", BOTH, ids=["mpfr", "float"])
def test_curvature_anchors_from_oracle(cfg):
    b3 = SurfacePatch(lambda r, t, xp: maximal_xyz(3, r, t, xp), BIG, Signature.PPM)
    f = fundamental_forms(b3, 0.5, 0.0, cfg)
    assert f.K == pytest.approx(50.5679012, rel=1e-4)
    g = fundamental_forms(SurfacePatch(null_b3, BIG, Signature.MPP), 1.0, 1.0, cfg)
    assert g.K == pytest.approx(-0.0625, abs=1e-6)


@settings(max_examples=25, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2))
def test_self_test_hyperbolic_plane(s, t):
    p = SurfacePatch(hyperbolic_plane, BIG, Signature.PPM)
    f = fundamental_forms(p, s, t)
    assert f.det_first > 0
    assert f.K == pytest.approx(-1, abs=1e-4)
    # umbilic: II = -I up to the normal's orientation, so H = +-1
    assert abs(f.H) == pytest.approx(1, abs=1e-4)


@settings(max_examples=25, deadline=None)
@given(st.floats(-3, 3), st.floats(-2, 2))
def test_self_test_de_sitter_sheet(s, t):
    p = SurfacePatch(de_sitter_sheet, BIG, Signature.PPM)
    f = fundamental_forms(p, s, t)
    assert f.det_first < 0
    assert f.K == pytest.approx(1, abs=1e-4)


def test_self_test_float_path():
    f = fundamental_forms(SurfacePatch(hyperbolic_plane, BIG, Signature.PPM), 0.7, -0.3, FLOAT)
    assert f.K == pytest.approx(-1, abs=1e-4)


def swapped(patch):
    (s0, s1), (t0, t1) = patch.domain
    return SurfacePatch(lambda s, t, xp: patch.func(t, s, xp), ((t0, t1), (s0, s1)), patch.sig)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["B_3", "Enneper", "B_4", "tB_3", "tB_4"]), st.floats(0.1, 0.9), st.floats(0.1, 1.4))
def test_swap_invariance(label, r, theta):
    entry = catalog.lookup(label)
    if catalog.singular_mask(entry, r, theta, verification=True):
        return
    p = catalog.patch(entry)
    a = fundamental_forms(p, r, theta)
    b = fundamental_forms(swapped(p), theta, r)
    assert b.K == pytest.approx(a.K, rel=1e-9)
    assert b.H == pytest.approx(a.H, abs=1e-12 * (1 + abs(a.K)))
    # the normal flips with the orientation of the chart
    np.testing.assert_allclose(b.gauss, -a.gauss, atol=1e-9)


@pytest.mark.parametrize("label", ["B_3", "tB_4"])
def test_step_robustness(label):
    entry = catalog.lookup(label)
    p = catalog.patch(entry)
    for s, t in [(0.5, 0.3), (0.7, 1.1)]:
        ref = catalog.closed_forms(entry, s, t)
        a = fundamental_forms(p, s, t, OracleConfig(step=1e-3, precision=53))
        b = fundamental_forms(p, s, t, OracleConfig(step=5e-4, precision=53))
        for k in "EFG":
            residual = abs(getattr(a, k) - ref[k])
            floor = 1e-12 * max(abs(ref["E"]), abs(ref["G"]))
            assert abs(getattr(b, k) - getattr(a, k)) < 4 * residual + floor


def test_interior_grid_is_cell_centred():
    S, T = interior_grid(((0, 1), (0, 2)), 4, 2)
    np.testing.assert_allclose(S[:, 0], [0.125, 0.375, 0.625, 0.875])
    np.testing.assert_allclose(T[0], [0.5, 1.5])
    with pytest.raises(ValueError):
        interior_grid(((0, 1), (0, 1)), 1, 4)


def test_scan_timelike_cartesian_unit_square():
    p = SurfacePatch(null_b3, ((0.1, 1.0), (0.1, 1.0)), Signature.MPP)
    rep = scan(p, (64, 64))
    assert rep.n_ok == 64 * 64
    assert rep.det_negative == rep.n_ok
    assert rep.max_abs_H < 1e-6


def test_scan_flags_band_at_unit_radius():
    entry = catalog.lookup("B_3")
    rep = scan(catalog.patch(entry), (32, 16))
    r = rep.s
    band = np.abs(np.abs(r) - 1) < catalog.SPACELIKE_BAND
    assert band.any()
    assert np.all(rep.excluded[band]) and not np.any(rep.ok[band])
    assert np.all(np.isnan(rep.H[band]))
    assert rep.det_sign_uniform and rep.det_positive == rep.n_ok
    assert rep.min_neighbour_dot() > 0


def test_scan_records_failures_without_raising():
    # lightlike along s = 0: x = (s, t, |s| t ... ) replaced by a cone-like map
    def cone(s, t, xp):
        return s * xp.cos(t), s * xp.sin(t), s

    rep = scan(SurfacePatch(cone, ((0.1, 1.0), (0.0, 2 * pi)), Signature.PPM), (8, 8))
    assert rep.n_ok == 0
    assert rep.failed.sum() == 64
    assert np.isnan(rep.max_abs_H)


@pytest.mark.parametrize("cfg", BOTH, ids=["mpfr", "float"])
def test_scan_is_deterministic(cfg):
    p = catalog.patch(catalog.lookup("tB_3"))
    a = scan(p, (12, 12), cfg)
    b = scan(p, (12, 12), cfg)
    for k in "EFGLMNKH":
        np.testing.assert_array_equal(getattr(a, k), getattr(b, k))


def test_scan_float_path_agrees_with_mpfr():
    p = catalog.patch(catalog.lookup("Enneper"))
    a = scan(p, (16, 16))
    b = scan(p, (16, 16), FLOAT)
    np.testing.assert_array_equal(a.ok, b.ok)
    np.testing.assert_allclose(b.K[b.ok], a.K[a.ok], rtol=1e-5)
    assert b.max_abs_H < 1e-4


def test_scan_orientation_within_regions():
    for label in ["B_3", "Enneper", "tB_3", "tB_2"]:
        rep = scan(catalog.patch(catalog.lookup(label)), (24, 24))
        assert rep.min_neighbour_dot() > 0, label
        assert all(len(v) == 1 for v in rep.region_signs().values()), label


def test_float_scan_edge_failures_are_per_point():
    # wide t range: the float second-difference stencil is wider than the first cells
    p = SurfacePatch(hyperbolic_plane, ((0.0, 2.0), (-10.0, 10.0)), Signature.PPM)
    rep = scan(p, (24, 24), FLOAT)
    assert 0 < rep.failed.sum() < 24 * 24
    assert rep.failed[0, 0] and not rep.failed[12, 12]
    np.testing.assert_allclose(rep.K[rep.ok], -1, atol=1e-3)
