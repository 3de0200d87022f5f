from fractions import Fraction
from math import pi

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bour import catalog, meshio
from bour.errors import EmptyRealizableDomain, IoFailure
from bour.maximal import BourParams
from bour.meshio import CellFlag


def b3_half_disc():
    e = catalog.lookup("B_3")
    return meshio.sample(e, 2, 2, domain=((0.0, 1.0), (0.0, pi)))


def test_sample_two_by_two_corners():
    mesh = b3_half_disc()
    v = mesh.vertices.reshape(-1, 3)
    assert np.any(np.all(np.abs(v) < 1e-15, axis=1))
    np.testing.assert_allclose(mesh.vertices[1, 0], [0.75, 0, 2 / 3], atol=1e-15)
    # r = 0 and r = 1 are singular, so the single cell is flagged
    assert mesh.n_flagged_cells == 1
    assert mesh.vertex_flags[0, 0] is CellFlag.SINGULAR
    assert np.isnan(mesh.k_field[1, 0])


def test_obj_small_grid(tmp_path):
    mesh = b3_half_disc()
    path = tmp_path / "b3.obj"
    meshio.export_obj(mesh, path)
    lines = path.read_text().splitlines()
    vlines = [ln for ln in lines if ln.startswith("v ")]
    flines = [ln for ln in lines if ln.startswith("f ")]
    assert len(vlines) == 4 and len(flines) <= 1
    assert "v 0.750000000 0.000000000 0.666666667" in vlines


def test_obj_faces_when_cells_ok(tmp_path):
    mesh = meshio.sample(catalog.lookup("B_3"), 2, 2, domain=((0.2, 0.8), (0.1, 0.3)))
    text = meshio.obj_text(mesh)
    assert text.splitlines()[-1] == "f 1 3 4 2"
    assert mesh.k_range() is not None


def test_all_flagged_mesh_keeps_vertices():
    mesh = b3_half_disc()
    text = meshio.obj_text(mesh)
    assert text.count("\nv ") == 4
    assert "\nf " not in text
    assert mesh.k_range() is None


def test_fmt_rules():
    assert meshio.fmt(0.75) == "0.750000000"
    assert meshio.fmt(0) == "0.000000000"
    assert meshio.fmt(-0.0) == "0.000000000"
    assert meshio.fmt(2 / 3) == "0.666666667"
    assert meshio.fmt(1.5e-11) == "1.50000000e-11"
    assert meshio.fmt(3e9) == "3.00000000e+09"
    assert meshio.fmt(float("nan")) == "nan"
    assert meshio.fmt(float("inf")) == "nan"


@given(st.floats(-1e12, 1e12, allow_nan=False) | st.floats(-1e-3, 1e-3))
def test_fmt_round_trip(x):
    y = float(meshio.fmt(x))
    assert abs(y - x) <= 1e-8 * max(1.0, abs(x)) if abs(x) >= 0.1 else abs(y - x) <= 1e-8 * abs(x) + 1e-300


def test_csv_schema_and_values(tmp_path):
    e = catalog.lookup("B_3")
    mesh = meshio.sample(e, 3, 2, domain=((0.0, 1.0), (0.0, 0.5)))
    path = tmp_path / "b3.csv"
    meshio.export_csv(mesh, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "s,t,x,y,z,K,flag"
    assert len(lines) == 1 + 6
    row = dict(zip(lines[0].split(","), lines[3].split(",")))  # s = 0.5, t = 0
    assert row["s"] == "0.500000000"
    assert float(row["K"]) == pytest.approx(50.5679012, rel=1e-8)
    assert row["K"] == "50.567901235"
    first = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert first["K"] == "nan" and first["flag"] == "singular"


@pytest.mark.parametrize("label", ["B_3", "tB_5", "B_1/2", "tB_4"])
def test_csv_round_trip(tmp_path, label):
    mesh = meshio.sample(catalog.lookup(label), 9, 7)
    path = tmp_path / "m.csv"
    meshio.export_csv(mesh, path)
    params, verts, K, flags = meshio.read_csv(path)
    ref = mesh.vertices.reshape(-1, 3)
    assert np.max(np.abs(verts - ref)) < 1e-8
    # tiny coordinates keep their relative accuracy too
    big = np.abs(ref) > 0
    assert np.max(np.abs(verts[big] - ref[big]) / np.abs(ref[big])) < 1e-8
    assert flags == [f.value for f in mesh.vertex_flags.ravel()]


def test_fractional_clipping():
    mesh = meshio.sample(catalog.lookup("B_1/2"), 5, 4)
    assert mesh.meta["clipped"]
    assert "clipped" in mesh.meta["note"]
    s = mesh.params[..., 0]
    assert s.min() > 0 and s.max() == pytest.approx(1.0)
    assert np.all(np.isfinite(mesh.vertices))


def test_timelike_fractional_clipping():
    e = BourParams("tB_5/2", "timelike", Fraction(5, 2), (-1, 1), (0, pi), "")
    mesh = meshio.sample(e, 6, 6)
    assert mesh.meta["clipped"]
    t = mesh.params[..., 1]
    assert t.min() >= 0 and t.max() <= pi / 2


def test_empty_realizable_domain():
    e = BourParams("neg", "spacelike", Fraction(1, 2), (-1, -0.5), (0, pi), "")
    with pytest.raises(EmptyRealizableDomain):
        meshio.sample(e, 4, 4)


def test_pole_at_origin_is_skipped():
    e = catalog.find("spacelike", -2)
    mesh = meshio.sample(e, 6, 6)
    assert mesh.params[..., 0].min() > 0
    assert np.all(np.isfinite(mesh.vertices))


def test_tiny_timelike_surface():
    mesh = meshio.sample(catalog.lookup("tB_5"), 16, 16)
    assert np.all(np.isfinite(mesh.vertices))
    assert np.abs(mesh.vertices).max() <= 0.003**4 / 4 * 1.01
    ok = np.isfinite(mesh.k_field)
    sc = np.sin(mesh.params[..., 1]) * np.cos(mesh.params[..., 1])
    # K = -(sin cos)^(-3) r^(-6) / (1 + r^2 sin cos)^4 for m = 5
    assert ok.any()
    np.testing.assert_array_equal(np.sign(mesh.k_field[ok]), -np.sign(sc[ok]))


def test_k_finite_on_ok_cells():
    mesh = meshio.sample(catalog.lookup("tB_4"), 32, 32)
    ns, nt = mesh.dims
    for i, j in zip(*np.nonzero(mesh.ok_cells)):
        assert np.all(np.isfinite(mesh.k_field[i:i + 2, j:j + 2]))
    assert mesh.n_flagged_cells > 0


def test_cells_across_singular_curves_are_flagged():
    mesh = meshio.sample(catalog.lookup("B_3"), 10, 6)
    r = mesh.params[..., 0]
    ok = mesh.ok_cells
    crosses = (r[:-1, :-1] < 1) & (r[1:, :-1] > 1)
    assert not np.any(ok & crosses)


def test_grid_validation():
    with pytest.raises(ValueError):
        meshio.sample(catalog.lookup("B_3"), 1, 5)


def test_mesh_invariant_rejects_nonfinite():
    v = np.zeros((2, 2, 3))
    v[0, 0, 0] = np.nan
    with pytest.raises(ValueError):
        meshio.from_points(v)


def test_svg_projection(tmp_path):
    mesh = meshio.sample(catalog.lookup("B_3"), 12, 9)
    path = tmp_path / "xy.svg"
    meshio.export_svg_projection(mesh, "xy", path)
    text = path.read_text()
    assert text.startswith("<?xml")
    assert text.count("<polyline") == 12 + 9
    with pytest.raises(ValueError):
        meshio.svg_text(mesh, "zz")


def test_svg_drops_the_third_axis():
    v = np.zeros((2, 2, 3))
    v[..., 0] = [[0, 0], [1, 1]]
    v[..., 1] = [[0, 1], [0, 1]]
    a = meshio.from_points(v)
    v2 = v.copy()
    v2[..., 2] = np.random.default_rng(0).normal(size=(2, 2))
    assert meshio.svg_text(a, "xy") == meshio.svg_text(meshio.from_points(v2), "xy")


def test_svg_fits_canvas():
    mesh = meshio.sample(catalog.lookup("Enneper-wide"), 20, 20)
    text = meshio.svg_text(mesh, "xz")
    pts = []
    for line in text.splitlines():
        if "<polyline" in line:
            coords = line.split('"')[1].split()
            pts += [tuple(map(float, c.split(","))) for c in coords]
    pts = np.array(pts)
    lo, hi = 800 * 0.05, 800 * 0.95
    assert pts.min() >= lo - 1e-6 and pts.max() <= hi + 1e-6
    # the longer side spans the full inner box
    span = pts.max(axis=0) - pts.min(axis=0)
    assert span.max() == pytest.approx(hi - lo, abs=1e-3)


def test_svg_single_row():
    v = np.stack([np.linspace(0, 1, 5), np.zeros(5), np.zeros(5)], axis=-1)[None]
    text = meshio.svg_text(meshio.from_points(v), "xy")
    assert text.count("<polyline") == 1


def test_export_determinism(tmp_path):
    mesh1 = meshio.sample(catalog.lookup("B_4"), 16, 16)
    mesh2 = meshio.sample(catalog.lookup("B_4"), 16, 16)
    for fn, ext in [(meshio.export_obj, "obj"), (meshio.export_csv, "csv")]:
        fn(mesh1, tmp_path / f"a.{ext}")
        fn(mesh2, tmp_path / f"b.{ext}")
        assert (tmp_path / f"a.{ext}").read_bytes() == (tmp_path / f"b.{ext}").read_bytes()


def test_io_failure(tmp_path):
    mesh = b3_half_disc()
    with pytest.raises(IoFailure):
        meshio.export_obj(mesh, tmp_path / "missing" / "x.obj")
    with pytest.raises(OSError):
        meshio.export_csv(mesh, tmp_path / "missing" / "x.csv")
