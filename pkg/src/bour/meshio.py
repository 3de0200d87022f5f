"""Grid sampling of catalog surfaces and OBJ / CSV / SVG export.

Meshes are rectangular parameter grids.  Vertices are always emitted;
faces of flagged cells are dropped.  Numbers are written with at least
nine significant digits so an exported file reproduces the vertices to
well under 1e-8.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field

import numpy as np

from . import catalog
from ._backend import NUMPY, is_integral
from .errors import EmptyRealizableDomain, IoFailure, SingularPoint
from .maximal import BourParams

SVG_SIZE = 800.0
SVG_MARGIN = 0.05


class CellFlag(enum.Enum):
    OK = "ok"
    SINGULAR = "singular"
    OUT_OF_BRANCH = "out_of_branch"


@dataclass
class MeshGrid:
    """Sampled surface.  ``params`` is (ns, nt, 2), ``vertices`` (ns, nt, 3),
    ``k_field`` (ns, nt) with NaN on singular vertices, ``vertex_flags``
    (ns, nt) and ``cell_flags`` (ns-1, nt-1) hold :class:`CellFlag` values."""

    params: np.ndarray
    vertices: np.ndarray
    k_field: np.ndarray
    vertex_flags: np.ndarray
    cell_flags: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.params.shape[:2] != self.vertices.shape[:2]:
            raise ValueError("params and vertices must share grid dimensions")
        if not np.all(np.isfinite(self.vertices)):
            raise ValueError("mesh vertices must be finite")

    @property
    def dims(self) -> tuple[int, int]:
        return self.vertices.shape[0], self.vertices.shape[1]

    @property
    def ok_cells(self) -> np.ndarray:
        return self.cell_flags == CellFlag.OK

    @property
    def n_flagged_cells(self) -> int:
        return int((~self.ok_cells).sum())

    def k_range(self):
        """(min, max) of K over vertices of ok cells, or None."""
        ns, nt = self.dims
        used = np.zeros((ns, nt), dtype=bool)
        ok = self.ok_cells
        for di in (0, 1):
            for dj in (0, 1):
                used[di:ns - 1 + di, dj:nt - 1 + dj] |= ok
        k = self.k_field[used & np.isfinite(self.k_field)]
        if k.size == 0:
            return None
        return float(k.min()), float(k.max())


# -- sampling -------------------------------------------------------------------------


def _pole_at_origin(entry: BourParams) -> bool:
    return is_integral(entry.m) and entry.m < 1


def _axis(lo, hi, n, open_left=False, open_both=False):
    if open_both:
        return np.linspace(lo, hi, n + 2)[1:-1]
    if open_left:
        return np.linspace(lo, hi, n + 1)[1:]
    return np.linspace(lo, hi, n)


def sample(entry: BourParams, ns: int, nt: int, cartesian: bool = False, domain=None) -> MeshGrid:
    """Uniform grid over the entry's realizable domain (or ``domain``).

    The grid includes both endpoints, except that an edge where the
    surface is not realizable (r = 0 for fractional values) is left open.
    Vertices come from the closed-form maps, K from the closed-form
    curvature; vertices on singular loci get K = NaN and flag singular.
    """
    if ns < 2 or nt < 2:
        raise ValueError("grid dimensions must be >= 2")
    dom = catalog.sampling_domain(entry, cartesian)
    s_range, t_range = (dom.s_range, dom.t_range) if domain is None else domain
    open_left = dom.open_left and domain is None
    open_t = False
    clipped = dom.clipped and domain is None
    note = dom.note if domain is None else "custom domain"
    if _pole_at_origin(entry) and domain is None and not cartesian:
        clipped = True
        if s_range[1] <= 0:
            raise EmptyRealizableDomain(f"{entry.label}: no r > 0 available")
        s_range, open_left = (max(s_range[0], 0.0), s_range[1]), True
        note = "r clipped to r > 0 (pole at the origin)"
        if entry.family == catalog.TIMELIKE:
            t_range, open_t = (max(t_range[0], 0.0), min(t_range[1], np.pi / 2)), True
            note += ", theta clipped to the open first quadrant"
    s = _axis(*s_range, ns, open_left=open_left)
    t = _axis(*t_range, nt, open_both=open_t)
    if s.size == 0 or t.size == 0:
        raise EmptyRealizableDomain(f"{entry.label}: empty realizable grid")
    S, T = np.meshgrid(s, t, indexing="ij")
    cart = cartesian and entry.family == catalog.TIMELIKE
    func = catalog.evaluator(entry, cart)
    with np.errstate(divide="ignore", invalid="ignore"):
        xyz = np.stack(np.broadcast_arrays(*func(S, T, NUMPY)), axis=-1)
        singular = catalog.singular_mask(entry, S, T, cart)
        K = np.where(singular, np.nan, catalog.closed_curvature(entry, cart)(S, T))
    if not np.all(np.isfinite(xyz)):
        raise SingularPoint(f"{entry.label}: closed form is not finite on the sampling grid")
    K = np.where(np.isfinite(K), K, np.nan)
    vflags = np.where(singular | np.isnan(K), CellFlag.SINGULAR, CellFlag.OK)

    bad = vflags == CellFlag.SINGULAR
    region = catalog.region_labels(entry, S, T, cart)
    cell_bad = bad[:-1, :-1] | bad[1:, :-1] | bad[:-1, 1:] | bad[1:, 1:]
    # a singular curve running between the corners also spoils the cell
    r0 = region[:-1, :-1]
    crossed = (region[1:, :-1] != r0) | (region[:-1, 1:] != r0) | (region[1:, 1:] != r0)
    cflags = np.where(cell_bad | crossed, CellFlag.SINGULAR, CellFlag.OK)

    meta = {
        "label": entry.label,
        "family": entry.family,
        "m": str(entry.m),
        "chart": "null" if cart else entry.chart,
        "data": entry.data,
        "s_range": [float(s_range[0]), float(s_range[1])],
        "t_range": [float(t_range[0]), float(t_range[1])],
        "grid": [int(ns), int(nt)],
        "clipped": clipped,
        "note": note,
    }
    return MeshGrid(np.stack([S, T], axis=-1), xyz, K, vflags, cflags, meta)


# -- formatting ------------------------------------------------------------------------


def fmt(x) -> str:
    """Nine or more significant digits; fixed notation for ordinary sizes.

    ``0.75 -> 0.750000000``; magnitudes below 0.1 or from 1e9 up use
    ``%.8e``; non-finite values print as ``nan``.
    """
    x = float(x)
    if not np.isfinite(x):
        return "nan"
    if x == 0:
        return "0.000000000"
    if 0.1 <= abs(x) < 1e9:
        return f"{x:.9f}"
    return f"{x:.8e}"


def _write(path, text: str):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write {os.fspath(path)!r}: {exc.strerror or exc}") from exc


def obj_text(mesh: MeshGrid) -> str:
    ns, nt = mesh.dims
    lines = [f"# {mesh.meta.get('label', 'surface')} {ns}x{nt}"]
    for x, y, z in mesh.vertices.reshape(-1, 3):
        lines.append(f"v {fmt(x)} {fmt(y)} {fmt(z)}")
    ok = mesh.ok_cells
    for i in range(ns - 1):
        for j in range(nt - 1):
            if ok[i, j]:
                a = i * nt + j + 1
                lines.append(f"f {a} {a + nt} {a + nt + 1} {a + 1}")
    return "\n".join(lines) + "\n"


def export_obj(mesh: MeshGrid, path) -> None:
    _write(path, obj_text(mesh))


def csv_text(mesh: MeshGrid) -> str:
    rows = ["s,t,x,y,z,K,flag"]
    params = mesh.params.reshape(-1, 2)
    verts = mesh.vertices.reshape(-1, 3)
    ks = mesh.k_field.ravel()
    flags = mesh.vertex_flags.ravel()
    for (s, t), (x, y, z), k, flag in zip(params, verts, ks, flags):
        rows.append(",".join([fmt(s), fmt(t), fmt(x), fmt(y), fmt(z), fmt(k), flag.value]))
    return "\n".join(rows) + "\n"


def export_csv(mesh: MeshGrid, path) -> None:
    _write(path, csv_text(mesh))


def read_csv(path):
    """Parse an exported CSV back into (params, vertices, K, flags)."""
    data = np.genfromtxt(path, delimiter=",", names=True, dtype=None, encoding="utf-8")
    data = np.atleast_1d(data)
    params = np.stack([data["s"], data["t"]], axis=-1).astype(float)
    verts = np.stack([data["x"], data["y"], data["z"]], axis=-1).astype(float)
    return params, verts, data["K"].astype(float), [str(f) for f in data["flag"]]


PLANES = {"xy": (0, 1), "xz": (0, 2), "yz": (1, 2)}


def svg_text(mesh: MeshGrid, plane: str = "xy") -> str:
    if plane not in PLANES:
        raise ValueError(f"plane must be one of {sorted(PLANES)}, got {plane!r}")
    i, j = PLANES[plane]
    pts = mesh.vertices[..., [i, j]]
    lo = pts.reshape(-1, 2).min(axis=0)
    hi = pts.reshape(-1, 2).max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1]))
    if span <= 0:
        span = 1.0
    inner = SVG_SIZE * (1 - 2 * SVG_MARGIN)
    scale = inner / span
    off = SVG_SIZE * SVG_MARGIN + (inner - scale * (hi - lo)) / 2
    px = off[0] + scale * (pts[..., 0] - lo[0])
    py = SVG_SIZE - (off[1] + scale * (pts[..., 1] - lo[1]))  # svg y runs downward

    def polyline(xs, ys):
        coords = " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(xs, ys))
        return f'  <polyline points="{coords}"/>'

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_SIZE:.0f}" '
        f'height="{SVG_SIZE:.0f}" viewBox="0 0 {SVG_SIZE:.0f} {SVG_SIZE:.0f}">',
        f"  <title>{mesh.meta.get('label', 'surface')} {plane} projection</title>",
        '  <g fill="none" stroke="black" stroke-width="0.5">',
    ]
    ns, nt = mesh.dims
    if nt >= 2:
        lines += [polyline(px[r], py[r]) for r in range(ns)]
    if ns >= 2:
        lines += [polyline(px[:, c], py[:, c]) for c in range(nt)]
    lines += ["  </g>", "</svg>"]
    return "\n".join(lines) + "\n"


def export_svg_projection(mesh: MeshGrid, plane: str, path) -> None:
    """Orthographic wireframe on a coordinate plane, one polyline per grid
    row and column, auto-scaled into the canvas with a 5% margin."""
    _write(path, svg_text(mesh, plane))


def from_points(vertices, params=None, label="surface") -> MeshGrid:
    """Wrap an (ns, nt, 3) vertex array with all-ok flags (no curvature)."""
    v = np.asarray(vertices, dtype=float)
    ns, nt = v.shape[:2]
    if params is None:
        params = np.stack(np.meshgrid(np.arange(ns), np.arange(nt), indexing="ij"), axis=-1).astype(float)
    vflags = np.full((ns, nt), CellFlag.OK, dtype=object)
    cflags = np.full((max(ns - 1, 0), max(nt - 1, 0)), CellFlag.OK, dtype=object)
    return MeshGrid(np.asarray(params, dtype=float), v, np.full((ns, nt), np.nan), vflags, cflags, {"label": label})


__all__ = [
    "CellFlag",
    "MeshGrid",
    "export_csv",
    "export_obj",
    "export_svg_projection",
    "fmt",
    "from_points",
    "read_csv",
    "sample",
]
