"""Command-line frontend: ``bour list | eval | verify | mesh | figure``.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 I/O error.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction

from . import catalog, diffgeo, meshio, verify
from .errors import BourError, IoFailure
from .verify import g9

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
DEFAULT_MESH_GRID = (128, 256)
SHADOW_FIGURES = (2, 4)


class UsageError(Exception):
    pass


# -- argument helpers --------------------------------------------------------------------


def parse_grid(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*[xX,]\s*(\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"grid must look like 64x64, got {text!r}")
    ns, nt = int(m.group(1)), int(m.group(2))
    if ns < 2 or nt < 2:
        raise argparse.ArgumentTypeError("grid dimensions must be >= 2")
    return ns, nt


def positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return x


def _add_surface_args(p, with_all=False):
    p.add_argument("--family", choices=catalog.FAMILIES, help="surface family")
    p.add_argument("--m", help="family value (e.g. 3, 1/2, 2.5) or a catalog label")
    p.add_argument("--label", help="catalog label, e.g. Enneper or tB_4-quadrant")
    p.add_argument("--cartesian", action="store_true",
                   help="value-3 surfaces in the chart u + iv (spacelike) or null chart (timelike)")
    if with_all:
        p.add_argument("--all", action="store_true", help="every catalog surface")


def _add_oracle_args(p):
    p.add_argument("--tolerance", type=positive_float, default=1e-6, help="max |H| allowed (default 1e-6)")
    p.add_argument("--step", type=positive_float, default=1e-5, help="float64 finite-difference step")
    p.add_argument("--precision", type=int, default=diffgeo.OracleConfig().precision,
                   help="oracle arithmetic in bits; 53 selects plain float64 differences")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bour", description="Bour surfaces in Minkowski 3-space")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print the surface catalog")

    p = sub.add_parser("eval", help="closed-form geometry at one parameter point")
    _add_surface_args(p)
    p.add_argument("s", type=float, help="first parameter (r, or u in a Cartesian chart)")
    p.add_argument("t", type=float, help="second parameter (theta, or v)")

    p = sub.add_parser("verify", help="check closed forms against the finite-difference oracle")
    _add_surface_args(p, with_all=True)
    _add_oracle_args(p)
    p.add_argument("--grid", type=parse_grid, default=verify.DEFAULT_GRID, help="scan grid (default 64x64)")

    p = sub.add_parser("mesh", help="sample a surface and export OBJ, CSV or SVG")
    _add_surface_args(p)
    p.add_argument("--grid", type=parse_grid, default=DEFAULT_MESH_GRID, help="grid (default 128x256)")
    p.add_argument("--format", choices=("obj", "csv", "svg"), default="obj")
    p.add_argument("--plane", choices=sorted(meshio.PLANES), default="xy", help="projection plane for svg")
    p.add_argument("--out", help="output file (default derived from the label)")

    p = sub.add_parser("figure", help="reproduce a catalogued figure as OBJ (+ SVG shadows)")
    p.add_argument("number", nargs="?", type=int, help="figure number 1-20")
    p.add_argument("--all", action="store_true", help="every figure")
    p.add_argument("--grid", type=parse_grid, default=DEFAULT_MESH_GRID, help="grid (default 128x256)")
    p.add_argument("--out", default="figures", help="output directory (default ./figures)")
    return parser


def parse_m(text: str):
    """Fraction for numeric input; None when ``text`` is a label."""
    try:
        return Fraction(text.strip().replace("−", "-"))
    except (ValueError, ZeroDivisionError):
        return None


def select_entries(args) -> list:
    """Catalog entries named by --label / --m / --family (non-empty)."""
    cart = getattr(args, "cartesian", False)
    if args.label:
        return [catalog.lookup(args.label)]
    if args.m is None:
        raise UsageError("give --label, or --family with --m")
    m = parse_m(args.m)
    if m is None:
        return [catalog.lookup(args.m)]
    m = Fraction(catalog.check_exponent(m))
    if args.family is None:
        raise UsageError("--m needs --family spacelike|timelike")
    hits = [
        e for e in catalog.entries()
        if e.family == args.family and e.m == m
        and (e.chart == "cartesian") == (cart and args.family == catalog.SPACELIKE)
    ]
    return hits or [catalog.find(args.family, m, cart)]


def slug(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", label).strip("_")


def _vec(v) -> str:
    return "(" + ", ".join(g9(x) for x in v) + ")"


def _interval(a, b, angle=False) -> str:
    def one(x):
        if angle and x != 0:
            q = Fraction(x / math.pi).limit_denominator(12)
            if abs(float(q) * math.pi - x) < 1e-12:
                num = {1: "", -1: "-"}.get(q.numerator, str(q.numerator))
                return f"{num}π" + (f"/{q.denominator}" if q.denominator != 1 else "")
        return g9(x)

    return f"[{one(a)}, {one(b)}]".replace("-", "−")


# -- commands ------------------------------------------------------------------------------


def cmd_list(args, out) -> int:
    rows = [("label", "family", "m", "data", "domain", "figures")]
    for e in catalog.entries():
        dom = f"r ∈ {_interval(*e.r_range)}, θ ∈ {_interval(*e.theta_range, angle=True)}"
        if e.chart == "cartesian":
            dom = f"u ∈ {_interval(*e.r_range)}, v ∈ {_interval(*e.theta_range)}"
        rows.append((e.label, e.family, str(e.m), e.data, dom, ",".join(map(str, e.figures))))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    out.write(f"{len(rows) - 1} surfaces\n")
    return EXIT_OK


def cmd_eval(args, out) -> int:
    entries = select_entries(args)
    entry = entries[0]
    cart = args.cartesian and entry.family == catalog.TIMELIKE
    f = catalog.closed_forms(entry, args.s, args.t, args.cartesian)
    chart = "null" if cart else entry.chart
    names = ("u", "v") if chart != "polar" else ("r", "theta")
    out.write(f"surface: {entry.label} ({entry.family}, m = {entry.m}, {chart} chart)\n")
    out.write(f"point: {names[0]} = {g9(args.s)}, {names[1]} = {g9(args.t)}\n")
    out.write(f"position: {_vec(f['position'])}\n")
    for k in "EFGLMN":
        out.write(f"{k}: {g9(f[k])}\n")
    out.write(f"gauss: {_vec(f['gauss'])}\n")
    out.write(f"K: {g9(f['K'])}\n")
    if "K_printed" in f:
        out.write(f"K (printed polar form, opposite sign): {g9(f['K_printed'])}\n")
    out.write(f"H: {g9(f['H'])}\n")
    if f["singular"]:
        out.write("note: singular point (" + "; ".join(catalog.singular_loci(entry, cart)) + ")\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    cfg = diffgeo.OracleConfig(step=args.step, precision=args.precision)
    workers = verify.thread_count()
    if args.all:
        jobs = [verify.Job(e.label) for e in catalog.entries()]
        adhoc = []
    else:
        entries = select_entries(args)
        labels = {e.label for e in catalog.entries()}
        jobs = [verify.Job(e.label, args.cartesian) for e in entries if e.label in labels]
        adhoc = [e for e in entries if e.label not in labels]
    conj_jobs = [verify.Job(j.label, j.cartesian, conjugate=True) for j in jobs if j.label == "tB_3"]
    results = verify.run_jobs(jobs + conj_jobs, args.grid, cfg, workers)
    results, conjugates = results[: len(jobs)], results[len(jobs):]
    results += [verify.run_entry(e, args.cartesian, args.grid, cfg) for e in adhoc]
    adjudications = [verify.adjudicate_cartesian_curvature(cfg=cfg), verify.adjudicate_timelike_sign(cfg=cfg)]
    report = verify.render(results, args.tolerance, args.grid, cfg, conjugates, adjudications,
                           verify.consistency_checks())
    out.write(report)
    ok = all(r.passed(args.tolerance) for r in results + conjugates)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_mesh(args, out) -> int:
    entry = select_entries(args)[0]
    mesh = meshio.sample(entry, *args.grid, cartesian=args.cartesian)
    suffix = f"_{args.plane}" if args.format == "svg" else ""
    path = args.out or f"{slug(entry.label)}{'_null' if mesh.meta['chart'] == 'null' else ''}{suffix}.{args.format}"
    if args.format == "obj":
        meshio.export_obj(mesh, path)
    elif args.format == "csv":
        meshio.export_csv(mesh, path)
    else:
        meshio.export_svg_projection(mesh, args.plane, path)
    ns, nt = mesh.dims
    out.write(f"surface: {entry.label} ({entry.family}, m = {entry.m}, {mesh.meta['chart']} chart)\n")
    out.write(f"grid: {ns}x{nt}\n")
    out.write(f"vertices: {ns * nt}\n")
    out.write(f"faces: {int(mesh.ok_cells.sum())}\n")
    out.write(f"flagged cells: {mesh.n_flagged_cells}\n")
    kr = mesh.k_range()
    out.write("K range over ok cells: " + ("none" if kr is None else f"[{g9(kr[0])}, {g9(kr[1])}]") + "\n")
    if mesh.meta["clipped"]:
        out.write(f"clipped: {mesh.meta['note']}\n")
    out.write(f"wrote: {path}\n")
    return EXIT_OK


def write_figure(n: int, out_dir: str, grid) -> dict:
    entry, cart = catalog.figure(n)
    mesh = meshio.sample(entry, *grid, cartesian=cart)
    files = [f"fig{n:02d}.obj"]
    meshio.export_obj(mesh, os.path.join(out_dir, files[0]))
    if n in SHADOW_FIGURES:
        for plane in sorted(meshio.PLANES):
            name = f"fig{n:02d}_{plane}.svg"
            meshio.export_svg_projection(mesh, plane, os.path.join(out_dir, name))
            files.append(name)
    info = dict(mesh.meta)
    info.update(figure=n, title=entry.title, files=files, vertices=mesh.dims[0] * mesh.dims[1],
                faces=int(mesh.ok_cells.sum()))
    return info


def cmd_figure(args, out) -> int:
    known = catalog.figures()
    if args.all:
        numbers = list(known)
    elif args.number is None:
        raise UsageError("give a figure number or --all")
    else:
        numbers = [args.number]
    for n in numbers:
        if n not in known:
            raise UsageError(f"unknown figure {n}; known figures are {min(known)}-{max(known)}")
    try:
        os.makedirs(args.out, exist_ok=True)
    except OSError as exc:
        raise IoFailure(f"cannot create {args.out!r}: {exc.strerror or exc}") from exc
    manifest = {}
    for n in numbers:
        info = write_figure(n, args.out, args.grid)
        manifest[str(n)] = info
        if info["chart"] == "polar":
            dom = f"r ∈ {_interval(*info['s_range'])}, θ ∈ {_interval(*info['t_range'], angle=True)}"
        else:
            dom = f"u ∈ {_interval(*info['s_range'])}, v ∈ {_interval(*info['t_range'])}"
        out.write(f"figure {n}: {info['label']} ({info['family']}, m = {info['m']}, {info['chart']} chart) "
                  f"{dom} -> {', '.join(info['files'])}\n")
    path = os.path.join(args.out, "manifest.json")
    text = json.dumps({"figures": manifest}, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    meshio._write(path, text)
    out.write(f"wrote: {path}\n")
    return EXIT_OK


COMMANDS = {"list": cmd_list, "eval": cmd_eval, "verify": cmd_verify, "mesh": cmd_mesh, "figure": cmd_figure}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    if hasattr(out, "reconfigure"):
        try:
            out.reconfigure(encoding="utf-8")
        except (ValueError, OSError):
            pass
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except IoFailure as exc:
        print(f"error: IoFailure: {exc}", file=sys.stderr)
        return EXIT_IO
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BourError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
