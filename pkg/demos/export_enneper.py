"""Sample the Enneper surface and write OBJ, CSV and three SVG shadows."""

import os
import sys

from bour import catalog, meshio

out = sys.argv[1] if len(sys.argv) > 1 else "enneper_out"
os.makedirs(out, exist_ok=True)
mesh = meshio.sample(catalog.lookup("Enneper"), 48, 96)
meshio.export_obj(mesh, os.path.join(out, "enneper.obj"))
meshio.export_csv(mesh, os.path.join(out, "enneper.csv"))
for plane in sorted(meshio.PLANES):
    meshio.export_svg_projection(mesh, plane, os.path.join(out, f"enneper_{plane}.svg"))
print(f"{mesh.dims[0] * mesh.dims[1]} vertices, {mesh.n_flagged_cells} flagged cells, K range {mesh.k_range()}")
print(f"wrote {out}/")
