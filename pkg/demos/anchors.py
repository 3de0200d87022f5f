"""Closed-form curvature anchors next to the finite-difference oracle."""

from math import pi

from bour import catalog, diffgeo, maximal, timelike

b3 = catalog.lookup("B_3")
K, H = maximal.curvatures(3, 0.5)
num = diffgeo.fundamental_forms(catalog.patch(b3), 0.5, 0.3)
print(f"spacelike B_3 at r = 0.5: closed K = {K:.9g}, oracle K = {num.K:.9g}, oracle H = {num.H:.2e}")

f = timelike.null_forms(3, 1.0, 1.0)
print(f"timelike B_3 null chart at (1, 1): K = {f['K']:.9g}, F = {f['F']:.9g}")

K, _ = timelike.timelike_curvatures(3, 1.0, pi / 4)
Kp, _ = timelike.timelike_curvatures(3, 1.0, pi / 4, printed=True)
print(f"timelike B_3 polar at (1, pi/4): K = {K:.9g}, printed polar form gives {Kp:.9g}")
