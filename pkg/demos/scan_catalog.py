"""Scan every catalog surface with both oracles on a coarse grid.

The float64 path loses most of its digits to cancellation in the second
differences near singular curves, and its stencil is wider than the whole
m = 5 domain.  The default 256-bit path has neither problem.
"""

from bour import catalog, diffgeo, verify

FLOAT = diffgeo.OracleConfig(precision=53)
MPFR = diffgeo.OracleConfig()

print(f"{'surface':<14} {'family':<9} {'float64 max|H|':>15} {'256-bit max|H|':>15}")
for e in catalog.entries():
    a = verify.run_entry(e, grid=(24, 24), cfg=FLOAT)
    b = verify.run_entry(e, grid=(24, 24), cfg=MPFR)
    fa = f"{a.max_abs_H:.2e}" if a.n_ok else "no points"
    print(f"{e.label:<14} {e.family:<9} {fa:>15} {b.max_abs_H:>15.2e}")
