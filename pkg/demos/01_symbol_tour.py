"""Build the principal symbol at a boundary point and check it against the exact half-space map.

Run: python3 demos/01_symbol_tour.py
"""
import numpy as np

from elastic_dtn import (CotangentPoint, PlanarCurve, assemble_md, constant_values, halfspace_dn_exact,
                         params_from_tau, rho_pair)
from elastic_dtn.core import region_classify

np.set_printoptions(precision=5, suppress=True)

# tau = 100 + 40i: h = 0.01, z = 1 + 0.4i
params = params_from_tau(100 + 40j)
mv = constant_values(mu=1.0, lam=2.0, n=1.0)  # c_s = 1, c_p = 4
print(f"h = {params.h}, z = {params.z}, theta = {params.theta}")

# walk the tangential frequency through both glancing values
for xi in (0.2, 0.5, 0.8, 1.0, 2.0):
    info = region_classify(mv, xi * xi)
    rs, rp = rho_pair(params, mv, xi * xi)
    print(f"xi = {xi:4.1f}  region = {info.region:16s} rho_s = {rs:.4f}  rho_p = {rp:.4f}")

# on a flat boundary the symbol is the exact DN matrix of each plane-wave mode
xi = np.array([1.3])
m = assemble_md(params, mv, CotangentPoint.flat(xi))
exact = halfspace_dn_exact(params, mv, xi)
print("\nsymbol on the half-space:\n", m)
print("exact half-space DN matrix:\n", exact.dn)
print("relative difference:", np.abs(m - exact.dn).max() / np.abs(m).max())

# on a curve the same matrix is rotated into the local frame
circle = PlanarCurve.circle(1.0)
for s in (0.0, np.pi / 2, np.pi):
    pt = CotangentPoint.on_curve(circle, s, 1.3)
    print(f"\ns = {s:.3f}, inward normal {pt.nu}:\n", assemble_md(params, mv, pt))
