"""Solve the normal phase on the unit circle and watch the residual shrink like x1^N.

Run: python3 demos/03_eikonal_phase.py
"""
import numpy as np

from elastic_dtn import CotangentPoint, ElasticMedium, PlanarCurve, params_from_h_theta, solve_eikonal
from elastic_dtn.eikonal import collar_width, halving_ratio, phase_checks

params = params_from_h_theta(0.01, 0.3)
medium = ElasticMedium.constant(1.0, 2.0, 1.0)
circle = PlanarCurve.circle(1.0)
pt = CotangentPoint.on_curve(circle, 0.0, 0.9)  # close to the shear glancing value 1

for N in (4, 6, 8):
    ph = solve_eikonal(params, medium, circle, pt, "s", N)
    c = ph.at_point()
    rho = c[1]
    print(f"N = {N}: phi_1 = rho_s = {rho:.5f}, phi_2 = {c[2]:.5f} (expected {-0.81 / (2 * rho):.5f})")
    for x1 in (0.08, 0.04, 0.02):
        ratio, route = halving_ratio(ph, x1)
        print(f"    x1 = {x1:5.2f}: residual halving ratio * 2^N = {ratio * 2 ** N:.3f} ({route})")
    chk = phase_checks(ph)
    print(f"    growth and decay bounds hold up to x1 = {chk.collar:.4f} (delta = {chk.delta})")

width = collar_width(rho, 0.05)
x = np.linspace(0, width, 5)
print("\nIm of the phase over the collar:", np.round(ph.tilde()(x).imag, 6))
