"""Principal symbol of the elastic Dirichlet-to-Neumann map.

Builds the semiclassical principal symbol of the boundary traction map for
isotropic elasticity, quantizes it on closed curves, and checks it against
exact half-space and disk solutions.
"""
__version__ = "0.1.0"

from .core import (ElasticMedium, MediumValues, Profile, SemiclassicalParams, constant_values,
                   in_regime, params_from_h_theta, params_from_tau, region_classify)
from .geometry import CotangentPoint, FlatChart, PlanarCurve
from .algebra import invert_m, lambda_frame, m_matrix, theta_chart, u0_matrix
from .symbol import (assemble_md, identity_checks, m2_rotated_batch, principal_symbol_M, q_symbol,
                     rho, rho_pair, symbol_table)
from .eikonal import TaylorPolynomial, halving_ratio, phase_checks, solve_eikonal
from .parametrix import amplitudes, boundary_dn_reduction, evaluate_parametrix
from .quantizer import FourierBoundaryData, FramedSymbol, Multiplier, apply_symbol, hs_norm
from .reference import bessel_logderiv, disk_dn_modes, halfspace_dn_exact

__all__ = [
    "__version__",
    "ElasticMedium", "MediumValues", "Profile", "SemiclassicalParams", "constant_values",
    "in_regime", "params_from_h_theta", "params_from_tau", "region_classify",
    "CotangentPoint", "FlatChart", "PlanarCurve",
    "invert_m", "lambda_frame", "m_matrix", "theta_chart", "u0_matrix",
    "assemble_md", "identity_checks", "m2_rotated_batch", "principal_symbol_M", "q_symbol",
    "rho", "rho_pair", "symbol_table",
    "TaylorPolynomial", "halving_ratio", "phase_checks", "solve_eikonal",
    "amplitudes", "boundary_dn_reduction", "evaluate_parametrix",
    "FourierBoundaryData", "FramedSymbol", "Multiplier", "apply_symbol", "hs_norm",
    "bessel_logderiv", "disk_dn_modes", "halfspace_dn_exact",
]
