"""Principal symbol of the elastic DN map and its first-order correction.

All routines work at a single cotangent point. The symbol lives naturally in
the rotated frame where the normal is ``e1`` and the tangential frequency is
``zeta = (0, zeta_2, ..., zeta_d)``; :func:`assemble_md` conjugates back to
ambient coordinates.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import algebra as al
from .core import ElasticMedium, MediumValues, SemiclassicalParams
from .geometry import CotangentPoint


def rho(params: SemiclassicalParams, mv: MediumValues, r0, branch: str):
    """Normal root ``sqrt(-r0 + z^2 k)`` on the principal branch (Im > 0)."""
    if params.theta <= 0:
        raise ValueError("theta must be positive")
    return np.sqrt(-np.asarray(r0) + params.z2 * mv.k(branch) + 0j)


def rho_pair(params, mv, r0):
    return rho(params, mv, r0, "s"), rho(params, mv, r0, "p")


def _zeta_vec(r0=None, d=None, zeta=None) -> np.ndarray:
    if zeta is not None:
        return np.asarray(zeta, dtype=float)
    if r0 is None or d is None:
        raise ValueError("give either zeta or (r0, d)")
    z = np.zeros(d)
    z[1] = np.sqrt(r0)
    return z


def w0_matrix(rho_s, rho_p, zeta) -> np.ndarray:
    """``W0 = U0^t(rho_s e1 + zeta) + (rho_p - rho_s) e1 (x) e1``."""
    zeta = np.asarray(zeta, dtype=complex)
    d = zeta.shape[0]
    e1 = al.unit(0, d)
    return al.u0_matrix(rho_s * e1 + zeta).T + (rho_p - rho_s) * al.outer(e1, e1)


def t2_matrix(rho_s, rho_p, zeta2) -> np.ndarray:
    det = zeta2 * zeta2 + rho_s * rho_p
    return np.array([[rho_s, zeta2], [-zeta2, rho_p]], dtype=complex) / det


def w0_and_t(rho_s, rho_p, r0=None, d=None, zeta=None) -> tuple[np.ndarray, np.ndarray]:
    """``W0`` and its inverse ``T_d`` from the closed forms.

    Either ``zeta`` (a d-vector with ``zeta_1 = 0``) or ``(r0, d)`` with
    ``zeta = sqrt(r0) e2`` is accepted.
    """
    zeta = _zeta_vec(r0, d, zeta)
    d = zeta.shape[0]
    w0 = w0_matrix(rho_s, rho_p, zeta)
    if d == 2:
        return w0, t2_matrix(rho_s, rho_p, zeta[1])
    zp = zeta[1:]
    r = float(np.linalg.norm(zp))
    core = al.embed2(t2_matrix(rho_s, rho_p, r), d)
    core[2:, 2:] += np.eye(d - 2) / rho_s
    if r == 0.0:
        return w0, core
    th = al.theta_chart(zp)
    return w0, th.T @ core @ th


def principal_symbol_M(params: SemiclassicalParams, mv: MediumValues, r0: float, d: int = 2) -> np.ndarray:
    """``M_2`` (d = 2) or ``M_d`` from the closed-form entries.

    ``M_11 = z^2 n rho_s / D``, ``M_22 = z^2 n rho_p / D`` and
    ``M_12 = -M_21 = -2 mu sqrt(r0) + z^2 n sqrt(r0) / D`` with
    ``D = r0 + rho_s rho_p``; for ``d >= 3`` the block ``mu rho_s I`` is
    appended.
    """
    rs, rp = rho_pair(params, mv, r0)
    D = r0 + rs * rp
    zn = params.z2 * mv.n
    q = np.sqrt(r0)
    off = -2 * mv.mu * q + zn * q / D
    m2 = np.array([[zn * rs / D, off], [-off, zn * rp / D]], dtype=complex)
    if d == 2:
        return m2
    out = al.embed2(m2, d)
    out[2:, 2:] += mv.mu * rs * np.eye(d - 2)
    return out


def m0_closed(params, mv, zeta) -> np.ndarray:
    """Rotated-frame symbol from ``M_d``.

    For d = 2 the sign of ``zeta_2`` is carried by ``S = diag(1, sgn zeta_2)``;
    for d >= 3 the tangential rotation enters as ``Theta^t M_d Theta``.
    """
    zeta = np.asarray(zeta, dtype=float)
    d = zeta.shape[0]
    r0 = float(zeta @ zeta)
    md = principal_symbol_M(params, mv, r0, d)
    if d == 2:
        sg = np.diag([1.0, -1.0 if zeta[1] < 0 else 1.0])
        return sg @ md @ sg
    if r0 == 0.0:
        return md
    th = al.theta_chart(zeta[1:])
    return th.T @ md @ th


def m2_rotated_batch(params, mv: MediumValues, zeta2) -> np.ndarray:
    """Vectorised d = 2 rotated-frame symbol for an array of signed ``zeta_2``.

    Returns shape ``zeta2.shape + (2, 2)``; equal to :func:`m0_closed` entrywise.
    """
    zeta2 = np.asarray(zeta2, dtype=float)
    r0 = zeta2**2
    rs, rp = rho_pair(params, mv, r0)
    D = r0 + rs * rp
    zn = params.z2 * mv.n
    off = (-2 * mv.mu + zn / D) * zeta2
    out = np.empty(zeta2.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = zn * rs / D
    out[..., 1, 1] = zn * rp / D
    out[..., 0, 1] = off
    out[..., 1, 0] = -off
    return out


def m0_assembled(params, mv, zeta) -> np.ndarray:
    """Rotated-frame symbol assembled term by term from ``T_d``.

    ``lambda zeta (x) e1 + mu e1 (x) zeta + (c_s rho_s^2 Pi_s + c_p rho_p^2 Pi_p) T
    + (c_s Pi_s + c_p Pi_p) U0^t(zeta) (rho_s Pi_s + rho_p Pi_p) T``
    with all projectors taken at ``e1``.
    """
    zeta = np.asarray(zeta, dtype=float)
    d = zeta.shape[0]
    r0 = float(zeta @ zeta)
    rs, rp = rho_pair(params, mv, r0)
    _, t = w0_and_t(rs, rp, zeta=zeta)
    e1 = al.unit(0, d)
    ps, pp = al.pi_s(e1), al.pi_p(e1)
    cmat = mv.cs * ps + mv.cp * pp
    out = mv.lam * al.outer(zeta, e1) + mv.mu * al.outer(e1, zeta)
    out = out + (mv.cs * rs**2 * ps + mv.cp * rp**2 * pp) @ t
    out = out + cmat @ al.u0_matrix(zeta).T @ (rs * ps + rp * pp) @ t
    return out


def frame_matrix(point: CotangentPoint) -> np.ndarray:
    """``J^-1 = Theta(zeta) Lambda``; the symbol is ``J M_d J^-1`` with ``J = J^-1 ^t``.

    For d = 2 no tangential rotation exists and the sign of ``zeta_2`` is
    absorbed by ``diag(1, sgn zeta_2)``.
    """
    d = point.d
    zeta = point.zeta
    if d == 2:
        sg = np.diag([1.0, -1.0 if zeta[1] < 0 else 1.0])
        return sg @ point.lam
    if not np.any(zeta[1:]):
        return point.lam
    return al.theta_chart(zeta[1:]) @ point.lam


def assemble_md(params, medium: ElasticMedium | MediumValues, point: CotangentPoint, path: str = "closed") -> np.ndarray:
    """Principal symbol ``m_d`` at ``point`` in ambient coordinates.

    ``path="closed"`` goes through :func:`principal_symbol_M` and the frame
    matrix, ``path="assembled"`` through :func:`m0_assembled`. Supported for
    d in {2, 3}.
    """
    if point.d not in (2, 3):
        raise ValueError("symbol assembly is implemented for d = 2, 3")
    mv = _values(medium, point)
    if path == "closed":
        jinv = frame_matrix(point)
        md = principal_symbol_M(params, mv, point.r0, point.d)
        return jinv.T @ md @ jinv
    if path == "assembled":
        return point.lam.T @ m0_assembled(params, mv, point.zeta) @ point.lam
    raise ValueError(f"unknown path {path!r}")


def _values(medium, point) -> MediumValues:
    if isinstance(medium, MediumValues):
        return medium
    return medium.at(point.x)


# --------------------------------------------------------------------------
# first-order correction

def grad_rho(params, mv: MediumValues, point: CotangentPoint, branch: str) -> np.ndarray:
    """Tangential gradient of ``rho_b`` along the boundary coordinates.

    Arclength and flat coordinates keep ``r0`` independent of ``x'``, so only
    the medium contributes: ``d rho = z^2 dk / (2 rho)``.
    """
    rb = rho(params, mv, point.r0, branch)
    return params.z2 * mv.grad_k(branch) / (2 * rb)


def boundary_t(params, mv, point) -> np.ndarray:
    """``T = W^-1`` in ambient coordinates, ``Lambda^t T_d(zeta) Lambda``."""
    rs, rp = rho_pair(params, mv, point.r0)
    _, td = w0_and_t(rs, rp, zeta=point.zeta)
    return point.lam.T @ td @ point.lam


def traction_matrix(mv: MediumValues, nu) -> np.ndarray:
    """``c_s Pi_s(nu) + c_p Pi_p(nu)`` for a unit normal."""
    return mv.cs * al.pi_s(nu) + mv.cp * al.pi_p(nu)


def q_symbol(params, medium, point: CotangentPoint) -> np.ndarray:
    """First-order term ``-i P(nu) U^t(grad' (rho_p - rho_s)) Pi_p(nu) T``.

    ``grad'`` is the tangential gradient lifted to ambient coordinates,
    ``sum_k t_k d_k``. Vanishes when the medium is constant.
    """
    mv = _values(medium, point)
    g = np.atleast_1d(grad_rho(params, mv, point, "p") - grad_rho(params, mv, point, "s"))
    if g.shape[0] != point.d - 1:
        raise ValueError("medium gradients do not match the boundary dimension")
    vec = g @ point.tangents
    u = al.u_matrix(vec, point.lam)
    t = boundary_t(params, mv, point)
    return -1j * traction_matrix(mv, point.nu) @ u.T @ al.pi_p(point.nu) @ t


# --------------------------------------------------------------------------
# identities

@dataclass
class IdentityReport:
    max_rel_515: float
    max_rel_517: float
    min_abs_d: float
    n_samples: int


def identity_residuals(params, mv: MediumValues, r0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Relative residuals of the two ``r0 + rho_s rho_p`` identities and ``|r0 + rho_s rho_p|``."""
    r0 = np.asarray(r0, dtype=float)
    z2 = params.z2
    ks, kp = mv.ks, mv.kp
    rs, rp = rho_pair(params, mv, r0)
    lhs = r0 + rs * rp
    rhs = z2 * (kp * rs + ks * rp) / (rs + rp)
    e1 = np.abs(lhs - rhs) / np.maximum(np.abs(lhs), np.abs(rhs))
    l2 = (kp * rs - ks * rp) * (kp * rs + ks * rp)
    r2 = (ks - kp) * ((ks + kp) * r0 - z2 * ks * kp)
    scale = np.abs(kp * rs) ** 2 + np.abs(ks * rp) ** 2
    e2 = np.abs(l2 - r2) / scale
    return e1, e2, np.abs(lhs)


def identity_checks(samples) -> IdentityReport:
    """Run the identities over ``(params, medium_values, r0)`` triples."""
    m1 = m2 = 0.0
    dmin = np.inf
    n = 0
    for params, mv, r0 in samples:
        a, b, c = identity_residuals(params, mv, r0)
        m1 = max(m1, float(np.max(a)))
        m2 = max(m2, float(np.max(b)))
        dmin = min(dmin, float(np.min(c)))
        n += np.size(r0)
    return IdentityReport(m1, m2, dmin, n)


# --------------------------------------------------------------------------
# export

SYMBOL_COLUMNS = [
    "s", "xi", "r0",
    "re_rho_s", "im_rho_s", "re_rho_p", "im_rho_p",
    "re_m11", "im_m11", "re_m12", "im_m12",
    "re_m21", "im_m21", "re_m22", "im_m22",
]


def symbol_table(params, medium, curve, s_values, xi_values) -> list[list[float]]:
    """Rows of ``SYMBOL_COLUMNS`` for ``m_2`` on a planar curve."""
    rows = []
    for s in s_values:
        for xi in xi_values:
            pt = CotangentPoint.on_curve(curve, s, xi)
            mv = _values(medium, pt)
            rs, rp = rho_pair(params, mv, pt.r0)
            m = assemble_md(params, mv, pt)
            rows.append([
                float(s), float(xi), pt.r0,
                rs.real, rs.imag, rp.real, rp.imag,
                *[v for e in m.ravel() for v in (e.real, e.imag)],
            ])
    return rows


def write_symbol_csv(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SYMBOL_COLUMNS)
        w.writerows(rows)
