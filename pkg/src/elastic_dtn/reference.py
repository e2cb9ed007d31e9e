"""Exact DN maps for constant media: half-space and disk.

Both solvers are deliberately independent of :mod:`elastic_dtn.symbol`. The
half-space solver finds decaying plane waves from the quadratic pencil of the
full elastic symbol; the disk solver uses Helmholtz potentials and Bessel
log-derivatives.

Matrices are returned in the frame ``(nu, t)`` (normal first, then the
tangents that carry ``xi``). The normal points into the domain and the DN map
is ``-i h`` times the traction ``sigma(u) nu``; ``orientation="outward"``
flips the sign of the traction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .core import MediumValues, SemiclassicalParams

ORIENTATIONS = ("inward", "outward")


def _orient(orientation: str) -> float:
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    return 1.0 if orientation == "inward" else -1.0


# --------------------------------------------------------------------------
# Bessel log-derivative

class ConvergenceError(RuntimeError):
    pass


def bessel_logderiv(n, w, tol: float = 1e-14, max_iter: int = 10_000):
    """``J_n'(w) / J_n(w)`` by the continued fraction for ``J_{n+1}/J_n``.

    Uses ``J_n'/J_n = n/w - J_{n+1}/J_n`` and evaluates
    ``n/w - 1/(2(n+1)/w - 1/(2(n+2)/w - ...))`` with the modified Lentz
    scheme. Vectorised over broadcast ``n`` and ``w``; negative orders use
    ``J_{-n} = (-1)^n J_n``.

    Raises
    ------
    ConvergenceError
        If some entry has not converged after ``max_iter`` steps.
    """
    n_arr = np.abs(np.asarray(n))
    w_arr = np.asarray(w, dtype=complex)
    if np.any(w_arr == 0):
        raise ValueError("w must be nonzero")
    n_arr, w_arr = np.broadcast_arrays(n_arr, w_arr)
    tiny = 1e-300
    inv = 1.0 / w_arr
    f = n_arr * inv
    f = np.where(f == 0, tiny, f)
    c = f.copy()
    dd = np.zeros_like(f)
    b = n_arr * inv * 2.0
    active = np.ones(f.shape, dtype=bool)
    last = np.zeros(f.shape)
    for _ in range(max_iter):
        b = b + 2.0 * inv
        dd = b - dd
        dd = np.where(dd == 0, tiny, dd)
        c = b - 1.0 / c
        c = np.where(c == 0, tiny, c)
        dd = 1.0 / dd
        delta = c * dd
        f = np.where(active, f * delta, f)
        last = np.abs(delta - 1.0)
        active &= last >= tol
        if not active.any():
            break
    else:
        raise ConvergenceError(f"continued fraction did not converge; last increment {last.max():.3e}")
    # f holds n/w - J_{n+1}/J_n = J_n'/J_n
    return f if f.ndim else complex(f)


# --------------------------------------------------------------------------
# half-space

@dataclass
class HalfspaceSolution:
    dn: np.ndarray
    roots: np.ndarray
    polarizations: np.ndarray


def _pencil(mv: MediumValues, z2: complex, eta: np.ndarray):
    d = eta.shape[0]
    nu = np.zeros(d)
    nu[0] = 1.0
    lm = mv.lam + mv.mu
    q0 = mv.mu * np.eye(d) + lm * np.outer(nu, nu)
    q1 = lm * (np.outer(nu, eta) + np.outer(eta, nu))
    q2 = (mv.mu * (eta @ eta) - z2 * mv.n) * np.eye(d) + lm * np.outer(eta, eta)
    return q0, q1, q2, nu


def _cluster(vals, tol):
    groups: list[list[int]] = []
    for i in np.argsort(vals.real):
        for g in groups:
            if abs(vals[g[0]] - vals[i]) <= tol * max(1.0, abs(vals[i])):
                g.append(i)
                break
        else:
            groups.append([i])
    return groups


def halfspace_dn_exact(params: SemiclassicalParams, mv: MediumValues, xi, orientation: str = "inward") -> HalfspaceSolution:
    """DN matrix of the half-space ``x1 > 0`` for data ``f exp(i <xi, x'> / h)``.

    Decaying solutions ``a exp(i (rho x1 + <xi, x'>) / h)`` come from the
    pencil ``(rho^2 Q0 + rho Q1 + Q2) a = 0`` with ``Im rho > 0``; the pencil is
    linearised to a 2d x 2d generalized eigenproblem. Repeated roots are
    clustered and their polarizations taken from the nullspace.
    """
    if params.theta <= 0:
        raise ValueError("theta must be positive")
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    d = xi.shape[0] + 1
    eta = np.concatenate([[0.0], xi])
    q0, q1, q2, nu = _pencil(mv, params.z2, eta)
    zero = np.zeros((d, d))
    a = np.block([[zero, np.eye(d)], [-q2, -q1]])
    b = np.block([[np.eye(d), zero], [zero, q0]])
    vals = sla.eig(a, b, right=False)
    up = vals[vals.imag > 0]
    if up.shape[0] != d:
        raise RuntimeError(f"expected {d} decaying roots, found {up.shape[0]}")
    roots, pols = [], []
    for g in _cluster(up, 1e-6):
        r = up[g].mean()
        p = r * r * q0 + r * q1 + q2
        _, sv, vh = np.linalg.svd(p)
        k = len(g)
        if sv[-k] > 1e-6 * max(1.0, sv[0]):
            raise RuntimeError("degenerate nullspace in polarization solve")
        for row in vh[-k:]:
            roots.append(r)
            pols.append(row.conj())
    roots = np.array(roots)
    amat = np.array(pols).T
    tmat = np.empty_like(amat)
    for j in range(d):
        kv = roots[j] * nu + eta
        aj = amat[:, j]
        tmat[:, j] = mv.lam * (kv @ aj) * nu + mv.mu * (aj * (kv @ nu) + kv * (aj @ nu))
    dn = _orient(orientation) * tmat @ np.linalg.inv(amat)
    return HalfspaceSolution(dn=dn, roots=roots, polarizations=amat)


# --------------------------------------------------------------------------
# disk

@dataclass
class DiskModes:
    """Per-mode DN matrices of the disk in the ``(nu, t)`` frame."""

    n: np.ndarray
    dn: np.ndarray
    cond: np.ndarray


def disk_dn_modes(params: SemiclassicalParams, mv: MediumValues, radius: float, n, orientation: str = "inward") -> DiskModes:
    """Exact DN matrices of the disk of radius ``radius`` for modes ``exp(i n s / R)``.

    The displacement is ``grad Phi + rot Psi`` with
    ``Phi = J_n(kp r) / J_n(kp R)``, ``Psi = J_n(ks r) / J_n(ks R)`` and
    ``kb = z sqrt(k_b) / h``. Second radial derivatives are removed with the
    Bessel equation so only ``g = J_n'/J_n`` is needed.
    """
    n = np.atleast_1d(np.asarray(n))
    R = float(radius)
    h = params.h
    kp = params.z * np.sqrt(mv.kp) / h
    ks = params.z * np.sqrt(mv.ks) / h
    wp, ws = kp * R, ks * R
    gp = bessel_logderiv(n, wp)
    gs = bessel_logderiv(n, ws)
    gp = np.broadcast_to(gp, n.shape)
    gs = np.broadcast_to(gs, n.shape)
    lam, mu = mv.lam, mv.mu
    inR = 1j * n / R
    nn = n.astype(float) ** 2
    # columns: Phi, Psi; rows: u_r, u_theta, sigma_rr, sigma_rtheta
    ur = np.stack([kp * gp, inR + 0j * gp], -1)
    ut = np.stack([inR + 0j * gp, -ks * gs], -1)
    srr = np.stack([
        -lam * kp**2 + 2 * mu * kp**2 * (-gp / wp - 1 + nn / wp**2),
        2 * mu * inR * (ks * gs - 1 / R),
    ], -1)
    srt = np.stack([
        mu * (2 * inR * kp * gp - 2 * inR / R),
        mu * (2 * ks * gs / R + ks**2 - 2 * nn / R**2),
    ], -1)
    disp = np.stack([-ur, ut], -2)
    trac = np.stack([srr, -srt], -2)
    cond = np.linalg.cond(disp)
    dn = -1j * h * _orient(orientation) * trac @ np.linalg.inv(disp)
    return DiskModes(n=n, dn=dn, cond=cond)


def disk_dn_mode(params, mv, radius, n, orientation: str = "inward") -> np.ndarray:
    """Single-mode convenience wrapper around :func:`disk_dn_modes`."""
    return disk_dn_modes(params, mv, radius, [n], orientation).dn[0]


FLIP = np.diag([1.0, -1.0])


def to_rotated_frame(m: np.ndarray) -> np.ndarray:
    """``(nu, t)`` frame to the ``Lambda`` frame, whose second axis is ``-t`` on a CCW curve."""
    return FLIP @ m @ FLIP


MODE_COLUMNS = ["n", "re_11", "im_11", "re_12", "im_12", "re_21", "im_21", "re_22", "im_22", "cond"]


def mode_rows(modes: DiskModes) -> list[list[float]]:
    rows = []
    for k, nval in enumerate(modes.n):
        m = modes.dn[k].ravel()
        rows.append([int(nval), *[v for e in m for v in (e.real, e.imag)], float(modes.cond[k])])
    return rows
