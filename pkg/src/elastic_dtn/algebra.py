"""Dense complex d x d algebra built on the bilinear outer product.

Conventions
-----------
Vectors are paired bilinearly, ``<xi, g> = sum xi_j g_j`` (no conjugation), and
``xi (x) eta`` denotes the matrix sending ``g`` to ``<xi, g> eta``. In
ordinary numpy terms that is ``np.outer(eta, xi)``, i.e. ``eta xi^T``; note
the order. Every helper below goes through :func:`outer` so the convention is
set in one place.

Matrix norms are max-absolute-entry norms.
"""
from __future__ import annotations

import numpy as np

CONVENTIONS = ("standard", "transposed")


def pair(xi, g):
    """Bilinear pairing ``<xi, g>``."""
    return np.sum(np.asarray(xi) * np.asarray(g), axis=-1)


def sq(xi):
    """``xi^2 = <xi, xi>`` (complex, not the modulus)."""
    return pair(xi, xi)


def maxnorm(a) -> float:
    return float(np.max(np.abs(a)))


def outer(xi, eta, convention: str = "standard") -> np.ndarray:
    """The matrix ``xi (x) eta`` with ``(xi (x) eta) g = <xi, g> eta``.

    ``convention="transposed"`` returns the conventional ``xi eta^T`` reading
    instead; it only exists as a negative control for the identity suite.
    """
    xi = np.asarray(xi)
    eta = np.asarray(eta)
    if xi.shape[-1] != eta.shape[-1]:
        raise ValueError(f"dimension mismatch: {xi.shape[-1]} vs {eta.shape[-1]}")
    if convention == "standard":
        return eta[..., :, None] * xi[..., None, :]
    if convention == "transposed":
        return xi[..., :, None] * eta[..., None, :]
    raise ValueError(f"unknown convention {convention!r}")


def unit(j: int, d: int) -> np.ndarray:
    """Basis vector ``e_{j+1}`` (zero-based ``j``)."""
    e = np.zeros(d)
    e[j] = 1.0
    return e


def pi_p(xi) -> np.ndarray:
    """``Pi_p(xi) = xi (x) xi``."""
    return outer(xi, xi)


def pi_s(xi) -> np.ndarray:
    """``Pi_s(xi) = xi^2 I - xi (x) xi``."""
    xi = np.asarray(xi)
    d = xi.shape[-1]
    return sq(xi)[..., None, None] * np.eye(d) - outer(xi, xi)


def u0_matrix(xi, convention: str = "standard") -> np.ndarray:
    """``U_0(xi) = xi_1 I + sum_{j>=2} xi_j (e_j (x) e_1 - e_1 (x) e_j)``.

    Satisfies ``U_0(xi) xi = xi^2 e_1``.
    """
    xi = np.asarray(xi, dtype=complex)
    d = xi.shape[-1]
    if d < 2:
        raise ValueError("U_0 needs d >= 2")
    e1 = unit(0, d)
    u = xi[0] * np.eye(d, dtype=complex)
    for j in range(1, d):
        ej = unit(j, d)
        u = u + xi[j] * (outer(ej, e1, convention) - outer(e1, ej, convention))
    return u


def z0_matrix(xi) -> np.ndarray:
    """``Z_0(xi) = U_0(xi) U_0(xi)^t``; commutes with ``e_1 (x) e_1``."""
    u = u0_matrix(xi)
    return u @ u.T


def m_matrix(xi, eta1) -> np.ndarray:
    """``M_d(xi, eta1) = U_0(xi) + eta1 e_1 (x) e_1``."""
    xi = np.asarray(xi, dtype=complex)
    d = xi.shape[-1]
    e1 = unit(0, d)
    return u0_matrix(xi) + eta1 * outer(e1, e1)


def det_m(xi, eta1) -> complex:
    """Closed form ``det M_d = (xi^2 + xi_1 eta1) xi_1^(d-2)``."""
    xi = np.asarray(xi, dtype=complex)
    d = xi.shape[-1]
    return complex((sq(xi) + xi[0] * eta1) * xi[0] ** (d - 2))


def _m2_inverse(xi1, xi2, eta1) -> np.ndarray:
    det = xi1 * xi1 + xi2 * xi2 + xi1 * eta1
    if det == 0:
        raise np.linalg.LinAlgError("xi^2 + xi_1 eta_1 = 0: M is singular")
    return np.array([[xi1, -xi2], [xi2, xi1 + eta1]], dtype=complex) / det


def embed2(m2, d: int) -> np.ndarray:
    """The d x d matrix carrying ``m2`` in its upper-left block, zeros elsewhere."""
    out = np.zeros((d, d), dtype=complex)
    out[:2, :2] = m2
    return out


def invert_m(xi, eta1) -> np.ndarray:
    """Inverse of ``M_d(xi, eta1)`` through the 2 x 2 closed form.

    For ``d >= 3`` the tangential part ``xi'`` (which must be real) is rotated
    onto ``e_2`` by :func:`theta_chart`, after which the inverse is the 2 x 2
    block plus ``xi_1^-1`` on the remaining diagonal. The rotation enters as
    ``Theta^t (.)^-1 Theta``.
    """
    xi = np.asarray(xi, dtype=complex)
    d = xi.shape[-1]
    if d == 2:
        return _m2_inverse(xi[0], xi[1], eta1)
    if xi[0] == 0:
        raise np.linalg.LinAlgError("xi_1 = 0: M_d is singular for d >= 3")
    if np.any(xi[1:].imag != 0):
        raise ValueError("tangential components xi_2..xi_d must be real")
    xp = xi[1:].real
    r = float(np.linalg.norm(xp))
    core = embed2(_m2_inverse(xi[0], r, eta1), d)
    core[2:, 2:] += np.eye(d - 2) / xi[0]
    if r == 0.0:
        return core
    th = theta_chart(xp)
    return th.T @ core @ th


def inverse_bound(xi, eta1) -> float:
    """Right-hand side shape of the inverse norm estimate (constant omitted)."""
    xi = np.asarray(xi, dtype=complex)
    d = xi.shape[-1]
    num = np.linalg.norm(xi) + abs(eta1)
    out = num / abs(sq(xi) + xi[0] * eta1)
    if d > 2:
        out += (d - 2) / abs(xi[0])
    return float(out)


# --------------------------------------------------------------------------
# orthogonal charts

def householder_chart(w) -> tuple[np.ndarray, int]:
    """Orthogonal ``V`` with ``V w = e_1`` for a unit vector ``w`` in R^m, m >= 3.

    Two charts cover the sphere: ``w_1 <= 0`` reflects along ``w - e_1``;
    ``w_1 > 0`` reflects along ``w + e_1`` and then rotates by pi in the
    (e_1, e_2) plane. A final flip of the last axis makes ``det V = +1`` in
    both charts. Returns ``(V, chart_index)``.
    """
    w = np.asarray(w, dtype=float)
    m = w.shape[0]
    if m < 3:
        raise ValueError("householder_chart is for m >= 3; use the explicit rotation")
    w = w / np.linalg.norm(w)
    e1 = unit(0, m)
    flip = np.eye(m)
    flip[-1, -1] = -1.0
    if w[0] <= 0:
        v = w - e1
        hh = np.eye(m) - 2.0 * np.outer(v, v) / (v @ v)
        return flip @ hh, 0
    v = w + e1
    hh = np.eye(m) - 2.0 * np.outer(v, v) / (v @ v)
    rot = np.eye(m)
    rot[0, 0] = rot[1, 1] = -1.0
    return flip @ rot @ hh, 1


def theta_chart(xi_prime) -> np.ndarray:
    """Orthogonal ``Theta(xi')`` fixing ``e_1`` and sending ``(0, xi')`` to ``|xi'| e_2``.

    ``xi'`` has length ``d - 1``. For d = 2 this is the identity, for d = 3 the
    explicit plane rotation, for d >= 4 a block built from
    :func:`householder_chart`. Homogeneous of degree zero in ``xi'``.
    """
    xp = np.atleast_1d(np.asarray(xi_prime, dtype=float))
    d = xp.shape[0] + 1
    r = float(np.linalg.norm(xp))
    if r == 0.0:
        raise ValueError("Theta is undefined at xi' = 0")
    if d == 2:
        return np.eye(2)
    out = np.eye(d)
    w = xp / r
    if d == 3:
        out[1:, 1:] = [[w[0], w[1]], [-w[1], w[0]]]
    else:
        out[1:, 1:] = householder_chart(w)[0]
    return out


def lambda_frame(nu) -> np.ndarray:
    """Orthogonal ``Lambda`` with ``Lambda nu = e_1`` and ``det Lambda = +1``.

    In the plane this is the rotation whose first row is ``nu`` and second
    row is ``nu`` turned by +90 degrees. In d = 3 it is defined per chart via
    :func:`householder_chart`.
    """
    nu = np.asarray(nu, dtype=float)
    d = nu.shape[0]
    nu = nu / np.linalg.norm(nu)
    if d == 2:
        return np.array([[nu[0], nu[1]], [-nu[1], nu[0]]])
    return householder_chart(nu)[0]


def u_matrix(xi, lam_frame) -> np.ndarray:
    """``U(xi) = Lambda^-1 U_0(Lambda xi) Lambda`` for an orthogonal frame ``Lambda``."""
    lam_frame = np.asarray(lam_frame)
    return lam_frame.T @ u0_matrix(lam_frame @ np.asarray(xi, dtype=complex)) @ lam_frame
