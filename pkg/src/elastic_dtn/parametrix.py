"""Boundary amplitudes, the boundary reduction of the traction, and a 2D parametrix.

The approximate solution is a sum of two oscillatory terms,

    u = exp(i phi_s / h) A_s f + exp(i phi_p / h) A_p f,

with ``A_b = U^t(gamma grad phi_b) Pi_b(nu) T``. At the boundary
``A_s + A_p = I`` and away from it each amplitude is polarized along its own
wave (``Pi_p(grad phi_s) A_s = 0`` and ``Pi_s(grad phi_p) A_p = 0``).

Taking ``-i h`` times the traction at ``x1 = 0`` gives ``m + h q`` exactly;
:func:`boundary_dn_reduction` carries this out numerically from the
amplitudes, independently of the closed forms in :mod:`elastic_dtn.symbol`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra as al
from . import symbol as sy
from .core import ElasticMedium, SemiclassicalParams
from .eikonal import Phase, TaylorPolynomial, solve_eikonal
from .geometry import CotangentPoint, FlatChart, PlanarCurve
from .quantizer import FourierBoundaryData, japanese

BRANCHES = ("s", "p")


def _proj(branch: str, nu) -> np.ndarray:
    return al.pi_s(nu) if branch == "s" else al.pi_p(nu)


@dataclass
class AmplitudePair:
    """Amplitudes at one cotangent point.

    ``grad(b, x1)`` returns ``gamma grad phi_b`` at the anchor; ``at(x1)``
    returns ``(A_s, A_p)``; ``first_order()`` returns ``(A_s^1, A_p^1)``,
    the normal derivatives at the boundary.
    """

    point: CotangentPoint
    phases: dict
    T: np.ndarray

    def grad(self, branch: str, x1: float = 0.0) -> np.ndarray:
        pt = self.point
        ph: Phase = self.phases[branch]
        d1 = ph.series.deriv()
        p = complex(d1(x1)[0] if d1.coef.ndim > 1 else d1(x1))
        if ph.s_grid is None:
            tang = pt.xi @ pt.tangents
        else:
            q = ph.ds_series()
            qv = complex(q(x1)[0])
            tang = qv / (1 - pt.kappa * x1) * pt.tangents[0]
        return p * pt.nu + tang

    def dgrad(self, branch: str) -> np.ndarray:
        """``d1 (gamma grad phi_b)`` at ``x1 = 0`` from the series."""
        pt = self.point
        ph: Phase = self.phases[branch]
        c = ph.at_point()
        out = 2 * c[2] * pt.nu
        if ph.s_grid is not None:
            ds1 = complex(ph.ds_series().coef[1][0])
            out = out + (ds1 + pt.kappa * pt.xi[0]) * pt.tangents[0]
        return out

    def single(self, branch: str, x1: float = 0.0) -> np.ndarray:
        u = al.u_matrix(self.grad(branch, x1), self.point.lam)
        return u.T @ _proj(branch, self.point.nu) @ self.T

    def at(self, x1: float = 0.0):
        return self.single("s", x1), self.single("p", x1)

    def first_order(self):
        out = []
        for b in BRANCHES:
            u = al.u_matrix(self.dgrad(b), self.point.lam)
            out.append(u.T @ _proj(b, self.point.nu) @ self.T)
        return tuple(out)

    def polarization_residual(self, x1: float) -> float:
        """``max(|Pi_p(g_s) A_s|, |Pi_s(g_p) A_p|) / max(|A_s|, |A_p|)``."""
        a_s, a_p = self.at(x1)
        r1 = al.maxnorm(al.pi_p(self.grad("s", x1)) @ a_s)
        r2 = al.maxnorm(al.pi_s(self.grad("p", x1)) @ a_p)
        return max(r1, r2) / max(al.maxnorm(a_s), al.maxnorm(a_p))


def amplitudes(params: SemiclassicalParams, medium: ElasticMedium, chart, point: CotangentPoint,
               phases: dict | None = None, N: int = 6) -> AmplitudePair:
    """Build ``A_s, A_p`` from solved phases (solved here if not given)."""
    if phases is None:
        phases = {b: solve_eikonal(params, medium, chart, point, b, N) for b in BRANCHES}
    mv = medium.at(point.x)
    T = sy.boundary_t(params, mv, point)
    amp = AmplitudePair(point, phases, T)
    # boundary gradients must be rho_b nu - beta0
    for b in BRANCHES:
        rb = sy.rho(params, mv, point.r0, b)
        g0 = amp.grad(b, 0.0)
        if al.maxnorm(g0 - (rb * point.nu - point.beta0)) > 1e-10 * (1 + abs(rb)):
            raise RuntimeError("phase gradient at the boundary disagrees with rho nu - beta0")
    return amp


def u_pi_identity(xi, nu, lam) -> float:
    """Residual of ``U(xi) Pi_p(xi) U^t(xi) = (xi^2)^2 Pi_p(nu)`` relative to ``|xi|^4``.

    ``|xi|^2`` is the Hermitian norm, so isotropic ``xi`` (``xi^2 = 0``) are covered.
    """
    u = al.u_matrix(xi, lam)
    lhs = u @ al.pi_p(xi) @ u.T
    rhs = al.sq(xi) ** 2 * al.pi_p(nu)
    scale = np.sum(np.abs(xi) ** 2) ** 2
    return al.maxnorm(lhs - rhs) / max(scale, 1e-300)


# --------------------------------------------------------------------------
# boundary reduction

def _leading_traction(lam: float, mu: float, g, a, nu) -> np.ndarray:
    """``-i h exp(-i phi/h) B (exp(i phi/h) a)`` at order ``h^0`` as a matrix on ``f``.

    ``lam <g, a> nu + mu <nu, a> g + mu <nu, g> a`` with ``a`` a matrix.
    """
    return lam * al.outer(g, nu) @ a + mu * al.outer(nu, g) @ a + mu * (nu @ g) * a


def boundary_dn_reduction(params, medium: ElasticMedium, chart, point: CotangentPoint, N: int = 6):
    """``(m_check, q_check)`` from the traction of the two-phase ansatz at ``x1 = 0``.

    The ``h^1`` part only involves normal derivatives of the amplitudes since
    ``A_s + A_p = I`` on the boundary kills the tangential ones.
    """
    amp = amplitudes(params, medium, chart, point, N=N)
    mv = medium.at(point.x)
    nu = point.nu
    a0 = amp.at(0.0)
    m = sum(_leading_traction(mv.lam, mv.mu, amp.grad(b, 0.0), a, nu) for b, a in zip(BRANCHES, a0))
    a1 = sum(amp.first_order())
    d = point.d
    q = -1j * ((mv.lam + mv.mu) * np.outer(nu, nu) + mv.mu * np.eye(d)) @ a1
    return m, q


def phi2_closed(params, medium: ElasticMedium, point: CotangentPoint, branch: str) -> complex:
    """Second normal coefficient of the phase from the order-``x1`` balance.

    ``phi_2 = -(kappa xi^2 + xi ds rho) / (2 rho) - (c_1 z^2 n_0 / c_0 - z^2 n_1) / (4 c_0 rho)``
    with ``c_1, n_1`` the normal derivatives of the medium.
    """
    mv = medium.at(point.x)
    rb = sy.rho(params, mv, point.r0, branch)
    mu1 = medium.mu.taylor_at(point.x, 1)[1]
    lam1 = medium.lam.taylor_at(point.x, 1)[1]
    n1 = float(medium.n.taylor_at(point.x, 1)[1])
    c0 = mv.speed(branch)
    c1 = float(mu1 if branch == "s" else 2 * mu1 + lam1)
    z2 = params.z2
    drho = np.atleast_1d(sy.grad_rho(params, mv, point, branch))
    tang = (point.kappa * point.r0 + point.xi @ drho) / (2 * rb)
    return -tang - (c1 * z2 * mv.n / c0 - z2 * n1) / (4 * c0 * rb)


def q_complement(params, medium: ElasticMedium, point: CotangentPoint) -> np.ndarray:
    """Part of the first-order boundary term not contained in :func:`symbol.q_symbol`.

    ``-i P(nu) [2 phi_s2 Pi_s(nu) + 2 phi_p2 Pi_p(nu) + U^t(t (grad rho_s + kappa xi))] T``.
    Zero for a constant medium on a flat boundary.
    """
    mv = medium.at(point.x)
    nu = point.nu
    t = sy.boundary_t(params, mv, point)
    inner = 2 * phi2_closed(params, medium, point, "s") * al.pi_s(nu)
    inner = inner + 2 * phi2_closed(params, medium, point, "p") * al.pi_p(nu)
    g = np.atleast_1d(sy.grad_rho(params, mv, point, "s")) + point.kappa * point.xi
    inner = inner + al.u_matrix(g @ point.tangents, point.lam).T
    return -1j * sy.traction_matrix(mv, nu) @ inner @ t


# --------------------------------------------------------------------------
# parametrix on the disk

def smooth_cutoff(x):
    """``phi0``: equal to 1 on ``|x| <= 1``, 0 on ``|x| >= 2``, smooth in between."""
    x = np.abs(np.asarray(x, dtype=float))
    t = np.clip(x - 1.0, 0.0, 1.0)

    def bump(u):
        return np.where(u > 0, np.exp(-1.0 / np.where(u > 0, u, 1.0)), 0.0)

    return bump(1 - t) / (bump(1 - t) + bump(t))


def cutoff_window(x1, xi, rho_s, rho_p, delta: float = 0.05, eps: float = 0.1):
    """``Psi = phi0(x1 <xi>^eps / delta) phi0(x1 / (|rho_s|^3 delta)) phi0(x1 / (|rho_p|^3 delta))``."""
    return (smooth_cutoff(x1 * japanese(xi) ** eps / delta)
            * smooth_cutoff(x1 / (np.abs(rho_s) ** 3 * delta))
            * smooth_cutoff(x1 / (np.abs(rho_p) ** 3 * delta)))


@dataclass
class DiskParametrix:
    """Mode-wise data of the two-phase parametrix on a disk with a constant medium."""

    params: SemiclassicalParams
    medium: ElasticMedium
    curve: PlanarCurve
    data: FourierBoundaryData
    series: dict
    frame_amps: dict
    delta: float
    eps: float

    def field_polar(self, x1, s) -> np.ndarray:
        """Cartesian components of the parametrix at normal coordinates ``(x1, s)``.

        ``x1`` and ``s`` broadcast; result has shape ``broadcast + (2,)``.
        """
        x1, s = np.broadcast_arrays(np.asarray(x1, float), np.asarray(s, float))
        h = self.params.h
        modes = self.data.modes
        xi = self.data.xi(h)
        lamf = self.curve.frame(s)
        # f in the rotated frame is Lambda(s) f_n, then the frame amplitude acts,
        # then Lambda(s)^t brings the result back.
        out = np.zeros(x1.shape + (2,), dtype=complex)
        rs = self.series["s"].coef[1]
        rp = self.series["p"].coef[1]
        for k, n in enumerate(modes):
            fn = self.data.coef[k]
            if not np.any(fn):
                continue
            psi = cutoff_window(x1, xi[k], rs[k], rp[k], self.delta, self.eps)
            g = np.einsum("...ij,j->...i", lamf, fn)
            acc = np.zeros_like(out)
            for b in BRANCHES:
                ser = TaylorPolynomial(self.series[b].coef[:, k])
                tilde = ser(x1) - ser.coef[0]
                amp = self.frame_amps[b](k, x1)
                acc += (np.exp(1j * tilde / h) * psi)[..., None] * np.einsum("...ij,...j->...i", amp, g)
            e = np.exp(2j * np.pi * n * s / self.curve.length) / np.sqrt(self.curve.length)
            out += e[..., None] * np.einsum("...ji,...j->...i", lamf, acc)
        return out

    def field_cartesian(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        R = self.curve.radius
        r = np.hypot(pts[..., 0], pts[..., 1])
        s = R * np.mod(np.arctan2(pts[..., 1], pts[..., 0]), 2 * np.pi)
        return self.field_polar(R - r, s)

    def pde_residual(self, pts, step: float | None = None) -> np.ndarray:
        """``(h^2 Lame + z^2 n) u`` at Cartesian points by 4th-order differences."""
        h = self.params.h
        step = 0.01 * h if step is None else step
        mv = self.medium.at(0.0)
        pts = np.asarray(pts, dtype=float)
        offs = np.arange(-2, 3)
        ox, oy = np.meshgrid(offs, offs, indexing="ij")
        stencil = pts[..., None, None, :] + step * np.stack([ox, oy], -1)
        u = self.field_cartesian(stencil)  # (..., 5, 5, 2)
        w1 = np.array([1, -8, 0, 8, -1]) / (12 * step)
        w2 = np.array([-1, 16, -30, 16, -1]) / (12 * step**2)
        uxx = np.einsum("a,...ak->...k", w2, u[..., :, 2, :])
        uyy = np.einsum("b,...bk->...k", w2, u[..., 2, :, :])
        uxy = np.einsum("a,b,...abk->...k", w1, w1, u)
        lap = uxx + uyy
        graddiv = np.stack([uxx[..., 0] + uxy[..., 1], uxy[..., 0] + uyy[..., 1]], -1)
        lame = mv.mu * lap + (mv.lam + mv.mu) * graddiv
        return h**2 * lame + self.params.z2 * mv.n * u[..., 2, 2, :]


def evaluate_parametrix(params: SemiclassicalParams, medium: ElasticMedium, curve: PlanarCurve,
                        data: FourierBoundaryData, N: int = 6, delta: float = 0.05, eps: float = 0.1) -> DiskParametrix:
    """Set up the parametrix for boundary data ``data`` on a disk.

    Constant media only: phases and frame amplitudes are then independent of
    ``s`` and are computed once per mode.
    """
    if curve.radius is None or not medium.is_constant:
        raise ValueError("the parametrix evaluator supports a disk with a constant medium")
    if data.d != 2:
        raise ValueError("data must have two components")
    h = params.h
    xi = data.xi(h)
    series = {}
    polys = {}
    for b in BRANCHES:
        coef = np.zeros((N + 1, xi.shape[0]), dtype=complex)
        for k, x in enumerate(xi):
            pt = CotangentPoint.on_curve(curve, 0.0, x)
            ph = solve_eikonal(params, medium, curve, pt, b, N)
            coef[:, k] = ph.at_point()
        series[b] = TaylorPolynomial(coef)
        polys[b] = coef
    mv = medium.at(0.0)
    kappa = 1.0 / curve.radius
    e1 = al.unit(0, 2)
    tvec = np.array([0.0, -1.0])  # Lambda t on a CCW curve

    def make(b):
        proj = _proj(b, e1)
        ts = []
        for x in xi:
            rs, rp = sy.rho_pair(params, mv, x * x)
            ts.append(sy.w0_and_t(rs, rp, zeta=np.array([0.0, -x]))[1])
        ts = np.array(ts)

        def amp(k, x1):
            ser = TaylorPolynomial(polys[b][:, k])
            p = ser.deriv()(x1)
            q = xi[k] / (1 - kappa * x1)
            g = p[..., None] * e1 + q[..., None] * tvec
            u0t = np.zeros(np.shape(x1) + (2, 2), dtype=complex)
            u0t[..., 0, 0] = g[..., 0]
            u0t[..., 1, 1] = g[..., 0]
            u0t[..., 0, 1] = -g[..., 1]
            u0t[..., 1, 0] = g[..., 1]
            return u0t @ proj @ ts[k]

        return amp

    frame_amps = {b: make(b) for b in BRANCHES}
    return DiskParametrix(params, medium, curve, data, series, frame_amps, delta, eps)
