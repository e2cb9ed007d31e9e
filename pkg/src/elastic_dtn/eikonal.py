"""Complex phases as truncated power series in the normal variable.

The phase solves ``c(x) (gamma grad phi)^2 = z^2 n(x)`` modulo ``x1^N`` near
the boundary. In normal coordinates ``(x1, s)`` about a planar curve,
``(gamma grad phi)^2 = (d1 phi)^2 + (ds phi)^2 / (1 - kappa x1)^2``; on a flat
chart the tangential part is ``|xi|^2``.

Writing ``phi = phi_0 + sum_k phi_k x1^k`` with ``phi_1 = rho``, the
coefficient of ``x1^m`` in the equation is
``2 (m+1) c_0 rho phi_{m+1} + (terms in phi_1..phi_m)``, so each new
coefficient is one division by ``2 (m+1) c_0 rho``. Solving through
``phi_N`` leaves a remainder of order ``x1^N``.

Tangential derivatives of the coefficients are spectral (FFT) on a periodic
arclength grid anchored at the requested boundary point.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .core import ElasticMedium, SemiclassicalParams
from .geometry import CotangentPoint, FlatChart, PlanarCurve


class TaylorPolynomial:
    """Truncated power series ``sum_{k<=order} c_k x1^k``.

    ``coef`` has shape ``(order + 1,) + batch`` so a whole grid of series can
    be carried at once. Products truncate at the smaller order.
    """

    def __init__(self, coef):
        self.coef = np.asarray(coef, dtype=complex)

    @property
    def order(self) -> int:
        return self.coef.shape[0] - 1

    @classmethod
    def constant(cls, value, order: int) -> "TaylorPolynomial":
        v = np.asarray(value, dtype=complex)
        c = np.zeros((order + 1,) + v.shape, dtype=complex)
        c[0] = v
        return cls(c)

    def truncate(self, order: int) -> "TaylorPolynomial":
        if order <= self.order:
            return TaylorPolynomial(self.coef[: order + 1])
        pad = np.zeros((order - self.order,) + self.coef.shape[1:], dtype=complex)
        return TaylorPolynomial(np.concatenate([self.coef, pad]))

    def __add__(self, other):
        if not isinstance(other, TaylorPolynomial):
            out = self.coef.copy()
            out[0] = out[0] + other
            return TaylorPolynomial(out)
        k = min(self.order, other.order)
        return TaylorPolynomial(self.coef[: k + 1] + other.coef[: k + 1])

    __radd__ = __add__

    def __neg__(self):
        return TaylorPolynomial(-self.coef)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TaylorPolynomial):
            return TaylorPolynomial(self.coef * other)
        k = min(self.order, other.order)
        out = np.zeros((k + 1,) + np.broadcast_shapes(self.coef.shape[1:], other.coef.shape[1:]), dtype=complex)
        for i in range(k + 1):
            for j in range(k + 1 - i):
                out[i + j] += self.coef[i] * other.coef[j]
        return TaylorPolynomial(out)

    __rmul__ = __mul__

    def deriv(self) -> "TaylorPolynomial":
        k = np.arange(1, self.order + 1).reshape((-1,) + (1,) * (self.coef.ndim - 1))
        return TaylorPolynomial(self.coef[1:] * k)

    def __call__(self, x1):
        """Horner evaluation; ``x1`` broadcasts against the batch shape."""
        x1 = np.asarray(x1)
        out = np.zeros(np.broadcast_shapes(x1.shape, self.coef.shape[1:]), dtype=complex)
        for c in self.coef[::-1]:
            out = out * x1 + c
        return out


def metric_series(kappa, order: int) -> TaylorPolynomial:
    """``1/(1 - kappa x1)^2 = sum (k+1) kappa^k x1^k``."""
    kappa = np.asarray(kappa, dtype=float)
    k = np.arange(order + 1).reshape((-1,) + (1,) * kappa.ndim)
    return TaylorPolynomial((k + 1) * kappa[None] ** k)


def spectral_ds(values: np.ndarray, length: float) -> np.ndarray:
    """Derivative along the last axis of periodic samples on ``[0, length)``."""
    m = values.shape[-1]
    if m == 1:
        return np.zeros_like(values)
    freq = 2 * np.pi * np.fft.fftfreq(m, d=length / m)
    if m % 2 == 0:
        freq[m // 2] = 0.0
    return np.fft.ifft(1j * freq * np.fft.fft(values, axis=-1), axis=-1)


# --------------------------------------------------------------------------

@dataclass
class Phase:
    """Solved phase at a cotangent point (batch over an arclength grid for curves).

    ``coef[0]`` is the boundary value of the linear phase (``xi s`` on curves,
    ``<xi, x'>`` on flat charts), ``coef[1] = rho``. Entry ``[:, 0]`` of a
    batched phase belongs to the requested point.
    """

    series: TaylorPolynomial
    branch: str
    xi: np.ndarray
    c: TaylorPolynomial
    n: TaylorPolynomial
    z2: complex
    kappa: np.ndarray | None = None
    s_grid: np.ndarray | None = None
    length: float | None = None

    @property
    def N(self) -> int:
        return self.series.order

    @property
    def rho(self):
        return self.series.coef[1]

    def at_point(self) -> np.ndarray:
        """Coefficients ``phi_0..phi_N`` at the anchor point."""
        c = self.series.coef
        return c[:, 0] if c.ndim > 1 else c

    def tilde(self) -> TaylorPolynomial:
        """``phi - phi_0``: the part that carries normal decay."""
        c = self.series.coef.copy()
        c[0] = 0
        return TaylorPolynomial(c)

    def ds_series(self) -> TaylorPolynomial:
        """Tangential derivative ``ds phi`` as a series (curves only)."""
        c = self.series.coef
        if self.s_grid is None:
            raise ValueError("flat phases have constant tangential gradient")
        out = spectral_ds(c, self.length)
        out[0] = self.xi[0]
        return TaylorPolynomial(out)

    def tangential_sq(self, order: int) -> TaylorPolynomial:
        """``(ds phi)^2 / (1 - kappa x1)^2`` or ``|xi|^2`` as a series."""
        if self.s_grid is None:
            return TaylorPolynomial.constant(np.full(self.series.coef.shape[1:], self.xi @ self.xi), order)
        q = self.ds_series().truncate(order)
        return metric_series(self.kappa, order) * q * q

    def equation_series(self, order: int) -> TaylorPolynomial:
        """Coefficients of ``c (gamma grad phi)^2 - z^2 n`` up to ``order``."""
        p = self.series.deriv().truncate(order)
        c = self.c.truncate(order)
        return c * (p * p + self.tangential_sq(order)) - self.n.truncate(order) * self.z2

    def _terms(self, x1):
        x1 = np.asarray(x1, dtype=float)
        p = self.series.deriv()
        if self.s_grid is None:
            tang = complex(self.xi @ self.xi)
        else:
            q = self.ds_series()
            tang = (q(x1[..., None])[..., 0]) ** 2 / (1 - self.kappa[0] * x1) ** 2
        pv = p(x1[..., None])[..., 0] if p.coef.ndim > 1 else p(x1)
        cv = self.c(x1[..., None])[..., 0] if self.c.coef.ndim > 1 else self.c(x1)
        nv = self.n(x1[..., None])[..., 0] if self.n.coef.ndim > 1 else self.n(x1)
        return cv, pv, tang, nv

    def residual(self, x1) -> np.ndarray:
        """Pointwise ``c (gamma grad phi)^2 - z^2 n`` at the anchor point.

        Uses the exact metric factor and the medium's normal polynomial; no
        truncation of the composed expression.
        """
        cv, pv, tang, nv = self._terms(x1)
        return cv * (pv * pv + tang) - self.z2 * nv

    def residual_scale(self, x1) -> np.ndarray:
        """Size of the cancelling terms, ``|c| (|phi'|^2 + |tangential|) + |z^2 n|``."""
        cv, pv, tang, nv = self._terms(x1)
        return np.abs(cv) * (np.abs(pv) ** 2 + np.abs(tang)) + np.abs(self.z2 * nv)

    def remainder(self, x1, extra: int = 16) -> np.ndarray:
        """Order ``>= N`` part of the equation series at the anchor, ``x1^N Phi``."""
        e = self.equation_series(self.N + extra).coef
        e = e[:, 0] if e.ndim > 1 else e
        e[: self.N] = 0
        return TaylorPolynomial(e)(x1)


def _medium_series(medium: ElasticMedium, x, order: int, branch: str, single: bool = False):
    """Normal series of ``c_b`` and ``n``; ``single`` for one (possibly vector) point."""
    def ser(prof):
        return prof.taylor_at(x, order) if single else prof.taylor(x, order)

    mu = ser(medium.mu)
    if branch == "s":
        c = mu
    elif branch == "p":
        c = 2 * mu + ser(medium.lam)
    else:
        raise ValueError("branch must be 's' or 'p'")
    n = ser(medium.n)
    return TaylorPolynomial(c), TaylorPolynomial(n)


def _solve(series_c, series_n, z2, tangential, N: int, batch_shape, ds_update=None):
    """Shared coefficient recursion. ``tangential(coef)`` returns the tangential series."""
    coef = np.zeros((N + 1,) + batch_shape, dtype=complex)
    c0 = series_c.coef[0]
    n0 = series_n.coef[0]
    t0 = tangential(coef).coef[0]
    w = z2 * n0 / c0 - t0
    rho = np.sqrt(w + 0j)
    if np.any(rho == 0):
        raise ZeroDivisionError("rho = 0: degenerate normal root")
    coef[1] = rho
    for m in range(1, N):
        p = TaylorPolynomial(coef).deriv().truncate(m)
        e = series_c.truncate(m) * (p * p + tangential(coef).truncate(m)) - series_n.truncate(m) * z2
        coef[m + 1] = -e.coef[m] / (2 * (m + 1) * c0 * rho)
    return coef


def solve_eikonal(params: SemiclassicalParams, medium: ElasticMedium, chart, point: CotangentPoint,
                  branch: str, N: int = 6, m_grid: int | None = None) -> Phase:
    """Taylor coefficients ``phi_0..phi_N`` of the ``branch`` phase.

    Parameters
    ----------
    chart : PlanarCurve or FlatChart
        Geometry. Flat charts require a medium that varies only with ``x1``.
    point : CotangentPoint
        Anchor point; for curves the arclength grid starts here.
    N : int
        Remainder order, 2..12.
    m_grid : int, optional
        Arclength grid size for curves. Defaults to 1 when the medium is
        constant and the curvature is uniform, 64 otherwise.
    """
    if not 2 <= N <= 12:
        raise ValueError("N must lie in 2..12")
    if params.theta <= 0:
        raise ValueError("theta must be positive")
    z2 = params.z2
    if isinstance(chart, FlatChart):
        x = np.zeros(point.d - 1) if point.x is None else np.atleast_1d(point.x)
        for prof in (medium.mu, medium.lam, medium.n):
            if np.any(prof.grad_at(x, point.d - 1) != 0):
                raise ValueError("flat charts need a medium that varies only with x1")
        c, n = _medium_series(medium, point.x, N, branch, single=True)
        r0 = point.r0

        def tangential(coef):
            return TaylorPolynomial.constant(r0, N)

        coef = _solve(c, n, z2, tangential, N, ())
        coef[0] = 0.0 if point.x is None else point.xi @ np.atleast_1d(point.x)
        return Phase(TaylorPolynomial(coef), branch, point.xi, c, n, z2)

    if not isinstance(chart, PlanarCurve):
        raise TypeError("chart must be a PlanarCurve or FlatChart")
    if m_grid is None:
        uniform = np.ptp(chart.kappa(chart.grid(16))) == 0
        m_grid = 1 if (medium.is_constant and uniform) else 64
    s = float(point.x) + chart.grid(m_grid)
    c, n = _medium_series(medium, s, N, branch)
    kappa = np.asarray(chart.kappa(s), dtype=float)
    g = metric_series(kappa, N)
    xi = float(point.xi[0])

    def tangential(coef):
        q = spectral_ds(coef, chart.length)
        q[0] = xi
        q = TaylorPolynomial(q)
        return g * q * q

    coef = _solve(c, n, z2, tangential, N, (m_grid,))
    coef[0] = xi * s
    return Phase(TaylorPolynomial(coef), branch, point.xi, c, n, z2, kappa=kappa, s_grid=s, length=chart.length)


# --------------------------------------------------------------------------
# quantitative properties

def collar_width(rho, delta: float) -> float:
    return 2 * delta * min(1.0, abs(rho) ** 3)


@dataclass
class PhaseCheck:
    delta: float
    collar: float
    min_im_ratio: float
    min_grad_ratio: float
    passed: bool


def _check_on(phase: Phase, width: float, n_samples: int):
    rho = phase.at_point()[1]
    x1 = np.linspace(0.0, width, n_samples)[1:]
    tilde = phase.tilde()
    if tilde.coef.ndim > 1:
        tilde = TaylorPolynomial(tilde.coef[:, :1])
        dphi = TaylorPolynomial(phase.series.deriv().coef[:, :1])
        im_t = tilde(x1[:, None])[:, 0].imag
        grad = np.abs(dphi(x1[:, None])[:, 0])
    else:
        im_t = tilde(x1).imag
        grad = np.abs(phase.series.deriv()(x1))
    im_ratio = np.min(im_t / (x1 * rho.imag))
    grad_ratio = np.min(grad / abs(rho))
    return float(im_ratio), float(grad_ratio)


def phase_checks(phase: Phase, delta: float | None = None, n_samples: int = 64,
                 deltas=tuple(2.0 ** -k for k in range(1, 13))) -> PhaseCheck:
    """Check ``Im phi~ >= x1 Im rho / 2`` and ``|d1 phi| >= |rho| / 2`` on the collar.

    The collar is ``0 <= x1 <= 2 delta min(1, |rho|^3)``. With ``delta=None``
    the largest passing value on the dyadic grid ``deltas`` is reported.
    """
    rho = phase.at_point()[1]
    cands = [delta] if delta is not None else sorted(deltas, reverse=True)
    last = None
    for dl in cands:
        w = collar_width(rho, dl)
        a, b = _check_on(phase, w, n_samples)
        last = PhaseCheck(dl, w, a, b, a >= 0.5 and b >= 0.5)
        if last.passed:
            return last
    return last


def decay_constant(phase: Phase, h: float, theta: float, width: float, n_samples: int = 64) -> float:
    """Largest ``C`` with ``|exp(i phi~ / h)| <= exp(-C x1 theta / h)`` on ``(0, width]``."""
    x1 = np.linspace(0.0, width, n_samples)[1:]
    t = phase.tilde()
    if t.coef.ndim > 1:
        t = TaylorPolynomial(t.coef[:, 0])
    logmag = -t(x1).imag / h
    return float(np.min(-logmag / (x1 * theta / h)))


def relative_residual(phase: Phase, x1) -> np.ndarray:
    return np.abs(phase.residual(x1)) / phase.residual_scale(x1)


def halving_ratio(phase: Phase, x1: float, route: str = "auto", floor: float = 1e-11):
    """``|residual(x1/2)| / |residual(x1)|``; about ``2^-N`` in the asymptotic range.

    ``route="direct"`` evaluates the equation pointwise. ``route="series"``
    sums the order ``>= N`` tail of the equation series, which is the same
    quantity without the cancellation of O(1) terms. ``"auto"`` uses the
    direct route unless the smaller residual is below ``floor`` times the
    term scale, where roundoff would dominate.

    Returns
    -------
    ratio : float
    route : str
        The route actually used.
    """
    x = np.array([x1, x1 / 2])
    if route == "auto":
        rel = relative_residual(phase, x)
        route = "direct" if np.min(rel) > floor else "series"
    r = np.abs(phase.residual(x) if route == "direct" else phase.remainder(x))
    with np.errstate(divide="ignore", invalid="ignore"):
        return float(r[1] / r[0]), route


PHASE_COLUMNS = ["s", "xi", "branch", "k", "re_phi", "im_phi"]


def write_phase_csv(path, phases) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(PHASE_COLUMNS)
        for ph in phases:
            coef = ph.at_point()
            s0 = float(ph.s_grid[0]) if ph.s_grid is not None else 0.0
            for k, c in enumerate(coef):
                w.writerow([s0, float(ph.xi[0]), ph.branch, k, c.real, c.imag])
