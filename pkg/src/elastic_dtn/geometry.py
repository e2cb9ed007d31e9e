"""Boundary geometry: closed planar curves, flat charts and cotangent points.

Orientation
-----------
Curves are traversed counter-clockwise by arclength ``s``. The unit normal
``nu`` points into the domain and is the tangent turned by +90 degrees, so a
convex curve has positive curvature and the interior metric factor along
normals is ``1/(1 - kappa x1)``.

Fourier sign
------------
Boundary data are expanded in ``exp(+i xi s / h)``. The tangential gradient of
the boundary phase is therefore ``+xi t`` and the tangential symbol vector is
``beta0 = -xi t`` (the phase gradient at the boundary is ``rho nu - beta0``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import lambda_frame


@dataclass(frozen=True)
class PlanarCurve:
    """Closed curve of length ``length`` given by its signed curvature.

    Parameters
    ----------
    length : float
        Total arclength.
    kappa : callable
        Signed curvature ``kappa(s)``, vectorised.
    dkappa : callable
        Derivative ``kappa'(s)``.
    angle : callable
        Tangent angle ``alpha(s)``; ``t = (cos alpha, sin alpha)``.
    point : callable, optional
        Position ``x(s)`` with shape ``s.shape + (2,)``. Only needed for
        interior evaluation.
    radius : float, optional
        Set for circles; enables the disk reference solver.
    """

    length: float
    kappa: Callable
    dkappa: Callable
    angle: Callable
    point: Callable | None = None
    radius: float | None = None

    @classmethod
    def circle(cls, radius: float = 1.0) -> "PlanarCurve":
        if radius <= 0:
            raise ValueError("radius must be positive")
        R = float(radius)

        def point(s):
            s = np.asarray(s, dtype=float)
            return R * np.stack([np.cos(s / R), np.sin(s / R)], axis=-1)

        return cls(
            length=2 * np.pi * R,
            kappa=lambda s: np.full(np.shape(s), 1.0 / R),
            dkappa=lambda s: np.zeros(np.shape(s)),
            angle=lambda s: np.asarray(s, dtype=float) / R + np.pi / 2,
            point=point,
            radius=R,
        )

    @classmethod
    def from_curvature(cls, kappa: Callable, length: float, n_grid: int = 1024) -> "PlanarCurve":
        """Curve with prescribed periodic curvature (mean must be ``2 pi / length``).

        The tangent angle is integrated spectrally; the curve closes only if
        ``int kappa ds = 2 pi``, which is checked.
        """
        s = np.arange(n_grid) * length / n_grid
        k = np.asarray(kappa(s), dtype=float)
        if abs(k.mean() * length - 2 * np.pi) > 1e-8:
            raise ValueError("total curvature must equal 2 pi for a closed curve")
        kh = np.fft.rfft(k - k.mean())
        freq = 2 * np.pi * np.fft.rfftfreq(n_grid, d=length / n_grid)
        with np.errstate(divide="ignore", invalid="ignore"):
            ih = np.where(freq > 0, kh / (1j * freq), 0.0)
            dh = kh * 1j * freq

        def trig(coef, s):
            s = np.asarray(s, dtype=float)
            ph = np.exp(1j * np.multiply.outer(s, freq))
            w = np.full(freq.shape, 2.0)
            w[0] = 1.0
            if n_grid % 2 == 0:
                w[-1] = 1.0
            return (ph @ (w * coef)).real / n_grid

        k0 = k.mean()
        return cls(
            length=float(length),
            kappa=kappa,
            dkappa=lambda s: trig(dh, s),
            angle=lambda s: np.pi / 2 + k0 * np.asarray(s, dtype=float) + trig(ih, s),
        )

    def tangent(self, s) -> np.ndarray:
        a = self.angle(s)
        return np.stack([np.cos(a), np.sin(a)], axis=-1)

    def normal(self, s) -> np.ndarray:
        """Inward unit normal (tangent turned by +90 degrees)."""
        a = self.angle(s)
        return np.stack([-np.sin(a), np.cos(a)], axis=-1)

    def frame(self, s) -> np.ndarray:
        """``Lambda(s)`` with ``Lambda nu = e1``; shape ``s.shape + (2, 2)``."""
        nu = self.normal(s)
        n1, n2 = nu[..., 0], nu[..., 1]
        return np.stack([np.stack([n1, n2], -1), np.stack([-n2, n1], -1)], -2)

    def grid(self, m: int) -> np.ndarray:
        return np.arange(m) * self.length / m


@dataclass(frozen=True)
class FlatChart:
    """Half-space ``x1 > 0`` in R^d with ``nu = e1`` and tangents ``e2..ed``."""

    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be at least 2")

    def normal(self, x=None) -> np.ndarray:
        nu = np.zeros(self.d)
        nu[0] = 1.0
        return nu

    def frame(self, x=None) -> np.ndarray:
        return np.eye(self.d)


@dataclass(frozen=True)
class CotangentPoint:
    """A boundary point with a tangential frequency, in ambient coordinates.

    Attributes
    ----------
    x : float or ndarray
        Arclength (curves) or chart coordinates (flat).
    xi : ndarray
        Tangential frequency, length ``d - 1``.
    nu : ndarray
        Inward unit normal.
    tangents : ndarray
        ``(d-1, d)`` array of unit tangents matching ``xi``.
    lam : ndarray
        Frame ``Lambda`` with ``Lambda nu = e1``.
    kappa, dkappa : float
        Curvature data (zero for flat charts).
    """

    x: object
    xi: np.ndarray
    nu: np.ndarray
    tangents: np.ndarray
    lam: np.ndarray
    kappa: float = 0.0
    dkappa: float = 0.0

    @property
    def d(self) -> int:
        return self.nu.shape[0]

    @property
    def beta0(self) -> np.ndarray:
        return -(self.xi @ self.tangents)

    @property
    def r0(self) -> float:
        return float(self.xi @ self.xi)

    @property
    def zeta(self) -> np.ndarray:
        """``zeta = -Lambda beta0``; ``zeta_1 = 0`` and ``zeta^2 = r0``."""
        z = -(self.lam @ self.beta0)
        z[0] = 0.0
        return z

    @classmethod
    def on_curve(cls, curve: PlanarCurve, s: float, xi: float) -> "CotangentPoint":
        s = float(s)
        return cls(
            x=s,
            xi=np.array([float(xi)]),
            nu=curve.normal(s),
            tangents=curve.tangent(s)[None, :],
            lam=curve.frame(s),
            kappa=float(curve.kappa(s)),
            dkappa=float(curve.dkappa(s)),
        )

    @classmethod
    def flat(cls, xi, x=None) -> "CotangentPoint":
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        d = xi.shape[0] + 1
        chart = FlatChart(d)
        return cls(
            x=np.zeros(d - 1) if x is None else np.asarray(x, dtype=float),
            xi=xi,
            nu=chart.normal(),
            tangents=np.eye(d)[1:],
            lam=chart.frame(),
        )

    @classmethod
    def from_normal(cls, nu, xi, x=None) -> "CotangentPoint":
        """Flat boundary with an arbitrary inward normal (tangents from ``Lambda``)."""
        nu = np.asarray(nu, dtype=float)
        nu = nu / np.linalg.norm(nu)
        lam = lambda_frame(nu)
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        return cls(
            x=np.zeros(nu.shape[0] - 1) if x is None else np.asarray(x, dtype=float),
            xi=xi, nu=nu,
            tangents=lam[1:],
            lam=lam,
        )
