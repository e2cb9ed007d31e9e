"""Frequency bookkeeping and the elastic medium.

Everything here is immutable; downstream modules only read from these objects.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class SemiclassicalParams:
    """Semiclassical parameters attached to a complex frequency ``tau``.

    Only the chart ``Re tau >= |Im tau|`` is supported, where ``h = 1/Re tau``
    and ``z = h*tau = 1 + i*theta``.
    """

    h: float
    theta: float
    z: complex
    tau: complex

    @property
    def z2(self) -> complex:
        return self.z * self.z


def params_from_tau(tau: complex) -> SemiclassicalParams:
    """Build :class:`SemiclassicalParams` from a physical frequency.

    Raises
    ------
    ValueError
        If ``Im tau == 0`` (theta = 0 is outside the supported regime), if
        ``Re tau <= 0``, or if ``|Im tau| > Re tau`` (the second branch of the
        h/theta definition is not modelled).
    """
    tau = complex(tau)
    if tau.real <= 0:
        raise ValueError(f"Re tau must be positive, got {tau}")
    if tau.imag == 0:
        raise ValueError("Im tau = 0 gives theta = 0, which is not supported")
    if abs(tau.imag) > tau.real:
        raise ValueError("|Im tau| > Re tau is outside the supported branch")
    h = 1.0 / tau.real
    z = complex(1.0, tau.imag / tau.real)
    return SemiclassicalParams(h=h, theta=abs(z.imag), z=z, tau=tau)


def params_from_h_theta(h: float, theta: float) -> SemiclassicalParams:
    """Convenience inverse of :func:`params_from_tau` with ``Im z = +theta``."""
    if h <= 0:
        raise ValueError("h must be positive")
    if not 0 < theta <= 1:
        raise ValueError("theta must lie in (0, 1]")
    return params_from_tau(complex(1.0 / h, theta / h))


def in_regime(h: float, theta: float, eps: float = 0.01) -> bool:
    """Whether ``theta >= h**(2/5 - eps)``, the hypothesis of the rate estimate."""
    return theta >= h ** (0.4 - eps)


# --------------------------------------------------------------------------
# medium

def _zero_grad(x):
    return np.zeros_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class Profile:
    """A scalar field on the boundary with its tangential derivative.

    ``value(x)`` and ``grad(x)`` take the boundary coordinate (arclength ``s``
    for curves, a ``(d-1,)`` vector for flat charts). ``normal`` optionally
    returns the Taylor coefficients in the normal variable ``x1`` of the
    interior extension, ``[f(0, x), d1 f(0, x), d1^2 f / 2, ...]``; when absent
    the field is constant along normals.
    """

    value: Callable
    grad: Callable = _zero_grad
    normal: Callable | None = None
    constant: bool = False

    @classmethod
    def const(cls, v: float) -> "Profile":
        v = float(v)
        return cls(value=lambda x, v=v: np.full(np.shape(x), v), constant=True)

    def at_point(self, x) -> float:
        """Scalar value at one boundary point (vector coordinates allowed)."""
        return float(self.value(0.0 if self.constant else x))

    def grad_at(self, x, dim: int) -> np.ndarray:
        if self.constant:
            return np.zeros(dim)
        return np.atleast_1d(np.asarray(self.grad(x), dtype=float))

    def taylor_at(self, x, order: int) -> np.ndarray:
        """Normal Taylor coefficients at one boundary point, shape ``(order + 1,)``."""
        return self.taylor(0.0 if self.constant else x, order)

    def taylor(self, x, order: int) -> np.ndarray:
        """Taylor coefficients in ``x1`` up to ``order`` (inclusive)."""
        if self.normal is None:
            v = np.asarray(self.value(x), dtype=float)
            out = np.zeros((order + 1,) + v.shape)
            out[0] = v
            return out
        c = np.asarray(self.normal(x, order), dtype=float)
        if c.shape[0] < order + 1:
            pad = np.zeros((order + 1 - c.shape[0],) + c.shape[1:])
            c = np.concatenate([c, pad])
        return c[: order + 1]


@dataclass(frozen=True)
class ElasticMedium:
    """Lame parameters and density restricted to the boundary.

    Speeds follow the normalisation ``c_s = mu``, ``c_p = 2 mu + lambda`` and the
    ratios ``k = n / c`` enter the normal roots.
    """

    mu: Profile
    lam: Profile
    n: Profile

    @classmethod
    def constant(cls, mu: float, lam: float, n: float) -> "ElasticMedium":
        med = cls(Profile.const(mu), Profile.const(lam), Profile.const(n))
        med.check(0.0)
        return med

    @property
    def is_constant(self) -> bool:
        return self.mu.constant and self.lam.constant and self.n.constant

    def check(self, x) -> None:
        mu, lam, n = self.mu.value(x), self.lam.value(x), self.n.value(x)
        if np.any(np.asarray(mu) <= 0):
            raise ValueError("mu must be positive")
        if np.any(np.asarray(lam) + np.asarray(mu) <= 0):
            raise ValueError("lambda + mu must be positive")
        if np.any(np.asarray(n) <= 0):
            raise ValueError("density must be positive")

    def at(self, x) -> "MediumValues":
        """Values and tangential gradients at one boundary point."""
        mu, lam, n = self.mu.at_point(x), self.lam.at_point(x), self.n.at_point(x)
        if mu <= 0 or lam + mu <= 0 or n <= 0:
            raise ValueError(f"inadmissible medium at {x}: mu={mu}, lambda={lam}, n={n}")
        dim = max(np.size(x), 1)
        return MediumValues(
            mu=mu, lam=lam, n=n,
            dmu=self.mu.grad_at(x, dim),
            dlam=self.lam.grad_at(x, dim),
            dn=self.n.grad_at(x, dim),
        )


@dataclass(frozen=True)
class MediumValues:
    """Pointwise medium values (and tangential gradients) at one boundary point."""

    mu: float
    lam: float
    n: float
    dmu: np.ndarray = field(default_factory=lambda: np.zeros(1))
    dlam: np.ndarray = field(default_factory=lambda: np.zeros(1))
    dn: np.ndarray = field(default_factory=lambda: np.zeros(1))

    @property
    def cs(self) -> float:
        return self.mu

    @property
    def cp(self) -> float:
        return 2.0 * self.mu + self.lam

    @property
    def ks(self) -> float:
        return self.n / self.cs

    @property
    def kp(self) -> float:
        return self.n / self.cp

    def speed(self, branch: str) -> float:
        return {"s": self.cs, "p": self.cp}[branch]

    def k(self, branch: str) -> float:
        return {"s": self.ks, "p": self.kp}[branch]

    def grad_k(self, branch: str) -> np.ndarray:
        """Tangential gradient of ``k = n / c`` by the quotient rule."""
        c = self.speed(branch)
        dc = self.dmu if branch == "s" else 2.0 * self.dmu + self.dlam
        return self.dn / c - self.n * dc / c**2


def constant_values(mu: float, lam: float, n: float) -> MediumValues:
    """Shorthand for a pointwise medium with zero gradients."""
    if mu <= 0 or lam + mu <= 0 or n <= 0:
        raise ValueError("inadmissible medium")
    return MediumValues(mu=float(mu), lam=float(lam), n=float(n))


# --------------------------------------------------------------------------
# glancing regions

@dataclass(frozen=True)
class RegionInfo:
    region: str
    residual_s: float
    residual_p: float


def region_classify(medium: MediumValues, r0: float) -> RegionInfo:
    """Locate ``r0`` relative to the glancing sets.

    The residuals are ``c_s r0 - n`` and ``c_p r0 - n``; negative means
    hyperbolic for that wave. Since ``c_p > c_s`` the p residual turns positive
    first as ``r0`` grows.
    """
    if r0 < 0:
        raise ValueError("r0 must be nonnegative")
    res_s = medium.cs * r0 - medium.n
    res_p = medium.cp * r0 - medium.n
    if res_p < 0:
        region = "hyperbolic_both"
    elif res_s < 0:
        region = "between"
    else:
        region = "elliptic"
    return RegionInfo(region, res_s, res_p)
