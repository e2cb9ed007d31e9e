"""Semiclassical quantization of matrix symbols on a closed curve.

Boundary fields are stored as Fourier coefficients
``f(s) = sum_n f_n exp(2 pi i n s / L) / sqrt(L)`` so that
``||f||_{L^2}^2 = sum_n |f_n|^2``. A symbol ``a(s, xi)`` acts by the left
(Kohn-Nirenberg) rule

    (Op_h(a) f)(s) = sum_n a(s, xi_n) f_n exp(2 pi i n s / L) / sqrt(L),

with ``xi_n = 2 pi h n / L``. Symbols that do not depend on ``s`` act
diagonally on modes.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable

import numpy as np


def japanese(xi):
    """``<xi> = (1 + |xi|^2)^(1/2)``."""
    return np.sqrt(1.0 + np.abs(xi) ** 2)


def grid_size(n_max: int, pad: int = 8) -> int:
    """Smallest power of two holding modes up to ``n_max`` plus ``pad`` guard modes."""
    need = 2 * (n_max + pad) + 1
    return 1 << int(np.ceil(np.log2(need)))


@dataclass
class FourierBoundaryData:
    """``d``-component field on a closed curve of length ``length``.

    ``coef[k]`` is the coefficient of mode ``n = k - n_max``.
    """

    coef: np.ndarray
    length: float

    def __post_init__(self):
        self.coef = np.asarray(self.coef, dtype=complex)
        if self.coef.ndim == 1:
            self.coef = self.coef[:, None]
        if self.coef.shape[0] % 2 != 1:
            raise ValueError("need an odd number of modes -n_max..n_max")

    @property
    def n_max(self) -> int:
        return (self.coef.shape[0] - 1) // 2

    @property
    def d(self) -> int:
        return self.coef.shape[1]

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1)

    def xi(self, h: float) -> np.ndarray:
        return 2 * np.pi * h * self.modes / self.length

    @classmethod
    def zeros(cls, n_max: int, d: int, length: float) -> "FourierBoundaryData":
        return cls(np.zeros((2 * n_max + 1, d), dtype=complex), length)

    @classmethod
    def single_mode(cls, n0: int, vec, n_max: int, length: float) -> "FourierBoundaryData":
        vec = np.asarray(vec, dtype=complex)
        out = cls.zeros(n_max, vec.shape[0], length)
        out.coef[n0 + n_max] = vec
        return out

    @classmethod
    def random(cls, n_max: int, d: int, length: float, rng: np.random.Generator, band: int | None = None) -> "FourierBoundaryData":
        """Gaussian coefficients on ``|n| <= band`` (default all carried modes)."""
        band = n_max if band is None else band
        out = cls.zeros(n_max, d, length)
        k = slice(n_max - band, n_max + band + 1)
        shape = (2 * band + 1, d)
        out.coef[k] = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        return out

    def grid(self, m: int) -> np.ndarray:
        return np.arange(m) * self.length / m

    def synthesize(self, m: int | None = None) -> np.ndarray:
        """Samples on the uniform ``m``-point grid, shape ``(m, d)``."""
        m = grid_size(self.n_max, 0) if m is None else m
        return _synth(self.coef, self.n_max, m, self.length)

    @classmethod
    def analyze(cls, samples, length: float, n_max: int) -> "FourierBoundaryData":
        """Coefficients ``|n| <= n_max`` from uniform samples (shape ``(m, d)``)."""
        samples = np.asarray(samples, dtype=complex)
        if samples.ndim == 1:
            samples = samples[:, None]
        m = samples.shape[0]
        if m < 2 * n_max + 1:
            raise ValueError("grid too coarse for the requested modes")
        full = np.fft.fft(samples, axis=0) * np.sqrt(length) / m
        idx = np.arange(-n_max, n_max + 1) % m
        return cls(full[idx], length)

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coef) ** 2)))

    def to_rows(self) -> list[list[float]]:
        rows = []
        for k, n in enumerate(self.modes):
            rows.append([int(n), *[v for c in self.coef[k] for v in (c.real, c.imag)]])
        return rows

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n"] + [f"{p}_{j + 1}" for j in range(self.d) for p in ("re", "im")] + [f"length={self.length!r}"])
            w.writerows(self.to_rows())

    @classmethod
    def read_csv(cls, path) -> "FourierBoundaryData":
        with open(path, newline="") as fh:
            r = csv.reader(fh)
            head = next(r)
            length = float(head[-1].split("=", 1)[1])
            rows = [list(map(float, row)) for row in r]
        arr = np.array(rows)
        n = arr[:, 0].astype(int)
        vals = arr[:, 1::2] + 1j * arr[:, 2::2]
        n_max = int(np.max(np.abs(n)))
        out = cls.zeros(n_max, vals.shape[1], length)
        out.coef[n + n_max] = vals
        return out


def _synth(coef: np.ndarray, n_max: int, m: int, length: float) -> np.ndarray:
    """Inverse transform of mode-indexed coefficients along axis 0."""
    if m < 2 * n_max + 1:
        raise ValueError("grid too coarse for the carried modes")
    full = np.zeros((m,) + coef.shape[1:], dtype=complex)
    full[np.arange(-n_max, n_max + 1) % m] = coef
    return np.fft.ifft(full, axis=0) * m / np.sqrt(length)


def l2_norm_samples(samples: np.ndarray, length: float) -> float:
    """Trapezoid (exact for band-limited data) L2 norm of uniform samples."""
    m = samples.shape[0]
    return float(np.sqrt(np.sum(np.abs(samples) ** 2) * length / m))


def hs_norm(f: FourierBoundaryData, s_order: float, h: float) -> float:
    """Semiclassical Sobolev norm ``(sum <xi_n>^(2s) |f_n|^2)^(1/2)``."""
    w = japanese(f.xi(h)) ** (2 * s_order)
    return float(np.sqrt(np.sum(w[:, None] * np.abs(f.coef) ** 2)))


# --------------------------------------------------------------------------
# symbols

@dataclass
class Multiplier:
    """Symbol independent of ``s``: ``core(xi)`` returns ``(K,)`` or ``(K, d, d)``."""

    core: Callable


@dataclass
class FramedSymbol:
    """``a(s, xi) = F(s)^t core(xi) F(s)`` with an orthogonal frame field ``F``.

    ``frame(s)`` returns ``(m, d, d)`` and ``core(xi)`` returns ``(K, d, d)``.
    Applied with ``d^3`` FFTs instead of a dense mode sum.
    """

    frame: Callable
    core: Callable


def _as_matrix(vals, d):
    vals = np.asarray(vals)
    if vals.ndim == 1:
        return vals[:, None, None] * np.eye(d)
    return vals


def apply_symbol(a, f: FourierBoundaryData, h: float, m: int | None = None, chunk: int = 256):
    """Samples of ``Op_h(a) f`` on the uniform ``m``-point grid.

    ``a`` is a :class:`Multiplier`, a :class:`FramedSymbol` or a callable
    ``a(s, xi)`` returning ``(len(s), len(xi))`` scalars or
    ``(len(s), len(xi), d, d)`` matrices.

    Returns
    -------
    s : ndarray, shape (m,)
    values : ndarray, shape (m, d)
    """
    m = grid_size(f.n_max) if m is None else m
    s = f.grid(m)
    xi = f.xi(h)
    d = f.d
    if isinstance(a, Multiplier):
        core = _as_matrix(a.core(xi), d)
        coef = np.einsum("kij,kj->ki", core, f.coef)
        return s, _synth(coef, f.n_max, m, f.length)
    if isinstance(a, FramedSymbol):
        core = _as_matrix(a.core(xi), d)
        fr = np.asarray(a.frame(s))
        # inner[k, c, e, j] = sum_n core_ce(xi_n) f_nj e_n(s_k)
        prod = core[:, :, :, None] * f.coef[:, None, None, :]
        inner = _synth(prod, f.n_max, m, f.length)
        out = np.einsum("kci,kcej,kej->ki", fr, inner, fr)
        return s, out
    if not callable(a):
        raise TypeError("unsupported symbol type")
    phase = np.exp(2j * np.pi * np.outer(s, f.modes) / f.length) / np.sqrt(f.length)
    out = np.zeros((m, d), dtype=complex)
    for lo in range(0, m, chunk):
        sl = slice(lo, lo + chunk)
        vals = np.asarray(a(s[sl], xi))
        if vals.ndim == 2:
            out[sl] = np.einsum("kn,nj->kj", vals * phase[sl], f.coef)
        else:
            out[sl] = np.einsum("knij,kn,nj->ki", vals, phase[sl], f.coef)
    return s, out


def apply_to_data(a, f: FourierBoundaryData, h: float, n_out: int | None = None, m: int | None = None) -> FourierBoundaryData:
    """``Op_h(a) f`` re-expanded in modes ``|n| <= n_out``."""
    n_out = f.n_max + 4 if n_out is None else n_out
    m = grid_size(max(n_out, f.n_max)) if m is None else m
    _, vals = apply_symbol(a, f, h, m)
    return FourierBoundaryData.analyze(vals, f.length, n_out)
