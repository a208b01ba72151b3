"""Periodic grids, field containers and the unitary discrete Fourier transform."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..specfun import DomainError

__all__ = [
    "AliasingWarning",
    "GridSpec",
    "FieldState",
    "RadialProfile",
    "SourceTerm",
    "forward_transform",
    "inverse_transform",
    "spectral_tail",
    "log_radial_profile",
]

# Fraction of the modes, counted down from Nyquist, inspected for aliasing.
_TAIL_FRACTION = 0.05


class AliasingWarning(RuntimeWarning):
    """The data spectrum is not resolved by the grid."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on ``[-L, L)`` with ``N`` points."""

    N: int
    L: float
    n: int = 1

    def __post_init__(self):
        if self.n != 1:
            raise DomainError("spatial grids are one-dimensional; use the radial path for n > 1")
        if self.N < 16 or self.N & (self.N - 1):
            raise DomainError(f"N must be a power of two >= 16, got {self.N}")
        if not (np.isfinite(self.L) and self.L > 0):
            raise DomainError("L must be > 0")

    @property
    def dx(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def dxi(self) -> float:
        return np.pi / self.L

    @property
    def nyquist(self) -> float:
        return np.pi * self.N / (2.0 * self.L)

    @property
    def x(self) -> np.ndarray:
        return -self.L + self.dx * np.arange(self.N)

    @property
    def xi(self) -> np.ndarray:
        """Angular frequencies in FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.N, d=self.dx)


@dataclass(frozen=True)
class FieldState:
    """Cauchy data ``(v, v_t)`` sampled on ``grid`` at time ``t``."""

    t: float
    v: np.ndarray
    vt: np.ndarray
    grid: GridSpec

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        vt = np.asarray(self.vt, dtype=float)
        if v.shape != (self.grid.N,) or vt.shape != (self.grid.N,):
            raise DomainError("v and vt must have one sample per grid point")
        if not (np.all(np.isfinite(v)) and np.all(np.isfinite(vt))):
            raise DomainError("field samples must be finite")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "vt", vt)

    @classmethod
    def from_functions(cls, grid: GridSpec, v0: Callable, v1: Callable, t: float = 0.0) -> "FieldState":
        x = grid.x
        return cls(t, np.broadcast_to(v0(x), x.shape), np.broadcast_to(v1(x), x.shape), grid)


@dataclass(frozen=True)
class RadialProfile:
    """Radial samples ``v_hat(r_i)``, ``vt_hat(r_i)`` with weights for ``int_0^inf dr``."""

    nodes: np.ndarray
    weights: np.ndarray
    v_hat: np.ndarray
    vt_hat: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.nodes, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if r.ndim != 1 or r.size < 2:
            raise DomainError("need at least two radial nodes")
        if np.any(r <= 0) or np.any(np.diff(r) <= 0):
            raise DomainError("radial nodes must be positive and strictly increasing")
        if w.shape != r.shape or np.any(w <= 0):
            raise DomainError("weights must be positive, one per node")
        for name in ("v_hat", "vt_hat"):
            a = np.asarray(getattr(self, name))
            if a.shape != r.shape:
                raise DomainError(f"{name} must have one value per node")
            object.__setattr__(self, name, a)
        object.__setattr__(self, "nodes", r)
        object.__setattr__(self, "weights", w)


def log_radial_profile(r_min: float, r_max: float, count: int, v_hat: Callable, vt_hat: Callable) -> RadialProfile:
    """Trapezoid rule in ``log r`` on ``[r_min, r_max]``, data sampled from callables."""
    if not (0 < r_min < r_max) or count < 2:
        raise DomainError("need 0 < r_min < r_max and count >= 2")
    s = np.linspace(np.log(r_min), np.log(r_max), count)
    r = np.exp(s)
    w = np.full(count, s[1] - s[0]) * r
    w[0] *= 0.5
    w[-1] *= 0.5
    return RadialProfile(r, w, np.asarray(v_hat(r)), np.asarray(vt_hat(r)))


@dataclass(frozen=True)
class SourceTerm:
    """Right-hand side ``f`` of the inhomogeneous equation.

    Exactly one of ``spatial`` (``f(t, x)``) and ``spectral`` (``f_hat(t, xi)``
    in the unitary convention) is set. ``smooth`` records that ``f`` is
    smooth in ``t``, which the Gauss-Legendre rule relies on.
    """

    spatial: Callable | None = None
    spectral: Callable | None = None
    smooth: bool = True

    def __post_init__(self):
        if (self.spatial is None) == (self.spectral is None):
            raise DomainError("give exactly one of spatial or spectral")

    def hat(self, t: float, grid: GridSpec) -> np.ndarray:
        if self.spectral is not None:
            out = np.asarray(self.spectral(t, grid.xi), dtype=complex)
        else:
            out = forward_transform(np.asarray(self.spatial(t, grid.x), dtype=float), grid)
        if not np.all(np.isfinite(out)):
            raise DomainError(f"source is not finite at t={t}")
        return np.broadcast_to(out, (grid.N,))


def _phase(grid: GridSpec) -> np.ndarray:
    # the grid starts at x = -L, not 0
    return np.exp(1j * grid.xi * grid.L)


def forward_transform(u: np.ndarray, grid: GridSpec) -> np.ndarray:
    """``u_hat(xi) = (2 pi)**-1/2 sum_j u(x_j) exp(-i xi x_j) dx``."""
    return grid.dx / np.sqrt(2.0 * np.pi) * _phase(grid) * np.fft.fft(u)


def inverse_transform(u_hat: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Inverse of :func:`forward_transform`; complex output."""
    return np.sqrt(2.0 * np.pi) / grid.dx * np.fft.ifft(u_hat / _phase(grid))


def spectral_tail(u_hat: np.ndarray, grid: GridSpec) -> float:
    """Largest ``|u_hat|`` near Nyquist relative to the peak."""
    mag = np.abs(u_hat)
    peak = mag.max()
    if peak == 0:
        return 0.0
    band = np.abs(grid.xi) >= (1.0 - _TAIL_FRACTION) * grid.nyquist
    return float(mag[band].max() / peak)


def warn_if_aliased(u_hat: np.ndarray, grid: GridSpec, threshold: float = 1e-8, what: str = "data"):
    tail = spectral_tail(u_hat, grid)
    if tail > threshold:
        warnings.warn(
            f"{what} spectrum at Nyquist is {tail:.2e} of its peak; refine the grid (N={grid.N}, L={grid.L})",
            AliasingWarning,
            stacklevel=3,
        )
    return tail
