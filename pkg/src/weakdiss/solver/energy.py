"""Energies, L2 operator norms and the one-dimensional Duhamel kernel."""

from __future__ import annotations

import warnings

import numpy as np
from scipy.special import gamma

from ..multiplier import DissipationParams, fundamental_matrix
from ..specfun import DomainError
from ..zones import smooth_step
from .grid import FieldState, GridSpec, RadialProfile, forward_transform, inverse_transform

__all__ = [
    "GridCoverageWarning",
    "WindowLeakageWarning",
    "sphere_area",
    "hyperbolic_energy",
    "evolve_profile",
    "operator_norms",
    "kernel_grid",
    "kernel_profile",
    "kernel_sup",
    "smooth_taper",
]

TAPER_START = 0.8


class GridCoverageWarning(RuntimeWarning):
    """A supremum was attained at the edge of the frequency grid."""


class WindowLeakageWarning(RuntimeWarning):
    """The kernel reaches the edge of the periodic window."""


def sphere_area(n: int) -> float:
    """Surface measure of the unit sphere in ``R^n`` (2 for ``n = 1``)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return 2.0 * np.pi ** (n / 2.0) / gamma(n / 2.0)


def hyperbolic_energy(state: FieldState | RadialProfile, n: int = 1) -> float:
    """``(1/2) int (v_t**2 + |grad v|**2) dx``.

    A :class:`FieldState` is integrated on its grid (gradient taken
    spectrally); a :class:`RadialProfile` is integrated in frequency space as
    ``(1/2) int (|vt_hat|**2 + r**2 |v_hat|**2) dxi`` over radial shells of
    ``R^n``.
    """
    if isinstance(state, RadialProfile):
        r = state.nodes
        dens = np.abs(state.vt_hat) ** 2 + r * r * np.abs(state.v_hat) ** 2
        return float(0.5 * sphere_area(n) * np.sum(state.weights * r ** (n - 1) * dens))
    if n != 1:
        raise DomainError("spatial energies are one-dimensional")
    grid = state.grid
    vx = inverse_transform(1j * grid.xi * forward_transform(state.v, grid), grid).real
    return float(0.5 * grid.dx * (np.sum(state.vt**2) + np.sum(vx**2)))


def evolve_profile(params: DissipationParams, data: RadialProfile, t: float, t0: float = 0.0) -> RadialProfile:
    """Propagate radial Cauchy data in frequency space."""
    v, vt = fundamental_matrix(params, t, data.nodes, t0).apply(data.v_hat, data.vt_hat)
    return RadialProfile(data.nodes, data.weights, v, vt)


def _spectral_norm_2x2(a, b, c, d):
    fro = a * a + b * b + c * c + d * d
    det = a * d - b * c
    disc = np.sqrt(np.maximum(fro * fro - 4.0 * det * det, 0.0))
    return np.sqrt(0.5 * (fro + disc))


def operator_norms(params: DissipationParams, t: float, xi_grid, include_zero: bool = True) -> tuple[float, float]:
    """Pointwise suprema giving the L2 norms of the solution and energy operators.

    ``sol_norm = sup |(Phi1, <xi> Phi2)|`` and ``energy_norm`` is the sup of
    the spectral norm of ``(<xi> v1, v2) -> (d/dt v_hat, |xi| v_hat)``. The
    exact ``xi = 0`` node is added unless ``include_zero`` is false. Warns
    with :class:`GridCoverageWarning` when a sup sits at the largest node.
    """
    r = np.asarray(xi_grid, dtype=float)
    if r.ndim != 1 or r.size < 2 or np.any(r < 0) or np.any(np.diff(r) <= 0):
        raise DomainError("xi_grid must be increasing and nonnegative")
    if include_zero and r[0] > 0:
        r = np.concatenate([[0.0], r])
    m = fundamental_matrix(params, t, r, 0.0)
    br = np.sqrt(1.0 + r * r)
    sol = np.hypot(m.phi1, br * m.phi2)
    en = _spectral_norm_2x2(m.dphi1 / br, m.dphi2, r * m.phi1 / br, r * m.phi2)
    for name, vals in (("solution", sol), ("energy", en)):
        if np.argmax(vals) == vals.size - 1:
            warnings.warn(f"{name} norm sup at the largest frequency; extend the grid", GridCoverageWarning, stacklevel=2)
    return float(sol.max()), float(en.max())


def smooth_taper(xi, nyquist: float, start: float = TAPER_START):
    """C-infinity factor: 1 below ``start * nyquist``, 0 at Nyquist."""
    u = (np.abs(xi) / nyquist - start) / (1.0 - start)
    return 1.0 - smooth_step(u)


def kernel_grid(t: float, dx: float = 0.25, min_half_length: float = 32.0) -> GridSpec:
    """Grid wide enough for the kernel's support ``|x| <= t`` with room to spare."""
    L = max(min_half_length, 2.0 * (1.0 + t))
    N = 1 << int(np.ceil(np.log2(2.0 * L / dx)))
    return GridSpec(N, L)


def kernel_profile(params: DissipationParams, t: float, grid: GridSpec | None = None, taper: bool = True):
    """Samples ``(x, K2(t, 0, x))`` with ``K2 = (2 pi)**-1/2 F^-1[Phi2(t, 0, |xi|)]``.

    ``Phi2`` only decays like ``|xi|**-1``, so a smooth taper beyond
    ``TAPER_START`` of Nyquist is applied. The jump of the kernel at the
    light cone still produces a Gibbs overshoot of a few percent; it is a
    constant factor and does not affect fitted exponents. Warns with
    :class:`WindowLeakageWarning` when kernel mass reaches the outer tenth of
    the window.
    """
    if t < 0:
        raise DomainError("t must be >= 0")
    grid = kernel_grid(t) if grid is None else grid
    xi = grid.xi
    sym = fundamental_matrix(params, t, np.abs(xi), 0.0).phi2
    if taper:
        sym = sym * smooth_taper(xi, grid.nyquist)
    k = inverse_transform(sym.astype(complex), grid).real / np.sqrt(2.0 * np.pi)
    mass = np.abs(k)
    total = mass.sum()
    if total > 0:
        outer = mass[np.abs(grid.x) > 0.9 * grid.L].sum() / total
        if outer > 1e-6:
            warnings.warn(f"{outer:.1e} of the kernel mass is near the window edge", WindowLeakageWarning, stacklevel=2)
    return grid.x, k


def kernel_sup(params: DissipationParams, t: float, grid: GridSpec | None = None, taper: bool = True) -> float:
    """``sup_x |K2(t, 0, x)|``, the L1 -> L-infinity norm of the Duhamel kernel."""
    return float(np.abs(kernel_profile(params, t, grid, taper)[1]).max())
