"""Klein-Gordon reduction and time rescalings of variable-speed equations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..multiplier import DissipationParams, fundamental_matrix
from ..specfun import DomainError

__all__ = ["KleinGordonReport", "klein_gordon_mass", "klein_gordon_check", "TimeRescale", "time_rescale_map"]


def klein_gordon_mass(mu: float) -> float:
    """Coefficient of ``(1+t)**-2 w`` after ``w = (1+t)**(mu/2) v``."""
    return mu * (2.0 - mu) / 4.0


@dataclass(frozen=True)
class KleinGordonReport:
    mu: float
    r: float
    mass: float
    residual: float

    @property
    def mass_sign(self) -> int:
        return int(np.sign(self.mass))


def klein_gordon_check(params: DissipationParams, t_grid, r: float) -> KleinGordonReport:
    """Check ``w'' + r**2 w + m (1+t)**-2 w = 0`` for ``w = (1+t)**(mu/2) v``.

    ``v`` runs over both columns of ``Phi(t, 0, r)``; ``w''`` comes from
    fourth-order central differences on the uniform ``t_grid`` (at least 5
    points), so the residual is reported on the interior nodes only. The
    residual is relative to the size of the individual terms.
    """
    if params.mu <= 0:
        raise DomainError("mu must be > 0")
    if not r > 0:
        raise DomainError("r must be > 0")
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 5:
        raise DomainError("t_grid needs at least five points")
    h = np.diff(t)
    if np.any(h <= 0) or np.ptp(h) > 1e-9 * h.mean():
        raise DomainError("t_grid must be uniform and increasing")
    h = h.mean()
    mass = klein_gordon_mass(params.mu)
    m = fundamental_matrix(params, t, r, 0.0)
    weight = (1.0 + t) ** (0.5 * params.mu)
    worst = 0.0
    for v in (m.phi1, m.phi2):
        w = weight * v
        w2 = (-w[4:] + 16.0 * w[3:-1] - 30.0 * w[2:-2] + 16.0 * w[1:-3] - w[:-4]) / (12.0 * h * h)
        wi = w[2:-2]
        pot = mass / (1.0 + t[2:-2]) ** 2 * wi
        res = w2 + r * r * wi + pot
        scale = np.abs(w2).max() + r * r * np.abs(wi).max() + np.abs(pot).max()
        worst = max(worst, float(np.abs(res).max() / scale))
    return KleinGordonReport(params.mu, float(r), mass, worst)


@dataclass(frozen=True)
class TimeRescale:
    """Change of time variable taking a speed-``lambda(tau)`` equation to a dissipative one."""

    kind: str
    mu: float
    tau0: float
    to_t: Callable
    to_tau: Callable
    speed: Callable


def time_rescale_map(kind: str, ell: float | None = None) -> TimeRescale:
    """``t = int_tau0^tau lambda``, normalised so that ``t(tau0) = 0``.

    ``kind="power"`` takes ``lambda(tau) = (1+tau)**ell`` and gives
    ``1 + t = (1+tau)**(ell+1) / (ell+1)`` with ``mu = ell / (ell+1)``;
    ``kind="exponential"`` takes ``lambda = exp`` and gives ``1 + t = exp(tau)``
    with ``mu = 1``.
    """
    if kind == "power":
        if ell is None or not (np.isfinite(ell) and ell > 0):
            raise DomainError("power rescaling needs ell > 0")
        e1 = ell + 1.0
        return TimeRescale(
            "power",
            ell / e1,
            e1 ** (1.0 / e1) - 1.0,
            lambda tau: np.exp(e1 * np.log1p(tau) - np.log(e1)) - 1.0,
            lambda t: np.expm1((np.log1p(t) + np.log(e1)) / e1),
            lambda tau: (1.0 + np.asarray(tau, dtype=float)) ** ell,
        )
    if kind == "exponential":
        if ell is not None:
            raise DomainError("exponential rescaling takes no ell")
        return TimeRescale("exponential", 1.0, 0.0, np.expm1, np.log1p, np.exp)
    raise DomainError(f"unknown rescaling kind {kind!r}")
