"""Fundamental matrix of the Fourier-transformed dissipative wave equation.

For each frequency magnitude ``r = |xi|`` the transformed solution satisfies

    v'' + mu / (1 + t) v' + r**2 v = 0,

and after the substitution ``tau = (1 + t) r``, ``v = tau**rho w`` with
``rho = (1 - mu) / 2`` it becomes Bessel's equation of order ``rho``. The
fundamental matrix

    Phi(t, t0, r) = [[Phi1, Phi2], [d/dt Phi1, d/dt Phi2]]

propagates ``(v, v_t)`` from ``t0`` to ``t``. It is available in three
algebraically equivalent forms (complex Hankel determinants, real J/Y
determinants, and J_{+-rho} determinants for non-integral ``rho``);
:func:`fundamental_matrix` picks the one that is numerically safest.

All functions broadcast over ``t``, ``r`` and ``t0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .specfun import DomainError

__all__ = [
    "DegenerateFrequencyError",
    "NearIntegerOrderError",
    "DissipationParams",
    "PhasePoint",
    "FundamentalMatrix",
    "ModelMultiplierParams",
    "rho_of_mu",
    "fundamental_matrix",
    "phi_hankel_form",
    "phi_real_form",
    "phi_nonintegral_form",
    "zero_frequency_matrix",
    "closed_form_mu0",
    "psi_model",
    "psi_real_form",
    "psi_nonintegral_form",
    "phi_via_psi",
    "PSI_TUPLES",
    "psi_params_for",
    "row_normalized_error",
]

# Frequencies below this use the exact r = 0 solution; the determinant forms
# are 0/0 there.
ZERO_FREQUENCY_FLOOR = 1e-12

# The csc(rho pi) form loses about eps / dist(rho, Z) digits, so it is only
# used comfortably away from the integers. Its own hard limit is
# specfun.INTEGER_ORDER_TOL.
ROUTING_MARGIN = 1e-3


class DegenerateFrequencyError(ArithmeticError):
    """The multiplier could not be evaluated to a finite value."""


class NearIntegerOrderError(DomainError):
    """The csc-weighted form was asked for an (almost) integral order."""


def rho_of_mu(mu: float) -> float:
    """Bessel order ``(1 - mu) / 2`` attached to the dissipation strength.

    ``mu = 0`` (the free wave equation) is admitted as a limiting case.
    """
    mu = float(mu)
    if not np.isfinite(mu) or mu < 0:
        raise DomainError(f"mu must be finite and >= 0, got {mu}")
    return (1.0 - mu) / 2.0


@dataclass(frozen=True)
class DissipationParams:
    mu: float
    rho: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "rho", rho_of_mu(self.mu))

    @property
    def nonintegral(self) -> bool:
        """True when ``rho`` (equivalently ``rho - 1``) is safely off the integers."""
        return _dist_to_integer(self.rho) > ROUTING_MARGIN


@dataclass(frozen=True)
class PhasePoint:
    t: float
    r: float
    t0: float = 0.0

    def __post_init__(self):
        if not (self.t > -1 and self.t0 > -1):
            raise DomainError("t and t0 must exceed -1")
        if not self.r >= 0:
            raise DomainError("r must be >= 0")

    @property
    def tau(self) -> float:
        return (1.0 + self.t) * self.r

    @property
    def tau0(self) -> float:
        return (1.0 + self.t0) * self.r


@dataclass(frozen=True)
class FundamentalMatrix:
    phi1: np.ndarray
    phi2: np.ndarray
    dphi1: np.ndarray
    dphi2: np.ndarray
    imag_residue: float = 0.0

    def det(self):
        return self.phi1 * self.dphi2 - self.phi2 * self.dphi1

    def as_array(self) -> np.ndarray:
        """Stack into shape ``(..., 2, 2)``."""
        top = np.stack(np.broadcast_arrays(self.phi1, self.phi2), axis=-1)
        bottom = np.stack(np.broadcast_arrays(self.dphi1, self.dphi2), axis=-1)
        return np.stack([top, bottom], axis=-2)

    def apply(self, v, vt):
        """Propagate Cauchy data ``(v, v_t)`` given at ``t0``."""
        return self.phi1 * v + self.phi2 * vt, self.dphi1 * v + self.dphi2 * vt

    def __matmul__(self, other: "FundamentalMatrix") -> "FundamentalMatrix":
        return FundamentalMatrix(
            self.phi1 * other.phi1 + self.phi2 * other.dphi1,
            self.phi1 * other.phi2 + self.phi2 * other.dphi2,
            self.dphi1 * other.phi1 + self.dphi2 * other.dphi1,
            self.dphi1 * other.phi2 + self.dphi2 * other.dphi2,
        )


@dataclass(frozen=True)
class ModelMultiplierParams:
    """Parameters ``(k, s, rho, delta)`` of the model multiplier ``Psi``."""

    k: float
    s: float
    rho: float
    delta: float

    @property
    def bounded(self) -> bool:
        return self.s <= 0 and self.k >= abs(self.delta)


def _dist_to_integer(x: float) -> float:
    return abs(x - round(x))


def _grid(t, r, t0):
    t, r, t0 = np.broadcast_arrays(
        np.asarray(t, dtype=float), np.asarray(r, dtype=float), np.asarray(t0, dtype=float)
    )
    if np.any(~np.isfinite(t)) or np.any(t <= -1) or np.any(~np.isfinite(t0)) or np.any(t0 <= -1):
        raise DomainError("t and t0 must be finite and exceed -1")
    if np.any(~np.isfinite(r)) or np.any(r < 0):
        raise DomainError("r must be finite and >= 0")
    return t, r, t0


def _positive_grid(t, r, t0):
    t, r, t0 = _grid(t, r, t0)
    if np.any(r <= 0):
        raise DomainError("determinant forms need r > 0; use fundamental_matrix for r = 0")
    return t, r, t0


def _prefactor(rho, t, t0):
    # (1+t)^rho / (1+t0)^(rho-1), formed in log space to keep large t finite
    return np.exp(rho * np.log1p(t) + (1.0 - rho) * np.log1p(t0))


def _as_matrix(p1, p2, d1, d2, imag_residue=0.0):
    return FundamentalMatrix(p1, p2, d1, d2, float(imag_residue))


def row_normalized_error(a: FundamentalMatrix, b: FundamentalMatrix, r) -> float:
    """Largest entry difference, relative to the natural row magnitudes.

    Row one is measured as ``|Phi1| + <r>|Phi2|`` and row two as
    ``|dPhi1| / <r> + |dPhi2|``: the weights under which ``Phi`` acts on
    ``(v1, <D>^-1 v2)`` and ``(<D> v1, v2)`` respectively.
    """
    br = np.sqrt(1.0 + np.asarray(r, dtype=float) ** 2)
    s1 = np.maximum(np.abs(a.phi1) + br * np.abs(a.phi2), np.abs(b.phi1) + br * np.abs(b.phi2))
    s2 = np.maximum(np.abs(a.dphi1) / br + np.abs(a.dphi2), np.abs(b.dphi1) / br + np.abs(b.dphi2))
    tiny = np.finfo(float).tiny
    s1 = np.maximum(s1, tiny)
    s2 = np.maximum(s2, tiny)
    errs = [
        np.abs(a.phi1 - b.phi1) / s1,
        br * np.abs(a.phi2 - b.phi2) / s1,
        np.abs(a.dphi1 - b.dphi1) / (br * s2),
        np.abs(a.dphi2 - b.dphi2) / s2,
    ]
    return float(max(np.max(e) for e in errs))


def phi_hankel_form(params: DissipationParams, t, r, t0=0.0) -> FundamentalMatrix:
    """Complex Hankel-determinant representation; the reference form."""
    t, r, t0 = _positive_grid(t, r, t0)
    rho = params.rho
    tau0 = (1.0 + t0) * r
    tau = (1.0 + t) * r
    h0 = specfun.hankel(rho, tau0)
    h0m1 = specfun.hankel(rho - 1.0, tau0)
    h = specfun.hankel(rho, tau)
    hm1 = specfun.hankel(rho - 1.0, tau)
    pre = 0.25j * np.pi * _prefactor(rho, t, t0)
    p1 = pre * r * (h0m1.minus * h.plus - h0m1.plus * h.minus)
    p2 = -pre * (h0.minus * h.plus - h0.plus * h.minus)
    d1 = pre * r * r * (h0m1.minus * hm1.plus - h0m1.plus * hm1.minus)
    d2 = -pre * r * (h0.minus * hm1.plus - h0.plus * hm1.minus)
    real = _as_matrix(p1.real, p2.real, d1.real, d2.real)
    imag = _as_matrix(p1.imag, p2.imag, d1.imag, d2.imag)
    zero = _as_matrix(*(np.zeros_like(p1.real),) * 4)
    residue = row_normalized_error(imag, zero, r) if p1.size else 0.0
    return _as_matrix(real.phi1, real.phi2, real.dphi1, real.dphi2, residue)


def phi_real_form(params: DissipationParams, t, r, t0=0.0) -> FundamentalMatrix:
    """Bessel/Weber determinant representation, valid for every ``rho``."""
    t, r, t0 = _positive_grid(t, r, t0)
    rho = params.rho
    tau0 = (1.0 + t0) * r
    tau = (1.0 + t) * r
    j0, j0m1 = specfun.bessel_j(rho, tau0), specfun.bessel_j(rho - 1.0, tau0)
    y0, y0m1 = specfun.bessel_y(rho, tau0), specfun.bessel_y(rho - 1.0, tau0)
    j, jm1 = specfun.bessel_j(rho, tau), specfun.bessel_j(rho - 1.0, tau)
    y, ym1 = specfun.bessel_y(rho, tau), specfun.bessel_y(rho - 1.0, tau)
    pre = 0.5 * np.pi * _prefactor(rho, t, t0)
    p1 = -pre * r * (j0m1 * y - j * y0m1)
    p2 = pre * (j0 * y - j * y0)
    d1 = -pre * r * r * (j0m1 * ym1 - jm1 * y0m1)
    d2 = pre * r * (j0 * ym1 - jm1 * y0)
    return _as_matrix(p1, p2, d1, d2)


def phi_nonintegral_form(params: DissipationParams, t, r, t0=0.0) -> FundamentalMatrix:
    """Representation through ``J_{+-rho}`` and ``J_{+-(rho-1)}`` only.

    Obtained from the real form by eliminating ``Y`` with the connection
    formula; no Weber function, hence no logarithmic cancellation at small
    arguments. Rejects orders within ``INTEGER_ORDER_TOL`` of an integer.
    """
    rho = params.rho
    if _dist_to_integer(rho) <= specfun.INTEGER_ORDER_TOL:
        raise NearIntegerOrderError(f"rho = {rho} is (nearly) integral; use phi_real_form")
    t, r, t0 = _positive_grid(t, r, t0)
    tau0 = (1.0 + t0) * r
    tau = (1.0 + t) * r
    jv = specfun.bessel_j
    a0, b0 = jv(rho, tau0), jv(-rho, tau0)
    c0, e0 = jv(rho - 1.0, tau0), jv(1.0 - rho, tau0)
    a, b = jv(rho, tau), jv(-rho, tau)
    c, e = jv(rho - 1.0, tau), jv(1.0 - rho, tau)
    pre = 0.5 * np.pi / np.sin(rho * np.pi) * _prefactor(rho, t, t0)
    p1 = pre * r * (e0 * a + c0 * b)
    p2 = pre * (b0 * a - b * a0)
    d1 = pre * r * r * (e0 * c - e * c0)
    d2 = pre * r * (b0 * c + e * a0)
    return _as_matrix(p1, p2, d1, d2)


def zero_frequency_matrix(params: DissipationParams, t, t0=0.0) -> FundamentalMatrix:
    """Exact ``Phi(t, t0, 0)``: solutions of ``v'' + mu/(1+t) v' = 0``."""
    t, _, t0 = _grid(t, 0.0, t0)
    mu = params.mu
    log_ratio = np.log1p(t) - np.log1p(t0)
    if abs(1.0 - mu) < 1e-12:
        p2 = (1.0 + t0) * log_ratio
    else:
        p2 = (1.0 + t0) * np.expm1((1.0 - mu) * log_ratio) / (1.0 - mu)
    d2 = np.exp(-mu * log_ratio)
    return _as_matrix(np.ones_like(t), p2, np.zeros_like(t), d2)


def closed_form_mu0(t, r, t0=0.0) -> FundamentalMatrix:
    """Free wave equation: ``cos((t-t0) r)`` and ``sin((t-t0) r) / r``."""
    t, r, t0 = _positive_grid(t, r, t0)
    phase = (t - t0) * r
    c, s = np.cos(phase), np.sin(phase)
    return _as_matrix(c, s / r, -r * s, c)


def fundamental_matrix(params: DissipationParams, t, r, t0=0.0) -> FundamentalMatrix:
    """``Phi(t, t0, r)`` by the safest available representation.

    Frequencies below ``ZERO_FREQUENCY_FLOOR`` take the exact ``r = 0``
    solution. Raises :class:`DegenerateFrequencyError` rather than return
    non-finite entries.
    """
    t, r, t0 = _grid(t, r, t0)
    low = r < ZERO_FREQUENCY_FLOOR
    form = phi_nonintegral_form if params.nonintegral else phi_real_form
    if not np.any(low):
        out = form(params, t, r, t0)
    else:
        entries = [np.empty_like(t) for _ in range(4)]
        z = zero_frequency_matrix(params, t[low], t0[low])
        for dst, src in zip(entries, (z.phi1, z.phi2, z.dphi1, z.dphi2)):
            dst[low] = src
        if np.any(~low):
            m = form(params, t[~low], r[~low], t0[~low])
            for dst, src in zip(entries, (m.phi1, m.phi2, m.dphi1, m.dphi2)):
                dst[~low] = src
        out = _as_matrix(*entries)
    for name in ("phi1", "phi2", "dphi1", "dphi2"):
        if not np.all(np.isfinite(getattr(out, name))):
            raise DegenerateFrequencyError(
                f"non-finite {name} for mu={params.mu}; arguments too close to the origin or too large"
            )
    return out


# --- model multiplier ------------------------------------------------------------


def _magnitude(xi, axis):
    xi = np.asarray(xi, dtype=float)
    return np.linalg.norm(xi, axis=axis) if axis is not None else np.abs(xi)


def _psi_weight(p: ModelMultiplierParams, r):
    return r**p.k * (1.0 + r * r) ** (0.5 * (p.s + 1.0 - p.k))


def psi_model(p: ModelMultiplierParams, t, xi, axis=None):
    """``|xi|^k <xi>^(s+1-k) det[[H-_rho(|xi|), H-_{rho+delta}((1+t)|xi|)],
    [H+_rho(|xi|), H+_{rho+delta}((1+t)|xi|)]]``.

    ``xi`` holds magnitudes, or vectors along ``axis``. The value is purely
    imaginary.
    """
    r = _magnitude(xi, axis)
    if np.any(r <= 0):
        raise DomainError("psi_model needs |xi| > 0")
    t = np.asarray(t, dtype=float)
    tau = (1.0 + t) * r
    h = specfun.hankel(p.rho, r)
    hd = specfun.hankel(p.rho + p.delta, tau)
    return _psi_weight(p, r) * (h.minus * hd.plus - hd.minus * h.plus)


def psi_real_form(p: ModelMultiplierParams, t, xi, axis=None):
    """``2i`` times the real J/Y determinant; any ``rho``, ``delta``."""
    r = _magnitude(xi, axis)
    if np.any(r <= 0):
        raise DomainError("psi_real_form needs |xi| > 0")
    tau = (1.0 + np.asarray(t, dtype=float)) * r
    nu = p.rho + p.delta
    det = specfun.bessel_j(p.rho, r) * specfun.bessel_y(nu, tau) - specfun.bessel_j(
        nu, tau
    ) * specfun.bessel_y(p.rho, r)
    return 2j * _psi_weight(p, r) * det


def psi_nonintegral_form(p: ModelMultiplierParams, t, xi, axis=None):
    """``J_{+-rho}`` form; needs integral ``delta`` and non-integral ``rho``."""
    if not float(p.delta).is_integer():
        raise DomainError("psi_nonintegral_form uses integral delta only")
    if _dist_to_integer(p.rho) <= specfun.INTEGER_ORDER_TOL:
        raise NearIntegerOrderError(f"rho = {p.rho} is (nearly) integral")
    r = _magnitude(xi, axis)
    if np.any(r <= 0):
        raise DomainError("psi_nonintegral_form needs |xi| > 0")
    tau = (1.0 + np.asarray(t, dtype=float)) * r
    d = int(p.delta)
    jv = specfun.bessel_j
    sign = -1.0 if d % 2 else 1.0
    det = jv(-p.rho, r) * jv(p.rho + d, tau) - jv(-p.rho - d, tau) * sign * jv(p.rho, r)
    return 2j / np.sin(p.rho * np.pi) * _psi_weight(p, r) * det


# (k, s, rho offset, delta) and the prefactor sign of each entry of Phi(t, 0, .)
PSI_TUPLES = {
    "phi1": ((1.0, 0.0, -1.0, 1.0), +1.0),
    "phi2": ((0.0, -1.0, 0.0, 0.0), -1.0),
    "dphi1": ((2.0, 1.0, -1.0, 0.0), +1.0),
    "dphi2": ((1.0, 0.0, 0.0, -1.0), -1.0),
}


def psi_params_for(params: DissipationParams, entry: str) -> ModelMultiplierParams:
    (k, s, off, delta), _ = PSI_TUPLES[entry]
    return ModelMultiplierParams(k, s, params.rho + off, delta)


def phi_via_psi(params: DissipationParams, t: float, r) -> float:
    """Rebuild ``Phi(t, 0, r)`` from the model multiplier and compare.

    Returns the largest row-normalized mismatch against
    :func:`fundamental_matrix` over the frequency grid ``r``.
    """
    if t < 0:
        raise DomainError("t must be >= 0")
    r = np.asarray(r, dtype=float)
    scale = 0.25j * np.pi * np.exp(params.rho * np.log1p(t))
    rebuilt = {}
    for entry, (_, sign) in PSI_TUPLES.items():
        value = sign * scale * psi_model(psi_params_for(params, entry), t, r)
        rebuilt[entry] = value.real
    direct = fundamental_matrix(params, t, r, 0.0)
    return row_normalized_error(direct, FundamentalMatrix(**rebuilt), r)
