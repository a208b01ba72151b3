"""Phase-space zones, smooth partitions of unity, and decay-rate predictors.

The ``(t, xi)`` half space splits into

    Z1: |xi| >= K,    Z2: |xi| <= K <= (1+t)|xi|,    Z3: (1+t)|xi| <= K,

and each zone contributes its own decay mechanism. The predictors below turn
the resulting exponent tables into :class:`DecayPrediction` values:
``norm ~ (1+t)**exponent * log(e+t)**log_power`` for data of Sobolev order
``regularity``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .specfun import DomainError

__all__ = [
    "Zone",
    "ZoneConfig",
    "DualPair",
    "DecayPrediction",
    "UnboundedMultiplier",
    "classify",
    "smooth_step",
    "cutoff_psi",
    "cutoffs",
    "bump_chi",
    "dyadic_weights",
    "sup_norm_prediction",
    "lp_lq_prediction",
    "solution_op_prediction",
    "energy_op_prediction",
    "energy_op_prediction_from_gap",
    "energy_decay_alpha",
    "duhamel_kernel_prediction",
    "DEFAULT_EPS_MARGIN",
]

RHO_ZERO_TOL = 1e-12
MU_ONE_TOL = 1e-12

# Added to the smallest admissible epsilon in the logarithmic cases.
DEFAULT_EPS_MARGIN = 1e-3


class Zone(enum.IntEnum):
    Z1 = 1
    Z2 = 2
    Z3 = 3


@dataclass(frozen=True)
class ZoneConfig:
    K: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.K) and self.K > 0):
            raise DomainError("zone constant K must be > 0")


@dataclass(frozen=True)
class DualPair:
    """Dual Lebesgue exponents, ``1/p + 1/q = 1`` with ``p`` in ``(1, 2]``."""

    p: float
    q: float = field(init=False)

    def __post_init__(self):
        if not (1.0 < self.p <= 2.0):
            raise DomainError(f"p must lie in (1, 2], got {self.p}")
        object.__setattr__(self, "q", self.p / (self.p - 1.0))

    @property
    def gap(self) -> float:
        """``1/p - 1/q``."""
        return 2.0 / self.p - 1.0


@dataclass(frozen=True)
class DecayPrediction:
    exponent: float
    log_power: int = 0
    regularity: float = 0.0
    source: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def curve(self, t):
        """The predicted profile ``(1+t)**exponent * log(e+t)**log_power``."""
        t = np.asarray(t, dtype=float)
        return (1.0 + t) ** self.exponent * np.log(np.e + t) ** self.log_power


class UnboundedMultiplier(ValueError):
    """The multiplier is not in L-infinity (``s > 0`` or ``k < |delta|``)."""


# --- zones and cut-offs ------------------------------------------------------


def classify(config: ZoneConfig, t: float, r: float) -> Zone:
    """Zone of ``(t, r)``; points on a boundary get the lowest index."""
    if t < 0 or r < 0:
        raise DomainError("t and r must be >= 0")
    if r >= config.K:
        return Zone.Z1
    if (1.0 + t) * r >= config.K:
        return Zone.Z2
    return Zone.Z3


def smooth_step(x):
    """C-infinity step: 0 for x <= 0, 1 for x >= 1, built from exp(-1/x)."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        a = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        b = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    return a / (a + b)


def _log2_pos(r):
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore"):
        return np.log2(r)


def cutoff_psi(r):
    """Non-increasing cut-off: 1 on ``[0, 1/2]``, 0 on ``[2, inf)``."""
    # log2 r runs over [-1, 1] on the transition interval
    return 1.0 - smooth_step((_log2_pos(r) + 1.0) / 2.0)


def cutoffs(config: ZoneConfig, t, xi):
    """Partition ``(phi1, phi2, phi3)`` subordinate to the three zones."""
    r = np.abs(np.asarray(xi, dtype=float))
    a = cutoff_psi(r / config.K)
    b = cutoff_psi((1.0 + np.asarray(t, dtype=float)) * r / config.K)
    return 1.0 - a, a * (1.0 - b), a * b


def _dyadic_step(x):
    # 1 on (0, 1], 0 on [2, inf)
    return 1.0 - smooth_step(_log2_pos(x))


def bump_chi(x):
    """Nonnegative bump supported in ``[1/2, 2]``; ``sum_j chi(2**j x) = 1``."""
    return _dyadic_step(x) - _dyadic_step(2.0 * np.asarray(x, dtype=float))


def dyadic_weights(r: float, config: ZoneConfig = ZoneConfig()) -> list[tuple[int, float]]:
    """Nonzero terms ``(j, chi(2**j r / K))`` of the dyadic partition at ``r``."""
    if not (np.isfinite(r) and r > 0):
        raise DomainError("dyadic_weights needs r > 0")
    x = r / config.K
    centre = -int(np.floor(np.log2(x)))
    out = []
    for j in range(centre - 2, centre + 3):
        w = float(bump_chi(np.ldexp(x, j)))
        if w > 0.0:
            out.append((j, w))
    return out


# --- predictors --------------------------------------------------------------


def _is_zero(rho: float) -> bool:
    return abs(rho) < RHO_ZERO_TOL


def sup_norm_prediction(k: float, s: float, rho: float, delta: float) -> DecayPrediction:
    """Decay of ``sup_xi |Psi_{k,s,rho,delta}(t, xi)|``.

    Raises :class:`UnboundedMultiplier` when ``s > 0`` or ``k < |delta|``.
    For ``rho = 0`` and ``k > 1/2`` the rate ``(1+t)**-1/2`` comes from the
    zone-by-zone bounds rather than the summary table and is marked as such
    in ``meta``.
    """
    if s > 0 or k < abs(delta):
        raise UnboundedMultiplier(f"Psi is unbounded for s={s}, k={k}, delta={delta}")
    src = "sup-norm of model multiplier (zone bounds Z1/Z2/Z3)"
    if not _is_zero(rho):
        return DecayPrediction(max(-0.5, abs(rho) - k), 0, s, src)
    if k <= 0.5:
        return DecayPrediction(-k, 1, s, src)
    return DecayPrediction(-0.5, 0, s, src, {"derived_from": "Z2 zone estimate, rho = 0, k > 1/2"})


def _eps_default(d: float) -> float:
    return max(0.0, d - 0.5) + DEFAULT_EPS_MARGIN


def lp_lq_prediction(
    k: float, s: float, rho: float, delta: float, pair: DualPair, n: int, eps: float | None = None
) -> DecayPrediction:
    """L_{p,r} -> L_q decay of the operator with symbol ``Psi_{k,s,rho,delta}``."""
    if k < abs(delta):
        raise DomainError(f"need k >= |delta|, got k={k}, delta={delta}")
    if n < 1:
        raise DomainError("dimension n must be >= 1")
    g = pair.gap
    d = 0.5 * (n + 1) * g + k - abs(rho)
    reg = n * g + s
    src = "L_p-L_q model operator estimate"
    if d > 0.5:
        return DecayPrediction(-0.5 * (n - 1) * g - 0.5, 0, reg, src, {"d": d})
    if not _is_zero(rho):
        return DecayPrediction(-n * g + abs(rho) - k, 0, reg, src, {"d": d})
    eps = _eps_default(d) if eps is None else eps
    if not d < 0.5 + eps:
        raise DomainError("epsilon too small for the logarithmic case")
    theta = (n + 1) * g / (2.0 * eps + 1.0 - 2.0 * k)
    meta = {"d": d, "eps": eps, "theta": theta, "log_exponent": 1.0 - theta}
    return DecayPrediction(-n * g + theta * eps - k, int(theta < 1.0), reg, src, meta)


def solution_op_prediction(mu: float, pair: DualPair, n: int, eps: float | None = None) -> DecayPrediction:
    """Decay of the solution operator ``(v1, <D>^-1 v2) -> v(t)``."""
    if mu <= 0:
        raise DomainError("mu must be > 0")
    g = pair.gap
    reg = n * g
    src = "solution operator L_p-L_q estimate"
    z1 = -0.5 * (n - 1) * g - 0.5 * mu
    if abs(mu - 1.0) < MU_ONE_TOL:
        dd = 0.5 * (n + 1) * g
        if dd > 0.5:
            return DecayPrediction(-0.5 * (n - 1) * g - 0.5, 0, reg, src, {"d": dd})
        eps = _eps_default(dd) if eps is None else eps
        theta = 2.0 * dd / (2.0 * eps + 1.0)
        # the model-operator constant with k = 0 coincides with this one
        theta_model = (n + 1) * g / (2.0 * eps + 1.0)
        meta = {"d": dd, "eps": eps, "theta": theta, "theta_model": theta_model, "log_exponent": 1.0 - theta}
        return DecayPrediction(-n * g + theta * eps, int(theta < 1.0), reg, src, meta)
    if mu < 1.0:
        return DecayPrediction(max(z1, -n * g + 1.0 - mu), 0, reg, src)
    return DecayPrediction(max(z1, -n * g), 0, reg, src)


def energy_op_prediction(mu: float, pair: DualPair, n: int) -> DecayPrediction:
    """Decay of the energy operator ``(<D> v1, v2) -> (v_t, |D| v)``."""
    return energy_op_prediction_from_gap(mu, pair.gap, n)


def energy_op_prediction_from_gap(mu: float, gap: float, n: int) -> DecayPrediction:
    """Energy-operator exponent as a function of ``1/p - 1/q`` in ``[0, 1]``.

    ``gap = 1`` is the ``(p, q) -> (1, inf)`` endpoint, which the L_p-L_q
    estimate itself excludes but which the L1 -> L-infinity norm of the
    kernel is compared against.
    """
    if mu <= 0:
        raise DomainError("mu must be > 0")
    if not 0.0 <= gap <= 1.0:
        raise DomainError("gap 1/p - 1/q must lie in [0, 1]")
    return DecayPrediction(
        max(-0.5 * (n - 1) * gap - 0.5 * mu, -n * gap - 1.0), 0, n * gap, "energy operator L_p-L_q estimate"
    )


def energy_decay_alpha(mu: float) -> float:
    """Decay exponent of the hyperbolic energy, ``E(t) = O(t**-alpha)``."""
    if mu <= 0:
        raise DomainError("mu must be > 0")
    return min(2.0, float(mu))


def duhamel_kernel_prediction(mu: float, pair: DualPair, n: int) -> DecayPrediction:
    """Exponent of ``(1+t)/(1+s)`` bounding ``(d/dt, grad) K2(t, s) * u`` in L_q."""
    e = energy_op_prediction(mu, pair, n)
    return DecayPrediction(e.exponent, 0, n * pair.gap, "Duhamel kernel estimate", {"variable": "(1+t)/(1+s)"})
