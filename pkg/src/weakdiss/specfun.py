"""Bessel, Weber and Hankel functions of real order and positive argument.

All functions broadcast over numpy arrays. ``J`` and ``Y`` come from
``scipy.special`` (Amos / Cephes) except on the two places where an explicit
series is the better tool: the entire function ``tau**-nu * J_nu(tau)`` near
the origin, and integer-order Weber functions at small argument, where the
logarithmic split ``Y_n = (2/pi) J_n log(tau) + A_n`` is evaluated term by
term.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special as sc

__all__ = [
    "DomainError",
    "HankelValue",
    "AmplitudeSymbol",
    "INTEGER_ORDER_TOL",
    "is_integer_order",
    "bessel_j",
    "bessel_y",
    "bessel_y_connection",
    "hankel",
    "lambda_fn",
    "weber_log_split",
    "hankel_amplitude",
    "bessel_derivative",
    "wronskian",
    "wronskian_defect",
]

INTEGER_ORDER_TOL = 1e-8

# Orders this close to an integer are evaluated as that integer in bessel_y.
# scipy's yv is accurate right up to the integers, so rounding any earlier
# (e.g. at INTEGER_ORDER_TOL) would only add an O(offset) error.
_Y_SNAP_TOL = 1e-13

# Series are used up to this argument; beyond it the terms cancel badly.
_SERIES_MAX_TAU = 8.0
_SERIES_TERMS = 48
_LAMBDA_SERIES_MAX_TAU = 2.0


class DomainError(ValueError):
    """Argument outside the domain on which a function is defined."""


@dataclass(frozen=True)
class HankelValue:
    """Pair ``(H+_nu(tau), H-_nu(tau))``; ``minus`` is the conjugate of ``plus``."""

    plus: np.ndarray | complex
    minus: np.ndarray | complex


@dataclass(frozen=True)
class AmplitudeSymbol:
    """Non-oscillating amplitude ``a(tau) = exp(-+i tau) H+-(tau)``."""

    plus: np.ndarray | complex
    minus: np.ndarray | complex
    order_bound: float = -0.5


def is_integer_order(nu, tol: float = INTEGER_ORDER_TOL) -> bool:
    return abs(nu - round(nu)) < tol


def _as_float_array(x):
    return np.asarray(x, dtype=float)


def _require_positive(tau, name="tau"):
    tau = _as_float_array(tau)
    if np.any(~np.isfinite(tau)) or np.any(tau <= 0):
        raise DomainError(f"{name} must be finite and > 0")
    return tau


def _scalar_or_array(x):
    return x.item() if np.ndim(x) == 0 else x


def bessel_j(nu: float, tau):
    """Bessel function of the first kind ``J_nu(tau)`` for real ``nu``.

    ``tau = 0`` is accepted for ``nu >= 0`` and returns the limit value.
    """
    tau = _as_float_array(tau)
    if np.any(~np.isfinite(tau)) or np.any(tau < 0):
        raise DomainError("tau must be finite and >= 0")
    if nu < 0 and np.any(tau == 0):
        raise DomainError("J_nu(0) is unbounded or undefined for nu < 0")
    return _scalar_or_array(sc.jv(nu, tau))


def _integer_series(n: int, tau):
    """Return ``(J_n, A_n)`` for integer ``n >= 0`` from the ascending series.

    ``A_n = Y_n - (2/pi) J_n log(tau)`` is split off so that the logarithm is
    never formed as a difference of two large numbers.
    """
    z = tau / 2.0
    mz2 = -z * z
    zn = z**n
    jn = np.zeros_like(tau)
    psi_sum = np.zeros_like(tau)
    term = zn / sc.factorial(n)  # (z/2)^n / (k! (n+k)!) at k = 0
    for k in range(_SERIES_TERMS):
        jn = jn + term
        psi_sum = psi_sum + (sc.digamma(k + 1) + sc.digamma(n + k + 1)) * term
        term = term * mz2 / ((k + 1) * (n + k + 1))
    finite = np.zeros_like(tau)
    for k in range(n):
        finite = finite + sc.factorial(n - k - 1) / sc.factorial(k) * z ** (2 * k - n)
    an = -(2.0 / np.pi) * np.log(2.0) * jn - finite / np.pi - psi_sum / np.pi
    return jn, an


def weber_log_split(n, tau):
    """``A_n(tau) = Y_n(tau) - (2/pi) J_n(tau) log(tau)`` for integer ``n``.

    ``tau**|n| * A_n(tau)`` is entire with a nonzero value at the origin.
    """
    if not float(n).is_integer():
        raise DomainError(f"weber_log_split needs an integer order, got {n!r}")
    n = int(n)
    tau_in = _require_positive(tau)
    tau = np.atleast_1d(tau_in)
    m = abs(n)
    sign = -1.0 if (n < 0 and m % 2) else 1.0
    small = tau <= _SERIES_MAX_TAU
    out = np.empty_like(tau)
    if np.any(small):
        _, an = _integer_series(m, tau[small])
        out[small] = an
    if np.any(~small):
        tb = tau[~small]
        out[~small] = sc.yn(m, tb) - (2.0 / np.pi) * sc.jn(m, tb) * np.log(tb)
    return _scalar_or_array((sign * out).reshape(tau_in.shape))


def _y_integer(n: int, tau):
    m = abs(n)
    sign = -1.0 if (n < 0 and m % 2) else 1.0
    out = np.empty_like(tau)
    small = tau <= _SERIES_MAX_TAU
    if np.any(small):
        ts = tau[small]
        jn, an = _integer_series(m, ts)
        out[small] = (2.0 / np.pi) * jn * np.log(ts) + an
    if np.any(~small):
        out[~small] = sc.yn(m, tau[~small])
    return sign * out


def bessel_y(nu: float, tau):
    """Weber function ``Y_nu(tau)``, ``tau > 0``.

    Integer orders (up to rounding) use the integer-order logarithmic series
    (small argument) or ``scipy.special.yn``; all other orders use
    ``scipy.special.yv``, which stays accurate arbitrarily close to the
    integers where the connection formula loses digits.
    """
    tau = _require_positive(tau)
    if is_integer_order(nu, _Y_SNAP_TOL):
        return _scalar_or_array(_y_integer(int(round(nu)), np.atleast_1d(tau)).reshape(tau.shape))
    return _scalar_or_array(sc.yv(nu, tau))


def bessel_y_connection(nu: float, tau):
    """``cot(nu pi) J_nu - csc(nu pi) J_-nu``; only defined off the integers."""
    if is_integer_order(nu):
        raise DomainError("connection formula is singular at integer order")
    tau = _require_positive(tau)
    s = np.sin(nu * np.pi)
    c = np.cos(nu * np.pi)
    return _scalar_or_array((c * sc.jv(nu, tau) - sc.jv(-nu, tau)) / s)


def hankel(nu: float, tau) -> HankelValue:
    """``H+-_nu(tau) = J_nu(tau) +- i Y_nu(tau)``."""
    tau = _require_positive(tau)
    j = np.asarray(bessel_j(nu, tau))
    y = np.asarray(bessel_y(nu, tau))
    plus = j + 1j * y
    return HankelValue(_scalar_or_array(plus), _scalar_or_array(np.conj(plus)))


def lambda_fn(nu: float, tau):
    """Entire function ``tau**-nu * J_nu(tau)``; ``1 / (2**nu Gamma(nu+1))`` at 0.

    The reciprocal gamma function keeps the series valid for every real
    order, including negative integers where ``Lambda`` vanishes at 0.
    """
    tau_in = _as_float_array(tau)
    if np.any(~np.isfinite(tau_in)) or np.any(tau_in < 0):
        raise DomainError("tau must be finite and >= 0")
    tau = np.atleast_1d(tau_in)
    out = np.empty_like(tau)
    small = tau <= _LAMBDA_SERIES_MAX_TAU
    if np.any(small):
        q = -((tau[small] / 2.0) ** 2)
        acc = np.zeros_like(q)
        qk = np.ones_like(q)
        for k in range(_SERIES_TERMS):
            acc = acc + qk * sc.rgamma(nu + k + 1) / sc.factorial(k)
            qk = qk * q
        out[small] = acc * 2.0 ** (-nu)
    if np.any(~small):
        tb = tau[~small]
        out[~small] = tb ** (-nu) * sc.jv(nu, tb)
    return _scalar_or_array(out.reshape(tau_in.shape))


def hankel_amplitude(nu: float, tau, K: float = 1.0) -> AmplitudeSymbol:
    """Amplitudes ``a+-_nu(tau) = exp(-+i tau) H+-_nu(tau)`` for ``tau >= K``.

    Uses the exponentially scaled Hankel function so the phase never has to
    be removed numerically at large ``tau``.
    """
    tau = _as_float_array(tau)
    if K <= 0:
        raise DomainError("K must be > 0")
    if np.any(~np.isfinite(tau)) or np.any(tau < K):
        raise DomainError(f"hankel_amplitude needs tau >= K = {K}")
    plus = sc.hankel1e(nu, tau)
    return AmplitudeSymbol(_scalar_or_array(plus), _scalar_or_array(np.conj(plus)))


def bessel_derivative(values_nu, values_num1, nu: float, z):
    """``C'_nu(z)`` from ``nu C_nu + z C'_nu = z C_{nu-1}``."""
    return values_num1 - nu * values_nu / z


def wronskian(nu: float, z):
    """``H+ (H-)' - H- (H+)'``, derivatives taken through the recursion."""
    z = _require_positive(z, "z")
    h = hankel(nu, z)
    hm1 = hankel(nu - 1.0, z)
    dplus = bessel_derivative(np.asarray(h.plus), np.asarray(hm1.plus), nu, z)
    dminus = np.conj(dplus)
    return _scalar_or_array(np.asarray(h.plus) * dminus - np.asarray(h.minus) * dplus)


def wronskian_defect(nu: float, z):
    """Relative distance of the Hankel Wronskian from ``-4i / (pi z)``."""
    z = _require_positive(z, "z")
    expected = -4j / (np.pi * z)
    w = np.asarray(wronskian(nu, z))
    return _scalar_or_array(np.abs(w - expected) / np.abs(expected))
