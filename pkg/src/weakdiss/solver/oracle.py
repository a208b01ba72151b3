"""Brute-force per-frequency integration of the transformed equation.

The oracle is deliberately independent of the Bessel machinery: it integrates

    v'' + mu / (1+t) v' + r**2 v = 0

with an adaptive 8th-order Runge-Kutta scheme (DOP853), all frequencies at
once as one stiff-free linear system.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import solve_ivp

from ..multiplier import DissipationParams
from ..specfun import DomainError

__all__ = ["OracleStepLimit", "ode_oracle", "ORACLE_RTOL", "ORACLE_ATOL"]

ORACLE_RTOL = 1e-11
ORACLE_ATOL = 1e-14
DEFAULT_MAX_EVALUATIONS = 2_000_000


class OracleStepLimit(RuntimeError):
    """The integrator needed more right-hand-side evaluations than allowed."""


def ode_oracle(
    params: DissipationParams,
    r,
    init,
    t0: float,
    t,
    rtol: float = ORACLE_RTOL,
    atol: float = ORACLE_ATOL,
    max_evaluations: int = DEFAULT_MAX_EVALUATIONS,
):
    """Integrate from ``t0`` to ``t`` for each frequency in ``r``.

    ``init = (v0, v1)`` broadcasts against ``r`` and may be complex. ``t`` is
    a final time or an increasing array of output times; with an array the
    returned arrays carry a trailing time axis.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(~np.isfinite(r)) or np.any(r < 0):
        raise DomainError("r must be finite and >= 0")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if t0 < 0 or np.any(t_arr < t0) or np.any(np.diff(t_arr) < 0):
        raise DomainError("need 0 <= t0 <= t (times increasing)")
    v0, v1 = (np.broadcast_to(np.asarray(a), r.shape) for a in init)
    is_complex = np.iscomplexobj(v0) or np.iscomplexobj(v1)
    scalar_t = np.ndim(t) == 0

    if is_complex:
        y0 = np.concatenate([v0.real, v0.imag, v1.real, v1.imag]).astype(float)
        rr = np.concatenate([r, r])
    else:
        y0 = np.concatenate([v0, v1]).astype(float)
        rr = r
    m = rr.size
    r2 = rr * rr
    mu = params.mu
    count = [0]

    def rhs(s, y):
        count[0] += 1
        if count[0] > max_evaluations:
            raise OracleStepLimit(f"more than {max_evaluations} evaluations before t={s:.6g}")
        v, w = y[:m], y[m:]
        return np.concatenate([w, -mu / (1.0 + s) * w - r2 * v])

    if t_arr[-1] == t0:
        ys = np.repeat(y0[:, None], t_arr.size, axis=1)
    else:
        sol = solve_ivp(
            rhs, (t0, t_arr[-1]), y0, method="DOP853", t_eval=t_arr, rtol=rtol, atol=atol
        )
        if sol.status != 0:
            raise RuntimeError(f"ODE oracle failed: {sol.message}")
        ys = sol.y
    v, w = ys[:m], ys[m:]
    if is_complex:
        h = r.size
        v = v[:h] + 1j * v[h:]
        w = w[:h] + 1j * w[h:]
    if scalar_t:
        v, w = v[:, 0], w[:, 0]
    return v, w
