"""Spectral Cauchy solver: homogeneous propagation and Duhamel's formula."""

from __future__ import annotations

import numpy as np

from ..multiplier import DissipationParams, fundamental_matrix
from ..specfun import DomainError
from .grid import FieldState, SourceTerm, forward_transform, inverse_transform, warn_if_aliased

__all__ = ["solve_homogeneous", "solve_inhomogeneous", "propagate_hat", "duhamel_hat"]

REALITY_TOL = 1e-10


def _to_real(u: np.ndarray, what: str) -> np.ndarray:
    scale = max(np.abs(u.real).max(), np.finfo(float).tiny)
    if np.abs(u.imag).max() > REALITY_TOL * scale:
        raise ArithmeticError(f"{what}: imaginary part exceeds {REALITY_TOL} of the real part")
    return u.real.copy()


def propagate_hat(params: DissipationParams, v_hat, vt_hat, xi, t0: float, t: float):
    """Apply ``Phi(t, t0, |xi|)`` mode by mode."""
    return fundamental_matrix(params, t, np.abs(xi), t0).apply(v_hat, vt_hat)


def _back(grid, v_hat, vt_hat, t):
    v = _to_real(inverse_transform(v_hat, grid), "v")
    vt = _to_real(inverse_transform(vt_hat, grid), "vt")
    return FieldState(t, v, vt, grid)


def solve_homogeneous(params: DissipationParams, data: FieldState, t: float) -> FieldState:
    """Solve the homogeneous problem from ``data`` (given at ``data.t``) up to ``t``.

    Warns with :class:`~weakdiss.solver.grid.AliasingWarning` when the data
    spectrum at Nyquist exceeds ``1e-8`` of its peak.
    """
    if t < data.t:
        raise DomainError("t must not precede the data time")
    grid = data.grid
    v_hat = forward_transform(data.v, grid)
    vt_hat = forward_transform(data.vt, grid)
    warn_if_aliased(v_hat, grid)
    warn_if_aliased(vt_hat, grid)
    if t == data.t:
        return FieldState(t, data.v.copy(), data.vt.copy(), grid)
    return _back(grid, *propagate_hat(params, v_hat, vt_hat, grid.xi, data.t, t), t)


def duhamel_hat(params: DissipationParams, f: SourceTerm, grid, t0: float, t: float, panels: int, nodes: int):
    """``int_t0^t (Phi2, d/dt Phi2)(t, s, |xi|) f_hat(s, xi) ds`` by composite Gauss-Legendre."""
    if panels < 1 or nodes < 1:
        raise DomainError("panels and nodes must be >= 1")
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(t0, t, panels + 1)
    r = np.abs(grid.xi)
    acc_v = np.zeros(grid.N, dtype=complex)
    acc_vt = np.zeros(grid.N, dtype=complex)
    # fixed panel-then-node order keeps the sum deterministic
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        for xq, wq in zip(x, w):
            s = a + half * (xq + 1.0)
            m = fundamental_matrix(params, t, r, s)
            fh = f.hat(s, grid)
            acc_v += half * wq * m.phi2 * fh
            acc_vt += half * wq * m.dphi2 * fh
    return acc_v, acc_vt


def solve_inhomogeneous(
    params: DissipationParams,
    data: FieldState,
    f: SourceTerm,
    t: float,
    panels: int = 16,
    nodes: int = 4,
) -> tuple[FieldState, float]:
    """Data evolution plus the Duhamel integral of ``f``.

    Returns ``(state, error_estimate)``. The estimate is the sup-norm change
    of ``v`` when the panel count is halved, a conservative bound for the
    finer result.
    """
    if t < data.t:
        raise DomainError("t must not precede the data time")
    if not f.smooth:
        raise DomainError("Gauss-Legendre quadrature needs a source smooth in t")
    grid = data.grid
    v_hat = forward_transform(data.v, grid)
    vt_hat = forward_transform(data.vt, grid)
    warn_if_aliased(v_hat, grid)
    warn_if_aliased(vt_hat, grid)
    if t == data.t:
        return FieldState(t, data.v.copy(), data.vt.copy(), grid), 0.0
    hv, hvt = propagate_hat(params, v_hat, vt_hat, grid.xi, data.t, t)
    dv, dvt = duhamel_hat(params, f, grid, data.t, t, panels, nodes)
    state = _back(grid, hv + dv, hvt + dvt, t)
    if panels >= 2:
        cv, _ = duhamel_hat(params, f, grid, data.t, t, panels // 2, nodes)
        err = float(np.abs(inverse_transform(dv - cv, grid)).max())
    else:
        err = float("nan")
    return state, err
