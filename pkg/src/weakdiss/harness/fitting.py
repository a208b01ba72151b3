"""Least-squares decay exponents in log-log coordinates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["DegenerateFitError", "FitResult", "fit_exponent"]

MIN_SAMPLES = 5


class DegenerateFitError(ValueError):
    """Too few samples, nonpositive values, or less than a decade in t."""


@dataclass(frozen=True)
class FitResult:
    exponent: float
    log_coefficient_used: bool
    residual: float
    sample_count: int
    intercept: float = 0.0

    def to_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "log_coefficient_used": self.log_coefficient_used,
            "residual": self.residual,
            "sample_count": self.sample_count,
            "intercept": self.intercept,
        }


def fit_exponent(samples, with_log: bool = False) -> FitResult:
    """Slope of ``log(value)`` against ``log(1+t)``.

    With ``with_log`` the values are divided by ``log(e+t)`` first, so a
    profile ``(1+t)**a log(e+t)`` yields ``a``. ``residual`` is the largest
    deviation of the data from the fitted line in log space.
    """
    arr = np.asarray(list(samples), dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < MIN_SAMPLES:
        raise DegenerateFitError(f"need at least {MIN_SAMPLES} (t, value) pairs")
    t, v = arr[:, 0], arr[:, 1]
    if np.any(~np.isfinite(arr)) or np.any(v <= 0):
        raise DegenerateFitError("values must be finite and > 0")
    if np.any(t < 1):
        raise DegenerateFitError("times must be >= 1")
    x = np.log1p(t)
    if (x.max() - x.min()) / np.log(10.0) < 1.0:
        raise DegenerateFitError("samples span less than one decade in t")
    y = np.log(v)
    if with_log:
        y = y - np.log(np.log(np.e + t))
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.abs(y - (slope * x + intercept)).max())
    return FitResult(float(slope), bool(with_log), residual, int(t.size), float(intercept))
