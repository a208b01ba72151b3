"""The acceptance suite: twelve criteria, each a list of experiments."""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .config import ExperimentConfig, dyadic_schedule
from .experiments import Report, run_experiment

__all__ = ["Criterion", "CRITERIA", "CriterionResult", "run_criterion", "run_all", "max_workers", "WORKERS_ENV"]

WORKERS_ENV = "WEAKDISS_MAX_WORKERS"


def max_workers() -> int:
    """Worker cap from ``WEAKDISS_MAX_WORKERS``; 1 (serial) when unset."""
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from exc
    return max(1, min(value, os.cpu_count() or 1))


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    configs: tuple[ExperimentConfig, ...]
    budget_s: float


def _c(kind, mu=1.0, **kw):
    return ExperimentConfig(kind=kind, mu=mu, **kw)


_LATTICE_T = tuple(float(2**k) for k in range(0, 10))

CRITERIA: tuple[Criterion, ...] = (
    Criterion(1, "special-function identities", (_c("special-functions"),), 10.0),
    Criterion(
        2,
        "fundamental-matrix contract",
        tuple(_c("fundamental-matrix", mu, t_schedule=_LATTICE_T) for mu in (0.5, 1.0, 2.0, 3.0, math.pi)),
        60.0,
    ),
    Criterion(
        3,
        "mu -> 0 closed form",
        tuple(_c("closed-form-mu0", mu, t_schedule=_LATTICE_T) for mu in (0.0, 1e-12, 1e-8)),
        5.0,
    ),
    Criterion(
        4,
        "oracle equivalence",
        tuple(_c("oracle-equivalence", mu, t_schedule=(1.0, 4.0, 16.0)) for mu in (0.5, 1.0, 2.0, 3.0)),
        120.0,
    ),
    Criterion(
        5,
        "energy decay",
        tuple(_c("energy-decay", mu, n=n) for n in (1, 3) for mu in (0.5, 1.0, 2.0, 3.0, 5.0)),
        60.0,
    ),
    Criterion(
        6,
        "energy-operator sharpness",
        tuple(_c("operator-norm", mu, operator="energy") for mu in (1.5, 2.0, 3.0, 5.0)),
        60.0,
    ),
    Criterion(
        7,
        "solution-operator table",
        tuple(_c("operator-norm", mu, operator="sol") for mu in (0.5, 1.0, 3.0)),
        60.0,
    ),
    Criterion(
        8,
        "model-multiplier sup-norm",
        tuple(
            _c("sup-norm", mu, entry=e) for mu in (0.5, 1.0, 2.0, 3.0) for e in ("phi1", "phi2", "dphi1", "dphi2")
        ),
        120.0,
    ),
    Criterion(9, "Duhamel manufactured solution", (_c("duhamel-mms", 1.0, t_schedule=(3.0,)),), 60.0),
    Criterion(
        10,
        "Klein-Gordon transform",
        tuple(_c("klein-gordon", mu, t_schedule=(10.0,)) for mu in (1.0, 2.0, 4.0)),
        10.0,
    ),
    Criterion(11, "kernel sup-norm", (_c("kernel-sup", 2.0, t_schedule=tuple(dyadic_schedule())),), 180.0),
    Criterion(12, "predictor self-consistency", (_c("predictor-consistency"),), 1.0),
)


@dataclass
class CriterionResult:
    criterion: Criterion
    reports: list[Report]
    runtime_s: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def within_budget(self) -> bool:
        return self.runtime_s < self.criterion.budget_s

    def line(self) -> str:
        word = "PASS" if self.passed else "FAIL"
        bad = [r.config.label for r in self.reports if not r.passed]
        tail = f" (failing: {', '.join(bad)})" if bad else ""
        return (
            f"criterion {self.criterion.number:2d} {word}  {self.criterion.title}"
            f" [{len(self.reports)} runs, {self.runtime_s:.1f}s / {self.criterion.budget_s:g}s]{tail}"
        )


def run_criterion(criterion: Criterion, workers: int | None = None) -> CriterionResult:
    workers = max_workers() if workers is None else workers
    start = time.perf_counter()
    if workers > 1 and len(criterion.configs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run_experiment, criterion.configs))
    else:
        reports = [run_experiment(c) for c in criterion.configs]
    return CriterionResult(criterion, reports, time.perf_counter() - start)


def run_all(workers: int | None = None) -> list[CriterionResult]:
    return [run_criterion(c, workers) for c in CRITERIA]
