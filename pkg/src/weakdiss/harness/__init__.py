"""Experiment configuration, exponent fitting, reporting and the acceptance suite."""

from .acceptance import CRITERIA, Criterion, CriterionResult, run_all, run_criterion
from .config import KINDS, THRESHOLDS, TOLERANCES, ConfigError, ExperimentConfig, dyadic_schedule, tolerance_for
from .emit import EmitError, emit, report_csv, report_json
from .experiments import ExperimentError, Report, run_experiment
from .fitting import DegenerateFitError, FitResult, fit_exponent

__all__ = [
    "CRITERIA",
    "KINDS",
    "THRESHOLDS",
    "TOLERANCES",
    "ConfigError",
    "Criterion",
    "CriterionResult",
    "DegenerateFitError",
    "EmitError",
    "ExperimentConfig",
    "ExperimentError",
    "FitResult",
    "Report",
    "dyadic_schedule",
    "emit",
    "fit_exponent",
    "report_csv",
    "report_json",
    "run_all",
    "run_criterion",
    "run_experiment",
    "tolerance_for",
]
