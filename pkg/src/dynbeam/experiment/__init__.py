from .config import ExperimentConfig, parse_config
from .metrics import success_detection, true_bin, wilson_halfwidth
from .montecarlo import CurvePoint, run_monte_carlo, sweep, write_csv
from .overhead import overhead

__all__ = [
    "CurvePoint", "ExperimentConfig", "overhead", "parse_config", "run_monte_carlo",
    "success_detection", "sweep", "true_bin", "wilson_halfwidth", "write_csv",
]
