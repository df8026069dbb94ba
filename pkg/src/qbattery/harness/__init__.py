"""Parameter sweeps, CSV output and the command-line tool."""

from .config import Axis, ConfigError, SolverSettings, SweepConfig, figure_config
from .output import emit_csv, emit_plot_script
from .sweep import Row, SweepResult, evaluate_point, run_sweep
