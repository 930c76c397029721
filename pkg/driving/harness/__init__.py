from .errors import ConfigError, MetricsFormatError
from .config import (BASELINE1, BASELINE2, METHOD_STRATEGY, METHODS, SECTIONS, RunConfig, TargetOptions, load_config,
                     parse_config_text, with_overrides)
from .metrics import (EVAL_HEADER, METRICS_HEADER, ROLLING_WINDOW, EvalRow, MetricsRow, RollingMetrics, read_metrics,
                      write_metrics)
from .episode import EpisodeResult, advance, greedy_action, make_agent, observe_for, prediction_context, run_episode
from .evaluation import EvalSummary, evaluate_policy, eval_seeds, run_eval
from .training import TrainingResult, run_training
from .plots import emit_plots, rolling_mean, series_labels
