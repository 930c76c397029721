from .spec import IRP, IRP_UP, PREDICTIVE, RP, STRATEGIES, TD1, TargetSpec
from .world_model import WorldModel, default_world_model
from .rollout import PredictedRollout, RolloutStep, predict_rollout, predict_rollouts
from .targets import (compute_targets, discounted_returns, irp_target, irp_up_target, make_target_fn, rp_target,
                      td1_target)
