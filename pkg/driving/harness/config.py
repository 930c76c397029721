"""Run configuration and its key-value file format.

A config file holds one ``section.key = value`` per line; ``#`` starts a comment
and blank lines are skipped. Sections map onto the dataclasses below:

========  ==========================================
run       scalar fields of :class:`RunConfig`
agent     :class:`AgentConfig`
targets   :class:`TargetOptions`
world     :class:`SimConfig` (without the weights)
reward    :class:`RewardWeights`
noise     :class:`NoiseConfig`
scenario  :class:`ScenarioSpec` field overrides
========  ==========================================

Tuples are written as comma-separated lists, ``none`` clears an optional value.
Example::

    run.method = irp_up
    agent.hidden = 64, 64
    noise.q_ego = 0.0004, 0.0004, 0.0025, 0.0025
"""
import dataclasses
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union, get_args, get_origin, get_type_hints

from driving.actions import CONTROL_BOUNDS, GOAL_BOUNDS, ActionBounds
from driving.agent import AgentConfig
from driving.frenet import horizon_steps
from driving.targets import IRP, IRP_UP, RP, TD1, TargetSpec
from driving.uncertainty import NoiseConfig
from driving.world import SCENARIOS, RewardWeights, ScenarioSpec, SimConfig, scenario_spec
from driving.harness.errors import ConfigError

logger = logging.getLogger(__name__)

BASELINE1 = "baseline1"
BASELINE2 = "baseline2"
METHOD_STRATEGY = {BASELINE1: TD1, BASELINE2: TD1, RP: RP, IRP: IRP, IRP_UP: IRP_UP}
METHODS = tuple(METHOD_STRATEGY)


@dataclass(frozen=True)
class TargetOptions:
    """Optional target settings; unset values follow the method and the world."""
    strategy: Optional[str] = None
    horizon: Optional[float] = None


@dataclass(frozen=True)
class RunConfig:
    scenario_id: int = 1
    method: str = BASELINE2
    seed: int = 0
    total_env_steps: int = 50_000
    eval_every: int = 5_000
    eval_episodes: int = 20
    out_dir: str = "runs"
    agent: AgentConfig = field(default_factory=AgentConfig)
    targets: TargetOptions = field(default_factory=TargetOptions)
    world: SimConfig = field(default_factory=SimConfig)
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    scenario_overrides: Tuple[Tuple[str, Any], ...] = ()

    @property
    def uses_goals(self) -> bool:
        return self.method != BASELINE1

    @property
    def bounds(self) -> ActionBounds:
        return GOAL_BOUNDS if self.uses_goals else CONTROL_BOUNDS

    @property
    def strategy(self) -> str:
        return METHOD_STRATEGY[self.method]

    @property
    def scenario(self) -> ScenarioSpec:
        return scenario_spec(self.scenario_id, **dict(self.scenario_overrides))

    @property
    def target_horizon(self) -> float:
        return self.world.horizon if self.targets.horizon is None else self.targets.horizon

    @property
    def target_spec(self) -> TargetSpec:
        return TargetSpec(strategy=self.strategy, step=self.world.step, horizon=self.target_horizon,
                          gamma=self.agent.gamma, noise=self.noise, max_goal_duration=self.world.max_goal_duration)

    def validate(self) -> None:
        """Reject bad values and inconsistent combinations before any work starts.

        Raises:
            ConfigError: naming the offending setting.
        """
        if self.method not in METHODS:
            raise ConfigError("method must be one of {}, got {!r}".format(METHODS, self.method))
        if self.scenario_id not in SCENARIOS:
            raise ConfigError("scenario must be one of {}, got {!r}".format(sorted(SCENARIOS), self.scenario_id))
        if self.targets.strategy is not None and self.targets.strategy != self.strategy:
            raise ConfigError("method {} trains with {} targets, not {}".format(
                self.method, self.strategy, self.targets.strategy))
        if self.total_env_steps < 1:
            raise ConfigError("total_env_steps must be positive, got {}".format(self.total_env_steps))
        if self.eval_every < 0 or self.eval_episodes < 0:
            raise ConfigError("eval_every and eval_episodes must be non-negative")
        try:
            self.agent.validate()
            horizon_steps(self.world.step, self.world.horizon)
            self.target_spec.validate()
            scenario_spec(self.scenario_id, **dict(self.scenario_overrides))
        except (TypeError, ValueError) as e:
            raise ConfigError(str(e)) from e
        if self.target_horizon > self.world.horizon + 1e-9:
            raise ConfigError("target horizon {} s exceeds the planning horizon {} s".format(
                self.target_horizon, self.world.horizon))


# Config files

SECTIONS = ("run", "agent", "targets", "world", "reward", "noise", "scenario")
_RUN_KEYS = ("scenario_id", "method", "seed", "total_env_steps", "eval_every", "eval_episodes", "out_dir")
_BOOL_WORDS = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def _parse_value(text: str, hint: Any) -> Any:
    origin = get_origin(hint)
    if origin is Union:
        inner = [a for a in get_args(hint) if a is not type(None)][0]
        return None if text.lower() == "none" else _parse_value(text, inner)
    if origin is tuple:
        items = [item.strip() for item in text.split(",") if item.strip()]
        return tuple(_parse_value(item, get_args(hint)[0]) for item in items)
    if hint is bool:
        if text.lower() not in _BOOL_WORDS:
            raise ValueError("expected true or false, got {!r}".format(text))
        return _BOOL_WORDS[text.lower()]
    if hint in (int, float, str):
        return hint(text)
    raise ValueError("cannot parse a value of type {}".format(hint))


def _field_hints(cls) -> Dict[str, Any]:
    hints = get_type_hints(cls)
    return {f.name: hints[f.name] for f in dataclasses.fields(cls)}


_SECTION_TYPES = {
    "agent": AgentConfig,
    "targets": TargetOptions,
    "world": SimConfig,
    "reward": RewardWeights,
    "noise": NoiseConfig,
    "scenario": ScenarioSpec,
}


def _allowed_keys(section: str) -> Dict[str, Any]:
    if section == "run":
        hints = _field_hints(RunConfig)
        return {k: hints[k] for k in _RUN_KEYS}
    hints = _field_hints(_SECTION_TYPES[section])
    if section == "world":
        hints.pop("weights")
    if section == "scenario":
        hints.pop("scenario_id")
    return hints


def parse_config_text(text: str, base: RunConfig = RunConfig()) -> RunConfig:
    """Apply the settings in ``text`` on top of ``base``.

    Raises:
        ConfigError: malformed line, unknown section or key, or unparsable value,
            with its line number.
    """
    updates: Dict[str, Dict[str, Any]] = {s: {} for s in SECTIONS}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'section.key = value', got {!r}".format(raw.strip()), line_no)
        name, value = (part.strip() for part in line.split("=", 1))
        if "." not in name:
            raise ConfigError("key {!r} has no section".format(name), line_no)
        section, key = name.split(".", 1)
        if section not in SECTIONS:
            raise ConfigError("unknown section {!r}, expected one of {}".format(section, SECTIONS), line_no)
        allowed = _allowed_keys(section)
        if key not in allowed:
            raise ConfigError("unknown key {!r} in section {!r}".format(key, section), line_no)
        try:
            updates[section][key] = _parse_value(value, allowed[key])
        except ValueError as e:
            raise ConfigError("bad value for {}: {}".format(name, e), line_no) from e

    world = replace(base.world, **updates["world"])
    if updates["reward"]:
        world = replace(world, weights=replace(world.weights, **updates["reward"]))
    overrides = dict(base.scenario_overrides)
    overrides.update(updates["scenario"])
    return replace(
        base,
        agent=replace(base.agent, **updates["agent"]),
        targets=replace(base.targets, **updates["targets"]),
        world=world,
        noise=replace(base.noise, **updates["noise"]),
        scenario_overrides=tuple(sorted(overrides.items())),
        **updates["run"],
    )


def load_config(path: Union[str, Path], base: RunConfig = RunConfig()) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError("cannot read config file {}: {}".format(path, e)) from e
    logger.debug("Loading config from %s", path)
    return parse_config_text(text, base)


def with_overrides(cfg: RunConfig, **flags: Any) -> RunConfig:
    """``cfg`` with every flag that is not None applied; flags win over file values."""
    return replace(cfg, **{k: v for k, v in flags.items() if v is not None})
