"""
Experiment Configuration

Loading and validation of experiment files. A configuration is an INI file
with the sections [scenario], [jammer], [reward], [algorithm], [run] and one
[victim.N] section per victim. Powers are given in dB and converted to
linear ratios here.
"""

import configparser
import logging
import math
from dataclasses import dataclass, field, replace

from jamming.action_grid import DEFAULT_ARM_BUDGET, ActionSpace
from jamming.environment import DEFAULT_ORACLE_M, Fidelity
from jamming.rewards import RewardKind, RewardSpec
from jamming.victims import AdaptRule, SnrPolicy, VictimProfile
from models.error_rates import ErrorRule, HolderParams, holder_constants
from models.modulation import ModulationScheme
from utils.errors import ConfigError
from utils.units import db_to_linear

logger = logging.getLogger(__name__)

ALGORITHMS = ("jb-ucb1", "jb-elim", "jb-drifting", "epsilon-greedy", "fixed-awgn")
DEFAULT_SEEDS = tuple(range(30))


@dataclass(frozen=True)
class AlgorithmSpec:
    """Learner of an experiment and its parameters.

    Attributes:
        name (str): One of ``ALGORITHMS``.
        window_w (int): Frame length of ``jb-drifting``.
        epsilon_m (int): Fixed discretization of ``epsilon-greedy``.
        epsilon0 (float): Base exploration probability of ``epsilon-greedy``.
    """

    name: str = "jb-ucb1"
    window_w: int = 25_000
    epsilon_m: int = 20
    epsilon0: float = 0.9

    def label(self):
        if self.name == "jb-drifting":
            return f"{self.name}-w{self.window_w}"
        if self.name == "epsilon-greedy":
            return f"{self.name}-m{self.epsilon_m}"
        return self.name


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to run one experiment over several seeds."""

    scenario: str
    victims: tuple
    action_space: ActionSpace
    reward: RewardSpec
    algorithm: AlgorithmSpec = AlgorithmSpec()
    horizon: int = 2 ** 17
    fidelity: Fidelity = Fidelity.ANALYTIC
    packets_per_step: int = 1
    seeds: tuple = DEFAULT_SEEDS
    weights: tuple = None
    oracle_m: int = DEFAULT_ORACLE_M
    holder: HolderParams = None
    arm_budget: int = DEFAULT_ARM_BUDGET
    epsilon: float = 0.1
    jobs: int = 1
    notes: str = field(default="", compare=False)

    @property
    def victim_weights(self):
        if self.weights is None:
            return tuple(1.0 / len(self.victims) for _ in self.victims)
        return self.weights

    def holder_params(self):
        """Configured Hoelder parameters, or the scenario's worst case."""
        if self.holder is not None:
            return self.holder
        snr_max = max(max(v.snr_range[1], v.snr) for v in self.victims)
        return holder_constants(max(snr_max, 1e-12), self.action_space.jnr_min)

    def violations(self):
        """Every invariant the configuration breaks, as messages."""
        problems = []
        if self.horizon < 1:
            problems.append(f"horizon must be at least 1, got {self.horizon}")
        if not self.victims:
            problems.append("at least one [victim.N] section is required")
        for victim in self.victims:
            problems.extend(victim.violations())
        if not self.seeds:
            problems.append("seeds must not be empty")
        if self.packets_per_step < 1:
            problems.append("packets_per_step must be at least 1")
        if self.oracle_m < 2:
            problems.append("oracle_m must be at least 2")
        if self.jobs < 1:
            problems.append("jobs must be at least 1")
        if self.weights is not None:
            if len(self.weights) != len(self.victims) or any(w < 0 for w in self.weights) \
                    or not math.isclose(sum(self.weights), 1.0, abs_tol=1e-9):
                problems.append("victim weights must be nonnegative and sum to 1")
        if self.reward.kind is RewardKind.THRESHOLDED_SER and len(self.victims) > 1:
            problems.append("thresholded-ser rewards support a single victim")
        algorithm = self.algorithm
        if algorithm.name not in ALGORITHMS:
            problems.append(f"unknown algorithm {algorithm.name!r} (expected one of {', '.join(ALGORITHMS)})")
        if algorithm.name == "jb-drifting" and (algorithm.window_w < 2 or algorithm.window_w % 2):
            problems.append(f"window must be an even number of at least 2, got {algorithm.window_w}")
        if algorithm.name == "epsilon-greedy":
            if algorithm.epsilon_m < 1:
                problems.append("epsilon_m must be at least 1")
            if not 0.0 < algorithm.epsilon0 < 1.0:
                problems.append("epsilon0 must lie in (0, 1)")
        if algorithm.name == "fixed-awgn" and ModulationScheme.AWGN not in self.action_space.schemes:
            problems.append("fixed-awgn needs awgn among the jammer schemes")
        if not 0.0 < self.epsilon < 1.0:
            problems.append("bounds epsilon must lie in (0, 1)")
        return problems

    def validate(self):
        problems = self.violations()
        if problems:
            raise ConfigError(problems)
        return self

    def scaled(self, factor):
        """Shrink (or grow) horizon, packet length and victim/drift windows jointly."""
        if factor <= 0:
            raise ConfigError([f"scale must be positive, got {factor}"])
        if factor == 1:
            return self
        victims = tuple(replace(v, n_symbols=max(1, round(v.n_symbols * factor)),
                                adapt_window=max(1, round(v.adapt_window * factor)))
                        for v in self.victims)
        window = max(2, 2 * round(self.algorithm.window_w * factor / 2))
        return replace(self, victims=victims, horizon=max(1, round(self.horizon * factor)),
                       algorithm=replace(self.algorithm, window_w=window))

    def with_seeds(self, seeds):
        return replace(self, seeds=tuple(int(s) for s in seeds))


class _Reader:
    """Typed access to a ConfigParser that collects every bad value."""

    def __init__(self, parser):
        self.parser = parser
        self.problems = []

    def get(self, section, key, convert, default):
        if not self.parser.has_option(section, key):
            return default
        raw = self.parser.get(section, key).strip()
        if raw == "":
            return default
        try:
            return convert(raw)
        except (TypeError, ValueError) as exc:
            self.problems.append(f"[{section}] {key} = {raw!r}: {exc}")
            return default


def _bool(text):
    lowered = text.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected a boolean")


def _int(text):
    return int(float(text)) if "e" in text.lower() else int(text)


def _list(text):
    return [item.strip() for item in text.split(",") if item.strip()]


def parse_seeds(text):
    """Parse ``0-29`` or ``1, 4, 9`` into a tuple of ints."""
    seeds = []
    for item in _list(text):
        start, dash, stop = item.partition("-")
        if dash and start:
            seeds.extend(range(int(start), int(stop) + 1))
        else:
            seeds.append(int(item))
    return tuple(seeds)


def _victim_order(section):
    suffix = section.partition(".")[2]
    return (0, int(suffix), section) if suffix.isdigit() else (1, 0, section)


def _victim(reader, section, index):
    policy = reader.get(section, "policy", SnrPolicy, SnrPolicy.STATIC)
    schemes = reader.get(section, "schemes", lambda t: tuple(ModulationScheme.parse(s) for s in _list(t)),
                         (ModulationScheme.BPSK,))
    snr_min = reader.get(section, "snr_min_db", db_to_linear, 1.0)
    snr_max = reader.get(section, "snr_max_db", db_to_linear, 100.0)
    snr = reader.get(section, "snr_db", db_to_linear, snr_max)
    kwargs = dict(
        policy=policy,
        schemes=schemes,
        snr=snr,
        snr_range=(min(snr_min, snr), max(snr_max, snr)) if policy is SnrPolicy.STATIC else (snr_min, snr_max),
        scheme_weights=reader.get(section, "scheme_weights", lambda t: tuple(float(w) for w in _list(t)), None),
        n_symbols=reader.get(section, "n_symbols", _int, 10_000),
        error_rule=reader.get(section, "error_rule", ErrorRule.parse, ErrorRule()),
        coherent=reader.get(section, "coherent", _bool, True),
        adapt_window=reader.get(section, "adapt_window", _int, 50_000),
        trigger=reader.get(section, "trigger", float, 0.2),
        adapt_rule=reader.get(section, "adapt_rule", AdaptRule, AdaptRule.REDRAW),
        snr_step_db=reader.get(section, "snr_step_db", float, 2.0),
        name=reader.get(section, "name", str, f"victim {index}"),
    )
    try:
        return VictimProfile(**kwargs)
    except ValueError as exc:
        reader.problems.append(f"[{section}] {exc}")
        return None


def parse_config(text, source="<string>"):
    """
    Build an ExperimentConfig from INI text.

    Args:
        text (str): Configuration file contents.
        source (str): Name used in error messages.

    Returns:
        ExperimentConfig: The validated configuration.

    Raises:
        ConfigError: Listing every violation found.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError([f"{source}: {exc}"]) from exc
    reader = _Reader(parser)

    scenario = reader.get("scenario", "name", str, "custom")
    horizon = reader.get("scenario", "horizon", _int, 2 ** 17)
    fidelity = reader.get("scenario", "fidelity", Fidelity, Fidelity.ANALYTIC)
    packets = reader.get("scenario", "packets_per_step", _int, 1)
    oracle_m = reader.get("scenario", "oracle_m", _int, DEFAULT_ORACLE_M)
    arm_budget = reader.get("scenario", "arm_budget", _int, DEFAULT_ARM_BUDGET)

    schemes = reader.get("jammer", "schemes", _list, ["awgn", "bpsk", "qpsk"])
    jnr_min = reader.get("jammer", "jnr_min_db", db_to_linear, 1.0)
    jnr_max = reader.get("jammer", "jnr_max_db", db_to_linear, 100.0)
    action_space = None
    try:
        action_space = ActionSpace(tuple(schemes), jnr_min, jnr_max)
    except ValueError as exc:
        reader.problems.append(f"[jammer] {exc}")

    kind = reader.get("reward", "kind", str, "raw-ser")
    target = reader.get("reward", "target", float, None)
    reward = None
    try:
        reward = RewardSpec(kind, target)
    except ValueError as exc:
        reader.problems.append(f"[reward] {exc}")

    algorithm = AlgorithmSpec(
        name=reader.get("algorithm", "name", str, "jb-ucb1"),
        window_w=reader.get("algorithm", "window", _int, 25_000),
        epsilon_m=reader.get("algorithm", "epsilon_m", _int, 20),
        epsilon0=reader.get("algorithm", "epsilon0", float, 0.9),
    )
    holder = None
    holder_l = reader.get("algorithm", "holder_l", str, "auto")
    if holder_l != "auto":
        try:
            holder = HolderParams(float(holder_l), reader.get("algorithm", "holder_alpha", float, 1.0),
                                  reader.get("algorithm", "restriction_delta", float, 1.0))
        except ValueError as exc:
            reader.problems.append(f"[algorithm] {exc}")

    seeds = reader.get("run", "seeds", parse_seeds, DEFAULT_SEEDS)
    jobs = reader.get("run", "jobs", _int, 1)
    epsilon = reader.get("run", "bounds_epsilon", float, 0.1)
    scale = reader.get("run", "scale", float, 1.0)

    victim_sections = sorted((s for s in parser.sections() if s.startswith("victim")), key=_victim_order)
    victims, weights = [], []
    for index, section in enumerate(victim_sections, start=1):
        victim = _victim(reader, section, index)
        if victim is not None:
            victims.append(victim)
        weights.append(reader.get(section, "weight", float, None))

    if reader.problems or action_space is None or reward is None:
        raise ConfigError(reader.problems or ["invalid configuration"])

    explicit = None
    if any(w is not None for w in weights):
        if any(w is None for w in weights):
            raise ConfigError(["either every victim or none must set a weight"])
        explicit = tuple(weights)

    config = ExperimentConfig(
        scenario=scenario, victims=tuple(victims), action_space=action_space, reward=reward,
        algorithm=algorithm, horizon=horizon, fidelity=fidelity, packets_per_step=packets,
        seeds=seeds, weights=explicit, oracle_m=oracle_m, holder=holder, arm_budget=arm_budget,
        epsilon=epsilon, jobs=jobs,
    )
    config.validate()
    if scale != 1.0:
        config = config.scaled(scale)
    logger.info("loaded scenario %s: %d victim(s), %s, horizon %d", scenario, len(victims),
                algorithm.label(), config.horizon)
    return config


def load_config(path):
    """
    Load an experiment file.

    Raises:
        OSError: If the file cannot be read.
        ConfigError: If its contents are invalid.
    """
    with open(path, "r") as f:
        text = f.read()
    return parse_config(text, source=str(path))
