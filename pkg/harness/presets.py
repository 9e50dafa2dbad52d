"""
Scenario Presets

Built-in recipes for the reference experiments, recorded at full scale
(10^4-symbol packets, horizons up to 2^20 steps). Each preset is a list of
variants that share the victims and differ in the learner; ``--scale``
shrinks horizon, packet length and windows jointly.
"""

from dataclasses import replace

from harness.config import AlgorithmSpec, ExperimentConfig
from jamming.action_grid import ActionSpace
from jamming.rewards import RewardSpec
from jamming.victims import AdaptRule, SnrPolicy, VictimProfile
from models.modulation import ModulationScheme
from utils.units import db_to_linear

FULL_HORIZON = 2 ** 20
N_SYMBOLS = 10_000
SNR_RANGE = (db_to_linear(0.0), db_to_linear(20.0))


def _static(scheme, snr_db, coherent=True, name="victim"):
    return VictimProfile(policy=SnrPolicy.STATIC, schemes=(scheme,), snr=db_to_linear(snr_db),
                         snr_range=SNR_RANGE, n_symbols=N_SYMBOLS, coherent=coherent, name=name)


def _adaptive(snr_db, window, rule=AdaptRule.PERIODIC, name="victim"):
    return VictimProfile(policy=SnrPolicy.ADAPTIVE, schemes=(ModulationScheme.BPSK,),
                         snr=db_to_linear(snr_db), snr_range=SNR_RANGE, n_symbols=N_SYMBOLS,
                         adapt_window=window, adapt_rule=rule, name=name)


FIXED_JNR = ActionSpace(jnr_min=db_to_linear(10.0), jnr_max=db_to_linear(10.0))
FULL_JNR = ActionSpace(jnr_min=db_to_linear(0.0), jnr_max=db_to_linear(20.0))
PER_TARGET = RewardSpec("thresholded-per", 0.8)

BASELINES = (
    AlgorithmSpec("jb-ucb1"),
    AlgorithmSpec("epsilon-greedy", epsilon_m=5),
    AlgorithmSpec("epsilon-greedy", epsilon_m=10),
    AlgorithmSpec("epsilon-greedy", epsilon_m=20),
    AlgorithmSpec("fixed-awgn"),
)


def _variants(base, algorithms):
    return [replace(base, scenario=f"{base.scenario}/{a.label()}", algorithm=a) for a in algorithms]


def _static_bpsk():
    base = ExperimentConfig("static-bpsk", (_static(ModulationScheme.BPSK, 20.0),), FIXED_JNR,
                            RewardSpec("raw-ser"), horizon=FULL_HORIZON,
                            notes="BPSK victim at 20 dB, JNR 10 dB; expected optimum BPSK, rho ~ 0.078")
    return _variants(base, BASELINES)


def _static_qpsk():
    base = ExperimentConfig("static-qpsk", (_static(ModulationScheme.QPSK, 20.0),), FIXED_JNR,
                            RewardSpec("raw-ser"), horizon=FULL_HORIZON,
                            notes="QPSK victim at 20 dB, JNR 10 dB; expected optimum QPSK, rho ~ 0.087")
    return _variants(base, BASELINES)


def _noncoherent_bpsk():
    base = ExperimentConfig("noncoherent-bpsk", (_static(ModulationScheme.BPSK, 20.0, coherent=False),),
                            FIXED_JNR, RewardSpec("raw-ser"), horizon=FULL_HORIZON,
                            notes="random phase offset per packet; expected optimum BPSK, rho ~ 0.06")
    return _variants(base, BASELINES)


def _per_reward():
    base = ExperimentConfig("per-reward", (_static(ModulationScheme.BPSK, 20.0),), FIXED_JNR,
                            RewardSpec("raw-per"), horizon=FULL_HORIZON,
                            notes="PER reward; expected optimum BPSK, rho ~ 0.23")
    return _variants(base, BASELINES)


def _per_target():
    base = ExperimentConfig("per-target", (_static(ModulationScheme.BPSK, 20.0),), FULL_JNR, PER_TARGET,
                            horizon=FULL_HORIZON,
                            notes="PER-target reward over JNR 0-20 dB against a grid-search optimum")
    return _variants(base, (AlgorithmSpec("jb-ucb1"), AlgorithmSpec("fixed-awgn")))


def _elimination():
    base = ExperimentConfig("elimination", (_static(ModulationScheme.BPSK, 20.0),), FULL_JNR, PER_TARGET,
                            horizon=100_000,
                            notes="arm elimination against UCB1; expected optimum BPSK, 15 dB, rho ~ 0.22")
    return _variants(base, (AlgorithmSpec("jb-elim"), AlgorithmSpec("jb-ucb1")))


def _iid_victim():
    victim = VictimProfile(policy=SnrPolicy.IID, schemes=(ModulationScheme.BPSK, ModulationScheme.QPSK),
                           snr=SNR_RANGE[1], snr_range=SNR_RANGE, n_symbols=N_SYMBOLS, name="iid victim")
    base = ExperimentConfig("iid-victim", (victim,), FULL_JNR, PER_TARGET, horizon=FULL_HORIZON,
                            notes="victim draws scheme and power uniformly at every step")
    return _variants(base, BASELINES)


def _adaptive_victim():
    base = ExperimentConfig("adaptive-victim", (_adaptive(10.0, 50_000),), FULL_JNR, PER_TARGET,
                            horizon=FULL_HORIZON, oracle_m=50,
                            notes="victim redraws its power every 50000 steps")
    return _variants(base, (AlgorithmSpec("jb-drifting", window_w=25_000), AlgorithmSpec("jb-ucb1")))


def _two_victims():
    victims = (_static(ModulationScheme.BPSK, 15.0, name="victim 1"),
               _static(ModulationScheme.BPSK, 5.0, name="victim 2"))
    base = ExperimentConfig("two-victims", victims, FULL_JNR, PER_TARGET, horizon=FULL_HORIZON,
                            notes="mean PER of two BPSK victims; expected optimum BPSK, 13 dB, rho ~ 0.46")
    return _variants(base, (AlgorithmSpec("jb-ucb1"), AlgorithmSpec("fixed-awgn")))


def _mixed_victims():
    victims = (_static(ModulationScheme.QPSK, 5.0, name="victim 1"),
               _static(ModulationScheme.BPSK, 15.0, name="victim 2"))
    base = ExperimentConfig("mixed-victims", victims, FULL_JNR, PER_TARGET, horizon=FULL_HORIZON,
                            notes="QPSK and BPSK victims; expected optimum BPSK, 11.25 dB, rho ~ 0.25")
    return _variants(base, (AlgorithmSpec("jb-ucb1"), AlgorithmSpec("fixed-awgn")))


def _two_adaptive_victims():
    victims = (_adaptive(15.0, 50_000, AdaptRule.REDRAW, name="victim 1"),
               _adaptive(5.0, 30_000, AdaptRule.REDRAW, name="victim 2"))
    base = ExperimentConfig("two-adaptive-victims", victims, FULL_JNR, PER_TARGET, horizon=FULL_HORIZON, oracle_m=50,
                            notes="two victims adapting their power on windows of 50000 and 30000 steps")
    return _variants(base, (AlgorithmSpec("jb-drifting", window_w=25_000), AlgorithmSpec("jb-ucb1")))


PRESETS = {
    "static-bpsk": _static_bpsk,
    "static-qpsk": _static_qpsk,
    "noncoherent-bpsk": _noncoherent_bpsk,
    "per-reward": _per_reward,
    "per-target": _per_target,
    "elimination": _elimination,
    "iid-victim": _iid_victim,
    "adaptive-victim": _adaptive_victim,
    "two-victims": _two_victims,
    "mixed-victims": _mixed_victims,
    "two-adaptive-victims": _two_adaptive_victims,
}

# figure numbers of the reference experiments
FIGURE_PRESETS = {
    "fig3": "static-bpsk",
    "fig4": "static-qpsk",
    "fig5": "noncoherent-bpsk",
    "fig6": "per-reward",
    "fig9": "elimination",
    "fig11": "adaptive-victim",
    "fig12": "two-victims",
    "fig13": "mixed-victims",
}


def preset_names():
    """Every name ``preset`` accepts: figure numbers first, then descriptive names."""
    return sorted(FIGURE_PRESETS, key=lambda name: int(name[3:])) + sorted(PRESETS)


def resolve_preset(name):
    """Descriptive preset name for a figure number or descriptive name."""
    name = FIGURE_PRESETS.get(name, name)
    if name not in PRESETS:
        raise ValueError(f"Unknown preset {name!r} (expected one of {', '.join(preset_names())})")
    return name


def preset(name, scale=1.0, seeds=None):
    """
    Variants of a named preset.

    Args:
        name (str): Preset name such as ``"fig3"`` or ``"static-bpsk"``.
        scale (float): Joint scale of horizon, packet length and windows.
        seeds (Sequence[int] | None): Seeds overriding the default 30.

    Returns:
        list[ExperimentConfig]: Validated variants.
    """
    variants = []
    for config in PRESETS[resolve_preset(name)]():
        config = config.scaled(scale)
        if seeds is not None:
            config = config.with_seeds(seeds)
        variants.append(config.validate())
    return variants
