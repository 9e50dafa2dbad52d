"""
Experiment Runner

Runs a configured algorithm for every seed (optionally in a process pool),
checkpoints each seed at round boundaries, summarizes the runs and writes
traces, plot data and the JSON summary.
"""

import logging
import os
from collections import Counter
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np
import pandas as pd
from tqdm import tqdm

from bandits.base_policy import argmax_lowest
from jamming.bounds import (BoundInputs, bound_overlay, one_step_delta, one_step_exceedance,
                            regret_curve, suboptimality_audit)
from jamming.drifting import jb_drifting_run
from jamming.environment import JammingEnvironment
from jamming.jamming_bandits import epsilon_greedy_run, fixed_action_run, jb_run
from models.error_rates import HolderParams
from models.link_simulator import JammerAction
from models.modulation import ModulationScheme
from utils.file_utils import ensure_dir, load_checkpoint, save_checkpoint, save_summary, save_trace

logger = logging.getLogger(__name__)

CHECKPOINT_NAME = "checkpoint.pkl"
PLOT_POINTS = 200
RESUMABLE = ("jb-ucb1", "jb-elim", "jb-drifting", "fixed-awgn")


@dataclass
class SeedResult:
    """Trace and per-seed summary of one run."""

    seed: int
    trace: object
    summary: dict


def build_environment(config, seed):
    """Environment of one seed plus the policy's own stream.

    Both streams are spawned from ``SeedSequence(seed)``, so the learner's
    exploration never shifts the environment's draws.
    """
    env_sequence, policy_sequence = np.random.SeedSequence(seed).spawn(2)
    env = JammingEnvironment(
        config.victims, config.action_space, config.reward, weights=config.victim_weights,
        fidelity=config.fidelity, packets_per_step=config.packets_per_step, seed=seed,
        rng=np.random.default_rng(env_sequence), oracle_m=config.oracle_m)
    return env, np.random.default_rng(policy_sequence)


def seed_directory(out_dir, seed):
    return os.path.join(out_dir, f"seed_{seed}")


def run_seed(config, seed, run_dir=None, resume=False):
    """
    Run the configured algorithm for one seed.

    Args:
        config (ExperimentConfig): Validated configuration.
        seed (int): Master seed.
        run_dir (str | None): Directory for the round-boundary checkpoint.
        resume (bool): Continue from an existing checkpoint in ``run_dir``.

    Returns:
        SeedResult: The trace and its summary.
    """
    holder = config.holder_params()
    algorithm = config.algorithm
    env, policy_rng = build_environment(config, seed)
    trace, first_round = None, 0
    checkpoint = os.path.join(run_dir, CHECKPOINT_NAME) if run_dir else None
    if resume and checkpoint and os.path.exists(checkpoint) and algorithm.name in RESUMABLE:
        state = load_checkpoint(checkpoint)
        env, policy_rng, trace, first_round = (state["env"], state["policy_rng"], state["trace"],
                                               state["next_round"])
        logger.info("seed %d: resuming at round %d (%d steps done)", seed, first_round, len(trace))

    def on_round_end(current, current_trace):
        save_checkpoint({"env": env, "policy_rng": policy_rng, "trace": current_trace,
                         "next_round": current.index + 1}, checkpoint)

    hook = on_round_end if checkpoint else None
    if algorithm.name in ("jb-ucb1", "jb-elim"):
        inner = "ucb1" if algorithm.name == "jb-ucb1" else "ucb-improved"
        trace = jb_run(env, config.horizon, holder, inner, policy_rng, config.arm_budget,
                       trace, first_round, hook)
    elif algorithm.name == "jb-drifting":
        trace = jb_drifting_run(env, config.horizon, holder, algorithm.window_w, policy_rng,
                                config.arm_budget, trace, first_round, hook)
    elif algorithm.name == "epsilon-greedy":
        trace = epsilon_greedy_run(env, config.horizon, algorithm.epsilon_m, algorithm.epsilon0,
                                   policy_rng, config.arm_budget)
    elif algorithm.name == "fixed-awgn":
        action = JammerAction(ModulationScheme.AWGN, config.action_space.jnr_max, 1.0)
        trace = fixed_action_run(env, config.horizon, action, trace, first_round, hook)
    else:
        raise ValueError(f"Unknown algorithm {algorithm.name!r}")
    return SeedResult(seed, trace, seed_summary(config, env, trace, holder))


def seed_summary(config, env, trace, holder):
    """Terminal behaviour, regret and audits of one finished run."""
    terminal_round = trace.terminal_round()
    modal = trace.terminal_modal_arm()
    frame = trace.round_frame(terminal_round)
    summary = {
        "terminal_round": terminal_round,
        "terminal_modal_arm": modal,
        "terminal_mean_reward": float(frame["reward"].mean()),
        "terminal_mean_expected_reward": float(frame["expected_reward"].mean()),
        "terminal_mean_ser": float(frame["ser_est"].mean()),
        "terminal_mean_per": float(frame["per_est"].mean()),
        "final_cum_regret": float(trace.cumulative_regret[-1]),
        "average_regret": float(trace.cumulative_regret[-1] / len(trace)),
        "regret_slope": trace.regret_slope(),
    }
    if config.algorithm.name == "fixed-awgn":
        return summary

    grid = env.action_space.grid(modal["m"], arm_budget=None)
    oracle_means = env.expected_rewards(grid)
    oracle_arm = argmax_lowest(oracle_means)
    summary["terminal_oracle_arm"] = grid.describe(oracle_arm)
    summary["matches_oracle"] = modal["arm"] == oracle_arm

    round_length = len(frame)
    if round_length >= 2:
        delta = one_step_delta(round_length, holder)
        audit = suboptimality_audit(trace, oracle_means, delta, round_index=terminal_round)
        exceedance = one_step_exceedance(trace, oracle_means, delta, len(grid.schemes), grid.m,
                                         audit, round_index=terminal_round)
        audit_report = audit.to_dict()
        # per-arm gaps are long and recoverable from the oracle
        audit_report.pop("gaps")
        audit_report.pop("undersampled_steps")
        summary["suboptimality_audit"] = audit_report
        summary["one_step_exceedance"] = exceedance.to_dict()
    return summary


def _run_task(task):
    config, seed, run_dir, resume = task
    return run_seed(config, seed, run_dir, resume)


def run_experiment(config, out_dir=None, jobs=None, resume=False, progress=True):
    """
    Run every seed of a configuration.

    Args:
        config (ExperimentConfig): Validated configuration.
        out_dir (str | None): Output directory; enables checkpoints.
        jobs (int | None): Worker processes, defaulting to ``config.jobs``.
        resume (bool): Continue seeds from their checkpoints.
        progress (bool): Show a tqdm bar over seeds.

    Returns:
        tuple: ``(list[SeedResult], summary dict)``.
    """
    jobs = jobs or config.jobs
    if resume and not algorithm_resumes(config):
        logger.warning("%s restarts from scratch; checkpoints are not used", config.algorithm.name)
    tasks = [(config, seed, seed_directory(out_dir, seed) if out_dir else None, resume)
             for seed in config.seeds]
    logger.info("running %s (%s) for %d seed(s), horizon %d, %d job(s)", config.scenario,
                config.algorithm.label(), len(tasks), config.horizon, jobs)
    bar = dict(total=len(tasks), desc=config.algorithm.label(), unit="seed", disable=not progress)
    if jobs > 1 and len(tasks) > 1:
        with Pool(min(jobs, len(tasks))) as pool:
            results = list(tqdm(pool.imap(_run_task, tasks), **bar))
    else:
        results = [_run_task(task) for task in tqdm(tasks, **bar)]
    return results, summarize(config, results)


def algorithm_resumes(config):
    return config.algorithm.name in RESUMABLE


def _mean_ci(values):
    values = np.asarray([v for v in values if v is not None], dtype=float)
    if values.size == 0:
        return None
    half = 1.96 * values.std(ddof=1) / np.sqrt(values.size) if values.size > 1 else 0.0
    return {"mean": float(values.mean()), "ci95": float(half), "n": int(values.size)}


def summarize(config, results):
    """
    Aggregate per-seed summaries.

    Returns:
        dict: Scenario description, per-seed summaries, cross-seed means with
        95% confidence half-widths, modal-arm frequencies and bound overlays.
    """
    if not results:
        raise ValueError("no runs to summarize")
    holder = config.holder_params()
    seeds = [dict(r.summary, seed=r.seed) for r in results]
    arms = Counter(f"{s['terminal_modal_arm']['scheme']}/{s['terminal_modal_arm']['jnr_db']:.2f}dB/"
                   f"rho={s['terminal_modal_arm']['rho']:.4f}" for s in seeds)
    terminal_m = max(s["terminal_modal_arm"]["m"] for s in seeds)
    inputs = BoundInputs(config.horizon, holder, n_mod=len(config.action_space.schemes),
                         m=terminal_m, epsilon=config.epsilon)
    summary = {
        "scenario": config.scenario,
        "algorithm": config.algorithm.label(),
        "horizon": config.horizon,
        "seeds": [r.seed for r in results],
        "fidelity": config.fidelity.value,
        "reward": str(config.reward),
        "holder": {"L": holder.constant_L, "alpha": holder.exponent_alpha},
        "victims": [v.name for v in config.victims],
        "per_seed": seeds,
        "terminal_mean_reward": _mean_ci(s["terminal_mean_reward"] for s in seeds),
        "terminal_mean_expected_reward": _mean_ci(s["terminal_mean_expected_reward"] for s in seeds),
        "final_cum_regret": _mean_ci(s["final_cum_regret"] for s in seeds),
        "regret_slope": _mean_ci(s["regret_slope"] for s in seeds),
        "modal_arm_counts": dict(sorted(arms.items())),
        "mean_regret_at_round_ends": mean_regret_at_round_ends(results),
    }
    if config.horizon >= 2:
        summary["bounds"] = bound_overlay(inputs, [s.value for s in config.action_space.schemes])
    matches = [s["matches_oracle"] for s in seeds if "matches_oracle" in s]
    if matches:
        summary["oracle_match_rate"] = float(np.mean(matches))
    return summary


def mean_regret_at_round_ends(results):
    """Mean cumulative regret over seeds at every round boundary."""
    frames = [r.trace.to_frame() for r in results]
    ends = frames[0].groupby("round")["t"].max()
    regret = np.mean([f["cum_regret"].to_numpy()[ends.to_numpy() - 1] for f in frames], axis=0)
    return [{"t": int(t), "cum_regret": float(value)} for t, value in zip(ends, regret)]


def plot_data(results, config=None, points=PLOT_POINTS):
    """Cross-seed mean curves sampled at log-spaced steps.

    The regret shape uses the configured Hoelder exponent and scheme count,
    or alpha = 1 with three schemes when no configuration is given.
    """
    horizon = len(results[0].trace)
    steps = np.unique(np.geomspace(1, horizon, num=min(points, horizon)).astype(int))
    rewards = np.array([r.trace.column("reward").astype(float) for r in results])
    running = np.cumsum(rewards, axis=1) / np.arange(1, horizon + 1)
    regret = np.array([r.trace.cumulative_regret for r in results])
    if config is not None:
        inputs = BoundInputs(horizon, config.holder_params(), n_mod=len(config.action_space.schemes))
    else:
        inputs = BoundInputs(horizon, HolderParams(1.0, 1.0))
    return pd.DataFrame({
        "t": steps,
        "mean_reward_running": running[:, steps - 1].mean(axis=0),
        "mean_cum_regret": regret[:, steps - 1].mean(axis=0),
        "regret_shape": [np.nan if t < 2 else regret_curve(inputs, int(t)) for t in steps],
    })


def emit_outputs(results, summary, out_dir, config=None):
    """
    Write per-seed traces, the summary and the plot data.

    Args:
        results (list[SeedResult]): Finished runs.
        summary (dict): Output of ``summarize``.
        out_dir (str): Output directory.
        config (ExperimentConfig | None): Hoelder exponent and scheme
            count of the regret shape column.

    Returns:
        list[str]: Paths written.

    Raises:
        ValueError: If ``results`` is empty.
        OSError: If a file cannot be written.
    """
    if not results:
        raise ValueError("no traces to write")
    ensure_dir(out_dir)
    written = [save_trace(r.trace, os.path.join(seed_directory(out_dir, r.seed), "trace.csv"))
               for r in results]
    written.append(save_summary(summary, os.path.join(out_dir, "summary.json")))
    data = plot_data(results, config)
    path = os.path.join(out_dir, "plot_data.csv")
    data.to_csv(path, index=False)
    written.append(path)
    logger.info("wrote %d file(s) to %s", len(written), out_dir)
    return written
