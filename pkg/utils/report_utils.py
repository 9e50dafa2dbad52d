"""
Report Utilities

This module contains utility functions for printing run summaries, oracle
scans and bound values to the console.
"""


def print_banner(title):
    print(f"\n=== {title} ===")


def _format_ci(stat, digits=4):
    if stat is None:
        return "n/a"
    return f"{stat['mean']:.{digits}f} +/- {stat['ci95']:.{digits}f} (n={stat['n']})"


def _format_arm(arm):
    return f"{arm['scheme']} @ {arm['jnr_db']:.2f} dB, rho={arm['rho']:.4f}"


def print_summary(summary):
    """
    Print the headline numbers of an experiment summary.

    Args:
        summary (dict): Summary as written to summary.json.
    """
    print_banner(f"{summary['scenario']} ({summary['algorithm']})")
    print(f"Horizon: {summary['horizon']}   Seeds: {len(summary['seeds'])}   "
          f"Reward: {summary['reward']}   Fidelity: {summary['fidelity']}")
    print(f"Terminal mean reward:   {_format_ci(summary['terminal_mean_reward'])}")
    print(f"Final cumulative regret: {_format_ci(summary['final_cum_regret'], 2)}")
    print(f"Regret slope (log-log): {_format_ci(summary['regret_slope'], 3)}")
    if "oracle_match_rate" in summary:
        print(f"Oracle match rate:      {summary['oracle_match_rate']:.0%}")

    print("\nTerminal modal arms:")
    ranked = sorted(summary["modal_arm_counts"].items(), key=lambda item: -item[1])
    for label, count in ranked[:5]:
        print(f"  {count:>3} x {label}")

    bounds = summary.get("bounds")
    if bounds:
        print(f"\nRegret shape at n: {bounds['regret_curve']:.1f}   "
              f"one-step delta: {bounds['one_step_delta']:.4f}")


def print_oracle(oracle):
    """Print the best arms of a grid-oracle scan (``OracleResult.to_dict()``)."""
    print_banner(f"Grid oracle, M={oracle['grid_m']} ({oracle['n_arms']} arms)")
    best = oracle["best"]
    print(f"Best: {_format_arm(best)} -> {best['expected_reward']:.6f}")
    for rank, arm in enumerate(oracle["top"], start=1):
        print(f"  {rank}. {_format_arm(arm)}  {arm['expected_reward']:.6f}")


def print_bounds(overlay, plan=None):
    """
    Print bound values at one round length.

    Args:
        overlay (dict): Output of ``bound_overlay``.
        plan (dict | None): ``{"per", "packets", "budget"}`` of a budget plan.
    """
    print_banner(f"Bounds at T={overlay['t']}, M={overlay['m']}")
    print(f"Regret shape:               {overlay['regret_curve']:.3f}")
    print(f"Stochastic regret shape:    {overlay['stochastic_regret_curve']:.3f}")
    print(f"One-step delta:             {overlay['one_step_delta']:.6f}"
          f"  (fails w.p. {overlay['one_step_failure_probability']:.3e})")
    print(f"Estimate delta:             {overlay['estimate_delta']:.6f}"
          f"  (fails w.p. {overlay['estimate_failure_probability']:.3e})")
    for scheme, value in overlay.get("cumulative_confidence", {}).items():
        print(f"Cumulative confidence [{scheme}]: {value:.3f}")
    if "confidence_m" in overlay:
        print(f"Discretization for delta_min: M={overlay['confidence_m']}")
    if plan is not None:
        print(f"\nBudget: {plan['budget']} packets to jam {plan['packets']} at PER {plan['per']:.4f}")
