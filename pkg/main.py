#!/usr/bin/env python3
"""
Jamming Bandits - Main Application

This is the main entry point for the jamming experiments. It runs a
configured learner over several seeds, scans the grid oracle, evaluates the
learner's bounds and reproduces the reference scenarios from presets.
"""

import argparse
import logging
import os
import sys

from harness.config import load_config, parse_seeds
from harness.oracle import grid_oracle
from harness.presets import preset, preset_names
from harness.runner import emit_outputs, run_experiment
from jamming.bounds import BoundInputs, bound_overlay, plan_budget
from jamming.discretization import compute_m
from utils.errors import ConfigError, JammingError
from utils.file_utils import get_latest_summary
from utils.log_utils import setup_logging
from utils.report_utils import print_bounds, print_oracle, print_summary

logger = logging.getLogger(__name__)

DEFAULT_OUT = "results"


def build_parser():
    parser = argparse.ArgumentParser(description='Jamming Bandits experiments')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='Increase log verbosity (-v info, -vv debug)')
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='Run one configuration over its seeds')
    run.add_argument('--config', required=True, help='Experiment INI file')
    run.add_argument('--seed', type=int, help='Run this single seed only')
    run.add_argument('--scale', type=float, default=1.0,
                     help='Scale horizon, packet length and windows (default: 1)')
    run.add_argument('--out', help='Output directory (default: results/<scenario>)')
    run.add_argument('--jobs', type=int, help='Worker processes for seeds')
    run.add_argument('--resume', action='store_true', help='Resume from round checkpoints')
    run.add_argument('--quiet', action='store_true', help='Hide the progress bar')

    oracle = commands.add_parser('oracle', help='Grid-search the expected reward')
    oracle.add_argument('--config', required=True, help='Experiment INI file')
    oracle.add_argument('--grid-m', type=int, default=100, help='Grid resolution (default: 100)')
    oracle.add_argument('--top', type=int, default=5, help='Arms to list (default: 5)')

    sweep = commands.add_parser('sweep', help='Run every variant of a preset')
    sweep.add_argument('--preset', required=True, choices=preset_names(),
                       help='Preset: a figure number such as fig3, or a descriptive name')
    sweep.add_argument('--scale', type=float, default=1.0, help='Joint scale factor')
    sweep.add_argument('--out', default=DEFAULT_OUT, help='Output root (default: results)')
    sweep.add_argument('--jobs', type=int, default=1, help='Worker processes for seeds')
    sweep.add_argument('--seeds', help='Seeds, e.g. "0-9" or "1,4,7"')
    sweep.add_argument('--resume', action='store_true', help='Resume from round checkpoints')
    sweep.add_argument('--quiet', action='store_true', help='Hide the progress bars')

    bounds = commands.add_parser('bounds', help='Print the bound values of a configuration')
    bounds.add_argument('--config', required=True, help='Experiment INI file')
    bounds.add_argument('--round', type=int, help='Round length T (default: the horizon)')
    bounds.add_argument('--delta-min', type=float, help='Known lower bound on the smallest gap')
    bounds.add_argument('--per', type=float, help='Achieved PER for a budget plan')
    bounds.add_argument('--packets', type=int, help='Packets to jam for a budget plan')

    report = commands.add_parser('report', help='Print the latest summary below a directory')
    report.add_argument('--out', default=DEFAULT_OUT, help='Directory to search (default: results)')
    return parser


def _run_and_write(config, out_dir, jobs, resume, progress):
    results, summary = run_experiment(config, out_dir=out_dir, jobs=jobs, resume=resume,
                                      progress=progress)
    emit_outputs(results, summary, out_dir, config)
    print_summary(summary)
    print(f"\nResults saved to {out_dir}")


def cmd_run(args):
    config = load_config(args.config).scaled(args.scale)
    if args.seed is not None:
        config = config.with_seeds([args.seed])
    out_dir = args.out or os.path.join(DEFAULT_OUT, config.scenario)
    _run_and_write(config, out_dir, args.jobs, args.resume, not args.quiet)
    return 0


def cmd_oracle(args):
    config = load_config(args.config)
    print_oracle(grid_oracle(config, args.grid_m).to_dict(args.top))
    return 0


def cmd_sweep(args):
    seeds = parse_seeds(args.seeds) if args.seeds else None
    variants = preset(args.preset, scale=args.scale, seeds=seeds)
    print(f"\nSweeping {args.preset}: {len(variants)} variant(s)")
    for config in variants:
        _run_and_write(config, os.path.join(args.out, config.scenario), args.jobs, args.resume,
                       not args.quiet)
    return 0


def cmd_bounds(args):
    config = load_config(args.config)
    holder = config.holder_params()
    round_t = args.round or config.horizon
    inputs = BoundInputs(round_t, holder, n_mod=len(config.action_space.schemes),
                         m=compute_m(round_t, holder), epsilon=config.epsilon,
                         delta_min_lower=args.delta_min)
    plan = None
    if (args.per is None) != (args.packets is None):
        raise ValueError("--per and --packets must be given together")
    if args.per is not None:
        plan = {"per": args.per, "packets": args.packets,
                "budget": plan_budget(args.per, args.packets)}
    print(f"\nHoelder L={holder.constant_L:.4f}, alpha={holder.exponent_alpha}")
    print_bounds(bound_overlay(inputs, [s.value for s in config.action_space.schemes]), plan)
    return 0


def cmd_report(args):
    latest = get_latest_summary(args.out)
    if latest is None:
        print(f"No summary found below {args.out}")
        return 1
    path, summary = latest
    print(f"\nLatest summary: {path}")
    print_summary(summary)
    return 0


COMMANDS = {
    'run': cmd_run,
    'oracle': cmd_oracle,
    'sweep': cmd_sweep,
    'bounds': cmd_bounds,
    'report': cmd_report,
}


def main(argv=None):
    """Main function to run the Jamming Bandits command line."""
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    print("\n=== Jamming Bandits ===")

    try:
        return COMMANDS[args.command](args)
    except ConfigError as e:
        print("Error: invalid configuration:")
        for violation in e.violations:
            print(f"  - {violation}")
        return 1
    except (ValueError, JammingError) as e:
        print(f"Error: {e}")
        return 1
    except OSError as e:
        print(f"Error: {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
