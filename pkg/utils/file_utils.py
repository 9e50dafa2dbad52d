"""
File Utilities

This module contains utility functions for writing and reading experiment
outputs: regret traces, JSON summaries and round-boundary checkpoints.
"""

import json
import os
import pickle

import numpy as np
import pandas as pd

from jamming.trace import CSV_COLUMNS


def ensure_dir(directory):
    """Ensure that a directory exists, create it if it doesn't.

    Args:
        directory (str): Path to the directory
    """
    os.makedirs(directory, exist_ok=True)


def save_trace(trace, filepath):
    """Save a regret trace to a CSV file.

    Args:
        trace (RegretTrace): Trace of one seed.
        filepath (str): Output path; its directory is created if needed.

    Returns:
        str: Path to the saved file
    """
    ensure_dir(os.path.dirname(filepath) or ".")
    trace.to_frame().to_csv(filepath, columns=list(CSV_COLUMNS), index=False)
    return filepath


def load_trace(filepath):
    """Load a trace CSV written by ``save_trace``.

    Returns:
        pd.DataFrame: One row per step.
    """
    if not os.path.exists(filepath):
        raise FileNotFoundError(f"File not found: {filepath}")
    return pd.read_csv(filepath)


def _json_default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def save_summary(summary, filepath):
    """Write a summary dict as indented JSON."""
    ensure_dir(os.path.dirname(filepath) or ".")
    with open(filepath, "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True, default=_json_default)
        f.write("\n")
    return filepath


def load_summary(filepath):
    if not os.path.exists(filepath):
        raise FileNotFoundError(f"File not found: {filepath}")
    with open(filepath, "r") as f:
        return json.load(f)


def get_latest_summary(directory):
    """Get the most recent summary.json below a directory.

    Args:
        directory (str): Directory to search in.

    Returns:
        tuple: (path, summary dict), or None if no summary exists.
    """
    if not os.path.exists(directory):
        return None

    found = [os.path.join(root, name)
             for root, _, names in os.walk(directory)
             for name in names if name == "summary.json"]
    if not found:
        return None

    # newest first
    found.sort(key=os.path.getmtime, reverse=True)
    return found[0], load_summary(found[0])


def save_checkpoint(state, filepath):
    """Pickle a run's state atomically (write then rename)."""
    ensure_dir(os.path.dirname(filepath) or ".")
    partial = filepath + ".partial"
    with open(partial, "wb") as f:
        pickle.dump(state, f, protocol=pickle.HIGHEST_PROTOCOL)
    os.replace(partial, filepath)
    return filepath


def load_checkpoint(filepath):
    with open(filepath, "rb") as f:
        return pickle.load(f)
