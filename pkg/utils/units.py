"""
Unit Conversions

Configuration files carry powers in dB; every computation uses linear ratios.
"""

import numpy as np


def db_to_linear(value_db):
    """Convert a power ratio from dB to linear (10^(dB/10))."""
    linear = np.power(10.0, np.asarray(value_db, dtype=float) / 10.0)
    return float(linear) if linear.ndim == 0 else linear


def linear_to_db(value):
    """Convert a linear power ratio to dB."""
    db = 10.0 * np.log10(np.asarray(value, dtype=float))
    return float(db) if db.ndim == 0 else db
