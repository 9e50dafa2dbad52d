"""
Logging Utilities

This module configures the console logging used by the command line tools.
"""

import logging
import sys

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(verbosity=0):
    """Attach a single stdout handler to the root logger.

    Args:
        verbosity (int): 0 for warnings only, 1 for info, 2 or more for debug.

    Returns:
        logging.Logger: The configured root logger.
    """
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG

    root = logging.getLogger()
    root.setLevel(level)
    if not root.handlers:
        handler = logging.StreamHandler(sys.stdout)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
    for handler in root.handlers:
        handler.setLevel(level)
    return root
