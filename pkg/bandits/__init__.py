# This file makes the bandits directory a Python package.
