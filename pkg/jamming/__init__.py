# This file makes the jamming directory a Python package.
