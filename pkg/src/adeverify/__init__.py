"""Exact verification of the ADE Vinberg-representation combinatorics."""

__version__ = "0.1.0"
