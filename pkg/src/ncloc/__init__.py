"""Exact noncommutative localization toolkit."""

__version__ = "0.1.0"
