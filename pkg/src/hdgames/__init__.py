"""Hausdorff dimension games, Schmidt games and finite-depth dimension estimators."""

__version__ = "0.1.0"
