"""Rocker-bogie suspension fitness model and metaheuristic optimizers."""

__version__ = "0.1.0"
