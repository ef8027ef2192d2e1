"""Experiment harness: configs, job execution, output files and the CLI."""
