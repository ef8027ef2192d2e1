"""Standard benchmark functions, each with global minimum 0."""

import numpy as np


def sphere(x):
    x = np.asarray(x, dtype=float)
    return float(np.dot(x, x))


def rosenbrock(x):
    """Minimum at (1, ..., 1). A single coordinate gives the constant 0."""
    x = np.asarray(x, dtype=float)
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))


def rastrigin(x):
    x = np.asarray(x, dtype=float)
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x)))


def ackley(x):
    x = np.asarray(x, dtype=float)
    # grouped so that both brackets vanish exactly at the origin
    out = 20.0 * (1.0 - np.exp(-0.2 * np.sqrt(np.mean(x * x)))) + (
        np.e - np.exp(np.mean(np.cos(2.0 * np.pi * x)))
    )
    return float(max(out, 0.0))


TEST_FUNCTIONS = {
    "sphere": sphere,
    "rosenbrock": rosenbrock,
    "rastrigin": rastrigin,
    "ackley": ackley,
}
