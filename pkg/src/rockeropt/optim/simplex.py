"""Bounded Nelder-Mead simplex search."""

from __future__ import annotations

import math

import numpy as np


def nelder_mead(
    objective,
    x0,
    lower,
    upper,
    *,
    alpha: float = 1.0,
    gamma: float = 2.0,
    rho: float = 0.5,
    sigma: float = 0.5,
    tol: float = 1e-8,
    max_iter: int = 500,
    init_frac: float = 0.05,
    f0: float | None = None,
):
    """
    Minimize ``objective`` from ``x0`` with reflect/expand/contract/shrink
    moves. New vertices are clamped into ``[lower, upper]``.

    The initial simplex steps each coordinate by ``init_frac`` of its
    range, towards the interior when the step would leave the box. The
    search stops when the spread of vertex values drops below ``tol`` or
    after ``max_iter`` iterations.

    Returns
    -------
    x, f : ndarray, float
        Best vertex and its value; ``f <= objective(x0)``.
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    x0 = np.clip(np.asarray(x0, dtype=float), lower, upper)
    n = x0.size
    step = init_frac * (upper - lower)

    simplex = np.empty((n + 1, n))
    simplex[0] = x0
    for i in range(n):
        vertex = x0.copy()
        vertex[i] = x0[i] + step[i] if x0[i] + step[i] <= upper[i] else x0[i] - step[i]
        simplex[i + 1] = vertex
    fvals = np.empty(n + 1)
    fvals[0] = objective(x0) if f0 is None else f0
    for i in range(1, n + 1):
        fvals[i] = objective(simplex[i])

    for _ in range(max_iter):
        order = np.argsort(fvals, kind="stable")
        simplex, fvals = simplex[order], fvals[order]
        # an all-infinite simplex cannot make progress either
        if fvals[0] == math.inf or fvals[-1] - fvals[0] < tol:
            break
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]

        xr = np.clip(centroid + alpha * (centroid - worst), lower, upper)
        fr = objective(xr)
        if fvals[0] <= fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
            continue
        if fr < fvals[0]:
            xe = np.clip(centroid + gamma * (xr - centroid), lower, upper)
            fe = objective(xe)
            if fe < fr:
                simplex[-1], fvals[-1] = xe, fe
            else:
                simplex[-1], fvals[-1] = xr, fr
            continue

        if fr < fvals[-1]:
            xc = np.clip(centroid + rho * (xr - centroid), lower, upper)
            fc = objective(xc)
            accepted = fc <= fr
        else:
            xc = np.clip(centroid + rho * (worst - centroid), lower, upper)
            fc = objective(xc)
            accepted = fc < fvals[-1]
        if accepted:
            simplex[-1], fvals[-1] = xc, fc
            continue

        for i in range(1, n + 1):
            simplex[i] = simplex[0] + sigma * (simplex[i] - simplex[0])
            fvals[i] = objective(simplex[i])

    best = int(np.argmin(fvals))
    return simplex[best].copy(), float(fvals[best])
