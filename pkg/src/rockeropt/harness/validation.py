"""
Optimizer validation on functions with known optima.

Gated checks carry a threshold and a required number of passing seeds;
informational checks only report what each algorithm reached.

Two algorithms run with non-default settings here. SA cools faster and
shrinks its proposal width with the square root of the temperature
ratio, because a fixed proposal width of 10 % of the range cannot
resolve a 1e-4 optimum. DA switches on its Nelder-Mead polish.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..model import BoundsSet
from ..optim import OptimizerConfig, minimize
from ..optim.testfuncs import TEST_FUNCTIONS

VALIDATION_HYPERPARAMS = {
    "SA": {"cooling": 0.8, "step_decay": 0.5},
    "DA": {"local_search": True},
}

SEEDS = tuple(range(10))


@dataclass(frozen=True)
class Check:
    function: str
    dim: int
    half_width: float
    budget: int
    algorithm: str
    threshold: float | None = None
    min_passes: int = 0

    @property
    def bounds(self) -> BoundsSet:
        return BoundsSet((-self.half_width,) * self.dim, (self.half_width,) * self.dim)

    @property
    def gated(self) -> bool:
        return self.threshold is not None

    @property
    def label(self) -> str:
        return f"{self.function}-{self.dim}D {self.algorithm}"


@dataclass
class CheckResult:
    check: Check
    values: list[float] = field(default_factory=list)
    wall_times: list[float] = field(default_factory=list)

    @property
    def passes(self) -> int:
        if not self.check.gated:
            return 0
        return sum(v <= self.check.threshold for v in self.values)

    @property
    def ok(self) -> bool:
        return not self.check.gated or self.passes >= self.check.min_passes


def gated_checks() -> list[Check]:
    checks = [
        Check("sphere", 10, 5.0, 50_000, alg, 1e-4, 9) for alg in ("PSO", "DE", "SA", "DA", "BH")
    ]
    checks.append(Check("sphere", 10, 5.0, 50_000, "GA", 1e-2, 9))
    checks += [Check("rastrigin", 5, 5.12, 100_000, alg, 1e-6, 7) for alg in ("DE", "DA")]
    return checks


def info_checks() -> list[Check]:
    algs = ("PSO", "GA", "DE", "SA", "BH", "DA")
    return [Check("rosenbrock", 5, 5.0, 20_000, a) for a in algs] + [
        Check("ackley", 10, 32.768, 20_000, a) for a in algs
    ]


def run_check(check: Check, seeds=SEEDS) -> CheckResult:
    result = CheckResult(check)
    func = TEST_FUNCTIONS[check.function]
    for seed in seeds:
        cfg = OptimizerConfig(
            algorithm=check.algorithm,
            budget_evals=check.budget,
            generations=100,
            seed=seed,
            init_strategy="Random",
            hyperparams=VALIDATION_HYPERPARAMS.get(check.algorithm),
        )
        res = minimize(cfg, func, check.bounds)
        result.values.append(res.best_f)
        result.wall_times.append(res.wall_time)
    return result


def format_result(r: CheckResult) -> str:
    c = r.check
    values = " ".join(f"{v:.1e}" for v in r.values)
    slowest = max(r.wall_times)
    if c.gated:
        status = "PASS" if r.ok else "FAIL"
        return (f"{status} {c.label:<16} <= {c.threshold:.0e} on {r.passes}/{len(r.values)} "
                f"(need {c.min_passes}) max {slowest:.2f}s | {values}")
    return f"INFO {c.label:<16} max {slowest:.2f}s | {values}"
