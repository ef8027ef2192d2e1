import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rockeropt.errors import ConfigError
from rockeropt.model import BoundsSet
from rockeropt.optim import (
    Algorithm,
    BHParams,
    DAParams,
    DEParams,
    GAParams,
    OptimizerConfig,
    PSOParams,
    SAParams,
    make_rng,
    minimize,
    nelder_mead,
)
from rockeropt.optim import bh, da, de, ga, pso, sa
from rockeropt.optim._core import BudgetExhausted, Evaluator, eval_targets, iteration_blocks
from rockeropt.optim.testfuncs import ackley, rastrigin, rosenbrock, sphere

ALGS = [a.value for a in Algorithm]
BOX = BoundsSet((-5.0,) * 4, (5.0,) * 4)
LO, HI = BOX.lower_array, BOX.upper_array


def _cfg(alg, **kw):
    kw.setdefault("budget_evals", 2000)
    kw.setdefault("generations", 20)
    return OptimizerConfig(algorithm=alg, **kw)


class Recorder:
    def __init__(self, fn):
        self.fn = fn
        self.points = []

    def __call__(self, x):
        self.points.append(np.array(x, dtype=float))
        return self.fn(x)


# -- test functions ---------------------------------------------------------

def test_known_minima():
    assert sphere(np.zeros(7)) == 0.0
    assert rastrigin(np.zeros(5)) == 0.0
    assert rosenbrock(np.ones(6)) == 0.0
    assert ackley(np.zeros(10)) == 0.0
    assert sphere([3.0]) == 9.0


@given(st.lists(st.floats(-5, 5), min_size=1, max_size=12))
def test_test_functions_nonnegative(x):
    for f in (sphere, rastrigin, rosenbrock, ackley):
        assert f(np.asarray(x)) >= 0.0


# -- uniform contract ---------------------------------------------------------

@pytest.mark.parametrize("alg", ALGS)
def test_run_contract(alg):
    rec = Recorder(rastrigin)
    res = minimize(_cfg(alg, seed=5), rec, BOX)
    h = res.history
    assert len(h) == 20
    assert all(b <= a for a, b in zip(h, h[1:]))
    assert res.best_f == h[-1] == min(rastrigin(p) for p in rec.points)
    assert res.evals_used == len(rec.points) <= 2000
    pts = np.array(rec.points)
    assert np.all(pts >= LO) and np.all(pts <= HI)
    assert rastrigin(res.best_x) == res.best_f
    assert res.wall_time >= 0.0


@pytest.mark.parametrize("alg", ALGS)
def test_run_deterministic(alg):
    a = minimize(_cfg(alg, seed=42), rosenbrock, BOX)
    b = minimize(_cfg(alg, seed=42), rosenbrock, BOX)
    np.testing.assert_array_equal(a.best_x, b.best_x)
    assert a.history == b.history and a.evals_used == b.evals_used
    c = minimize(_cfg(alg, seed=43), rosenbrock, BOX)
    assert not np.array_equal(a.best_x, c.best_x)


@pytest.mark.parametrize("alg", ALGS)
def test_constant_objective(alg):
    res = minimize(_cfg(alg), lambda x: 3.5, BOX)
    assert res.best_f == 3.5
    assert set(res.history) == {3.5}


@pytest.mark.parametrize("alg", ALGS)
def test_budget_respected(alg):
    res = minimize(_cfg(alg, budget_evals=1000, generations=100), sphere, BOX)
    assert res.evals_used <= 1000
    assert len(res.history) == 100


@pytest.mark.parametrize("alg", ALGS)
def test_nonfinite_objective_values_rejected(alg):
    def f(x):
        return math.nan if x[0] > 0 else sphere(x)
    res = minimize(_cfg(alg), f, BOX)
    assert math.isfinite(res.best_f) and res.best_x[0] <= 0


@pytest.mark.parametrize("alg", ALGS)
def test_no_global_rng_use(alg):
    np.random.seed(123)
    before = np.random.get_state()[1].copy()
    minimize(_cfg(alg), sphere, BOX)
    np.testing.assert_array_equal(np.random.get_state()[1], before)


@pytest.mark.parametrize("strategy", ["LowerBound", "UpperBound", "Mean"])
def test_start_point_evaluated_first(strategy):
    rec = Recorder(sphere)
    minimize(_cfg("DE", init_strategy=strategy), rec, BOX)
    expected = {"LowerBound": LO, "UpperBound": HI, "Mean": (LO + HI) / 2}[strategy]
    np.testing.assert_array_equal(rec.points[0], expected)


# -- configuration -----------------------------------------------------------

@pytest.mark.parametrize("kw", [
    {"algorithm": "SHGO"},
    {"algorithm": "PSO", "budget_evals": 10},
    {"algorithm": "PSO", "generations": 0},
    {"algorithm": "PSO", "seed": -1},
    {"algorithm": "PSO", "seed": 2**64},
    {"algorithm": "PSO", "init_strategy": "Middle"},
    {"algorithm": "DE", "hyperparams": {"pop_size": 3}},
    {"algorithm": "DE", "hyperparams": {"CR": 1.5}},
    {"algorithm": "GA", "hyperparams": {"mutation_rate": -0.1}},
    {"algorithm": "SA", "hyperparams": {"cooling": 0.0}},
    {"algorithm": "SA", "hyperparams": {"bogus": 1}},
    {"algorithm": "DA", "hyperparams": {"qv": 3.0}},
    {"algorithm": "BH", "hyperparams": SAParams()},
])
def test_invalid_config(kw):
    with pytest.raises(ConfigError):
        OptimizerConfig(**kw)


def test_config_round_trip():
    cfg = OptimizerConfig(algorithm="SA", seed=2**64 - 1, hyperparams={"cooling": 0.9})
    assert OptimizerConfig.from_dict(cfg.to_dict()) == cfg
    with pytest.raises(ConfigError):
        OptimizerConfig.from_dict({"algorithm": "SA", "iterations": 3})


def test_history_scaling_helpers():
    assert sum(iteration_blocks(1234, 100)) == 1234
    assert len(iteration_blocks(7, 100)) == 100
    t = eval_targets(20000, 100)
    assert t[0] == 200 and t[-1] == 20000


def test_evaluator_budget():
    ev = Evaluator(sphere, LO, HI, 3)
    for _ in range(3):
        ev(np.ones(4))
    with pytest.raises(BudgetExhausted):
        ev(np.ones(4))
    assert ev.n_evals == 3 and ev.best_f == 4.0


# -- PSO -----------------------------------------------------------------------

def _swarm(x, v, f):
    best = int(np.argmin(f))
    return pso.Swarm(x, v, x.copy(), f.copy(), x[best].copy(), float(f[best]))


def test_pso_fixed_point():
    x = np.full((3, 4), 1.0)
    s = _swarm(x, np.zeros_like(x), np.array([sphere(r) for r in x]))
    out = pso.pso_step(s, sphere, PSOParams(swarm_size=3), make_rng(0), LO, HI)
    np.testing.assert_array_equal(out.x, x)


def test_pso_velocity_decay():
    hp = PSOParams(swarm_size=5, omega=0.5, c1=0.0, c2=0.0)
    rng = make_rng(1)
    s = pso.init_swarm(np.zeros(4), sphere, hp, rng, LO * 100, HI * 100)
    norms = []
    for _ in range(10):
        s = pso.pso_step(s, sphere, hp, rng, LO * 100, HI * 100)
        norms.append(np.linalg.norm(s.v))
    for a, b in zip(norms, norms[1:]):
        assert b == pytest.approx(0.5 * a, rel=1e-12)


def test_pso_moves_toward_pbest_only():
    hp = PSOParams(swarm_size=1, omega=0.0, c1=1.0, c2=0.0, vmax_frac=1.0)
    x = np.array([[0.0, 0.0, 0.0, 0.0]])
    s = pso.Swarm(x, np.zeros_like(x), np.array([[1.0, -1.0, 2.0, 0.0]]), np.array([0.0]),
                  np.array([-4.0, 4.0, -4.0, 4.0]), 0.0)
    out = pso.pso_step(s, lambda z: 10.0, hp, make_rng(2), LO, HI)
    step = out.x[0]
    target = s.pbest_x[0]
    assert np.all((step == 0) | (np.sign(step) == np.sign(target)))
    assert np.all(np.abs(step) <= np.abs(target))


def test_pso_gbest_monotone():
    hp = PSOParams(swarm_size=10)
    rng = make_rng(3)
    s = pso.init_swarm(HI.copy(), rastrigin, hp, rng, LO, HI)
    prev = s.gbest_f
    for _ in range(30):
        s = pso.pso_step(s, rastrigin, hp, rng, LO, HI)
        assert s.gbest_f <= prev
        assert np.all(np.abs(s.v) <= hp.vmax_frac * (HI - LO))
        prev = s.gbest_f


# -- GA ------------------------------------------------------------------------

def test_ga_clone_crossover():
    p = np.arange(6.0)
    c1, c2 = ga.crossover(p, p.copy(), 1.0, make_rng(0))
    child = ga.mutate(c1, 0.0, np.ones(6), make_rng(0))
    np.testing.assert_array_equal(child, p)
    np.testing.assert_array_equal(c2, p)


def test_ga_crossover_swaps_tails():
    a, b = np.zeros(10), np.ones(10)
    c1, c2 = ga.crossover(a, b, 1.0, make_rng(4))
    k = int(np.argmax(c1))
    assert 1 <= k <= 9
    np.testing.assert_array_equal(c1, np.r_[np.zeros(k), np.ones(10 - k)])
    np.testing.assert_array_equal(c2, 1 - c1)


def test_ga_no_operators_permutes_parents():
    hp = GAParams(pop_size=8, crossover_rate=0.0, mutation_rate=0.0)
    rng = make_rng(5)
    pop = rng.uniform(LO, HI, size=(8, 4))
    f = np.array([sphere(p) for p in pop])
    new, _ = ga.ga_generation(pop, f, sphere, hp, rng, LO, HI)
    parents = {tuple(p) for p in pop}
    assert all(tuple(c) in parents for c in new)


def test_ga_elitism_monotone():
    hp = GAParams(pop_size=20)
    rng = make_rng(6)
    pop = rng.uniform(LO, HI, size=(20, 4))
    f = np.array([rastrigin(p) for p in pop])
    best = f.min()
    for _ in range(30):
        pop, f = ga.ga_generation(pop, f, rastrigin, hp, rng, LO, HI)
        assert f.min() <= best
        best = f.min()
        assert np.all(pop >= LO) and np.all(pop <= HI)


# -- DE ------------------------------------------------------------------------

def test_de_zero_difference():
    pop = np.tile(np.arange(4.0), (5, 1))
    mutants, _, _ = de.de_trials(pop, DEParams(pop_size=5), make_rng(0))
    np.testing.assert_array_equal(mutants, pop)


@settings(max_examples=30)
@given(st.integers(0, 2**32), st.floats(0.0, 1.0))
def test_de_trials_binomial(seed, cr):
    rng = make_rng(seed)
    pop = rng.uniform(LO, HI, size=(6, 4))
    mutants, mask, trials = de.de_trials(pop, DEParams(pop_size=6, CR=cr), rng)
    assert np.all((trials == pop) | (trials == mutants))
    assert np.all(mask.any(axis=1))
    assert np.all((trials != pop).any(axis=1))


def test_de_donors_distinct():
    idx = de.donor_indices(10, make_rng(8))
    for i, row in enumerate(idx):
        assert len(set(row)) == 3 and i not in row


def test_de_greedy_selection():
    hp = DEParams(pop_size=10)
    rng = make_rng(9)
    pop = rng.uniform(LO, HI, size=(10, 4))
    f = np.array([rastrigin(p) for p in pop])
    for _ in range(20):
        new, nf = de.de_generation(pop, f, rastrigin, hp, rng, LO, HI)
        assert np.all(nf <= f)
        pop, f = new, nf


# -- SA ------------------------------------------------------------------------

def test_sa_accepts_improvements():
    rng = make_rng(0)
    assert all(sa.metropolis_accept(d, 1e-12, rng) for d in (0.0, -1.0, -1e9))


def test_sa_acceptance_frequency():
    rng = make_rng(2024)
    n = 100_000
    hits = sum(sa.metropolis_accept(1.0, 1.0, rng) for _ in range(n))
    p = math.exp(-1.0)
    assert abs(hits / n - p) <= 3 * math.sqrt(p * (1 - p) / n)


def test_sa_cold_limit():
    rng = make_rng(1)
    assert not any(sa.metropolis_accept(1.0, 1e-6, rng) for _ in range(1000))


def test_sa_initial_temperature():
    assert sa.initial_temperature(-5.0, 10.0) == 50.0
    assert sa.initial_temperature(0.0, 10.0) == 1.0
    assert sa.initial_temperature(math.inf, 10.0) == 1.0


def test_sa_step_tracks_best():
    rng = make_rng(3)
    x = np.full(4, 2.0)
    state = sa.SAState(x, sphere(x), x.copy(), sphere(x))
    for _ in range(200):
        prev = state.best_f
        state = sa.sa_step(state, sphere, 100.0, np.ones(4), rng, LO, HI)
        assert state.best_f <= prev and state.best_f <= state.f
        assert sphere(state.best_x) == state.best_f


# -- Nelder-Mead and BH --------------------------------------------------------

def test_nelder_mead_quadratic():
    lo, hi = np.array([-10.0]), np.array([10.0])
    x, f = nelder_mead(lambda z: (z[0] - 2.7) ** 2, np.array([-6.0]), lo, hi, tol=1e-16)
    assert x[0] == pytest.approx(2.7, abs=1e-6)


def test_nelder_mead_at_minimum():
    x, f = nelder_mead(sphere, np.zeros(4), LO, HI)
    assert f == 0.0
    np.testing.assert_array_equal(x, 0.0)


@settings(max_examples=25)
@given(st.lists(st.floats(-5, 5), min_size=4, max_size=4))
def test_nelder_mead_never_worse(x0):
    x0 = np.asarray(x0)
    x, f = nelder_mead(rastrigin, x0, LO, HI, max_iter=50)
    assert f <= rastrigin(x0)
    assert np.all(x >= LO) and np.all(x <= HI)


def test_bh_zero_displacement_stationary():
    hp = BHParams(step_frac=0.0)
    rng = make_rng(0)
    x, f = bh.local_search(sphere, np.full(4, 3.0), hp, LO, HI)
    state = bh.BHState(x, f, x.copy(), f)
    for _ in range(3):
        nxt = bh.bh_iterate(state, sphere, hp, rng, LO, HI)
        assert nxt.best_f == state.best_f
        state = nxt


def test_bh_best_monotone():
    hp = BHParams()
    rng = make_rng(4)
    x = np.full(4, 4.0)
    state = bh.BHState(x, rastrigin(x), x.copy(), rastrigin(x))
    for _ in range(10):
        nxt = bh.bh_iterate(state, rastrigin, hp, rng, LO, HI)
        assert nxt.best_f <= state.best_f
        state = nxt


# -- DA ------------------------------------------------------------------------

def test_da_schedule_identity():
    for qv in (1.5, 2.62, 2.9):
        assert da.visiting_temperature(1, 5230.0, qv) == pytest.approx(5230.0, rel=1e-12)
    temps = [da.visiting_temperature(t, 5230.0, 2.62) for t in range(1, 50)]
    assert temps == sorted(temps, reverse=True)


def test_da_near_classical_limit_finite():
    for temperature in (5230.0, 1.0, 1e-3):
        steps = da.visit(1.001, temperature, 10_000, make_rng(0))
        assert np.all(np.isfinite(steps))
        assert np.any(steps != 0.0)


def test_da_heavy_tail_wider_than_classical():
    light = da.visit(1.001, 1.0, 50_000, make_rng(1))
    heavy = da.visit(2.62, 1.0, 50_000, make_rng(1))
    assert np.quantile(np.abs(heavy), 0.999) > np.quantile(np.abs(light), 0.999)


def test_da_acceptance_rule():
    assert da.acceptance_probability(-1.0, 1.0, -5.0) == 1.0
    assert da.acceptance_probability(0.0, 1.0, -5.0) == 1.0
    assert da.acceptance_probability(1.0, 100.0, -5.0) == pytest.approx((1 - 6 / 100) ** (1 / 6))
    assert da.acceptance_probability(1.0, 1.0, -5.0) == 0.0


def test_da_step_best_monotone():
    hp = DAParams()
    rng = make_rng(5)
    x = np.full(4, 4.0)
    state = da.DAState(x, rastrigin(x), x.copy(), rastrigin(x))
    for t in range(1, 30):
        nxt = da.da_step(state, rastrigin, hp, rng, LO, HI, t)
        assert nxt.best_f <= state.best_f
        assert np.all(nxt.x >= LO) and np.all(nxt.x <= HI)
        state = nxt
