"""Cross-module dual-route checks: every formula validated by an independent
computation path (grid enumeration, engine Monte Carlo, or both)."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from purchase_games.engine import GameRules, generate_market, mix_seed, play
from purchase_games.item_game import ThresholdSchedule, expected_cost
from purchase_games.oracle import eval_schedules_on_grid, item_b0_dp


@given(st.lists(st.tuples(st.floats(0.0, 1.0), st.floats(0.0, 1.0)),
                min_size=1, max_size=4))
@settings(max_examples=30, deadline=None)
def test_expected_cost_agrees_with_grid_enumeration(pairs):
    # Random threshold schedules with b <= m pointwise and a forced final
    # take: the closed-form functional must agree with the sequential grid
    # enumerator once the grid is fine enough.
    n = len(pairs)
    m = np.array([max(mi, bi) for mi, bi in pairs])
    b = np.array([min(mi, bi) for mi, bi in pairs])
    m[-1] = 1.0
    b[-1] = 0.0
    exact = expected_cost(ThresholdSchedule(b, role="breaker"), ThresholdSchedule(m))
    # Snap thresholds onto grid boundaries t/g so atom classes are exact,
    # then both computations integrate the same step function.
    g = 64
    m_snap = np.round(m * g) / g
    b_snap = np.minimum(np.round(b * g) / g, m_snap)
    m_snap[-1] = 1.0
    exact_snap = expected_cost(ThresholdSchedule(b_snap, role="breaker"),
                               ThresholdSchedule(m_snap))
    grid_val = eval_schedules_on_grid(n, g, b_snap, m_snap)
    assert grid_val == pytest.approx(exact_snap, abs=1e-9)
    # and the unsnapped value is close for a fine grid
    assert abs(exact - exact_snap) < 0.1


@pytest.mark.slow
def test_engine_monte_carlo_matches_formula_random_schedules():
    rng = np.random.default_rng(2024)
    n, trials = 40, 30_000
    for _ in range(3):
        m = np.sort(rng.random(n))
        m[-1] = 1.0
        b = m * rng.random(n)
        maker = ThresholdSchedule(m)
        breaker = ThresholdSchedule(b, role="breaker")
        exact = expected_cost(breaker, maker)
        costs = np.empty(trials)
        for t in range(trials):
            out = play(generate_market(n, mix_seed(777, t)), GameRules(b=1),
                       maker.strategy(), breaker.strategy())
            costs[t] = out.maker_cost
        se = costs.std(ddof=1) / math.sqrt(trials)
        assert abs(costs.mean() - exact) <= 5 * se


@pytest.mark.slow
def test_stopping_dp_drives_engine_to_its_own_value():
    # The DP's thresholds, played through the engine at b=0, must realize the
    # DP's value: two fully independent implementations of the same game.
    n, trials = 100, 40_000
    dp = item_b0_dp(n)
    maker = dp.strategy()
    from purchase_games.engine import NeverTake

    costs = np.empty(trials)
    for t in range(trials):
        out = play(generate_market(n, mix_seed(888, t)), GameRules(b=0),
                   dp.strategy(), NeverTake())
        assert out.success
        costs[t] = out.maker_cost
    se = costs.std(ddof=1) / math.sqrt(trials)
    assert abs(costs.mean() - dp.value) <= 5 * se
