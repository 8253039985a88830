"""How much does an adversary inflate the price of buying one item?

A stream of n items with uniform random costs scrolls past. Alone, a buyer
using the optimal stopping rule pays about 2/n in expectation. Give an
adversary one removal (it scans first and may delete one item), let the buyer
use the 2/(n-i+1) threshold schedule and the adversary its exact best
response, and the price roughly doubles to about 4/n.

This script computes both numbers exactly, then confirms the 4/n figure by
running the actual game engine a hundred thousand times.
"""

import math

from purchase_games import (
    GameRules,
    breaker_closed_form,
    expected_cost,
    generate_market,
    item_b0_dp,
    mix_seed,
    play,
    single_threshold_maker,
)

n = 500

dp = item_b0_dp(n)
print(f"n = {n}")
print(f"unopposed optimal stopping value: {dp.value:.6f}  (n*v = {n * dp.value:.3f})")

maker = single_threshold_maker(n)
breaker = breaker_closed_form(n)
exact = expected_cost(breaker, maker)
print(f"threshold maker vs best-response remover: {exact:.6f}  (n*c = {n * exact:.3f})")

trials = 100_000
total = 0.0
for t in range(trials):
    market = generate_market(n, mix_seed(1, t))
    out = play(market, GameRules(b=1), maker.strategy(), breaker.strategy())
    total += out.maker_cost
mc = total / trials
gap = abs(mc - exact) / max(1e-12, exact)
print(f"engine Monte Carlo over {trials} games: {mc:.6f}  (relative gap {gap:.2%})")
print(f"interference multiplier: {exact / dp.value:.3f}")
