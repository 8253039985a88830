"""Buying a triangle from a shuffled stream of graph edges.

All edges of a complete graph scroll past in random order with uniform random
prices. The buyer fixes a root, collects ~n^(1/3) cheap edges at that root
during the first half of the stream, then closes a triangle inside the leaf
set during the second half, while a quota-b adversary prices the same bars
and steals what it can.

One seeded game is narrated move by move (star edges, then the close), and a
batch reports the success rate and cost scale.
"""

import numpy as np

from purchase_games import GameRules, generate_market, mix_seed, play
from purchase_games.clique_game import (
    CliqueGoal,
    triangle_maker_unrestricted,
    triangle_mimic_breaker,
)
from purchase_games.engine import EdgeLabels
from purchase_games.verify import contains_clique

n, b = 1000, 2
E = n * (n - 1) // 2

maker = triangle_maker_unrestricted(n, b)
print(f"n = {n} vertices ({E} edges), b = {b}")
print(f"star bar {maker.star_threshold:.5f}, closing bar "
      f"{min(1.0, maker.close_threshold):.5f}, leaves wanted {maker.star_target}")

market = generate_market(E, 12345, EdgeLabels(n))
rules = GameRules(b=b, goal=lambda: CliqueGoal(3))
out = play(market, rules, maker, triangle_mimic_breaker(n, b))
print(f"\nseeded game: success = {out.success}, paid {out.maker_cost:.4f} "
      f"over {len(out.maker_positions)} edges")
for pos, (u, v) in zip(out.maker_positions, out.maker_items):
    stage = "star " if pos <= maker.half else "close"
    print(f"  {stage} edge {u}-{v} at position {pos} cost {market.costs[pos - 1]:.5f}")
assert not out.success or contains_clique(out.maker_items, 3)

trials, wins, costs = 50, 0, []
for t in range(trials):
    market = generate_market(E, mix_seed(3, t), EdgeLabels(n))
    out = play(market, GameRules(b=b, goal=lambda: CliqueGoal(3)),
               triangle_maker_unrestricted(n, b), triangle_mimic_breaker(n, b))
    wins += out.success
    if out.success:
        costs.append(out.maker_cost)
print(f"\n{trials} games: {wins} triangles, "
      f"mean cost {np.mean(costs):.4f} (scale ~ n^(-1/3) log n = "
      f"{n ** (-1 / 3) * np.log(n):.4f} per edge bar)")
