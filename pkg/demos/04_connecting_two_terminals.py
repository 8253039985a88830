"""Connecting two fixed vertices by purchased edges, phase by phase.

Grow a tree from each terminal out of cheap stream edges (the adversary is
gated: it cannot enter a phase until the buyer has finished the previous
one), then buy one bridge between the trees. The asymptotic parameter regime
needs astronomical n, so this demo uses the plan's explicit desk-scale
overrides, which every plan dump echoes.
"""

import numpy as np

from purchase_games import GameRules, generate_market, mix_seed, play
from purchase_games.engine import EdgeLabels
from purchase_games.item_game import cheap_grab_breaker
from purchase_games.path_game import PathGoal, path_maker, path_plan
from purchase_games.verify import has_path

n, b = 2000, 1
plan = path_plan(n, b, k_override=1, threshold_scale=20.0)
print(plan.dump_text())

E = plan.edge_count
rules = GameRules(b=b, phase_count=plan.phase_count, goal=lambda: PathGoal(0, 1))

market = generate_market(E, 777, EdgeLabels(n))
maker = path_maker(plan, 0, 1)
out = play(market, rules, maker, cheap_grab_breaker(E, b))
print(f"seeded game: success = {out.success}, paid {out.maker_cost:.5f}")
print(f"tree from u: {sorted(maker.trees.parent_t)}  "
      f"tree from v: {sorted(maker.trees.parent_tp)}")
if out.success:
    assert has_path(out.maker_items, 0, 1)
    print("purchased edges:", " ".join(f"{u}-{v}" for u, v in out.maker_items))

trials, wins = 50, 0
for t in range(trials):
    market = generate_market(E, mix_seed(4, t), EdgeLabels(n))
    out = play(market, rules, path_maker(plan, 0, 1), cheap_grab_breaker(E, b))
    wins += out.success
print(f"\n{trials} games: {wins} connections "
      f"({wins / trials:.0%} with the x20 desk-scale thresholds)")
