"""Online purchase games: a simulation engine, strategy library, and exact
oracles for Maker-Breaker games on randomly permuted, randomly priced item
streams.

Quick tour:

- :mod:`purchase_games.engine`: markets, the two-pointer turn protocol,
  phase restriction, views, and the generic strategy interface.
- :mod:`purchase_games.item_game`: threshold schedules and exact expected
  cost for buying a single item (the 4/n pairing, the phased plan).
- :mod:`purchase_games.clique_game`: triangle and k-clique purchase
  strategies over complete-graph edge streams.
- :mod:`purchase_games.path_game`: connecting two terminals by tree growth.
- :mod:`purchase_games.box_game`: the ordered box game (min-box Maker,
  focus Breaker, adversarial orderings).
- :mod:`purchase_games.oracle`: exact solvers (optimal stopping DP,
  discretized minimax, box-game game-tree search) used to validate the rest.
- :mod:`purchase_games.harness`: seeded Monte Carlo trials, aggregation,
  JSON/CSV export; :mod:`purchase_games.cli` wraps it all for the shell.
"""

from .engine import (
    BREAKER,
    MAKER,
    UNOWNED,
    GameRules,
    HiddenInformationError,
    Item,
    Market,
    Outcome,
    ProtocolViolation,
    Strategy,
    View,
    generate_market,
    mix_seed,
    play,
)
from .box_game import BoxConfig, box_threshold, play_box
from .harness import TrialAggregate, TrialConfig, confidence_interval, export, run_trials
from .item_game import (
    PhasePlan,
    ThresholdSchedule,
    breaker_best_response,
    breaker_closed_form,
    cheap_grab_breaker,
    expected_cost,
    phased_maker_plan,
    single_threshold_maker,
)
from .oracle import box_minimax, item_b0_dp, item_discrete_minimax

__version__ = "0.1.0"

__all__ = [
    "BREAKER",
    "MAKER",
    "UNOWNED",
    "GameRules",
    "HiddenInformationError",
    "Item",
    "Market",
    "Outcome",
    "ProtocolViolation",
    "Strategy",
    "View",
    "generate_market",
    "mix_seed",
    "play",
    "BoxConfig",
    "box_threshold",
    "play_box",
    "TrialAggregate",
    "TrialConfig",
    "confidence_interval",
    "export",
    "run_trials",
    "PhasePlan",
    "ThresholdSchedule",
    "breaker_best_response",
    "breaker_closed_form",
    "cheap_grab_breaker",
    "expected_cost",
    "phased_maker_plan",
    "single_threshold_maker",
    "box_minimax",
    "item_b0_dp",
    "item_discrete_minimax",
    "__version__",
]
