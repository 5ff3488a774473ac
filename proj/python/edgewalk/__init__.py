"""Edge-biased random walks on random regular graphs."""

from ._core import (
    ColourSnapshot,
    EquivalenceClass,
    Multigraph,
    WalkRecord,
    colour_snapshot,
    delta_schedule,
    enumerate_L,
    exact_unvisited_probability,
    extract_class,
    hitting_upper_bound,
    replay_exposure_walk,
    resample_walk,
    run_scenario,
    run_walk,
    run_walk_exposure,
    second_eigenvalue,
    stationary_hitting,
    t_for_delta,
    theoretical_constant,
    walk_log_probability,
)

__all__ = [
    "ColourSnapshot",
    "EquivalenceClass",
    "Multigraph",
    "WalkRecord",
    "colour_snapshot",
    "delta_schedule",
    "enumerate_L",
    "exact_unvisited_probability",
    "extract_class",
    "hitting_upper_bound",
    "replay_exposure_walk",
    "resample_walk",
    "run_scenario",
    "run_walk",
    "run_walk_exposure",
    "second_eigenvalue",
    "stationary_hitting",
    "t_for_delta",
    "theoretical_constant",
    "walk_log_probability",
]
