"""Initial flock placement and the pre-episode warm-up."""
from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from .flock import FlockState, step_flock
from .scenario import ScenarioConfig, stream_seed


def placement_radius(n: int, rho: float) -> float:
    """Radius of the disk that holds n sheep at mean density rho."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if rho <= 0:
        raise ValueError("rho must be positive")
    return math.sqrt(n / (math.pi * rho))


def initial_placement(config: ScenarioConfig, rng: np.random.Generator) -> FlockState:
    """Sheep sampled uniformly on the goal-centered disk, dog at its start.

    Radii use the sqrt transform so area density is uniform. Previous
    velocities start at zero.
    """
    n = config.n_sheep
    radius = placement_radius(n, config.rho)
    r = radius * np.sqrt(rng.random(n))
    theta = 2.0 * np.pi * rng.random(n)
    pos = config.goal.center + np.column_stack((r * np.cos(theta), r * np.sin(theta)))
    return FlockState(
        step=0,
        sheep_pos=pos,
        sheep_vel_prev=np.zeros((n, 2)),
        dog_pos=config.dog_start,
    )


def warmup(state: FlockState, params, steps: int) -> FlockState:
    """Let the flock settle for steps updates while the dog stands still."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    for _ in range(steps):
        state = step_flock(state, params)
    return state


def prepare_start_state(config: ScenarioConfig, *, base_seed: int | None = None, trial: int = 0) -> FlockState:
    """Place, warm up, and restart the clock; this state is step 0 of an episode.

    The settled velocities are kept so the first episode step sees the
    same headings the warm-up ended with.
    """
    seed = stream_seed(
        config.seed if base_seed is None else base_seed,
        config.n_sheep, config.rho, trial, "placement",
    )
    state = initial_placement(config, np.random.default_rng(seed))
    state = warmup(state, config.sheep, config.warmup_steps)
    return replace(state, step=0)
