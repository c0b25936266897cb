"""Discrete-time flocking dynamics for the sheep.

Each step a sheep blends four influences over its neighborhood: an
inverse-square push away from nearby flockmates, alignment with their
previous headings, a unit-vector pull toward them, and an inverse-square
flight response away from the dog. Velocities are applied directly, so a
sheep's displacement per step equals its velocity for that step.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .vec import EPS, UNIT_X, as_point


@dataclass(frozen=True)
class SheepParams:
    """Gains and sensing radius for the sheep update rule."""

    r_s: float = 20.0
    k_separation: float = 100.0
    k_alignment: float = 0.5
    k_cohesion: float = 2.0
    k_flight: float = 500.0

    def __post_init__(self) -> None:
        if self.r_s <= 0:
            raise ValueError("r_s must be positive")
        for name in ("k_separation", "k_alignment", "k_cohesion", "k_flight"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True, eq=False)
class FlockState:
    """Snapshot of one step: sheep positions, their previous velocities, dog position."""

    step: int
    sheep_pos: np.ndarray
    sheep_vel_prev: np.ndarray
    dog_pos: np.ndarray

    def __post_init__(self) -> None:
        if self.step < 0:
            raise ValueError("step must be non-negative")
        pos = np.array(self.sheep_pos, dtype=float)
        vel = np.array(self.sheep_vel_prev, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 2 or pos.shape[0] < 1:
            raise ValueError("sheep_pos must have shape (N, 2) with N >= 1")
        if vel.shape != pos.shape:
            raise ValueError("sheep_vel_prev must match sheep_pos in shape")
        if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(vel))):
            raise ValueError("flock state must be finite")
        for arr in (pos, vel):
            arr.setflags(write=False)
        object.__setattr__(self, "sheep_pos", pos)
        object.__setattr__(self, "sheep_vel_prev", vel)
        object.__setattr__(self, "dog_pos", as_point(self.dog_pos))
        self.dog_pos.setflags(write=False)

    @property
    def n(self) -> int:
        return self.sheep_pos.shape[0]


def neighbor_set(i: int, state: FlockState, r_s: float) -> tuple[int, ...]:
    """Indices of sheep within r_s of sheep i (boundary inclusive), excluding i."""
    if not 0 <= i < state.n:
        raise IndexError(f"sheep index {i} out of range for flock of {state.n}")
    diff = state.sheep_pos - state.sheep_pos[i]
    dist = np.hypot(diff[:, 0], diff[:, 1])
    mask = dist <= r_s
    mask[i] = False
    return tuple(int(j) for j in np.nonzero(mask)[0])


def flock_velocities(state: FlockState, params: SheepParams) -> np.ndarray:
    """Velocities for every sheep computed from the same state snapshot.

    Sheep with no neighbors get zero separation, alignment, and cohesion;
    the flight term away from the dog always applies. Distances in
    denominators are clamped below by EPS and an exactly coincident pair
    repels along +x.
    """
    pos = state.sheep_pos
    n = state.n

    diff = pos[None, :, :] - pos[:, None, :]  # diff[i, j] = x_j - x_i
    dist = np.hypot(diff[..., 0], diff[..., 1])
    neighbors = dist <= params.r_s
    np.fill_diagonal(neighbors, False)
    counts = neighbors.sum(axis=1)
    denom = np.maximum(counts, 1).astype(float)[:, None]

    clamped = np.maximum(dist, EPS)
    toward = diff / clamped[..., None]
    away = -toward
    coincident = (dist == 0.0)[..., None]
    if coincident.any():
        toward = np.where(coincident, UNIT_X, toward)
        away = np.where(coincident, UNIT_X, away)

    mask = neighbors[..., None]
    separation = (away / (clamped**2)[..., None] * mask).sum(axis=1) / denom
    cohesion = (toward * mask).sum(axis=1) / denom

    prev = state.sheep_vel_prev
    prev_norm = np.hypot(prev[:, 0], prev[:, 1])
    headings = np.zeros_like(prev)
    moving = prev_norm >= EPS
    if moving.any():
        headings[moving] = prev[moving] / prev_norm[moving, None]
    alignment = (headings[None, :, :] * mask).sum(axis=1) / denom

    dog_diff = pos - state.dog_pos[None, :]
    dog_dist = np.hypot(dog_diff[:, 0], dog_diff[:, 1])
    dog_clamped = np.maximum(dog_dist, EPS)
    flee = dog_diff / dog_clamped[:, None]
    dog_coincident = (dog_dist == 0.0)[:, None]
    if dog_coincident.any():
        flee = np.where(dog_coincident, UNIT_X, flee)
    flight = flee / (dog_clamped**2)[:, None]

    return (
        params.k_separation * separation
        + params.k_alignment * alignment
        + params.k_cohesion * cohesion
        + params.k_flight * flight
    )


def sheep_velocity(i: int, state: FlockState, params: SheepParams) -> np.ndarray:
    """Velocity of sheep i for this step (row i of flock_velocities)."""
    if not 0 <= i < state.n:
        raise IndexError(f"sheep index {i} out of range for flock of {state.n}")
    return flock_velocities(state, params)[i].copy()


def step_flock(state: FlockState, params: SheepParams) -> FlockState:
    """Advance every sheep one step; the dog does not move here."""
    v = flock_velocities(state, params)
    return FlockState(
        step=state.step + 1,
        sheep_pos=state.sheep_pos + v,
        sheep_vel_prev=v,
        dog_pos=state.dog_pos,
    )
