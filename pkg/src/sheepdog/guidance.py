"""Episode orchestration: the two-stage tour guidance and the drive-only baseline.

A tour episode runs three phases. The dog first approaches the tour's
opening sheep; once within first-contact range it gathers the flock
sheep by sheep, holding the already collected group around the live
position of the next sheep on the tour; when every sheep is collected it
drives the whole flock to the goal. The baseline skips straight to the
final drive over all sheep.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .dog import approach_velocity, steering_command
from .flock import FlockState, flock_velocities
from .placement import prepare_start_state
from .routing import Tour
from .scenario import GoalSpec, ScenarioConfig


class GuidanceMode(Enum):
    APPROACH_FIRST = "approach_first"
    PROVISIONAL_GATHER = "provisional_gather"
    FINAL_DRIVE = "final_drive"
    DONE = "done"


# Forward order used by the monotonicity invariant.
MODE_ORDER = (
    GuidanceMode.APPROACH_FIRST,
    GuidanceMode.PROVISIONAL_GATHER,
    GuidanceMode.FINAL_DRIVE,
    GuidanceMode.DONE,
)


@dataclass(frozen=True)
class GuidancePhase:
    """Phase snapshot: mode, next tour position nu (1-based), collected indices."""

    mode: GuidanceMode
    nu: int
    collected: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class RunRecord:
    """Outcome of one episode.

    dog_trace has shape (k_end + 1, 2) and sheep_traces (k_end + 1, N, 2);
    row k is the state after k steps. phase_trace[k] is the phase that
    governed the step out of row k, with a terminal snapshot at k_end.
    """

    success: bool
    k_end: int
    total_distance: float
    dog_trace: np.ndarray
    sheep_traces: np.ndarray
    phase_trace: tuple[GuidancePhase, ...]


def goal_reached(state: FlockState, goal: GoalSpec) -> bool:
    """True when every sheep lies within the goal disk (boundary inclusive)."""
    diff = state.sheep_pos - goal.center
    dist = np.hypot(diff[:, 0], diff[:, 1])
    return bool(np.all(dist <= goal.radius))


class _FatController:
    """Constant final drive over the whole flock."""

    def __init__(self, scenario: ScenarioConfig):
        self._scenario = scenario
        self._all = tuple(range(scenario.n_sheep))
        self.phase = GuidancePhase(GuidanceMode.FINAL_DRIVE, 1, self._all)

    def __call__(self, state: FlockState) -> tuple[GuidancePhase, np.ndarray]:
        cmd = steering_command(state, self._scenario.dog, self._all, self._scenario.goal.center)
        return self.phase, cmd.v_d


class _TourController:
    """Phase machine for the tour-guided episode.

    Collection checks run against the current snapshot before the dog
    moves, so a collection changes the steering within the same step.
    """

    def __init__(self, scenario: ScenarioConfig, tour: Tour):
        self._scenario = scenario
        self._tour = tour
        self._all = tuple(range(scenario.n_sheep))
        self.phase = GuidancePhase(GuidanceMode.APPROACH_FIRST, 1, ())

    def _advance(self, state: FlockState) -> None:
        phase = self.phase
        order = self._tour.order
        pos = state.sheep_pos
        if phase.mode is GuidanceMode.APPROACH_FIRST:
            first = order[0]
            gap = pos[first] - state.dog_pos
            if np.hypot(gap[0], gap[1]) <= self._scenario.dog.r_d:
                collected = (first,)
                mode = (
                    GuidanceMode.FINAL_DRIVE
                    if len(collected) == len(order)
                    else GuidanceMode.PROVISIONAL_GATHER
                )
                self.phase = GuidancePhase(mode, 2, collected)
        elif phase.mode is GuidanceMode.PROVISIONAL_GATHER:
            dest = pos[order[phase.nu - 1]]
            diff = pos[list(phase.collected)] - dest
            if np.all(np.hypot(diff[:, 0], diff[:, 1]) <= self._scenario.goal.radius):
                collected = phase.collected + (order[phase.nu - 1],)
                mode = (
                    GuidanceMode.FINAL_DRIVE
                    if len(collected) == len(order)
                    else GuidanceMode.PROVISIONAL_GATHER
                )
                self.phase = GuidancePhase(mode, phase.nu + 1, collected)

    def __call__(self, state: FlockState) -> tuple[GuidancePhase, np.ndarray]:
        self._advance(state)
        phase = self.phase
        scenario = self._scenario
        if phase.mode is GuidanceMode.APPROACH_FIRST:
            target = state.sheep_pos[self._tour.order[0]]
            return phase, approach_velocity(state, scenario.dog, target)
        if phase.mode is GuidanceMode.PROVISIONAL_GATHER:
            destination = state.sheep_pos[self._tour.order[phase.nu - 1]]
            cmd = steering_command(state, scenario.dog, phase.collected, destination)
            return phase, cmd.v_d
        cmd = steering_command(state, scenario.dog, self._all, scenario.goal.center)
        return phase, cmd.v_d


def _run_episode(scenario: ScenarioConfig, controller, initial_state: FlockState | None) -> RunRecord:
    state = initial_state if initial_state is not None else prepare_start_state(scenario)
    if state.n != scenario.n_sheep:
        raise ValueError(f"state has {state.n} sheep, scenario expects {scenario.n_sheep}")

    first_step = state.step
    dog_pts = [state.dog_pos]
    sheep_pts = [state.sheep_pos]
    phases: list[GuidancePhase] = []
    total = 0.0
    success = goal_reached(state, scenario.goal)

    if not success:
        for _ in range(scenario.horizon):
            phase, v_dog = controller(state)
            phases.append(phase)
            v_sheep = flock_velocities(state, scenario.sheep)
            state = FlockState(
                step=state.step + 1,
                sheep_pos=state.sheep_pos + v_sheep,
                sheep_vel_prev=v_sheep,
                dog_pos=state.dog_pos + v_dog,
            )
            total += float(np.hypot(v_dog[0], v_dog[1]))
            dog_pts.append(state.dog_pos)
            sheep_pts.append(state.sheep_pos)
            if goal_reached(state, scenario.goal):
                success = True
                break

    terminal = replace(controller.phase, mode=GuidanceMode.DONE) if success else controller.phase
    phases.append(terminal)

    dog_trace = np.array(dog_pts)
    sheep_traces = np.array(sheep_pts)
    dog_trace.setflags(write=False)
    sheep_traces.setflags(write=False)
    return RunRecord(
        success=success,
        k_end=state.step - first_step,
        total_distance=total,
        dog_trace=dog_trace,
        sheep_traces=sheep_traces,
        phase_trace=tuple(phases),
    )


def run_fat(scenario: ScenarioConfig, initial_state: FlockState | None = None) -> RunRecord:
    """Drive-only baseline episode; no tour is needed."""
    return _run_episode(scenario, _FatController(scenario), initial_state)


def run_proposed(scenario: ScenarioConfig, tour: Tour, initial_state: FlockState | None = None) -> RunRecord:
    """Tour-guided episode: approach, gather sheep by sheep, then final drive."""
    if tour.n != scenario.n_sheep:
        raise ValueError(f"tour over {tour.n} sheep does not match scenario of {scenario.n_sheep}")
    return _run_episode(scenario, _TourController(scenario, tour), initial_state)
