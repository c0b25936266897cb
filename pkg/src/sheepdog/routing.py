"""Open-path tour planning over the flock's initial positions.

The cost of a visiting order is the length of the open path that starts
at the dog, passes every sheep in order, and ends at the goal. Orders
are improved by randomized local search: propose one mutation per
iteration and keep it whenever it is not worse.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

STRATEGIES = ("reverse", "exchange", "jump")

# Exhaustive search is only sane for small flocks.
BRUTE_FORCE_LIMIT = 10


@dataclass(frozen=True)
class Tour:
    """A visiting order: permutation of sheep indices 0..N-1."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        order = tuple(int(i) for i in self.order)
        object.__setattr__(self, "order", order)
        if sorted(order) != list(range(len(order))):
            raise ValueError(f"not a permutation of 0..{len(order) - 1}: {order}")

    @property
    def n(self) -> int:
        return len(self.order)


@dataclass(frozen=True, eq=False)
class TourInstance:
    """Frozen inputs for planning: dog start, sheep starts, goal point."""

    dog_start: np.ndarray
    sheep_start: np.ndarray
    goal: np.ndarray

    def __post_init__(self) -> None:
        dog = np.array(self.dog_start, dtype=float).reshape(2)
        sheep = np.array(self.sheep_start, dtype=float)
        goal = np.array(self.goal, dtype=float).reshape(2)
        if sheep.ndim != 2 or sheep.shape[1] != 2 or sheep.shape[0] < 1:
            raise ValueError("sheep_start must have shape (N, 2) with N >= 1")
        if not all(np.all(np.isfinite(a)) for a in (dog, sheep, goal)):
            raise ValueError("tour instance coordinates must be finite")
        for arr in (dog, sheep, goal):
            arr.setflags(write=False)
        object.__setattr__(self, "dog_start", dog)
        object.__setattr__(self, "sheep_start", sheep)
        object.__setattr__(self, "goal", goal)

    @property
    def n(self) -> int:
        return self.sheep_start.shape[0]


@dataclass(frozen=True)
class RlsConfig:
    strategy: str
    iterations: int
    seed: int

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}, expected one of {STRATEGIES}")
        if self.iterations < 1:
            raise ValueError("iterations must be positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True, eq=False)
class RlsResult:
    best_tour: Tour
    best_cost: float
    cost_trace: np.ndarray
    initial_tour: Tour
    initial_cost: float


def _distance_table(instance: TourInstance) -> list[list[float]]:
    # Node 0 is the dog start, 1..N the sheep, N+1 the goal.
    pts = np.vstack([instance.dog_start, instance.sheep_start, instance.goal])
    diff = pts[:, None, :] - pts[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1]).tolist()


def _path_cost(table: list[list[float]], order: tuple[int, ...]) -> float:
    goal_node = len(table) - 1
    prev = order[0]
    total = table[0][prev + 1]
    for nxt in order[1:]:
        total += table[prev + 1][nxt + 1]
        prev = nxt
    return total + table[prev + 1][goal_node]


def tour_cost(tour: Tour, instance: TourInstance) -> float:
    """Length of the open path dog -> sheep in tour order -> goal."""
    if tour.n != instance.n:
        raise ValueError(f"tour over {tour.n} sheep does not match instance of {instance.n}")
    return _path_cost(_distance_table(instance), tour.order)


def reverse_segment(order: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    """Reverse the inclusive slice [a, b]."""
    return order[:a] + order[a : b + 1][::-1] + order[b + 1 :]

def exchange_positions(order: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    """Swap the elements at positions a and b."""
    lst = list(order)
    lst[a], lst[b] = lst[b], lst[a]
    return tuple(lst)

def jump_insert(order: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    """Remove the element at position a and re-insert it at position b."""
    lst = list(order)
    lst.insert(b, lst.pop(a))
    return tuple(lst)


_KERNELS = {
    "reverse": reverse_segment,
    "exchange": exchange_positions,
    "jump": jump_insert,
}


def _draw_positions(rng: np.random.Generator, n: int) -> tuple[int, int]:
    # Uniform unordered pair of distinct positions, returned as a < b.
    a = int(rng.integers(n))
    b = int(rng.integers(n - 1))
    if b >= a:
        b += 1
    return (a, b) if a < b else (b, a)


def mutate(tour: Tour, strategy: str, rng: np.random.Generator) -> Tour:
    """One random mutation of tour; a single-sheep tour is returned unchanged."""
    if strategy not in _KERNELS:
        raise ValueError(f"unknown strategy {strategy!r}, expected one of {STRATEGIES}")
    if tour.n < 2:
        return tour
    a, b = _draw_positions(rng, tour.n)
    return Tour(_KERNELS[strategy](tour.order, a, b))


def random_tour(n: int, rng: np.random.Generator) -> Tour:
    return Tour(tuple(int(i) for i in rng.permutation(n)))


def rls_optimize(
    instance: TourInstance,
    config: RlsConfig,
    initial: Tour | None = None,
) -> RlsResult:
    """Randomized local search: accept a mutation whenever it is not worse.

    Runs exactly config.iterations mutations. When initial is omitted the
    starting order is drawn uniformly from the seeded stream.
    """
    rng = np.random.default_rng(config.seed)
    if initial is None:
        initial = random_tour(instance.n, rng)
    elif initial.n != instance.n:
        raise ValueError(f"initial tour over {initial.n} sheep does not match instance of {instance.n}")

    table = _distance_table(instance)
    kernel = _KERNELS[config.strategy]
    order = initial.order
    cost = _path_cost(table, order)
    initial_cost = cost
    trace = np.empty(config.iterations)

    n = instance.n
    for it in range(config.iterations):
        if n >= 2:
            a, b = _draw_positions(rng, n)
            candidate = Tour(kernel(order, a, b)).order
            candidate_cost = _path_cost(table, candidate)
            if candidate_cost <= cost:
                order = candidate
                cost = candidate_cost
        trace[it] = cost

    trace.setflags(write=False)
    return RlsResult(
        best_tour=Tour(order),
        best_cost=cost,
        cost_trace=trace,
        initial_tour=initial,
        initial_cost=initial_cost,
    )


def brute_force_tour(instance: TourInstance) -> tuple[Tour, float]:
    """Exact optimum by enumeration; ties go to the lexicographically smallest order."""
    if instance.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force supports at most {BRUTE_FORCE_LIMIT} sheep, got {instance.n}")
    table = _distance_table(instance)
    best_order: tuple[int, ...] | None = None
    best_cost = np.inf
    for order in itertools.permutations(range(instance.n)):
        cost = _path_cost(table, order)
        if cost < best_cost:
            best_order = order
            best_cost = cost
    assert best_order is not None
    return Tour(best_order), best_cost
