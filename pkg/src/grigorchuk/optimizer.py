"""Tune transducer weights by coordinate hill-climbing.

The cycle-ratio bound of a finished machine depends on the weight given
to each generator.  Starting from any triangular weight, each proposal
nudges one of b, c, d by the current step and is kept exactly when the
measured ratio strictly drops; a is the scale gauge and stays fixed at
one.  Steps shrink on a schedule, and every evaluated proposal is
recorded so a run can be replayed from its trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random

from .automaton import TransducerGraph, max_cycle_ratio
from .minforms import SCALE, Weight, check_weights, format_scaled, is_triangular

DEFAULT_STEPS = (0.1, 0.05, 0.02, 0.01, 0.005)
COORDINATES = ("b", "c", "d")


@dataclass
class OptimizerSchedule:
    step_sizes: tuple[float, ...] = DEFAULT_STEPS
    max_iterations: int = 2000
    seed: int | None = None

    def validate(self) -> None:
        if not self.step_sizes:
            raise ValueError("schedule needs at least one step size")
        if any(s <= 0 for s in self.step_sizes):
            raise ValueError("step sizes must be positive")
        if list(self.step_sizes) != sorted(self.step_sizes, reverse=True):
            raise ValueError("step sizes must decrease")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")


@dataclass
class TraceRow:
    iteration: int
    coordinate: str
    step: float
    eta: float
    accepted: bool

    def csv(self) -> str:
        return (f"{self.iteration},{self.coordinate},"
                f"{format_scaled(round(self.step * SCALE))},"
                f"{self.eta:.6f},{str(self.accepted).lower()}")


def trace_csv(trace: list[TraceRow]) -> str:
    lines = ["iteration,coordinate,step,eta,accepted"]
    lines.extend(row.csv() for row in trace)
    return "\n".join(lines) + "\n"


def _gauge(weights: Weight) -> Weight:
    """Rescale so a carries exactly one unit; ratios are scale-invariant."""
    a = weights["a"]
    return {k: round(v * SCALE / a) for k, v in weights.items()}


def optimize_weights(
    graph: TransducerGraph,
    initial: Weight | None = None,
    schedule: OptimizerSchedule | None = None,
) -> tuple[Weight, float, list[TraceRow]]:
    """Hill-climb the non-special cycle ratio over triangular weights.

    Returns the best weight found, its ratio, and the full proposal
    trace.  The kept-ratio subsequence is strictly decreasing, every
    kept weight is triangular, and identical inputs replay identically
    (a seeded schedule shuffles proposal order but stays deterministic).
    """
    schedule = schedule or OptimizerSchedule()
    schedule.validate()
    weights = _gauge(dict(initial or graph.weights))
    check_weights(weights)
    if not is_triangular(weights):
        raise ValueError("initial weight must be triangular")
    rng = Random(schedule.seed) if schedule.seed is not None else None

    best, _ = max_cycle_ratio(graph, weights)
    seen = {tuple(weights[c] for c in COORDINATES): best}
    trace: list[TraceRow] = []
    iteration = 0

    for step_units in schedule.step_sizes:
        step = round(step_units * SCALE)
        improved = True
        while improved and iteration < schedule.max_iterations:
            improved = False
            proposals = [(coord, sign)
                         for coord in COORDINATES for sign in (+1, -1)]
            if rng is not None:
                rng.shuffle(proposals)
            for coord, sign in proposals:
                if iteration >= schedule.max_iterations:
                    break
                trial = dict(weights)
                trial[coord] = weights[coord] + sign * step
                if trial[coord] <= 0 or not is_triangular(trial):
                    continue
                key = tuple(trial[c] for c in COORDINATES)
                if key in seen:
                    continue
                iteration += 1
                eta, _ = max_cycle_ratio(graph, trial)
                seen[key] = eta
                keep = eta < best - 1e-9
                trace.append(TraceRow(iteration, coord, step_units, eta, keep))
                if keep:
                    weights, best = trial, eta
                    improved = True
                    break
    return weights, best, trace
