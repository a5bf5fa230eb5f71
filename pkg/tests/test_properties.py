"""Property suites over the seeded random problems of `generators`."""

import math
import random
import statistics
from collections import deque
from typing import Dict

import pytest

from generators import SUITE_SIZE, random_problem
from dcsynth.abstraction import Heuristic, build_abstraction, is_abstracting_path
from dcsynth.base.engine import Verdict
from dcsynth.engine import synthesize
from dcsynth.lts import enabled, explore
from dcsynth.lts.lts import CompositeState, ControlProblem
from dcsynth.oracle import solve_monolithic, verify_controller

SEEDS = range(SUITE_SIZE)
TRACES_PER_INSTANCE = 100
MAX_TRACE_LENGTH = 12


def true_distances(problem: ControlProblem, product) -> Dict[CompositeState, float]:
    """Fewest steps from each product state to a discharge, never firing an avoid label."""
    dist = {cs: math.inf for cs in product.states}
    incoming = {cs: [] for cs in product.states}
    queue = deque()
    for cs in product.states:
        for label, successor in enabled(problem, cs):
            if label in problem.avoid:
                continue
            if problem.discharges(label, successor):
                if dist[cs] == math.inf:
                    dist[cs] = 1
                    queue.append(cs)
            else:
                incoming[successor].append(cs)
    # Unit weights: a plain breadth-first sweep from the one-step states is exact.
    while queue:
        cs = queue.popleft()
        for parent in incoming[cs]:
            if dist[parent] == math.inf:
                dist[parent] = dist[cs] + 1
                queue.append(parent)
    return dist


def true_estimate(problem, label, successor, dist) -> float:
    if label in problem.avoid:
        return math.inf
    if problem.discharges(label, successor):
        return 1
    return 1 + dist[successor]


@pytest.fixture(scope="module")
def suite():
    return [(seed, random_problem(seed)) for seed in SEEDS]


def test_suite_shape(suite):
    assert len(suite) >= 500
    for _, problem in suite:
        assert 1 <= len(problem.components) <= 4
        assert all(len(c) <= 6 for c in problem.components)
        assert len(problem.alphabet) <= 8
        problem.check()


def test_suite_is_not_trivial(suite):
    sizes = sorted(len(explore(problem).states) for _, problem in suite)
    assert statistics.median(sizes) >= 5
    assert sizes[-1] >= 50


def test_estimates_never_overestimate(suite):
    violations = []
    for seed, problem in suite:
        product = explore(problem)
        dist = true_distances(problem, product)
        heuristic = Heuristic(problem)
        for cs in product.states:
            for label, estimate in heuristic.rank(cs):
                successor = dict(enabled(problem, cs))[label]
                exact = true_estimate(problem, label, successor, dist)
                if estimate > exact:
                    violations.append((seed, cs, str(label), estimate, exact))
    assert violations == []


def test_frontier_growth_is_bounded(suite):
    for seed, problem in suite:
        bound = sum(len(c) for c in problem.components)
        for cs in explore(problem).states:
            result = build_abstraction(problem, cs)
            assert result.growth_steps <= bound, seed
            for before, after in zip(result.frontiers, result.frontiers[1:]):
                assert before <= after


def test_product_traces_are_abstracting_paths(suite):
    for seed, problem in suite:
        rng = random.Random(seed)
        result = build_abstraction(problem, problem.initial)
        for _ in range(TRACES_PER_INSTANCE):
            cs, trace = problem.initial, []
            for _ in range(rng.randint(0, MAX_TRACE_LENGTH)):
                moves = enabled(problem, cs)
                if not moves:
                    break
                label, cs = rng.choice(moves)
                trace.append(label)
                if label in problem.avoid:
                    break
            assert is_abstracting_path(problem, result, trace), (seed, [str(l) for l in trace])


def test_engine_agrees_with_oracle(suite):
    disagreements = []
    for seed, problem in suite:
        run = synthesize(problem)
        solution = solve_monolithic(problem)
        if (run.verdict == Verdict.CONTROLLER) != solution.initial_winning:
            disagreements.append((seed, run.verdict.value, solution.verdict.value))
            continue
        if run.controller is not None:
            report = verify_controller(problem, run.controller)
            if not report.accepted:
                disagreements.append((seed, "rejected", [str(v) for v in report.violations]))
        assert run.stats.expanded <= len(solution.product.states)
    assert disagreements == []
