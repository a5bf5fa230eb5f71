"""Explicit-state solver for the safety + reachability game.

A state with at least one uncontrollable transition belongs to the environment: it wins iff
every uncontrollable transition avoids G_S and either discharges or leads to a winning state.
Otherwise the controller picks: it wins iff some controllable transition avoids G_S and either
discharges or leads to a winning state. Deadlocks lose. The winning set is the least fixpoint,
computed as a backward attractor with per-state counters.
"""

import time
import argparse
import bittensor as bt

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from dcsynth.base.engine import BaseEngine, EngineRun, SynthesisStats, Verdict
from dcsynth.base.errors import CapExceededError
from dcsynth.engine.controller import Controller
from dcsynth.lts.compose import DEFAULT_MAX_STATES, Product, explore
from dcsynth.lts.label import Label
from dcsynth.lts.lts import ControlProblem, Lts


@dataclass(frozen=True)
class GameSolution:
    product: Product
    winning: FrozenSet[int]
    witness: Dict[int, Label]

    @property
    def initial_winning(self) -> bool:
        return 0 in self.winning

    @property
    def verdict(self) -> Verdict:
        return Verdict.CONTROLLER if self.initial_winning else Verdict.NONE


def _moves(problem: ControlProblem, row) -> Tuple[bool, List[Tuple[Label, int]]]:
    """(environment-owned, transitions that matter) for one product state."""
    uncontrollable = [(label, t) for label, t in row if label not in problem.controllable]
    if uncontrollable:
        return True, uncontrollable
    return False, list(row)


def step_rule(problem: ControlProblem, product: Product, winning: FrozenSet[int]) -> FrozenSet[int]:
    """Apply the one-step winning rule once against `winning`."""
    result = set()
    for state, row in enumerate(product.lts.transitions):
        if not row:
            continue
        env_owned, moves = _moves(problem, row)
        good = [
            label not in problem.avoid
            and (problem.discharges(label, product.states[t]) or t in winning)
            for label, t in moves
        ]
        if (all(good) if env_owned else any(good)):
            result.add(state)
    return frozenset(result)


def solve_monolithic(
    problem: ControlProblem, max_states: int = DEFAULT_MAX_STATES, deadline: Optional[float] = None
) -> GameSolution:
    product = explore(problem, max_states, deadline)
    n = len(product.states)
    env_owned = [False] * n
    pending = [0] * n
    predecessors: List[List[Tuple[int, Label]]] = [[] for _ in range(n)]
    winning = set()
    witness: Dict[int, Label] = {}
    queue = deque()

    for state, row in enumerate(product.lts.transitions):
        if not row:
            continue
        owned, moves = _moves(problem, row)
        env_owned[state] = owned
        if owned and any(label in problem.avoid for label, _ in moves):
            continue
        for label, target in moves:
            if label in problem.avoid:
                continue
            if problem.discharges(label, product.states[target]):
                if not owned and state not in witness:
                    witness[state] = label
                continue
            pending[state] += 1
            predecessors[target].append((state, label))
        if (owned and pending[state] == 0) or (not owned and state in witness):
            winning.add(state)
            queue.append(state)

    while queue:
        target = queue.popleft()
        for state, label in predecessors[target]:
            if state in winning:
                continue
            if env_owned[state]:
                pending[state] -= 1
                if pending[state] > 0:
                    continue
            else:
                witness[state] = label
            winning.add(state)
            queue.append(state)

    bt.logging.debug(f"monolithic solve: {len(winning)}/{n} winning states")
    return GameSolution(product=product, winning=frozenset(winning), witness=witness)


def strategy_controller(problem: ControlProblem, solution: GameSolution) -> Controller:
    """Controller induced by the attractor strategy: witness moves at controller states,
    every uncontrollable move at environment states."""
    if not solution.initial_winning:
        raise ValueError("initial state is not winning")
    product = solution.product
    included: Dict[int, int] = {0: 0}
    order = [0]
    edges: List[Tuple[int, Label, int]] = []
    pending: List[Tuple[int, Label, int]] = []
    queue = deque([0])
    while queue:
        state = queue.popleft()
        owned, moves = _moves(problem, product.lts.transitions[state])
        chosen = sorted(moves) if owned else [(l, t) for l, t in moves if l == solution.witness[state]][:1]
        for label, target in chosen:
            if problem.discharges(label, product.states[target]):
                pending.append((included[state], label, target))
                continue
            if target not in included:
                included[target] = len(order)
                order.append(target)
                queue.append(target)
            edges.append((included[state], label, included[target]))

    composite = [product.states[s] for s in order]
    halting: Dict[int, int] = {}
    for source, label, target in pending:
        if target in included:
            edges.append((source, label, included[target]))
            continue
        if target not in halting:
            halting[target] = len(composite)
            composite.append(product.states[target])
        edges.append((source, label, halting[target]))

    lts = Lts.from_edges(
        "Controller", [problem.describe(cs) for cs in composite], edges, alphabet=problem.alphabet
    )
    return Controller(lts=lts, composite_states=tuple(composite))


class MonolithicEngine(BaseEngine):
    """Explicit full-product engine (`mono`): ground truth for the directed engine."""

    name = "mono"

    @classmethod
    def add_args(cls, parser: argparse.ArgumentParser):
        pass

    def solve(self, problem: ControlProblem) -> EngineRun:
        started = time.monotonic()
        stats = SynthesisStats()
        try:
            solution = solve_monolithic(
                problem,
                max_states=self.config.compose.max_states,
                deadline=started + self.config.engine.timeout_s,
            )
        except CapExceededError as e:
            stats.expanded = e.stats.get("states", 0)
            stats.verdict = (Verdict.TIMEOUT if e.kind == "timeout" else Verdict.OUT_OF_MEMORY).value
            e.stats = dict(e.stats, **stats.to_dict())
            raise
        stats.expanded = len(solution.product.states)
        stats.wall_ms = (time.monotonic() - started) * 1000.0
        stats.verdict = solution.verdict.value
        controller = strategy_controller(problem, solution) if solution.initial_winning else None
        run = EngineRun(solution.verdict, stats, controller, extra={"winning": len(solution.winning)})
        self.log_run(run, engine=self.name)
        return run
