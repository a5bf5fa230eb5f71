import time
import argparse
import bittensor as bt

from typing import Dict, List, Optional

from dcsynth.abstraction.heuristic import Heuristic
from dcsynth.base.engine import BaseEngine, EngineRun, SynthesisStats, Verdict
from dcsynth.base.errors import CapExceededError
from dcsynth.engine.controller import extract_controller
from dcsynth.engine.node import ExplorationNode, Marker, Status
from dcsynth.engine.queue import OpenQueue
from dcsynth.lts.compose import classify, enabled
from dcsynth.lts.lts import Classification, CompositeState, ControlProblem

DEFAULT_MAX_EXPANSIONS = 1_000_000
DEFAULT_TIMEOUT_S = 300.0


class DirectedSearch:
    """One on-the-fly best-first AND/OR exploration of the composition.

    Nodes are memoised by composite state. Controllable nodes need one goal child and try
    their best-ranked action first; uncontrollable and mixed nodes need every uncontrollable
    child to reach the goal and try their worst-ranked one first, to find errors early.
    """

    def __init__(
        self,
        problem: ControlProblem,
        max_expansions: int = DEFAULT_MAX_EXPANSIONS,
        timeout_s: float = DEFAULT_TIMEOUT_S,
    ):
        problem.check()
        self.problem = problem
        self.max_expansions = max_expansions
        self.timeout_s = timeout_s
        self.heuristic = Heuristic(problem)
        self.nodes: List[ExplorationNode] = []
        self.index: Dict[CompositeState, int] = {}
        self.queue = OpenQueue()
        self.stats = SynthesisStats()
        # Composite states expanded at least once; nodes that never leave the queue do not count.
        self.expanded = 0
        self._started = 0.0

    def _snapshot(self) -> SynthesisStats:
        self.stats.expanded = self.expanded
        self.stats.abstractions_built = self.heuristic.abstractions_built
        self.stats.wall_ms = (time.monotonic() - self._started) * 1000.0
        return self.stats

    def _cap(self, message: str, kind: str, verdict: Verdict):
        stats = self._snapshot()
        stats.verdict = verdict.value
        return CapExceededError(message, kind=kind, stats=stats.to_dict())

    def node(self, cs: CompositeState) -> ExplorationNode:
        existing = self.index.get(cs)
        if existing is not None:
            return self.nodes[existing]
        node = ExplorationNode(id=len(self.nodes), state=cs, classification=classify(self.problem, cs))
        self.nodes.append(node)
        self.index[cs] = node.id
        if node.classification == Classification.DEADLOCK:
            node.status = Status.ERROR
            return node

        successors = dict(enabled(self.problem, cs))
        ranking = self.heuristic.rank(cs)
        if node.is_controllable:
            node.actions = [(label, estimate, successors[label]) for label, estimate in ranking]
        else:
            uncontrollable = [
                (label, estimate, successors[label])
                for label, estimate in ranking
                if label not in self.problem.controllable
            ]
            if any(label in self.problem.avoid for label, _, _ in uncontrollable):
                node.status = Status.ERROR
                return node
            uncontrollable.sort(key=lambda action: (-action[1], action[0]))
            node.actions = uncontrollable
        self.queue.push(node.id, node.priority())
        return node

    def evaluate(self, node: ExplorationNode) -> Optional[Status]:
        """Marking rule for an open node, given the current status of its children."""
        statuses = []
        for label, child, _ in node.children:
            if child is Marker.DISCHARGE:
                statuses.append((label, Status.GOAL))
            elif child is Marker.AVOID:
                statuses.append((label, Status.ERROR))
            else:
                statuses.append((label, self.nodes[child].status))

        if node.is_controllable:
            for label, status in statuses:
                if status == Status.GOAL:
                    node.witness = label
                    return Status.GOAL
            if not node.has_unexplored and all(s == Status.ERROR for _, s in statuses):
                return Status.ERROR
            return None

        if any(s == Status.ERROR for _, s in statuses):
            return Status.ERROR
        if not node.has_unexplored and all(s == Status.GOAL for _, s in statuses):
            return Status.GOAL
        return None

    def expand(self, node: ExplorationNode):
        if node.cursor == 0:
            if self.expanded >= self.max_expansions:
                raise self._cap(
                    f"expansion cap of {self.max_expansions} states reached", "expansions", Verdict.OUT_OF_MEMORY
                )
            self.expanded += 1
        label, _, successor = node.next_action()
        if self.problem.discharges(label, successor):
            child = Marker.DISCHARGE
        elif label in self.problem.avoid:
            child = Marker.AVOID
        else:
            child_node = self.node(successor)
            child_node.parents.append((node.id, label))
            child = child_node.id
        node.children.append((label, child, successor))

        status = self.evaluate(node)
        if status is not None:
            self.propagate(node, status)
        elif node.has_unexplored:
            self.queue.push(node.id, node.priority())

    def propagate(self, node: ExplorationNode, status: Status) -> List[ExplorationNode]:
        """Mark `node` and walk its ancestors. Returns the interrupting ancestors that were reopened."""
        reopened: List[ExplorationNode] = []
        worklist = [(node, status)]
        while worklist:
            current, new_status = worklist.pop()
            if current.status != Status.OPEN:
                continue
            current.status = new_status
            self.queue.discard(current.id)
            for parent_id, _ in current.parents:
                parent = self.nodes[parent_id]
                if parent.status != Status.OPEN:
                    continue
                parent_status = self.evaluate(parent)
                if parent_status is not None:
                    worklist.append((parent, parent_status))
                elif parent.has_unexplored:
                    self.queue.push(parent.id, parent.priority())
                    reopened.append(parent)
        return reopened

    def run(self) -> EngineRun:
        self._started = time.monotonic()
        root = self.node(self.problem.initial)
        while root.status == Status.OPEN:
            if time.monotonic() - self._started > self.timeout_s:
                raise self._cap(f"timeout after {self.timeout_s}s", "timeout", Verdict.TIMEOUT)
            self.stats.peak_open = max(self.stats.peak_open, len(self.queue))
            if not self.queue:
                # Whatever is still open only waits on goal-free cycles.
                for node in self.nodes:
                    if node.status == Status.OPEN:
                        node.status = Status.ERROR
                break
            node_id, _ = self.queue.pop()
            node = self.nodes[node_id]
            if node.status == Status.OPEN and node.has_unexplored:
                self.expand(node)

        stats = self._snapshot()
        if root.status == Status.GOAL:
            controller = extract_controller(self.problem, self.nodes, root)
            stats.verdict = Verdict.CONTROLLER.value
            bt.logging.debug(f"controller with {len(controller)} states after {stats.expanded} expanded states")
            return EngineRun(Verdict.CONTROLLER, stats, controller)
        stats.verdict = Verdict.NONE.value
        bt.logging.debug(f"no controller after {stats.expanded} expanded states")
        return EngineRun(Verdict.NONE, stats)


def synthesize(
    problem: ControlProblem,
    max_expansions: int = DEFAULT_MAX_EXPANSIONS,
    timeout_s: float = DEFAULT_TIMEOUT_S,
) -> EngineRun:
    """Directed controller synthesis. Raises CapExceededError when a resource cap is hit."""
    return DirectedSearch(problem, max_expansions, timeout_s).run()


class DirectedEngine(BaseEngine):
    """Heuristic on-the-fly engine (`dcs`)."""

    name = "dcs"

    @classmethod
    def add_args(cls, parser: argparse.ArgumentParser):
        pass

    def solve(self, problem: ControlProblem) -> EngineRun:
        run = synthesize(
            problem,
            max_expansions=self.config.engine.max_expansions,
            timeout_s=self.config.engine.timeout_s,
        )
        self.log_run(run, engine=self.name)
        return run
