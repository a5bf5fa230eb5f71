from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from dcsynth.engine.node import ExplorationNode, Marker, Status
from dcsynth.lts.aut import write_aut
from dcsynth.lts.dot import lts_to_dot
from dcsynth.lts.label import Label
from dcsynth.lts.lts import CompositeState, ControlProblem, Lts


@dataclass(frozen=True)
class Controller:
    """Controller automaton plus the composite state each of its states stands for."""

    lts: Lts
    composite_states: Tuple[CompositeState, ...]

    def __len__(self) -> int:
        return len(self.lts)

    def to_aut(self) -> str:
        return write_aut(self.lts)

    def to_dot(self) -> str:
        return lts_to_dot(self.lts)

    def trace_labels(self) -> List[Tuple[int, str, int]]:
        return [(s, str(label), t) for s, label, t in self.lts.edges()]


def extract_controller(
    problem: ControlProblem, nodes: Sequence[ExplorationNode], root: ExplorationNode
) -> Controller:
    """Collect the controller reachable from a goal-marked root.

    Controllable nodes keep only their witness step; the others keep every uncontrollable
    step. A discharge lands on the included state with the same composite state when there
    is one, closing a cycle, and on a fresh halting state otherwise.
    """
    if root.status != Status.GOAL:
        raise ValueError("controller extraction needs a goal-marked root")

    included: Dict[CompositeState, int] = {root.state: 0}
    order: List[ExplorationNode] = [root]
    pending: List[Tuple[int, Label, CompositeState]] = []
    edges: List[Tuple[int, Label, int]] = []
    queue = deque([root])
    while queue:
        node = queue.popleft()
        source = included[node.state]
        if node.is_controllable:
            chosen = [c for c in node.children if c[0] == node.witness][:1]
        else:
            chosen = sorted(node.children, key=lambda c: c[0])
        for label, child, successor in chosen:
            if child is Marker.DISCHARGE:
                pending.append((source, label, successor))
                continue
            assert child is not Marker.AVOID, f"avoid step {label} kept in the controller"
            target = nodes[child]
            assert target.status == Status.GOAL, (
                f"child {problem.describe(target.state)} of {problem.describe(node.state)} is not goal-marked"
            )
            if target.state not in included:
                included[target.state] = len(order)
                order.append(target)
                queue.append(target)
            edges.append((source, label, included[target.state]))

    composite_states = [n.state for n in order]
    halting: Dict[CompositeState, int] = {}
    for source, label, successor in pending:
        target = included.get(successor)
        if target is None:
            target = halting.get(successor)
            if target is None:
                target = halting[successor] = len(composite_states)
                composite_states.append(successor)
        edges.append((source, label, target))

    lts = Lts.from_edges(
        "Controller",
        [problem.describe(cs) for cs in composite_states],
        edges,
        initial=0,
        alphabet=problem.alphabet,
    )
    return Controller(lts=lts, composite_states=tuple(composite_states))
