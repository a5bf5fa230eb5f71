from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import bittensor as bt

from dcsynth.base.errors import AlphabetMismatchError, CapExceededError
from dcsynth.engine.controller import Controller
from dcsynth.lts.compose import DEFAULT_MAX_STATES, enabled
from dcsynth.lts.label import Label
from dcsynth.lts.lts import CompositeState, ControlProblem, Lts

AVOID = "avoid"
NO_DISCHARGE = "no-discharge"
BLOCKS_UNCONTROLLABLE = "blocks-uncontrollable"


@dataclass(frozen=True)
class Violation:
    reason: str
    trace: Tuple[Label, ...]
    detail: str = ""

    def __str__(self) -> str:
        trace = "·".join(str(l) for l in self.trace) or "ε"
        return f"{self.reason}: {self.detail} (trace {trace})"


@dataclass
class VerificationReport:
    violations: List[Violation] = field(default_factory=list)
    states: int = 0

    @property
    def accepted(self) -> bool:
        return not self.violations

    def reasons(self) -> List[str]:
        return sorted({v.reason for v in self.violations})


def _as_lts(controller) -> Lts:
    return controller.lts if isinstance(controller, Controller) else controller


def verify_controller(
    problem: ControlProblem, controller, max_states: int = DEFAULT_MAX_STATES
) -> VerificationReport:
    """Model-check the closed loop of the environment with `controller` up to the first discharge.

    Flags an avoid label on a reachable step, a deadlock or a cycle before any discharge, and
    any uncontrollable label the environment enables but the controller refuses.
    """
    lts = _as_lts(controller)
    extra = lts.alphabet - problem.alphabet
    if extra:
        raise AlphabetMismatchError(
            f"controller labels outside the composition alphabet: {', '.join(str(l) for l in sorted(extra))}"
        )
    # Widened to the full alphabet: the controller takes part in, and may refuse, every label.
    closed = ControlProblem(
        components=problem.components + (lts.with_alphabet(problem.alphabet),),
        controllable=problem.controllable,
        reach=problem.reach,
        avoid=problem.avoid,
    )
    n_env = len(problem.components)
    report = VerificationReport()
    initial = closed.initial
    parent: Dict[CompositeState, Optional[Tuple[CompositeState, Label]]] = {initial: None}
    successors: Dict[CompositeState, List[Tuple[Label, CompositeState]]] = {}
    flagged = set()

    def trace_to(cs: CompositeState) -> Tuple[Label, ...]:
        labels = []
        while parent[cs] is not None:
            cs, label = parent[cs]
            labels.append(label)
        return tuple(reversed(labels))

    def flag(reason: str, trace: Tuple[Label, ...], detail: str, key):
        if (reason, key) not in flagged:
            flagged.add((reason, key))
            report.violations.append(Violation(reason, trace, detail))

    queue = deque([initial])
    while queue:
        cs = queue.popleft()
        env = cs[:n_env]
        loop_moves = enabled(closed, cs)
        loop_labels = {label for label, _ in loop_moves}
        for label, _ in enabled(problem, env):
            if label not in problem.controllable and label not in loop_labels:
                flag(
                    BLOCKS_UNCONTROLLABLE,
                    trace_to(cs),
                    f"controller refuses {label} at {problem.describe(env)}",
                    (cs, label),
                )

        successors[cs] = []
        if not loop_moves:
            flag(NO_DISCHARGE, trace_to(cs), f"deadlock at {problem.describe(env)}", cs)
        for label, successor in loop_moves:
            if label in problem.avoid:
                flag(AVOID, trace_to(cs) + (label,), f"{label} occurs", (cs, label))
                continue
            if problem.discharges(label, successor[:n_env]):
                continue
            successors[cs].append((label, successor))
            if successor not in parent:
                if len(parent) >= max_states:
                    raise CapExceededError(f"closed loop larger than {max_states} states", kind="states")
                parent[successor] = (cs, label)
                queue.append(successor)

    report.states = len(parent)
    cycle = _find_cycle(successors, initial)
    if cycle is not None:
        entry, closing = cycle
        flag(NO_DISCHARGE, trace_to(entry) + closing, "cycle before discharge", "cycle")
    bt.logging.debug(f"verified closed loop of {report.states} states: {report.reasons() or 'accepted'}")
    return report


def _find_cycle(successors: Dict[CompositeState, List[Tuple[Label, CompositeState]]], initial: CompositeState):
    """First pre-discharge cycle found by an iterative DFS: (cycle entry, labels around it)."""
    WHITE, GREY, BLACK = 0, 1, 2
    color: Dict[CompositeState, int] = {}
    stack: List[Tuple[CompositeState, int]] = [(initial, 0)]
    path: List[CompositeState] = [initial]
    labels: List[Label] = []
    color[initial] = GREY
    while stack:
        cs, i = stack.pop()
        children = successors.get(cs, [])
        if i < len(children):
            stack.append((cs, i + 1))
            label, child = children[i]
            state = color.get(child, WHITE)
            if state == GREY:
                return child, tuple(labels[path.index(child):]) + (label,)
            if state == WHITE:
                color[child] = GREY
                path.append(child)
                labels.append(label)
                stack.append((child, 0))
        else:
            color[cs] = BLACK
            path.pop()
            if labels:
                labels.pop()
    return None

