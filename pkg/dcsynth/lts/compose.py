import time
from collections import deque
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import bittensor as bt

from dcsynth.base.errors import CapExceededError
from dcsynth.lts.label import Label
from dcsynth.lts.lts import Classification, CompositeState, ControlProblem, Lts

DEFAULT_MAX_STATES = 10**7


def enabled(problem: ControlProblem, cs: CompositeState) -> List[Tuple[Label, CompositeState]]:
    """Labels enabled at `cs` under the n-ary synchronous product, with their successors.

    A label fires iff every component that has it in its alphabet enables it; only those
    components move. Sorted by label. Composite states holding an ERROR component enable nothing.
    """
    if problem.is_error(cs):
        return []
    moves: Dict[Label, List[Tuple[int, int]]] = {}
    for i, (component, state) in enumerate(zip(problem.components, cs)):
        for label, target in component.transitions[state]:
            moves.setdefault(label, []).append((i, target))
    result = []
    for label in sorted(moves):
        movers = moves[label]
        if len(movers) != len(problem.participants[label]):
            continue
        successor = list(cs)
        for i, target in movers:
            successor[i] = target
        result.append((label, tuple(successor)))
    return result


def classify(problem: ControlProblem, cs: CompositeState) -> Classification:
    labels = [label for label, _ in enabled(problem, cs)]
    if not labels:
        return Classification.DEADLOCK
    controllable = [label in problem.controllable for label in labels]
    if all(controllable):
        return Classification.CONTROLLABLE
    if any(controllable):
        return Classification.MIXED
    return Classification.UNCONTROLLABLE


class Product(NamedTuple):
    """Explicit reachable product: the LTS plus the composite state behind each product state."""

    lts: Lts
    states: Tuple[CompositeState, ...]
    index: Dict[CompositeState, int]


def explore(
    problem: ControlProblem, max_states: int = DEFAULT_MAX_STATES, deadline: Optional[float] = None
) -> Product:
    """Breadth-first reachable product. States are numbered in discovery order from the initial state.

    `deadline` is a `time.monotonic()` instant after which exploration gives up.
    """
    initial = problem.initial
    index: Dict[CompositeState, int] = {initial: 0}
    order: List[CompositeState] = [initial]
    rows: List[Tuple[Tuple[Label, int], ...]] = []
    queue = deque([initial])
    while queue:
        cs = queue.popleft()
        if deadline is not None and time.monotonic() > deadline:
            raise CapExceededError(
                "timeout while exploring the product", kind="timeout", stats={"states": len(order)}
            )
        row = []
        for label, successor in enabled(problem, cs):
            if successor not in index:
                if len(order) >= max_states:
                    raise CapExceededError(
                        f"state-space too large: more than {max_states} reachable product states",
                        kind="states",
                        stats={"states": len(order)},
                    )
                index[successor] = len(order)
                order.append(successor)
                queue.append(successor)
            row.append((label, index[successor]))
        rows.append(tuple(row))
    bt.logging.debug(f"explored product with {len(order)} states")
    lts = Lts(
        name="||".join(c.name for c in problem.components),
        states=tuple(problem.describe(cs) for cs in order),
        alphabet=problem.alphabet,
        transitions=tuple(rows),
        initial=0,
    )
    return Product(lts=lts, states=tuple(order), index=index)


def compose_full(problem: ControlProblem, max_states: int = DEFAULT_MAX_STATES) -> Lts:
    return explore(problem, max_states).lts


def accepts_trace(lts: Lts, trace: Sequence[Label]) -> bool:
    state = lts.initial
    for label in trace:
        state = lts.successor(state, label)
        if state is None:
            return False
    return True


def product_bound(problem: ControlProblem) -> int:
    """Analytic upper bound on the product size: the product of component sizes."""
    bound = 1
    for component in problem.components:
        bound *= len(component)
    return bound
