from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple, Union

from dcsynth.abstraction.heuristic import INF, Distance
from dcsynth.lts.label import Label
from dcsynth.lts.lts import Classification, CompositeState


class Status(Enum):
    OPEN = "open"
    GOAL = "goal"
    ERROR = "error"


class Marker(Enum):
    """Children that are not nodes: a discharging step, or a step on an avoid label."""

    DISCHARGE = "discharge"
    AVOID = "avoid"


Child = Union[int, Marker]


@dataclass(eq=False)
class ExplorationNode:
    id: int
    state: CompositeState
    classification: Classification
    # (label, estimate, successor) in expansion order.
    actions: List[Tuple[Label, Distance, CompositeState]] = field(default_factory=list)
    cursor: int = 0
    status: Status = Status.OPEN
    parents: List[Tuple[int, Label]] = field(default_factory=list)
    children: List[Tuple[Label, Child, CompositeState]] = field(default_factory=list)
    witness: Optional[Label] = None

    @property
    def is_controllable(self) -> bool:
        return self.classification == Classification.CONTROLLABLE

    @property
    def has_unexplored(self) -> bool:
        return self.cursor < len(self.actions)

    def next_action(self) -> Tuple[Label, Distance, CompositeState]:
        action = self.actions[self.cursor]
        self.cursor += 1
        return action

    def priority(self) -> Distance:
        """Best estimate among the unexplored actions."""
        return min((estimate for _, estimate, _ in self.actions[self.cursor:]), default=INF)
