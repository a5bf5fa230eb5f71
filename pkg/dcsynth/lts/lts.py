from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from dcsynth.base.errors import ProblemError
from dcsynth.lts.label import Label

# One state id per component, in component order.
CompositeState = Tuple[int, ...]


class Classification(Enum):
    CONTROLLABLE = "controllable"
    UNCONTROLLABLE = "uncontrollable"
    MIXED = "mixed"
    DEADLOCK = "deadlock"


@dataclass(frozen=True)
class Lts:
    """A deterministic labeled transition system over dense state ids `0..len(states)-1`.

    `transitions[s]` is sorted by label. `error_state` is the FSP `ERROR` sink, if the
    process can reach it.
    """

    name: str
    states: Tuple[str, ...]
    alphabet: FrozenSet[Label]
    transitions: Tuple[Tuple[Tuple[Label, int], ...], ...]
    initial: int = 0
    error_state: Optional[int] = None
    _index: Tuple[Dict[Label, int], ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        n = len(self.states)
        if not 0 <= self.initial < n:
            raise ValueError(f"{self.name}: initial state {self.initial} out of range")
        if len(self.transitions) != n:
            raise ValueError(f"{self.name}: {len(self.transitions)} transition rows for {n} states")
        index = []
        for source, row in enumerate(self.transitions):
            by_label: Dict[Label, int] = {}
            for label, target in row:
                if label not in self.alphabet:
                    raise ValueError(f"{self.name}: label {label} not in alphabet")
                if not 0 <= target < n:
                    raise ValueError(f"{self.name}: transition target {target} out of range")
                if label in by_label and by_label[label] != target:
                    raise ValueError(f"{self.name}: nondeterministic on {label} from {self.states[source]}")
                by_label[label] = target
            index.append(by_label)
        object.__setattr__(self, "_index", tuple(index))

    @classmethod
    def from_edges(
        cls,
        name: str,
        states: Sequence[str],
        edges: Iterable[Tuple[int, Label, int]],
        initial: int = 0,
        alphabet: Optional[Iterable[Label]] = None,
        error_state: Optional[int] = None,
    ) -> "Lts":
        rows: List[set] = [set() for _ in states]
        for source, label, target in edges:
            rows[source].add((label, target))
        labels = {label for row in rows for label, _ in row}
        if alphabet is not None:
            labels |= set(alphabet)
        return cls(
            name=name,
            states=tuple(states),
            alphabet=frozenset(labels),
            transitions=tuple(tuple(sorted(row)) for row in rows),
            initial=initial,
            error_state=error_state,
        )

    def successor(self, state: int, label: Label) -> Optional[int]:
        return self._index[state].get(label)

    def with_alphabet(self, alphabet: Iterable[Label]) -> "Lts":
        return Lts(
            name=self.name,
            states=self.states,
            alphabet=frozenset(alphabet) | self.alphabet,
            transitions=self.transitions,
            initial=self.initial,
            error_state=self.error_state,
        )

    @property
    def num_transitions(self) -> int:
        return sum(len(row) for row in self.transitions)

    def edges(self) -> Iterable[Tuple[int, Label, int]]:
        for source, row in enumerate(self.transitions):
            for label, target in row:
                yield source, label, target

    def __len__(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class ControlProblem:
    """Environment components plus the controllable / reach (G_C) / avoid (G_S) label sets."""

    components: Tuple[Lts, ...]
    controllable: FrozenSet[Label] = frozenset()
    reach: FrozenSet[Label] = frozenset()
    avoid: FrozenSet[Label] = frozenset()
    participants: Dict[Label, Tuple[int, ...]] = field(default=None, repr=False, compare=False)
    alphabet: FrozenSet[Label] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "controllable", frozenset(self.controllable))
        object.__setattr__(self, "reach", frozenset(self.reach))
        object.__setattr__(self, "avoid", frozenset(self.avoid))
        participants: Dict[Label, List[int]] = {}
        for i, component in enumerate(self.components):
            for label in component.alphabet:
                participants.setdefault(label, []).append(i)
        object.__setattr__(self, "participants", {l: tuple(ps) for l, ps in participants.items()})
        object.__setattr__(self, "alphabet", frozenset(participants))

    def check(self) -> None:
        """Raises ProblemError unless the problem is well formed for synthesis."""
        if not self.components:
            raise ProblemError("problem has no components")
        if not self.reach:
            raise ProblemError("reach set is empty: the heuristic needs a goal to direct the search")
        if self.reach & self.avoid:
            clash = ", ".join(str(l) for l in sorted(self.reach & self.avoid))
            raise ProblemError(f"labels both in reach and avoid: {clash}")
        unknown = self.controllable - self.alphabet
        if unknown:
            raise ProblemError(
                f"controllable labels outside the alphabet: {', '.join(str(l) for l in sorted(unknown))}"
            )

    @property
    def initial(self) -> CompositeState:
        return tuple(c.initial for c in self.components)

    def is_error(self, cs: CompositeState) -> bool:
        """True if some component sits in its ERROR sink: the whole composition is then stuck."""
        return any(c.error_state is not None and s == c.error_state for c, s in zip(self.components, cs))

    def discharges(self, label: Label, target: CompositeState) -> bool:
        return label in self.reach and not self.is_error(target)

    def is_valid(self, cs: CompositeState) -> bool:
        return len(cs) == len(self.components) and all(
            0 <= s < len(c) for c, s in zip(self.components, cs)
        )

    def describe(self, cs: CompositeState) -> str:
        return "(" + ",".join(c.states[s] for c, s in zip(self.components, cs)) + ")"

    def permuted(self, order: Sequence[int]) -> "ControlProblem":
        return ControlProblem(
            components=tuple(self.components[i] for i in order),
            controllable=self.controllable,
            reach=self.reach,
            avoid=self.avoid,
        )

    def with_controllable(self, controllable: Iterable[Label]) -> "ControlProblem":
        return ControlProblem(self.components, frozenset(controllable), self.reach, self.avoid)
