from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Sequence, Set, Tuple

import bittensor as bt

from dcsynth.lts.compose import enabled
from dcsynth.lts.label import Label
from dcsynth.lts.lts import CompositeState, ControlProblem


class Ref(NamedTuple):
    """A state of one component. Vertices of the path graph live in the union of the components."""

    component: int
    state: int


class Edge(NamedTuple):
    source: Ref
    label: Label
    target: Ref


@dataclass(frozen=True)
class AbstractionResult:
    """The ⟨errors, goals, edges, generations⟩ quadruple plus the set-level trace that produced it.

    `blocked` are the edges whose step fires an avoid label or drives a participant into ERROR;
    they belong to `edges` but never carry a finite distance. `frontiers[k]` is the k-th set of
    the monotone sequence and `steps[k]` the labels available from it.
    """

    root: CompositeState
    errors: FrozenSet[Ref]
    goals: FrozenSet[Edge]
    edges: FrozenSet[Edge]
    blocked: FrozenSet[Edge]
    generations: Dict[Ref, int]
    frontiers: Tuple[FrozenSet[Ref], ...]
    steps: Tuple[FrozenSet[Label], ...]

    @property
    def growth_steps(self) -> int:
        return len(self.frontiers) - 1

    def roots(self) -> List[Ref]:
        return [Ref(i, s) for i, s in enumerate(self.root)]


def _is_error(problem: ControlProblem, ref: Ref) -> bool:
    error_state = problem.components[ref.component].error_state
    return error_state is not None and ref.state == error_state


def relaxed_steps(
    problem: ControlProblem, frontier: Sequence[Set[int]]
) -> Iterator[Tuple[Label, List[Edge], bool]]:
    """Steps available from a frontier under the pairwise relaxed synchronization rule.

    A private label fires from any enabling state of its component. A shared label fires from
    every pair of enabling states of two distinct participants; each pair yields the two
    intra-component edges and the two inter-component ones. Yields (label, edges, blocked).
    """
    enabling: Dict[Label, Dict[int, List[Tuple[int, int]]]] = {}
    for i, states in enumerate(frontier):
        transitions = problem.components[i].transitions
        for s in sorted(states):
            for label, t in transitions[s]:
                enabling.setdefault(label, {}).setdefault(i, []).append((s, t))

    for label in sorted(enabling):
        by_component = enabling[label]
        avoided = label in problem.avoid
        if len(problem.participants[label]) == 1:
            (i, moves), = by_component.items()
            for s, t in moves:
                target = Ref(i, t)
                yield label, [Edge(Ref(i, s), label, target)], avoided or _is_error(problem, target)
            continue
        for a, b in combinations(sorted(by_component), 2):
            for s, s2 in by_component[a]:
                for t, t2 in by_component[b]:
                    src_a, dst_a, src_b, dst_b = Ref(a, s), Ref(a, s2), Ref(b, t), Ref(b, t2)
                    blocked = avoided or _is_error(problem, dst_a) or _is_error(problem, dst_b)
                    yield label, [
                        Edge(src_a, label, dst_a),
                        Edge(src_a, label, dst_b),
                        Edge(src_b, label, dst_b),
                        Edge(src_b, label, dst_a),
                    ], blocked


def build_abstraction(problem: ControlProblem, cs: CompositeState) -> AbstractionResult:
    """Grow the abstracting composition from the component states of `cs`.

    Each round collects the relaxed steps that are ready from the current frontier and were
    not processed yet, records their edges, and lets fresh non-blocked targets join the next
    frontier with the round number as generation. Stops when nothing new is ready.
    """
    roots = [Ref(i, s) for i, s in enumerate(cs)]
    frontier: Set[Ref] = set(roots)
    by_component: List[Set[int]] = [{s} for s in cs]
    generations: Dict[Ref, int] = {ref: 0 for ref in roots}
    errors: Set[Ref] = set(roots)
    goals: Set[Edge] = set()
    # edge -> blocked; an edge seen blocked first is processed again once a clean step yields it.
    edges: Dict[Edge, bool] = {}
    frontiers = [frozenset(frontier)]
    steps: List[FrozenSet[Label]] = []

    g = 1
    while True:
        ready: Dict[Edge, bool] = {}
        available: Set[Label] = set()
        for label, step_edges, blocked in relaxed_steps(problem, by_component):
            available.add(label)
            for edge in step_edges:
                if edge in edges and (blocked or not edges[edge]):
                    continue
                ready[edge] = ready.get(edge, True) and blocked
        if len(steps) < len(frontiers):
            steps.append(frozenset(available))
        if not ready:
            break

        fresh: List[Ref] = []
        for edge in sorted(ready):
            blocked = ready[edge]
            edges[edge] = blocked
            errors.discard(edge.source)
            target = edge.target
            if blocked:
                generations.setdefault(target, g)
                continue
            if edge.label in problem.reach:
                goals.add(edge)
            if target not in frontier:
                frontier.add(target)
                generations[target] = g
                if edge.label not in problem.reach:
                    errors.add(target)
                fresh.append(target)
        for ref in fresh:
            by_component[ref.component].add(ref.state)
        if fresh:
            frontiers.append(frozenset(frontier))
        g += 1

    bt.logging.trace(f"abstraction at {cs}: {len(edges)} edges, {len(frontiers)} frontier sets")
    return AbstractionResult(
        root=tuple(cs),
        errors=frozenset(errors),
        goals=frozenset(goals),
        edges=frozenset(edges),
        blocked=frozenset(e for e, b in edges.items() if b),
        generations=generations,
        frontiers=tuple(frontiers),
        steps=tuple(steps),
    )


def is_abstracting_path(
    problem: ControlProblem, result: AbstractionResult, trace: Sequence[Label]
) -> bool:
    """Replay a product trace from the abstraction root on the path graph.

    Every component move must be an edge of the graph and, up to the first blocked step, land
    on a state whose generation does not exceed the number of steps taken: the gap is what the
    τ-delays absorb.
    """
    cs = result.root
    for i, label in enumerate(trace):
        successor = dict(enabled(problem, cs)).get(label)
        if successor is None:
            return False
        blocked = label in problem.avoid or problem.is_error(successor)
        for j in problem.participants[label]:
            edge = Edge(Ref(j, cs[j]), label, Ref(j, successor[j]))
            if edge not in result.edges:
                return False
            if not blocked and result.generations.get(edge.target, i + 2) > i + 1:
                return False
        if blocked:
            return i == len(trace) - 1
        cs = successor
    return True
