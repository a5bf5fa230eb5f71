import heapq
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Tuple, Union

import bittensor as bt

from dcsynth.abstraction.build import AbstractionResult, Edge, Ref, build_abstraction
from dcsynth.lts.compose import enabled
from dcsynth.lts.label import Label
from dcsynth.lts.lts import CompositeState, ControlProblem

INF = math.inf
Distance = Union[int, float]


def edge_weight(edge: Edge, generations: Dict[Ref, int]) -> int:
    """One unit for the step itself plus one per skipped generation (the τ-delays)."""
    return max(1, generations[edge.target] - generations[edge.source])


def backpropagate(
    result: AbstractionResult, reach: FrozenSet[Label], avoid: FrozenSet[Label]
) -> Dict[Ref, Distance]:
    """Shortest distance from every vertex of the path graph to a reach-labelled edge.

    Dijkstra from a virtual goal over reversed edges. Blocked and avoid-labelled edges are
    dropped; vertices left in `errors` or with no finite path get ∞.
    """
    dist: Dict[Ref, Distance] = {v: INF for v in result.generations}
    incoming: Dict[Ref, List[Tuple[Ref, int]]] = {}
    heap: List[Tuple[int, Ref]] = []
    for edge in sorted(result.edges):
        if edge in result.blocked or edge.label in avoid:
            continue
        w = edge_weight(edge, result.generations)
        if edge.label in reach:
            heap.append((w, edge.source))
        else:
            incoming.setdefault(edge.target, []).append((edge.source, w))
    heapq.heapify(heap)

    while heap:
        d, v = heapq.heappop(heap)
        if d >= dist[v]:
            continue
        dist[v] = d
        for u, w in incoming.get(v, ()):
            if d + w < dist[u]:
                heapq.heappush(heap, (d + w, u))

    for v in result.errors:
        dist[v] = INF
    return dist


class ActionRanking(NamedTuple):
    """(label, estimate) pairs, ascending by estimate then label."""

    entries: Tuple[Tuple[Label, Distance], ...]

    def __iter__(self) -> Iterator[Tuple[Label, Distance]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def labels(self) -> List[Label]:
        return [label for label, _ in self.entries]

    def estimate(self, label: Label) -> Optional[Distance]:
        for candidate, value in self.entries:
            if candidate == label:
                return value
        return None


@dataclass(frozen=True)
class _Evaluation:
    bound: Distance
    graph: Dict[Label, Distance]


class Heuristic:
    """Ranks enabled actions with the abstracting path graph, caching one evaluation per composite state.

    The estimate of an action is the lower of two admissible values: the best weighted path
    that leaves a root vertex on that label, and one step plus the bound of the abstraction
    rooted at the action's real successor. An infinite successor bound is final.
    """

    def __init__(self, problem: ControlProblem):
        self.problem = problem
        self.abstractions_built = 0
        self._cache: Dict[CompositeState, _Evaluation] = {}

    def _evaluate(self, cs: CompositeState) -> _Evaluation:
        cached = self._cache.get(cs)
        if cached is not None:
            return cached
        result = build_abstraction(self.problem, cs)
        self.abstractions_built += 1
        dist = backpropagate(result, self.problem.reach, self.problem.avoid)
        bound = INF if self.problem.is_error(cs) else min(dist[ref] for ref in result.roots())

        graph: Dict[Label, Distance] = {}
        for edge in result.edges:
            if result.generations[edge.source] != 0:
                continue
            if edge in result.blocked or edge.label in self.problem.avoid:
                value: Distance = INF
            else:
                w = edge_weight(edge, result.generations)
                value = w if edge.label in self.problem.reach else w + dist[edge.target]
            graph[edge.label] = min(value, graph.get(edge.label, INF))

        evaluation = _Evaluation(bound=bound, graph=graph)
        self._cache[cs] = evaluation
        return evaluation

    def bound(self, cs: CompositeState) -> Distance:
        """Lower bound on the distance from `cs` to a discharge; ∞ means none is reachable."""
        if self.problem.is_error(cs):
            return INF
        return self._evaluate(cs).bound

    def estimate(self, cs: CompositeState, label: Label, successor: CompositeState) -> Distance:
        graph_value = self._evaluate(cs).graph.get(label, INF)
        if self.problem.discharges(label, successor):
            lookahead: Distance = 1
        elif label in self.problem.avoid:
            lookahead = INF
        else:
            lookahead = 1 + self.bound(successor)
        # No discharge is reachable from the successor: the graph value cannot undercut that.
        if lookahead == INF:
            return INF
        return min(graph_value, lookahead)

    def rank(self, cs: CompositeState) -> ActionRanking:
        entries = [(label, self.estimate(cs, label, successor)) for label, successor in enabled(self.problem, cs)]
        entries.sort(key=lambda entry: (entry[1], entry[0]))
        bt.logging.trace(f"ranked {self.problem.describe(cs)}: {[(str(l), e) for l, e in entries]}")
        return ActionRanking(tuple(entries))


def rank_actions(problem: ControlProblem, cs: CompositeState) -> ActionRanking:
    return Heuristic(problem).rank(cs)
