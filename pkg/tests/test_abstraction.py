import math

import pytest

from conftest import make_lts
from dcsynth.abstraction import (
    INF,
    Edge,
    Heuristic,
    Ref,
    abstraction_to_dot,
    backpropagate,
    build_abstraction,
    edge_weight,
    rank_actions,
)
from dcsynth.lts import ControlProblem, Label, enabled
from dcsynth.lts.label import label_set

S = {name: Ref(0, i) for i, name in enumerate(["s0", "s1", "s2", "s3"])}
T = {name: Ref(1, i) for i, name in enumerate(["t0", "t1", "t2"])}


def L(text):
    return Label.parse(text)


@pytest.fixture
def composed(example):
    return build_abstraction(example, example.initial)


class TestBuildAbstraction:
    def test_single_component_set_sequence(self, e_one):
        problem = ControlProblem((e_one,), reach=label_set(["d"]))
        result = build_abstraction(problem, (0,))
        assert result.frontiers == (
            frozenset({Ref(0, 0)}),
            frozenset({Ref(0, 0), Ref(0, 1), Ref(0, 2)}),
            frozenset({Ref(0, 0), Ref(0, 1), Ref(0, 2), Ref(0, 3)}),
        )
        assert result.steps[:2] == (label_set(["a", "b"]), label_set(["a", "b", "d"]))
        # The last set only repeats itself.
        assert result.steps[-1] == label_set(["a", "b", "d"])

    def test_composition_label_sets(self, composed):
        assert composed.steps[0] == label_set(["a", "b", "c"])
        assert composed.steps[1] == label_set(["a", "b", "c", "d"])

    def test_generations(self, composed):
        assert composed.generations == {
            S["s0"]: 0,
            T["t0"]: 0,
            S["s1"]: 1,
            S["s2"]: 1,
            T["t1"]: 1,
            T["t2"]: 1,
            S["s3"]: 2,
        }

    def test_inter_component_edges(self, composed):
        assert Edge(T["t0"], L("a"), S["s1"]) in composed.edges
        assert Edge(S["s0"], L("a"), T["t1"]) in composed.edges
        assert Edge(T["t0"], L("d"), S["s3"]) in composed.edges

    def test_goals_and_errors(self, composed):
        assert all(edge.label == L("d") for edge in composed.goals)
        assert Edge(S["s2"], L("d"), S["s3"]) in composed.goals
        sources = {edge.source for edge in composed.edges}
        assert not composed.errors & sources
        assert T["t1"] in composed.errors

    def test_endpoints_have_generations(self, composed):
        for edge in composed.edges:
            assert edge.source in composed.generations
            assert edge.target in composed.generations

    def test_frontiers_grow_monotonically(self, composed):
        for before, after in zip(composed.frontiers, composed.frontiers[1:]):
            assert before < after

    def test_growth_bound(self, composed, example):
        assert composed.growth_steps <= sum(len(c) for c in example.components)

    def test_avoid_stops_growth(self, e_one, e_two):
        problem = ControlProblem((e_one, e_two), reach=label_set(["d"]), avoid=label_set(["b"]))
        result = build_abstraction(problem, problem.initial)
        assert S["s2"] not in result.frontiers[-1]
        assert Edge(S["s0"], L("b"), S["s2"]) in result.blocked

    def test_error_target_is_blocked(self):
        p = make_lts("P", ["p0", "p1", "E"], [("p0", "x", "E"), ("p0", "y", "p1"), ("p1", "g", "p0")], error="E")
        problem = ControlProblem((p,), reach=label_set(["g"]))
        result = build_abstraction(problem, (0,))
        assert Edge(Ref(0, 0), L("x"), Ref(0, 2)) in result.blocked
        assert Ref(0, 2) not in result.frontiers[-1]


class TestWeights:
    def test_tau_delay(self, composed):
        assert edge_weight(Edge(T["t0"], L("d"), S["s3"]), composed.generations) == 2

    def test_one_generation(self, composed):
        assert edge_weight(Edge(S["s2"], L("d"), S["s3"]), composed.generations) == 1

    def test_self_loop(self, composed):
        assert edge_weight(Edge(T["t0"], L("d"), T["t0"]), composed.generations) == 1


class TestBackpropagate:
    def test_example_distances(self, composed, example):
        dist = backpropagate(composed, example.reach, example.avoid)
        assert dist[S["s2"]] == 1
        assert dist[T["t2"]] == 1
        assert dist[S["s0"]] == 2
        assert dist[T["t0"]] == 1
        assert dist[S["s1"]] == INF
        assert dist[T["t1"]] == INF

    def test_single_goal_edge(self):
        p = make_lts("P", ["p0"], [("p0", "g", "p0")])
        problem = ControlProblem((p,), reach=label_set(["g"]))
        dist = backpropagate(build_abstraction(problem, (0,)), problem.reach, problem.avoid)
        assert dist[Ref(0, 0)] == 1

    def test_everything_avoided(self, e_one):
        problem = ControlProblem((e_one,), reach=label_set(["d"]), avoid=label_set(["a", "b"]))
        dist = backpropagate(build_abstraction(problem, (0,)), problem.reach, problem.avoid)
        assert all(math.isinf(d) for d in dist.values())


class TestRanking:
    def test_example_ranking(self, example):
        ranking = rank_actions(example, example.initial)
        assert list(ranking) == [(L("b"), 2), (L("c"), 2), (L("a"), INF)]

    def test_ranking_covers_enabled_labels(self, example):
        ranking = rank_actions(example, (2, 0))
        assert sorted(ranking.labels()) == sorted(l for l, _ in enabled(example, (2, 0)))

    def test_immediate_discharge(self, example):
        assert rank_actions(example, (2, 0)).estimate(L("d")) == 1

    def test_transfer_line_prefers_first_machine(self, tl211):
        ranking = list(rank_actions(tl211, tl211.initial))
        (best, estimate), rest = ranking[0], ranking[1:]
        assert best == Label("get", (0,))
        assert estimate < INF
        assert all(e > estimate for _, e in rest)

    def test_dead_end_successor_is_infinite(self, tl211):
        # get.1 and get.2 underflow an empty buffer, the graph alone would still find a path.
        ranking = rank_actions(tl211, tl211.initial)
        assert ranking.estimate(Label("get", (1,))) == INF
        assert ranking.estimate(Label("get", (2,))) == INF

    def test_unreachable_goal_overrides_graph_value(self):
        # x drops P into a sink where g is never offered again.
        p = make_lts("P", ["p0", "p1", "sink"], [("p0", "x", "sink"), ("p0", "y", "p1"), ("p1", "g", "p0")])
        problem = ControlProblem((p,), controllable=label_set(["x", "y"]), reach=label_set(["g"]))
        heuristic = Heuristic(problem)
        assert heuristic.bound((2,)) == INF
        assert heuristic.estimate((0,), L("x"), (2,)) == INF
        assert heuristic.estimate((0,), L("y"), (1,)) == 2

    def test_heuristic_caches_per_state(self, example):
        heuristic = Heuristic(example)
        heuristic.rank(example.initial)
        built = heuristic.abstractions_built
        heuristic.rank(example.initial)
        assert heuristic.abstractions_built == built

    def test_error_state_bound(self):
        p = make_lts("P", ["p0", "E"], [("p0", "x", "E")], error="E")
        q = make_lts("Q", ["q0"], [("q0", "g", "q0")])
        problem = ControlProblem((p, q), reach=label_set(["g"]))
        assert Heuristic(problem).bound((1, 0)) == INF


def test_abstraction_dot(composed, example):
    dist = backpropagate(composed, example.reach, example.avoid)
    dot = abstraction_to_dot(example, composed, dist)
    assert dot.startswith('digraph "abstraction (s0,t0)"')
    assert "E_I:s3" in dot
    assert "D=inf" in dot
