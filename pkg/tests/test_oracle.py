import pytest

from conftest import make_controller, make_lts
from dcsynth.base.engine import Verdict
from dcsynth.base.errors import AlphabetMismatchError, CapExceededError
from dcsynth.lts import ControlProblem, Label
from dcsynth.lts.label import label_set
from dcsynth.oracle import (
    MonolithicEngine,
    solve_monolithic,
    step_rule,
    strategy_controller,
    verify_controller,
)


def L(text):
    return Label.parse(text)


class TestSolveMonolithic:
    def test_example_is_winning(self, example):
        solution = solve_monolithic(example)
        assert solution.initial_winning
        assert solution.verdict == Verdict.CONTROLLER
        assert solution.witness[0] in (L("b"), L("c"))

    def test_uncontrollable_trap(self, uncontrolled_example):
        solution = solve_monolithic(uncontrolled_example)
        assert not solution.initial_winning
        trap = solution.product.index[(1, 1)]
        assert trap not in solution.winning

    def test_immediate_discharge(self):
        p = make_lts("P", ["p0"], [("p0", "g", "p0")])
        solution = solve_monolithic(ControlProblem((p,), controllable=label_set(["g"]), reach=label_set(["g"])))
        assert solution.winning == frozenset({0})
        assert solution.witness == {0: L("g")}

    def test_deadlock_loses(self, example):
        solution = solve_monolithic(example)
        assert solution.product.index[(3, 1)] not in solution.winning

    def test_fixpoint_is_idempotent(self, example, tl211):
        for problem in (example, tl211):
            solution = solve_monolithic(problem)
            assert step_rule(problem, solution.product, solution.winning) == solution.winning

    def test_more_control_never_shrinks_winning(self, uncontrolled_example, example):
        weak = solve_monolithic(uncontrolled_example)
        strong = solve_monolithic(example)
        weak_states = {weak.product.states[s] for s in weak.winning}
        strong_states = {strong.product.states[s] for s in strong.winning}
        assert weak_states <= strong_states

    def test_cap(self, tl211):
        with pytest.raises(CapExceededError):
            solve_monolithic(tl211, max_states=5)


class TestStrategyController:
    def test_example(self, example):
        controller = strategy_controller(example, solve_monolithic(example))
        assert verify_controller(example, controller).accepted

    def test_transfer_line(self, tl211):
        controller = strategy_controller(tl211, solve_monolithic(tl211))
        assert verify_controller(tl211, controller).accepted

    def test_losing_initial_state(self, uncontrolled_example):
        with pytest.raises(ValueError):
            strategy_controller(uncontrolled_example, solve_monolithic(uncontrolled_example))


class TestVerify:
    def test_sequential_chain_accepted(self, example):
        controller = make_controller([(0, "c", 1), (1, "b", 2), (2, "d", 3)])
        report = verify_controller(example, controller)
        assert report.accepted
        assert report.violations == []

    def test_chain_blocking_uncontrollable_d(self, example):
        # At (s2, t0) the environment offers d, which this chain only allows later.
        controller = make_controller([(0, "b", 1), (1, "c", 2), (2, "d", 3)])
        report = verify_controller(example, controller)
        assert not report.accepted
        assert "blocks-uncontrollable" in report.reasons()
        (violation,) = [v for v in report.violations if v.reason == "blocks-uncontrollable"]
        assert violation.trace == (L("b"),)

    def test_goal_removed(self, example):
        problem = example.with_controllable(label_set(["a", "b", "c", "d"]))
        controller = make_controller([(0, "c", 1), (1, "b", 2)])
        report = verify_controller(problem, controller)
        assert report.reasons() == ["no-discharge"]
        assert report.violations[0].trace == (L("c"), L("b"))

    def test_cycle_before_discharge(self):
        p = make_lts("P", ["p0", "p1"], [("p0", "x", "p1"), ("p1", "y", "p0"), ("p1", "g", "p1")])
        problem = ControlProblem((p,), controllable=label_set(["x", "y", "g"]), reach=label_set(["g"]))
        controller = make_controller([(0, "x", 1), (1, "y", 0)])
        report = verify_controller(problem, controller)
        assert report.reasons() == ["no-discharge"]
        assert report.violations[0].trace == (L("x"), L("y"))

    def test_avoid_label(self):
        p = make_lts("P", ["p0", "p1"], [("p0", "bad", "p1"), ("p1", "g", "p1")])
        problem = ControlProblem(
            (p,), controllable=label_set(["bad", "g"]), reach=label_set(["g"]), avoid=label_set(["bad"])
        )
        controller = make_controller([(0, "bad", 1), (1, "g", 1)])
        report = verify_controller(problem, controller)
        assert "avoid" in report.reasons()
        (violation,) = [v for v in report.violations if v.reason == "avoid"]
        assert violation.trace == (L("bad"),)

    def test_alphabet_mismatch(self, example):
        controller = make_controller([(0, "z", 1)])
        with pytest.raises(AlphabetMismatchError):
            verify_controller(example, controller)

    def test_violation_text(self, example):
        controller = make_controller([(0, "b", 1), (1, "c", 2), (2, "d", 3)])
        text = str(verify_controller(example, controller).violations[0])
        assert text.startswith("blocks-uncontrollable: controller refuses d")


class TestMonolithicEngine:
    def test_solve(self, example):
        run = MonolithicEngine().solve(example)
        assert run.verdict == Verdict.CONTROLLER
        assert run.extra["winning"] > 0
        assert run.controller is not None

    def test_no_controller(self, uncontrolled_example):
        run = MonolithicEngine().solve(uncontrolled_example)
        assert run.verdict == Verdict.NONE
        assert run.controller is None

    def test_state_cap_is_out_of_memory(self, tl211):
        engine = MonolithicEngine(config=MonolithicEngine.config(["--compose.max_states", "4"]))
        with pytest.raises(CapExceededError) as info:
            engine.solve(tl211)
        assert info.value.stats["verdict"] == "out-of-memory"
