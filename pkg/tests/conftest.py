import pytest

from dcsynth.bench.transfer_line import generate_transfer_line
from dcsynth.fsp import load_problem
from dcsynth.lts.label import Label, label_set
from dcsynth.lts.lts import ControlProblem, Lts


def make_lts(name, states, edges, alphabet=(), error=None):
    """Lts from state names and (source, label, target) triples written as strings."""
    index = {s: i for i, s in enumerate(states)}
    return Lts.from_edges(
        name,
        list(states),
        [(index[s], Label.parse(l), index[t]) for s, l, t in edges],
        alphabet=label_set(alphabet),
        error_state=index.get(error) if error else None,
    )


def make_controller(edges, n_states=None):
    """Controller automaton over numbered states, as a verifier would read it from `.aut`."""
    n = n_states or 1 + max([max(s, t) for s, _, t in edges], default=0)
    return Lts.from_edges("Controller", [str(i) for i in range(n)], [(s, Label.parse(l), t) for s, l, t in edges])


@pytest.fixture
def e_one():
    return make_lts(
        "E_I",
        ["s0", "s1", "s2", "s3"],
        [("s0", "a", "s1"), ("s0", "b", "s2"), ("s1", "b", "s1"), ("s2", "d", "s3")],
    )


@pytest.fixture
def e_two():
    return make_lts(
        "E_II",
        ["t0", "t1", "t2"],
        [("t0", "a", "t1"), ("t0", "c", "t2"), ("t0", "d", "t0"), ("t2", "d", "t1")],
    )


@pytest.fixture
def example(e_one, e_two):
    """E_I || E_II with a, b, c controllable and reach {d}."""
    return ControlProblem(
        components=(e_one, e_two),
        controllable=label_set(["a", "b", "c"]),
        reach=label_set(["d"]),
    )


@pytest.fixture
def uncontrolled_example(example):
    return example.with_controllable(())


@pytest.fixture
def tl211():
    return load_problem(generate_transfer_line(2, 1, 1))
