"""Seeded random control problems for the property suites.

At most 4 components of 2 to 6 states and 2 to 5 labels each. Alphabets come from a shared
pool of at most 8 labels so that components synchronise; edges are dense enough that most
products grow past a handful of states. Some components end in an ERROR sink.
"""

import random
from typing import Iterator, List

from dcsynth.lts.label import Label
from dcsynth.lts.lts import ControlProblem, Lts

POOL = tuple(Label(name) for name in "abcdefgh")
SUITE_SIZE = 500
EDGE_PROBABILITY = 0.7


def random_lts(rng: random.Random, name: str, labels: List[Label]) -> Lts:
    n = rng.randint(2, 6)
    with_error = rng.random() < 0.25
    alphabet = rng.sample(labels, rng.randint(2, min(5, len(labels))))
    live = n - 1 if with_error else n
    edges = []
    for state in range(live):
        for label in alphabet:
            if rng.random() < EDGE_PROBABILITY:
                edges.append((state, label, rng.randrange(n)))
    states = [f"{name.lower()}{i}" for i in range(live)] + (["ERROR"] if with_error else [])
    return Lts.from_edges(
        name, states, edges, alphabet=alphabet, error_state=n - 1 if with_error else None
    )


def random_problem(seed: int) -> ControlProblem:
    rng = random.Random(seed)
    labels = list(POOL[: rng.randint(2, len(POOL))])
    components = tuple(random_lts(rng, f"P{i}", labels) for i in range(rng.randint(1, 4)))
    alphabet = sorted(set().union(*(c.alphabet for c in components)))

    reach = {rng.choice(alphabet)}
    if len(alphabet) > 2 and rng.random() < 0.3:
        reach.add(rng.choice(alphabet))
    avoid = {l for l in alphabet if l not in reach and rng.random() < 0.15}
    controllable = {l for l in alphabet if rng.random() < 0.5}
    return ControlProblem(components, frozenset(controllable), frozenset(reach), frozenset(avoid))


def problem_suite(size: int = SUITE_SIZE, start: int = 0) -> Iterator[ControlProblem]:
    for seed in range(start, start + size):
        yield random_problem(seed)
