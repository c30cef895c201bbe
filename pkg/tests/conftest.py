"""
Shared fixtures for the PTA-MPC test suite
"""

import os
import random
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import pytest

from ptampc.core.config import get_settings
from ptampc.schemas.automaton import Automaton, Edge, EdgeKind, LayoutPartition, State
from ptampc.schemas.controller import WorkingLayout
from ptampc.schemas.scenario import Scenario
from ptampc.services.controller_service import ControllerService
from ptampc.services.fixture_service import FixtureService
from ptampc.services.layout_service import LayoutService

LINE1 = ("q1", "q14", "q15", "q16", "q17", "q18", "q19", "q8")
LINE2 = ("q1", "q9", "q10", "q11", "q12", "q13", "q8")
LINE3 = ("q1", "q2", "q3", "q4", "q5", "q6", "q7", "q8")


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch):
    """Drop PTAMPC_ variables and the settings cache around every test"""
    for key in list(os.environ):
        if key.startswith("PTAMPC_"):
            monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def build_automaton(
    original: Iterable[Tuple[str, str]],
    redundant: Iterable[Tuple[str, str]] = (),
    desired: Sequence[str] = (),
    initial: Optional[str] = None,
    costs: Optional[dict] = None,
    name: str = "synthetic",
) -> Automaton:
    """Automaton with unit state costs unless overridden, zero edge costs"""
    original = list(original)
    redundant = list(redundant)
    ids: List[str] = []
    for src, dst in original + redundant:
        for state in (src, dst):
            if state not in ids:
                ids.append(state)
    for state in desired:
        if state not in ids:
            ids.append(state)
    costs = costs or {}
    return Automaton(
        name=name,
        states=tuple(State(id=state, cost=costs.get(state, 1)) for state in ids),
        edges=tuple(
            [Edge(src=src, dst=dst) for src, dst in original]
            + [Edge(src=src, dst=dst, kind=EdgeKind.REDUNDANT) for src, dst in redundant]
        ),
        desired_sequence=tuple(desired),
        initial=initial or ids[0],
    )


@pytest.fixture
def automaton_factory() -> Callable[..., Automaton]:
    return build_automaton


@pytest.fixture
def paintshop() -> Automaton:
    return FixtureService.load_fixture("paintshop")


@pytest.fixture
def partition(paintshop) -> LayoutPartition:
    return LayoutService.partition(paintshop)


@pytest.fixture
def clean_layout(paintshop) -> WorkingLayout:
    return ControllerService.initial_layout(paintshop)


@pytest.fixture
def scenario1() -> Scenario:
    return FixtureService.load_scenario("scenario1")


@pytest.fixture
def scenario2() -> Scenario:
    return FixtureService.load_scenario("scenario2")


@pytest.fixture
def clean_scenario() -> Scenario:
    return FixtureService.load_scenario("clean")


@pytest.fixture
def all_branch() -> Automaton:
    """Every state of a-b-c-t is a branch state with two active conveyors"""
    return build_automaton(
        original=[
            ("a", "b"), ("b", "c"), ("c", "t"),
            ("a", "u"), ("u", "v"), ("v", "w"), ("w", "t"),
            ("t", "x1"), ("t", "x2"),
        ],
        redundant=[("b", "r1"), ("r1", "v"), ("c", "r2"), ("r2", "w")],
        desired=["t"],
        initial="a",
    )


def random_automaton(
    rng: random.Random,
    max_states: int = 12,
    edge_probability: float = 0.2,
    max_chains: int = 0,
    failure_probability: float = 0.0,
) -> Automaton:
    """
    Random automaton on s0..s(n-1) with a random desired sequence

    With max_chains, up to that many one-conveyor redundant chains r0, r1, ...
    join original states that have an original edge. With failure_probability,
    states other than s0 start flagged failed.
    """
    n = rng.randint(3, max_states)
    ids = [f"s{i}" for i in range(n)]
    edges = [
        (src, dst) for src in ids for dst in ids
        if src != dst and rng.random() < edge_probability
    ]
    target = rng.choice(ids[1:])
    desired = [target]
    if rng.random() < 0.5:
        middle = rng.choice(ids[1:])
        if middle != target:
            desired = [middle, target]

    chains: List[Tuple[str, str]] = []
    conveyors: List[str] = []
    anchored = sorted({state for edge in edges for state in edge})
    if max_chains and len(anchored) >= 2:
        for index in range(rng.randint(1, max_chains)):
            src, dst = rng.sample(anchored, 2)
            conveyor = f"r{index}"
            conveyors.append(conveyor)
            chains += [(src, conveyor), (conveyor, dst)]
    failed = set()
    if failure_probability:
        failed = {state for state in ids[1:] + conveyors if rng.random() < failure_probability}

    return Automaton(
        name="random",
        states=tuple(
            State(id=state, cost=rng.randint(1, 5), failed=state in failed)
            for state in ids + conveyors
        ),
        edges=tuple(
            [Edge(src=src, dst=dst, cost=rng.randint(0, 2)) for src, dst in edges]
            + [Edge(src=src, dst=dst, kind=EdgeKind.REDUNDANT, cost=rng.randint(0, 2)) for src, dst in chains]
        ),
        desired_sequence=tuple(desired),
        initial="s0",
    )


@pytest.fixture
def random_automata() -> List[Automaton]:
    rng = random.Random(20240611)
    return [random_automaton(rng) for _ in range(200)]


@pytest.fixture
def random_layouts() -> List[Automaton]:
    """Random automata with redundant chains, a third of them with initial failures"""
    rng = random.Random(3)
    return [
        random_automaton(rng, max_chains=3, failure_probability=0.15 if index % 3 == 0 else 0.0)
        for index in range(150)
    ]
