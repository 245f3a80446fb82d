"""Shared fixtures: two small hand-checked instances and a seeded corpus.

The corpus is solved once per session (all three solvers) and reused by
the module tests and the acceptance gate, so the expensive sweeps run
exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

import pytest

from transship import (Arc, FlowNetwork, ProfileCache, SolveResult,
                       SupplyVector, solve_newton_jumps, solve_newton_simple,
                       theta_star_bruteforce)
from transship.bench import corpus_instance

CORPUS_SIZE = 500


def single_arc_network() -> FlowNetwork:
    # one source, one sink, one arc: capacity 1, transit 2
    return FlowNetwork(node_count=2,
                       arcs=(Arc(0, 1, F(1), F(2)),),
                       sources=(0,), sinks=(1,))


def single_arc_supply(net: FlowNetwork, amount=3) -> SupplyVector:
    return SupplyVector.for_network(net, {0: F(amount), 1: -F(amount)})


def instance_b_network() -> FlowNetwork:
    # two sources feeding one sink: a fast fat arc and a slow thin one
    return FlowNetwork(node_count=3,
                       arcs=(Arc(0, 2, F(2), F(0)),
                             Arc(1, 2, F(1), F(1))),
                       sources=(0, 1), sinks=(2,))


def instance_b_supply(net: FlowNetwork, b0=5, b1=1) -> SupplyVector:
    return SupplyVector.for_network(net, {0: F(b0), 1: F(b1),
                                          2: -F(b0) - F(b1)})


@pytest.fixture
def single_arc():
    net = single_arc_network()
    return net, single_arc_supply(net)


@pytest.fixture
def instance_b():
    net = instance_b_network()
    return net, instance_b_supply(net)


@dataclass(frozen=True)
class CorpusSolve:
    seed: int
    network: FlowNetwork
    b: SupplyVector
    cache: ProfileCache
    simple: SolveResult
    jumps: SolveResult
    bruteforce: F


def solve_corpus_seed(seed: int) -> CorpusSolve:
    network, b = corpus_instance(seed)
    cache = ProfileCache(network)
    return CorpusSolve(
        seed=seed, network=network, b=b, cache=cache,
        simple=solve_newton_simple(network, b, cache=cache),
        jumps=solve_newton_jumps(network, b, cache=cache),
        bruteforce=theta_star_bruteforce(network, b, cache=cache))


@pytest.fixture(scope="session")
def corpus() -> list[CorpusSolve]:
    import time
    started = time.perf_counter()
    entries = [solve_corpus_seed(seed) for seed in range(CORPUS_SIZE)]
    entries_elapsed[0] = time.perf_counter() - started
    return entries


# wall time spent building the corpus, for the acceptance budget check
entries_elapsed = [0.0]
