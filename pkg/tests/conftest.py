"""Shared fixtures.

The random suite and the engine/oracle results over it are session-scoped
because several acceptance checks (oracle agreement, stability, splitter
policy equivalence, split-count bounds) all read the same corpus.
"""

import random

import pytest

from bisim import EngineConfig, gen_random, oracle_partition, run

SUITE_SIZE = 500


def _suite_case(i: int):
    rng = random.Random(i)
    n_states = rng.randint(2, 64)
    n_labels = rng.randint(1, 4)
    n_transitions = rng.randint(1, min(n_states * n_states * n_labels, 256))
    return gen_random(n_states, n_labels, n_transitions, seed=9000 + i)


@pytest.fixture(scope="session")
def random_suite():
    return [_suite_case(i) for i in range(SUITE_SIZE)]


@pytest.fixture(scope="session")
def suite_engine_results(random_suite):
    """Default-config engine run (instrumented) per suite case."""
    return [run(lts, EngineConfig(instrument=True)) for lts in random_suite]


@pytest.fixture(scope="session")
def suite_oracle_partitions(random_suite):
    return [oracle_partition(lts) for lts in random_suite]


@pytest.fixture(scope="session")
def large_instance():
    """The scaled throughput instance: 10^5 states, 5*10^5 transitions."""
    return gen_random(100_000, 8, 500_000, seed=42)
