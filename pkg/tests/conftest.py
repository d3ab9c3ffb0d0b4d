"""Shared fixtures: graphs and closures are expensive at m >= 4, so cache per session."""

import pytest

from oddterw import DEFAULT_PRIMES, OddGraph, closure


@pytest.fixture(scope="session")
def graph_factory():
    cache = {}

    def get(m: int) -> OddGraph:
        if m not in cache:
            cache[m] = OddGraph(m)
        return cache[m]

    return get


@pytest.fixture(scope="session")
def closure_factory(graph_factory):
    cache = {}

    def get(m: int, prime=DEFAULT_PRIMES[0]):
        key = (m, prime)
        if key not in cache:
            cache[key] = closure(graph_factory(m), prime=prime)
        return cache[key]

    return get
