"""Shared corpora.

`small_graphs` is the exhaustive set of valid star graphs on one or two
vertices (every perfect matching of the slot stubs for degree profiles 4, 6,
4+4, 4+6, 6+4 and 6+6 that validates, connectivity included), and
`small_source_sink` its source-sink subset. `random_corpus` adds 200 seeded
source-sink graphs with up to 10 mixed-degree vertices.
"""

from __future__ import annotations

import random

import pytest

from stargenus.core_graph import StarGraph, is_source_sink, validate
from stargenus.fixtures import random_star_graph

SMALL_DEGREE_PROFILES = [{0: 4}, {0: 6}, {0: 4, 1: 4}, {0: 4, 1: 6},
                         {0: 6, 1: 4}, {0: 6, 1: 6}]


def iter_matchings(stubs):
    if not stubs:
        yield []
        return
    first = stubs[0]
    for i in range(1, len(stubs)):
        rest = stubs[1:i] + stubs[i + 1:]
        for tail in iter_matchings(rest):
            yield [(first, stubs[i])] + tail


def build_small_graphs() -> list[StarGraph]:
    out = []
    for degrees in SMALL_DEGREE_PROFILES:
        stubs = [(v, s) for v in degrees for s in range(degrees[v])]
        for pairs in iter_matchings(stubs):
            g = StarGraph.build(degrees, pairs)
            if not validate(g):
                out.append(g)
    return out


def build_random_corpus(count: int = 200) -> list[StarGraph]:
    out = []
    seed = 0
    while len(out) < count:
        seed += 1
        rng = random.Random(seed)
        n4 = rng.randint(0, 6)
        n6 = rng.randint(0, 4)
        if not 1 <= n4 + n6 <= 10:
            continue
        try:
            g = random_star_graph(seed, n4, n6)
        except ValueError:
            continue
        if is_source_sink(g):
            out.append(g)
    return out


@pytest.fixture(scope="session")
def small_graphs():
    return build_small_graphs()


@pytest.fixture(scope="session")
def small_source_sink(small_graphs):
    return [g for g in small_graphs if is_source_sink(g)]


@pytest.fixture(scope="session")
def random_corpus():
    return build_random_corpus()
