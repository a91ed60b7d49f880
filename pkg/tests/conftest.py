"""Shared instance generators for the test suite."""

from __future__ import annotations

import random

import pytest

from parapac import (
    Assignment,
    Graph,
    GraphSample,
    GraphSampleSet,
    LabeledSample,
    SampleSet,
)


def rand_sample_set(rng: random.Random, n: int, t: int) -> SampleSet:
    """Random labeled samples with distinct assignments."""
    t = min(t, 2**n)
    masks = rng.sample(range(2**n), t)
    return SampleSet(
        [LabeledSample(Assignment(n, m), rng.randint(0, 1)) for m in masks], n=n
    )


def rand_graph(rng: random.Random, order: int, p: float = 0.4) -> Graph:
    edges = frozenset(
        (u, v)
        for u in range(1, order + 1)
        for v in range(u + 1, order + 1)
        if rng.random() < p
    )
    return Graph(order, edges)


def rand_graph_sample_set(
    rng: random.Random, order: int, t: int, p: float = 0.4
) -> GraphSampleSet:
    t = min(t, 2 ** (order * (order - 1) // 2))
    seen = set()
    samples = []
    while len(samples) < t:
        g = rand_graph(rng, order, p)
        if g.edges in seen:
            continue
        seen.add(g.edges)
        samples.append(GraphSample(g, rng.randint(0, 1)))
    return GraphSampleSet(samples, order)


def backdoored_sample_set(
    rng: random.Random, n: int, s_max: int, t_target: int
) -> SampleSet:
    """Samples admitting a pivot-true backdoor of size <= s_max: inside a
    chosen set S bits are arbitrary, outside it each sample has at most one
    true variable and each variable is true in at most one sample."""
    s = rng.randint(0, min(s_max, n))
    s_vars = rng.sample(range(1, n + 1), s)
    outside = [v for v in range(1, n + 1) if v not in s_vars]
    rng.shuffle(outside)
    # concentrate class patterns so the positive-drop rule can fire
    patterns = [rng.getrandbits(s) for _ in range(rng.randint(1, max(1, 2**s // 2)))]
    seen = set()
    samples = []
    for _ in range(t_target * 3):
        if len(samples) >= t_target:
            break
        mask = 0
        bits = rng.choice(patterns)
        for j, v in enumerate(s_vars):
            if (bits >> j) & 1:
                mask |= 1 << (v - 1)
        if outside and rng.random() < 0.8:
            mask |= 1 << (outside.pop() - 1)
        if mask in seen:
            continue
        seen.add(mask)
        samples.append(LabeledSample(Assignment(n, mask), rng.randint(0, 1)))
    return SampleSet(samples, n=n)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
