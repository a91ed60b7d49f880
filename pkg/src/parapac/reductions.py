"""Executable hardness gadgets: transform Hitting Set instances into
consistency-checking instances, with a brute-force Hitting Set solver as the
independent side of every equivalence test.

Both gadgets preserve the parameter exactly (the output budget equals the
input k).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .booleans import Assignment, CnfFormula, LabeledSample, SampleSet
from .consistency import BRUTE_FORCE_GUARD, ConsistencyInstance
from .errors import GuardError, InputError, SetTooSmallError
from .graphs import Graph, GraphSample, GraphSampleSet

__all__ = [
    "HittingSetInstance",
    "brute_force_hitting_set",
    "hitting_set_to_kcnf",
    "hitting_set_to_fvs",
    "extract_hitting_set",
]


@dataclass(frozen=True)
class HittingSetInstance:
    """Universe {1..universe_size}, a family of nonempty subsets, a budget k."""

    universe_size: int
    family: tuple[frozenset[int], ...]
    k: int

    def __post_init__(self) -> None:
        if self.universe_size < 1:
            raise InputError("universe must be nonempty")
        if self.k < 0:
            raise InputError(f"k must be nonnegative, got {self.k}")
        for i, subset in enumerate(self.family):
            if not subset:
                raise InputError(f"set {i + 1} is empty")
            for v in subset:
                if not 1 <= v <= self.universe_size:
                    raise InputError(
                        f"set {i + 1} contains {v}, outside 1..{self.universe_size}"
                    )

    @classmethod
    def from_sets(
        cls, universe_size: int, sets: Sequence[Sequence[int]], k: int
    ) -> "HittingSetInstance":
        return cls(universe_size, tuple(frozenset(s) for s in sets), k)


def brute_force_hitting_set(inst: HittingSetInstance) -> frozenset[int] | None:
    """Minimum-cardinality hitting set of size at most k, or None; subsets are
    tried in ascending size, lexicographically."""
    n, k = inst.universe_size, inst.k
    if math.comb(n, min(k, n)) > BRUTE_FORCE_GUARD:
        raise GuardError(f"C({n}, {k}) exceeds the enumeration guard")
    for size in range(min(k, n) + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            chosen = frozenset(combo)
            if all(chosen & subset for subset in inst.family):
                return chosen
    return None


def hitting_set_to_kcnf(inst: HittingSetInstance) -> ConsistencyInstance:
    """Hitting Set -> k-CNF consistency: one positive sample per set (its
    characteristic vector) plus the all-zero negative sample.

    A hitting set of size <= k yields the consistent one-clause CNF of its
    positive literals; conversely any consistent formula must contain an
    all-positive clause (it labels the zero vector 0) whose variables hit
    every set.  Duplicate sets collapse to one sample.
    """
    n = inst.universe_size
    samples = []
    for subset in inst.family:
        mask = 0
        for v in subset:
            mask |= 1 << (v - 1)
        samples.append(LabeledSample(Assignment(n, mask), 1))
    samples.append(LabeledSample(Assignment(n, 0), 0))
    return ConsistencyInstance(
        kind="kcnf", samples=SampleSet(samples, n), k=inst.k
    )


def extract_hitting_set(formula: CnfFormula, inst: HittingSetInstance) -> frozenset[int]:
    """Recover a hitting set from a formula consistent with the reduced
    instance: the variables of its first all-positive clause."""
    for clause in formula.clauses:
        if clause.neg_mask == 0:
            return frozenset(l.variable for l in clause.literals)
    raise InputError(
        "formula has no all-positive clause; it cannot label the zero vector 0"
    )


def hitting_set_to_fvs(inst: HittingSetInstance) -> ConsistencyInstance:
    """Hitting Set -> feedback-vertex-set consistency: for each set, a graph
    on the whole universe whose edges form one cycle through the set in
    increasing vertex order, labeled 1.

    A vertex set is a simultaneous feedback vertex set exactly when it meets
    every cycle, i.e. hits every set.  Sets of size < 3 cannot form a simple
    cycle and are rejected.
    """
    n = inst.universe_size
    samples = []
    for i, subset in enumerate(inst.family):
        if len(subset) < 3:
            raise SetTooSmallError(
                f"set {i + 1} has {len(subset)} elements; cycles need at least 3"
            )
        ring = sorted(subset)
        edges = [(ring[j], ring[j + 1]) for j in range(len(ring) - 1)]
        edges.append((ring[-1], ring[0]))
        samples.append(GraphSample(Graph.from_edges(n, edges), 1))
    return ConsistencyInstance(
        kind="fvs", samples=GraphSampleSet(samples, n), k=inst.k
    )
