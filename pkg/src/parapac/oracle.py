"""The hidden side of a learning run: an explicit finite distribution, a
hidden hypothesis, and the labeled-sample oracle, plus exact and Monte Carlo
generalization error.

Distributions are explicit supports with weights so the error of a hypothesis
is computable exactly; that is what the experiment harness asserts against.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .booleans import (
    Assignment,
    CnfFormula,
    DnfFormula,
    LabeledSample,
    ParamInfo,
    eval_cnf,
    eval_dnf,
    kappa_max_term_len,
    kappa_subset_size,
    kappa_term_count,
    lambda_backdoor,
)
from .errors import InputError, WidthMismatchError
from .graphs import ForbiddenFamily, Graph, VertexSet, free_of_family, is_acyclic

__all__ = [
    "WEIGHT_TOLERANCE",
    "RandomSource",
    "FiniteDistribution",
    "DeletionHypothesis",
    "HiddenScenario",
    "concept_value",
    "hypothesis_parameter",
    "sample_parameter",
    "draw",
    "typical_uniform_sampler",
    "exact_error",
    "monte_carlo_error",
]

WEIGHT_TOLERANCE = 1e-9


class RandomSource:
    """A seedable, splittable pseudorandom stream (PCG64 under the hood).

    Identical seeds yield identical streams; ``substream(i)`` derives an
    independent child stream from (seed, i), which is how per-trial
    randomness stays reproducible under any worker-pool schedule.
    """

    __slots__ = ("seed", "key", "_gen")

    def __init__(self, seed: int, key: tuple[int, ...] = ()):
        self.seed = seed
        self.key = key
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key))
        )

    def substream(self, index: int) -> "RandomSource":
        return RandomSource(self.seed, self.key + (index,))

    def random(self) -> float:
        return float(self._gen.random())

    def integers(self, low: int, high: int) -> int:
        return int(self._gen.integers(low, high))

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, key={self.key})"


@dataclass(frozen=True)
class FiniteDistribution:
    """Explicit distribution over distinct assignments of a common width.

    Weights must be strictly positive and sum to 1 within WEIGHT_TOLERANCE;
    anything else is rejected rather than renormalized, so construction bugs
    surface where they happen.
    """

    n: int
    support: tuple[Assignment, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.support) != len(self.weights):
            raise InputError("support and weights differ in length")
        if not self.support:
            raise InputError("support must be nonempty")
        seen = set()
        for x in self.support:
            if x.n != self.n:
                raise WidthMismatchError(f"support width {x.n} != {self.n}")
            if x.mask in seen:
                raise InputError(f"duplicate support assignment {x}")
            seen.add(x.mask)
        for w in self.weights:
            if not w > 0.0:
                raise InputError(f"weights must be strictly positive, got {w}")
        total = sum(self.weights)
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise InputError(f"weights sum to {total!r}, not 1 within {WEIGHT_TOLERANCE}")

    @cached_property
    def _cumulative(self) -> list[float]:
        return list(itertools.accumulate(self.weights))

    def sample(self, rng: RandomSource) -> Assignment:
        """Inverse-CDF draw over the explicit support."""
        u = rng.random()
        idx = bisect.bisect_right(self._cumulative, u)
        if idx >= len(self.support):  # guards the float edge at u ~ 1.0
            idx = len(self.support) - 1
        return self.support[idx]


@dataclass(frozen=True)
class DeletionHypothesis:
    """A vertex-deletion hypothesis: the subset plus the family defining the
    target graph class (family is None for the feedback-vertex-set class)."""

    vertex_set: VertexSet
    family: ForbiddenFamily | None = None


Hypothesis = Union[DnfFormula, CnfFormula, DeletionHypothesis]

BOOLEAN_KINDS = ("kcnf", "kdnf", "kterm_dnf", "kclause_cnf")
GRAPH_KINDS = ("hdeletion", "fvs")
ALL_KINDS = BOOLEAN_KINDS + GRAPH_KINDS


def concept_value(hypothesis: Hypothesis, x: Assignment) -> int:
    """Evaluate any hypothesis kind on an assignment (graphs travel as
    adjacency-matrix assignments of width order**2)."""
    if isinstance(hypothesis, DnfFormula):
        return eval_dnf(hypothesis, x)
    if isinstance(hypothesis, CnfFormula):
        return eval_cnf(hypothesis, x)
    graph = Graph.from_assignment(x, hypothesis.vertex_set.order)
    removed = hypothesis.vertex_set.vertices
    if hypothesis.family is None:
        return int(is_acyclic(graph, removed))
    return int(free_of_family(graph, hypothesis.family, removed))


def hypothesis_parameter(kind: str, hypothesis: Hypothesis) -> int:
    """The parameter value a hypothesis occupies in its class."""
    if kind in ("kcnf", "kdnf"):
        return kappa_max_term_len(hypothesis)
    if kind in ("kterm_dnf", "kclause_cnf"):
        return kappa_term_count(hypothesis)
    if kind in GRAPH_KINDS:
        return kappa_subset_size(hypothesis.vertex_set)
    raise InputError(f"unknown kind {kind!r}")


def sample_parameter(kind: str, assignments: Sequence[Assignment]) -> int:
    """The parameter value of a support / sample set under the kind's
    convention: backdoor size for the term/clause-count classes, the trivial
    constant 0 everywhere else."""
    if kind == "kterm_dnf":
        return lambda_backdoor(assignments, pivot=1)[0]
    if kind == "kclause_cnf":
        return lambda_backdoor(assignments, pivot=0)[0]
    if kind in ("kcnf", "kdnf") + GRAPH_KINDS:
        return 0
    raise InputError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class HiddenScenario:
    """Hidden hypothesis + hidden distribution + their promised parameters."""

    kind: str
    hypothesis: Hypothesis
    distribution: FiniteDistribution
    params: ParamInfo

    def __post_init__(self) -> None:
        if self.kind not in ALL_KINDS:
            raise InputError(f"unknown kind {self.kind!r}")
        if self.kind in BOOLEAN_KINDS:
            expected = {"kcnf": CnfFormula, "kdnf": DnfFormula,
                        "kterm_dnf": DnfFormula, "kclause_cnf": CnfFormula}[self.kind]
            if not isinstance(self.hypothesis, expected):
                raise InputError(
                    f"kind {self.kind} requires a {expected.__name__} hypothesis"
                )
            if self.hypothesis.n != self.distribution.n:
                raise WidthMismatchError("hypothesis and distribution widths differ")
        else:
            if not isinstance(self.hypothesis, DeletionHypothesis):
                raise InputError(f"kind {self.kind} requires a deletion hypothesis")
            if self.kind == "hdeletion" and self.hypothesis.family is None:
                raise InputError("hdeletion scenarios need a forbidden family")
            if self.kind == "fvs" and self.hypothesis.family is not None:
                raise InputError("fvs scenarios must not carry a family")
            order = self.hypothesis.vertex_set.order
            if order * order != self.distribution.n:
                raise WidthMismatchError(
                    f"distribution width {self.distribution.n} != {order}**2"
                )
        k = hypothesis_parameter(self.kind, self.hypothesis)
        if self.params.k != k:
            raise InputError(f"declared k={self.params.k} but hypothesis has {k}")
        ell = sample_parameter(self.kind, self.distribution.support)
        if self.params.ell != ell:
            raise InputError(f"declared ell={self.params.ell} but support has {ell}")

    @property
    def n(self) -> int:
        return self.distribution.n


def draw(scenario: HiddenScenario, rng: RandomSource) -> LabeledSample:
    """One labeled sample (x, c*(x)) with x drawn from the hidden distribution."""
    x = scenario.distribution.sample(rng)
    return LabeledSample(x, concept_value(scenario.hypothesis, x))


def typical_uniform_sampler(assignments: Iterable[Assignment]) -> FiniteDistribution:
    """Uniform distribution with exactly the given support.

    For support-based sample parameters the uniform distribution attains the
    minimum, which is what lets a learner's oracle be emulated on a sample set.
    """
    xs = list(assignments)
    if not xs:
        raise InputError("cannot build a distribution on an empty support")
    w = 1.0 / len(xs)
    return FiniteDistribution(xs[0].n, tuple(xs), tuple(w for _ in xs))


def exact_error(hypothesis: Hypothesis, scenario: HiddenScenario) -> float:
    """Exact disagreement probability between a hypothesis and the hidden
    concept under the hidden distribution (sum over the explicit support)."""
    err = 0.0
    for x, w in zip(scenario.distribution.support, scenario.distribution.weights):
        if concept_value(hypothesis, x) != concept_value(scenario.hypothesis, x):
            err += w
    return err


def monte_carlo_error(
    hypothesis: Hypothesis, scenario: HiddenScenario, trials: int, rng: RandomSource
) -> float:
    """Fraction of disagreeing draws over ``trials`` samples."""
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    bad = 0
    for _ in range(trials):
        x = scenario.distribution.sample(rng)
        if concept_value(hypothesis, x) != concept_value(scenario.hypothesis, x):
            bad += 1
    return bad / trials
