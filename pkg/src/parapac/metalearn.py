"""The two generic bridges between PAC learning and consistency checking.

``pac_learn_via_consistency`` turns a consistency checker into a PAC learner:
draw enough samples for a union bound over the finite hypothesis class, then
ask the checker for any hypothesis consistent with the draw.

``consistency_via_pac_learner`` turns a PAC learner into a randomized
consistency solver: emulate the oracle with the uniform distribution on the
sample assignments and request error below 1/(t+1), which on t uniform points
forces agreement with all of them.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Union

from .booleans import LabeledSample, ParamInfo, SampleSet
from .consistency import ConsistencyOutcome, INCONSISTENT, hypothesis_agrees
from .errors import InputError, RealizabilityError
from .graphs import ForbiddenFamily, Graph, GraphSample, GraphSampleSet
from .oracle import RandomSource, typical_uniform_sampler

__all__ = [
    "LearnerConfig",
    "LearnRunRecord",
    "log_hyp_count",
    "required_samples",
    "pac_learn_via_consistency",
    "consistency_via_pac_learner",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class LearnerConfig:
    """Inputs a parameterized learner receives: width, accuracy, confidence,
    the promised parameters, and a seed for reproducibility."""

    n: int
    epsilon: float
    delta: float
    params: ParamInfo
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0 < self.epsilon <= 1:
            raise InputError(f"epsilon must be in (0, 1], got {self.epsilon}")
        if not 0 < self.delta <= 1:
            raise InputError(f"delta must be in (0, 1], got {self.delta}")


@dataclass(frozen=True)
class LearnRunRecord:
    """Bookkeeping for one learning run; exact_err is filled in by harnesses
    that know the hidden scenario."""

    samples_used: int
    wall_time: float
    hypothesis: object
    exact_err: float | None = None


def log_hyp_count(kind: str, n: int, k: int) -> float:
    """log2 of the hypothesis-class size at width n and parameter k.

    For kcnf/kdnf the class is all subsets of the C(n, k) nonempty clauses or
    terms of length <= k, so the log is that count itself; for the
    term/clause-count classes each of k parts puts each variable in one of
    three states; for the graph classes (n = vertex count) it is the number
    of vertex subsets of size <= k.
    """
    if k < 0:
        raise InputError(f"k must be nonnegative, got {k}")
    if kind in ("kcnf", "kdnf"):
        return float(sum(math.comb(n, i) * 2**i for i in range(1, k + 1)))
    if kind in ("kterm_dnf", "kclause_cnf"):
        return k * n * math.log2(3.0)
    if kind in ("hdeletion", "fvs"):
        return math.log2(sum(math.comb(n, i) for i in range(k + 1)))
    raise InputError(f"unknown kind {kind!r}")


def required_samples(log_hyp: float, epsilon: float, delta: float) -> int:
    """Sample budget ceil((1/epsilon) * (ln|H| + 1/delta)) of the union-bound
    argument, with ln|H| = log_hyp * ln 2."""
    if not 0 < epsilon <= 1:
        raise InputError(f"epsilon must be in (0, 1], got {epsilon}")
    if not 0 < delta <= 1:
        raise InputError(f"delta must be in (0, 1], got {delta}")
    if log_hyp < 0:
        raise InputError(f"log_hyp must be nonnegative, got {log_hyp}")
    return math.ceil((log_hyp * _LN2 + 1.0 / delta) / epsilon)


Checker = Callable[[Union[SampleSet, GraphSampleSet], int], ConsistencyOutcome]
OracleDraw = Callable[[], LabeledSample]


def _collect_samples(
    kind: str, draws: list[LabeledSample]
) -> SampleSet | GraphSampleSet:
    if kind in ("hdeletion", "fvs"):
        order = math.isqrt(draws[0].assignment.n)
        return GraphSampleSet(
            (
                GraphSample(Graph.from_assignment(s.assignment, order), s.label)
                for s in draws
            ),
            order,
        )
    return SampleSet(draws)


def pac_learn_via_consistency(
    cfg: LearnerConfig,
    oracle_draw: OracleDraw,
    checker: Checker,
    kind: str,
) -> LearnRunRecord:
    """PAC-learn by consistency checking: draw the union-bound sample budget,
    deduplicate the repeats, and return whatever hypothesis the checker finds.

    When the hidden concept lies in the class the checker cannot fail, so an
    Inconsistent outcome signals a scenario/class mismatch and raises.
    """
    start = time.perf_counter()
    width = cfg.n
    if kind in ("hdeletion", "fvs"):
        width = math.isqrt(cfg.n)
        if width * width != cfg.n:
            raise InputError(f"width {cfg.n} is not a square adjacency matrix")
    budget = required_samples(
        log_hyp_count(kind, width, cfg.params.k), cfg.epsilon, cfg.delta
    )
    draws = [oracle_draw() for _ in range(budget)]
    samples = _collect_samples(kind, draws)
    outcome = checker(samples, cfg.params.k)
    if not outcome.consistent:
        raise RealizabilityError(
            "consistency checker failed on oracle output; the hidden concept "
            "is not realizable in the hypothesis class"
        )
    return LearnRunRecord(
        samples_used=budget,
        wall_time=time.perf_counter() - start,
        hypothesis=outcome.hypothesis,
    )


Learner = Callable[[LearnerConfig, OracleDraw], object]


def consistency_via_pac_learner(
    samples: SampleSet | GraphSampleSet,
    learner: Learner,
    delta: float,
    params: ParamInfo,
    seed: int = 0,
    family: ForbiddenFamily | None = None,
) -> ConsistencyOutcome:
    """Randomized consistency solving through a PAC learner.

    Emulates the oracle with the uniform distribution on the sample
    assignments, runs the learner at epsilon = 1/(t+1), and accepts its
    hypothesis only if it verifies against every input sample; succeeds with
    probability at least 1 - delta whenever a consistent hypothesis exists,
    and never accepts on an inconsistent instance.
    """
    t = len(samples)
    if t == 0:
        raise InputError("cannot emulate an oracle on an empty sample set")
    if isinstance(samples, GraphSampleSet):
        pairs = [(s.graph.to_assignment(), s.label) for s in samples]
    else:
        pairs = [(s.assignment, s.label) for s in samples]
    labels = {x.mask: label for x, label in pairs}
    distribution = typical_uniform_sampler([x for x, _ in pairs])
    rng = RandomSource(seed)

    def oracle_draw() -> LabeledSample:
        x = distribution.sample(rng)
        return LabeledSample(x, labels[x.mask])

    cfg = LearnerConfig(
        n=distribution.n,
        epsilon=1.0 / (t + 1),
        delta=delta,
        params=params,
        seed=seed,
    )
    try:
        hypothesis = learner(cfg, oracle_draw)
    except RealizabilityError:
        # a consistency-backed learner can only fail like this when no
        # consistent hypothesis exists; that is this wrapper's No answer
        return INCONSISTENT
    if hypothesis is not None and hypothesis_agrees(hypothesis, samples, family):
        return ConsistencyOutcome.found(hypothesis)
    return INCONSISTENT
