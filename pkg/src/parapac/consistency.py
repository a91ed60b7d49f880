"""Consistency checkers: given labeled samples and a parameter k, construct a
hypothesis from the parameterized class agreeing with every sample, or report
that none exists.

Boolean classes
    kcnf / kdnf          clause/term length at most k (survivor elimination)
    kterm_dnf            at most k terms (kernelize, enumerate, lift)
    kclause_cnf          at most k clauses (polarity flip + dual of kterm_dnf)

Graph classes
    hdeletion            deletion set to a class forbidding induced subgraphs
                         (bounded search tree over discovered copies)
    fvs                  feedback vertex set (plain subset enumeration)

``brute_force_consistency`` enumerates the hypothesis space directly and is
the independent oracle every checker is tested against.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .booleans import (
    Assignment,
    Clause,
    CnfFormula,
    DnfFormula,
    LabeledSample,
    Literal,
    SampleSet,
    Term,
    dualize,
    eval_cnf,
    eval_dnf,
    flip_polarity_transform,
    lambda_backdoor,
)
from .errors import GuardError, InputError
from .graphs import (
    ForbiddenFamily,
    GraphSampleSet,
    VertexSet,
    find_any_induced_copy,
    free_of_family,
    is_acyclic,
)

__all__ = [
    "BRUTE_FORCE_GUARD",
    "ConsistencyOutcome",
    "ConsistencyInstance",
    "RemovedPositive",
    "RemovedNegative",
    "MergedVariables",
    "KernelTrace",
    "hypothesis_agrees",
    "kcnf_consistency",
    "kdnf_consistency",
    "kterm_dnf_kernelize",
    "kterm_dnf_consistency",
    "kclause_cnf_consistency",
    "hdeletion_consistency",
    "fvs_consistency",
    "brute_force_consistency",
    "solve_instance",
    "hypothesis_encoding",
]

BRUTE_FORCE_GUARD = 10**7
_SEARCH_GUARD = 2 * 10**7

Hypothesis = Union[DnfFormula, CnfFormula, VertexSet]


@dataclass(frozen=True)
class ConsistencyOutcome:
    """Either Consistent(hypothesis) or Inconsistent (hypothesis None)."""

    hypothesis: Hypothesis | None

    @property
    def consistent(self) -> bool:
        return self.hypothesis is not None

    @classmethod
    def found(cls, hypothesis: Hypothesis) -> "ConsistencyOutcome":
        return cls(hypothesis)


INCONSISTENT = ConsistencyOutcome(None)

_BOOLEAN_KINDS = ("kcnf", "kdnf", "kterm_dnf", "kclause_cnf")
_GRAPH_KINDS = ("hdeletion", "fvs")


@dataclass(frozen=True)
class ConsistencyInstance:
    """A consistency-checking input: samples, the class kind, the parameter k,
    and an optional bound on the encoded hypothesis length."""

    kind: str
    samples: SampleSet | GraphSampleSet
    k: int
    family: ForbiddenFamily | None = None
    size_bound: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _BOOLEAN_KINDS + _GRAPH_KINDS:
            raise InputError(f"unknown kind {self.kind!r}")
        if self.k < 0:
            raise InputError(f"k must be nonnegative, got {self.k}")
        if self.kind in _BOOLEAN_KINDS and not isinstance(self.samples, SampleSet):
            raise InputError(f"kind {self.kind} needs boolean samples")
        if self.kind in _GRAPH_KINDS and not isinstance(self.samples, GraphSampleSet):
            raise InputError(f"kind {self.kind} needs graph samples")
        if self.kind == "hdeletion" and self.family is None:
            raise InputError("hdeletion instances need a forbidden family")
        if self.kind != "hdeletion" and self.family is not None:
            raise InputError(f"kind {self.kind} does not take a family")
        if self.size_bound is not None and self.size_bound < 1:
            raise InputError("size_bound must be positive when given")


def hypothesis_agrees(
    hypothesis: Hypothesis,
    samples: SampleSet | GraphSampleSet,
    family: ForbiddenFamily | None = None,
) -> bool:
    """Re-evaluate a hypothesis on every sample."""
    if isinstance(samples, SampleSet):
        ev = eval_dnf if isinstance(hypothesis, DnfFormula) else eval_cnf
        return all(ev(hypothesis, s.assignment) == s.label for s in samples)
    if family is not None:
        return all(
            int(free_of_family(s.graph, family, hypothesis.vertices)) == s.label
            for s in samples
        )
    return all(
        int(is_acyclic(s.graph, hypothesis.vertices)) == s.label for s in samples
    )


def hypothesis_encoding(hypothesis: Hypothesis) -> str:
    """Canonical flat encoding; its length is the representation size that
    ``size_bound`` constrains."""
    if isinstance(hypothesis, VertexSet):
        body = ",".join(str(v) for v in sorted(hypothesis.vertices))
        return f"s:{hypothesis.order}:{body}"
    tag = "d" if isinstance(hypothesis, DnfFormula) else "c"
    parts = hypothesis.terms if isinstance(hypothesis, DnfFormula) else hypothesis.clauses
    body = ";".join(
        ",".join(
            str(l.variable if l.positive else -l.variable)
            for l in p.sorted_literals()
        )
        for p in parts
    )
    return f"{tag}:{hypothesis.n}:{body}"


# ---------------------------------------------------------------------------
# k-CNF / k-DNF: survivor elimination
# ---------------------------------------------------------------------------


def _enumerate_clause_masks(n: int, k: int) -> list[tuple[int, int]]:
    """All (pos_mask, neg_mask) clauses with 1..k literals, in a fixed order."""
    out: list[tuple[int, int]] = []
    for size in range(1, k + 1):
        for combo in itertools.combinations(range(n), size):
            for pattern in itertools.product((1, 0), repeat=size):
                pos = neg = 0
                for v, p in zip(combo, pattern):
                    if p:
                        pos |= 1 << v
                    else:
                        neg |= 1 << v
                out.append((pos, neg))
    return out


def _clause_sat(pos: int, neg: int, mask: int, full: int) -> bool:
    return bool(mask & pos) or bool(neg & ~mask & full)


def _clause_from_masks(pos: int, neg: int) -> Clause:
    lits = [Literal(v + 1, True) for v in range(pos.bit_length()) if (pos >> v) & 1]
    lits += [Literal(v + 1, False) for v in range(neg.bit_length()) if (neg >> v) & 1]
    return Clause(lits)


def kcnf_consistency(samples: SampleSet, k: int) -> ConsistencyOutcome:
    """Consistency for CNF formulas with clauses of length at most k.

    Keeps every clause satisfied by all positive samples and returns their
    conjunction; if that formula still mislabels a negative sample then no
    consistent formula exists, because any consistent formula's clauses are
    all survivors and adding clauses can only shrink the satisfied set.
    """
    n = samples.n
    if k > n:
        raise InputError(f"k={k} exceeds the number of variables {n}")
    full = (1 << n) - 1
    positives = [s.assignment.mask for s in samples if s.label == 1]
    negatives = [s.assignment.mask for s in samples if s.label == 0]
    survivors = [
        (pos, neg)
        for pos, neg in _enumerate_clause_masks(n, k)
        if all(_clause_sat(pos, neg, m, full) for m in positives)
    ]
    for m in negatives:
        if all(_clause_sat(pos, neg, m, full) for pos, neg in survivors):
            return INCONSISTENT
    return ConsistencyOutcome.found(
        CnfFormula(tuple(_clause_from_masks(p, q) for p, q in survivors), n)
    )


def kdnf_consistency(samples: SampleSet, k: int) -> ConsistencyOutcome:
    """Consistency for DNF formulas with terms of length at most k, by label
    flip and De Morgan duality with the k-CNF checker."""
    _, flipped = dualize(samples=samples)
    outcome = kcnf_consistency(flipped, k)
    if not outcome.consistent:
        return INCONSISTENT
    dual, _ = dualize(formula=outcome.hypothesis)
    return ConsistencyOutcome.found(dual)


# ---------------------------------------------------------------------------
# k-term DNF: kernelization, bounded enumeration, lifting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RemovedPositive:
    """A positive sample deleted because its class held at least k + 2
    positive single-pivot samples; ``pivot`` is its unique true variable
    outside the backdoor."""

    sample: LabeledSample
    pivot: int


@dataclass(frozen=True)
class RemovedNegative:
    """A negative sample deleted because exactly one variable outside the
    backdoor is true in it and in no other sample."""

    sample: LabeledSample
    pivot: int


@dataclass(frozen=True)
class MergedVariables:
    """Two variables assigned identically in every sample; ``removed`` was
    dropped in favor of ``kept``."""

    kept: int
    removed: int


TraceEntry = Union[RemovedPositive, RemovedNegative, MergedVariables]


@dataclass(frozen=True)
class KernelTrace:
    """Replayable log of the reduction rules applied by the kernelizer, plus
    the map from reduced variable positions back to original indices."""

    entries: tuple[TraceEntry, ...]
    variable_map: tuple[int, ...]
    n_original: int


def _check_backdoor(masks: list[int], n: int, backdoor: frozenset[int]) -> None:
    s_mask = 0
    for v in backdoor:
        if not 1 <= v <= n:
            raise InputError(f"backdoor variable {v} out of range [1, {n}]")
        s_mask |= 1 << (v - 1)
    counts: dict[int, int] = {}
    for m in masks:
        outside = m & ~s_mask
        if outside.bit_count() > 1:
            raise InputError(
                "not a valid backdoor: a sample sets two variables outside S to true"
            )
        while outside:
            low = outside & -outside
            v = low.bit_length()
            counts[v] = counts.get(v, 0) + 1
            if counts[v] > 1:
                raise InputError(
                    f"not a valid backdoor: variable {v} outside S is true twice"
                )
            outside ^= low


class _KernelState:
    """Mutable view of a boolean instance during kernelization: original-width
    rows plus the set of still-active variable columns."""

    def __init__(self, samples: SampleSet, backdoor: frozenset[int]):
        self.rows: list[LabeledSample] = list(samples)
        self.active: list[int] = list(range(1, samples.n + 1))
        self.backdoor: set[int] = set(backdoor)

    def column(self, var: int) -> int:
        bit = var - 1
        col = 0
        for i, row in enumerate(self.rows):
            col |= ((row.assignment.mask >> bit) & 1) << i
        return col

    def outside_true_vars(self, mask: int) -> list[int]:
        return [
            v
            for v in self.active
            if v not in self.backdoor and (mask >> (v - 1)) & 1
        ]

    def class_key(self, mask: int) -> tuple[int, ...]:
        return tuple(
            (mask >> (v - 1)) & 1 for v in sorted(self.backdoor & set(self.active))
        )


def _apply_merge(state: _KernelState) -> MergedVariables | None:
    cols = {v: state.column(v) for v in state.active}
    for i, u in enumerate(state.active):
        for v in state.active[i + 1 :]:
            if cols[u] == cols[v]:
                state.active.remove(v)
                state.backdoor.discard(v)
                return MergedVariables(kept=u, removed=v)
    return None


def _apply_drop_negative(state: _KernelState) -> RemovedNegative | None:
    for idx, row in enumerate(state.rows):
        if row.label != 0:
            continue
        trues = state.outside_true_vars(row.assignment.mask)
        if len(trues) == 1:
            del state.rows[idx]
            return RemovedNegative(sample=row, pivot=trues[0])
    return None


def _apply_drop_positive(state: _KernelState, k: int) -> RemovedPositive | None:
    class_counts: dict[tuple[int, ...], int] = {}
    pivots: list[tuple[int, LabeledSample, int, tuple[int, ...]]] = []
    for idx, row in enumerate(state.rows):
        if row.label != 1:
            continue
        trues = state.outside_true_vars(row.assignment.mask)
        if len(trues) != 1:
            continue
        key = state.class_key(row.assignment.mask)
        class_counts[key] = class_counts.get(key, 0) + 1
        pivots.append((idx, row, trues[0], key))
    for idx, row, pivot, key in pivots:
        if class_counts[key] >= k + 2:
            del state.rows[idx]
            return RemovedPositive(sample=row, pivot=pivot)
    return None


def kterm_dnf_kernelize(
    samples: SampleSet, k: int, backdoor: frozenset[int]
) -> tuple[SampleSet, KernelTrace]:
    """Shrink a k-term-DNF consistency instance with the three reduction
    rules, applied to exhaustion with priority merge > drop-negative >
    drop-positive and a full re-scan after every application.

    The result has at most ``2**s * (k + 2)`` samples over at most
    ``s + 2**s * (k + 2) + 1`` variables, where s = len(backdoor), and the
    returned trace lets a hypothesis for the reduced instance be lifted back
    to one consistent with the original samples.
    """
    if k < 0:
        raise InputError(f"k must be nonnegative, got {k}")
    masks = [s.assignment.mask for s in samples]
    _check_backdoor(masks, samples.n, backdoor)

    state = _KernelState(samples, backdoor)
    entries: list[TraceEntry] = []
    while True:
        entry = (
            _apply_merge(state)
            or _apply_drop_negative(state)
            or _apply_drop_positive(state, k)
        )
        if entry is None:
            break
        entries.append(entry)

    variable_map = tuple(state.active)
    reduced_samples = []
    for row in state.rows:
        new_mask = 0
        for j, v in enumerate(variable_map):
            new_mask |= ((row.assignment.mask >> (v - 1)) & 1) << j
        reduced_samples.append(
            LabeledSample(Assignment(len(variable_map), new_mask), row.label)
        )
    reduced = SampleSet(reduced_samples, n=len(variable_map))

    s = len(backdoor)
    assert len(reduced) <= (1 << s) * (k + 2), "kernel sample bound violated"
    assert reduced.n <= s + (1 << s) * (k + 2) + 1, "kernel variable bound violated"
    return reduced, KernelTrace(tuple(entries), variable_map, samples.n)


@lru_cache(maxsize=32)
def _term_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(pos_mask, neg_mask) for every term over n variables, indexed by the
    base-3 digit expansion (0 absent, 1 positive, 2 negated; variable 1 is the
    least significant digit)."""
    count = 3**n
    idx = np.arange(count, dtype=np.int64)
    pos = np.zeros(count, dtype=np.int64)
    neg = np.zeros(count, dtype=np.int64)
    power = 1
    for v in range(n):
        digit = (idx // power) % 3
        pos |= (digit == 1).astype(np.int64) << v
        neg |= (digit == 2).astype(np.int64) << v
        power *= 3
    pos.setflags(write=False)
    neg.setflags(write=False)
    return pos, neg


def _term_from_index(index: int, n: int) -> Term:
    lits = []
    for v in range(1, n + 1):
        digit = index % 3
        index //= 3
        if digit == 1:
            lits.append(Literal(v, True))
        elif digit == 2:
            lits.append(Literal(v, False))
    return Term(lits)


def _sample_bitmaps(samples: SampleSet) -> tuple[list[int], int, int]:
    """Masks plus positive/negative membership bitmaps over sample positions."""
    masks = [s.assignment.mask for s in samples]
    pos_map = neg_map = 0
    for i, s in enumerate(samples):
        if s.label == 1:
            pos_map |= 1 << i
        else:
            neg_map |= 1 << i
    return masks, pos_map, neg_map


def _cover_search(
    sats: list[int], indices: list[int], pos_map: int, k: int
) -> list[int] | None:
    """First subset of at most k of the given terms whose satisfaction maps
    jointly cover pos_map, branching on covers of the lowest uncovered sample
    (complete: any cover contains such a term).  Budgets ascend so the result
    is size-minimal; within a level, term indices ascend."""
    if pos_map == 0:
        return []
    hits = [(i, s) for i, s in zip(indices, sats) if s & pos_map]

    def go(chosen: list[int], covered: int, budget: int) -> list[int] | None:
        if covered & pos_map == pos_map:
            return chosen
        if len(chosen) == budget:
            return None
        remaining = pos_map & ~covered
        lowest = remaining & -remaining
        for i, s in hits:
            if s & lowest:
                result = go(chosen + [i], covered | s, budget)
                if result is not None:
                    return result
        return None

    for budget in range(1, k + 1):
        result = go([], 0, budget)
        if result is not None:
            return result
    return None


def _kterm_search(samples: SampleSet, k: int) -> ConsistencyOutcome:
    """Enumerate every term over the (reduced) variables, keep those
    satisfying no negative sample, and search all subsets of at most k kept
    terms for one covering every positive sample."""
    n = samples.n
    t = len(samples)
    if 3**n > _SEARCH_GUARD:
        raise GuardError(
            f"term enumeration over {n} variables exceeds the search guard"
        )
    masks, pos_map, neg_map = _sample_bitmaps(samples)
    if pos_map == 0:
        return ConsistencyOutcome.found(DnfFormula((), n))

    if t <= 62 and n <= 62:
        pos_arr, neg_arr = _term_tables(n)
        sat = np.zeros(len(pos_arr), dtype=np.int64)
        for j, m in enumerate(masks):
            hit = ((pos_arr & m) == pos_arr) & ((neg_arr & m) == 0)
            sat |= hit.astype(np.int64) << j
        keep = (sat & neg_map) == 0
        kept_idx = np.flatnonzero(keep)
        kept_sat = sat[keep]
        found = _vector_cover(kept_idx, kept_sat, pos_map, k)
    else:
        sats, indices = [], []
        for index in range(3**n):
            term = _term_from_index(index, n)
            s = 0
            for j, m in enumerate(masks):
                if term.satisfied_by(m):
                    s |= 1 << j
            if s & neg_map == 0:
                sats.append(s)
                indices.append(index)
        found = _cover_search(sats, indices, pos_map, k)

    if found is None:
        return INCONSISTENT
    terms = tuple(_term_from_index(i, n) for i in found)
    return ConsistencyOutcome.found(DnfFormula(terms, n))


def _vector_cover(
    indices: np.ndarray, sats: np.ndarray, pos_map: int, k: int
) -> list[int] | None:
    """Vectorized cover search for the common sizes; recursion beyond pairs."""
    if pos_map == 0:
        return []
    if k == 0 or len(indices) == 0:
        return None
    full = (sats & pos_map) == pos_map
    where = np.flatnonzero(full)
    if where.size:
        return [int(indices[where[0]])]
    if k == 1:
        return None
    if k == 2:
        for a in range(len(indices) - 1):
            combined = sats[a] | sats[a + 1 :]
            ok = np.flatnonzero((combined & pos_map) == pos_map)
            if ok.size:
                return [int(indices[a]), int(indices[a + 1 + ok[0]])]
        return None
    return _cover_search([int(s) for s in sats], [int(i) for i in indices], pos_map, k)


def _lift_formula(formula: DnfFormula, trace: KernelTrace) -> DnfFormula:
    """Replay the kernel trace backwards, turning a hypothesis for the reduced
    instance into one consistent with the original samples."""
    # undo the renumbering first: reduced position j is original variable map[j-1]
    terms = [
        set(Literal(trace.variable_map[l.variable - 1], l.positive) for l in t.literals)
        for t in formula.terms
    ]

    def term_satisfied(lits: set[Literal], mask: int) -> bool:
        return all(
            ((mask >> (l.variable - 1)) & 1) == int(l.positive) for l in lits
        )

    for entry in reversed(trace.entries):
        if isinstance(entry, MergedVariables):
            continue  # the formula never mentions the removed column
        mask = entry.sample.assignment.mask
        neg_pivot = Literal(entry.pivot, False)
        pos_pivot = Literal(entry.pivot, True)
        if isinstance(entry, RemovedNegative):
            # conjoin the pivot's negation onto every term; terms requiring
            # the pivot positively become unsatisfiable and are dropped
            terms = [t | {neg_pivot} for t in terms if pos_pivot not in t]
            continue
        if any(term_satisfied(t, mask) for t in terms):
            continue
        for t in terms:
            if neg_pivot in t and term_satisfied(t - {neg_pivot}, mask):
                t.remove(neg_pivot)
                break
        else:
            raise RuntimeError("kernel lift failed to restore a removed positive")
    return DnfFormula(tuple(Term(t) for t in terms), trace.n_original)


def kterm_dnf_consistency(samples: SampleSet, k: int) -> ConsistencyOutcome:
    """Consistency for DNF formulas with at most k terms: compute the minimum
    pivot-true backdoor, kernelize, enumerate over the reduced instance, and
    lift any hit back through the trace."""
    _, backdoor = lambda_backdoor(samples, pivot=1)
    reduced, trace = kterm_dnf_kernelize(samples, k, backdoor)
    outcome = _kterm_search(reduced, k)
    if not outcome.consistent:
        return INCONSISTENT
    return ConsistencyOutcome.found(_lift_formula(outcome.hypothesis, trace))


def kclause_cnf_consistency(samples: SampleSet, k: int) -> ConsistencyOutcome:
    """Consistency for CNF formulas with at most k clauses, via the two
    standard transforms: complement every assignment and flip every label,
    solve as k-term DNF, then flip literals and dualize the result."""
    complemented, _ = flip_polarity_transform(samples=samples)
    _, relabeled = dualize(samples=complemented)
    outcome = kterm_dnf_consistency(relabeled, k)
    if not outcome.consistent:
        return INCONSISTENT
    _, flipped = flip_polarity_transform(formula=outcome.hypothesis)
    dual, _ = dualize(formula=flipped)
    return ConsistencyOutcome.found(dual)


# ---------------------------------------------------------------------------
# Graph classes
# ---------------------------------------------------------------------------


def _deletion_minimal(
    vertices: frozenset[int], yes_graphs: list, family: ForbiddenFamily
) -> bool:
    for v in vertices:
        rest = vertices - {v}
        if not any(
            find_any_induced_copy(g, family, rest) is not None for g in yes_graphs
        ):
            return False
    return True


def hdeletion_consistency(
    samples: GraphSampleSet, k: int, family: ForbiddenFamily
) -> ConsistencyOutcome:
    """Bounded search tree for a deletion set consistent with all samples.

    Repeatedly locates a forbidden induced copy in some yes-graph and branches
    on which of its vertices joins the deletion set; a leaf is accepted when
    it is inclusion-minimal for the yes-graphs and leaves every no-graph
    outside the class.  Yes-graphs are scanned in input order, copies found
    lexicographically, branch vertices taken in increasing order.
    """
    order = samples.order
    if k > order:
        raise InputError(f"k={k} exceeds the vertex count {order}")
    yes_graphs = [s.graph for s in samples if s.label == 1]
    no_graphs = [s.graph for s in samples if s.label == 0]

    def leaf_accepts(chosen: frozenset[int]) -> bool:
        if not _deletion_minimal(chosen, yes_graphs, family):
            return False
        return all(not free_of_family(g, family, chosen) for g in no_graphs)

    def search(chosen: frozenset[int]) -> frozenset[int] | None:
        copy = None
        for g in yes_graphs:
            copy = find_any_induced_copy(g, family, chosen)
            if copy is not None:
                break
        if copy is None:
            return chosen if leaf_accepts(chosen) else None
        if len(chosen) == k:
            return None
        for v in sorted(set(copy)):
            result = search(chosen | {v})
            if result is not None:
                return result
        return None

    result = search(frozenset())
    if result is None:
        return INCONSISTENT
    return ConsistencyOutcome.found(VertexSet(result, order))


def fvs_consistency(samples: GraphSampleSet, k: int) -> ConsistencyOutcome:
    """Brute-force feedback-vertex-set consistency: try every vertex subset of
    size at most k in deterministic order."""
    order = samples.order
    if k > order:
        raise InputError(f"k={k} exceeds the vertex count {order}")
    rows = [(s.graph, s.label) for s in samples]
    for size in range(k + 1):
        for combo in itertools.combinations(range(1, order + 1), size):
            chosen = frozenset(combo)
            if all(int(is_acyclic(g, chosen)) == label for g, label in rows):
                return ConsistencyOutcome.found(VertexSet(chosen, order))
    return INCONSISTENT


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def _space_size(inst: ConsistencyInstance) -> int:
    if inst.kind in ("kcnf", "kdnf"):
        n = inst.samples.n
        if inst.k > n:
            raise InputError(f"k={inst.k} exceeds the number of variables {n}")
        count = sum(math.comb(n, i) * 2**i for i in range(1, inst.k + 1))
        return 2**count
    if inst.kind in ("kterm_dnf", "kclause_cnf"):
        terms = 3 ** inst.samples.n
        return sum(math.comb(terms, j) for j in range(inst.k + 1))
    order = inst.samples.order
    return sum(math.comb(order, j) for j in range(inst.k + 1))


def _brute_subset_formulas(inst: ConsistencyInstance) -> ConsistencyOutcome:
    """Exhaustive scan over formulas that are <=k-subsets of all possible
    terms (kterm_dnf) or clauses (kclause_cnf), sizes ascending."""
    samples: SampleSet = inst.samples
    n, k = samples.n, inst.k
    masks, pos_map, neg_map = _sample_bitmaps(samples)
    t = len(samples)
    is_dnf = inst.kind == "kterm_dnf"
    # satisfaction bitmap of every part over the samples; numpy masks need
    # every bitmap to fit an int64, otherwise stay on python ints
    vectorized = t <= 62 and n <= 62 and 3**n <= _SEARCH_GUARD
    if vectorized:
        pos_arr, neg_arr = _term_tables(n)
        sat = np.zeros(len(pos_arr), dtype=np.int64)
        for j, m in enumerate(masks):
            if is_dnf:
                hit = ((pos_arr & m) == pos_arr) & ((neg_arr & m) == 0)
            else:
                full = (1 << n) - 1
                hit = ((pos_arr & m) != 0) | ((neg_arr & ~np.int64(m) & full) != 0)
            sat |= hit.astype(np.int64) << j
        sats = sat
    else:
        if 3**n > _SEARCH_GUARD:
            raise GuardError(
                f"term enumeration over {n} variables exceeds the search guard"
            )
        full = (1 << n) - 1
        sats = []
        for index in range(3**n):
            part = _term_from_index(index, n)
            s = 0
            for j, m in enumerate(masks):
                if is_dnf:
                    ok = part.satisfied_by(m)
                else:
                    ok = _clause_sat(part.pos_mask, part.neg_mask, m, full)
                if ok:
                    s |= 1 << j
            sats.append(s)

    def build(indexes: tuple[int, ...]) -> Hypothesis:
        if is_dnf:
            return DnfFormula(tuple(_term_from_index(i, n) for i in indexes), n)
        return CnfFormula(
            tuple(
                Clause(lit for lit in _term_from_index(i, n).literals)
                for i in indexes
            ),
            n,
        )

    count = len(sats)
    target = pos_map
    # size 0: empty DNF is constant false, empty CNF constant true
    empty_val = 0 if is_dnf else (1 << t) - 1
    if empty_val & ((1 << t) - 1) == target:
        return ConsistencyOutcome.found(build(()))
    # size 1
    if inst.k >= 1:
        if vectorized:
            ok = np.flatnonzero(sats == target)
            if ok.size:
                return ConsistencyOutcome.found(build((int(ok[0]),)))
        else:
            for i, s in enumerate(sats):
                if s == target:
                    return ConsistencyOutcome.found(build((i,)))
    # size 2, row by row to keep lexicographic order
    if inst.k >= 2:
        for a in range(count - 1):
            if vectorized:
                combined = (
                    (sats[a] | sats[a + 1 :]) if is_dnf else (sats[a] & sats[a + 1 :])
                )
                ok = np.flatnonzero(combined == target)
                if ok.size:
                    return ConsistencyOutcome.found(build((a, int(a + 1 + ok[0]))))
            else:
                for b in range(a + 1, count):
                    value = (sats[a] | sats[b]) if is_dnf else (sats[a] & sats[b])
                    if value == target:
                        return ConsistencyOutcome.found(build((a, b)))
    # larger sizes: plain combinations
    for size in range(3, inst.k + 1):
        for combo in itertools.combinations(range(count), size):
            value = 0 if is_dnf else (1 << t) - 1
            for i in combo:
                value = (value | int(sats[i])) if is_dnf else (value & int(sats[i]))
            if value == target:
                return ConsistencyOutcome.found(build(combo))
    return INCONSISTENT


def _brute_clause_subsets(inst: ConsistencyInstance) -> ConsistencyOutcome:
    """Exhaustive scan over all subsets of length-bounded clauses (kcnf) or
    terms (kdnf), enumerated by subset bitmask value."""
    samples: SampleSet = inst.samples
    n, k, t = samples.n, inst.k, len(samples)
    if t > 62:
        raise GuardError("brute force supports at most 62 samples")
    full = (1 << n) - 1
    parts = _enumerate_clause_masks(n, k)
    count = len(parts)
    masks, pos_map, _ = _sample_bitmaps(samples)
    is_cnf = inst.kind == "kcnf"
    sat = []
    for pos, neg in parts:
        s = 0
        for j, m in enumerate(masks):
            if is_cnf:
                ok = _clause_sat(pos, neg, m, full)
            else:  # term with the same literal masks
                ok = (m & pos) == pos and (m & neg) == 0
            if ok:
                s |= 1 << j
        sat.append(s)

    all_samples = (1 << t) - 1
    values = np.zeros(1 << count, dtype=np.int64)
    values[0] = all_samples if is_cnf else 0
    for i in range(count):
        block = 1 << i
        if is_cnf:
            values[block : 2 * block] = values[:block] & sat[i]
        else:
            values[block : 2 * block] = values[:block] | sat[i]
    hits = np.flatnonzero(values == pos_map)
    if not hits.size:
        return INCONSISTENT
    subset = int(hits[0])
    chosen = [parts[i] for i in range(count) if (subset >> i) & 1]
    if is_cnf:
        formula = CnfFormula(tuple(_clause_from_masks(p, q) for p, q in chosen), n)
    else:
        formula = DnfFormula(
            tuple(
                Term(
                    [Literal(v + 1, True) for v in range(n) if (p >> v) & 1]
                    + [Literal(v + 1, False) for v in range(n) if (q >> v) & 1]
                )
                for p, q in chosen
            ),
            n,
        )
    return ConsistencyOutcome.found(formula)


def _brute_vertex_subsets(inst: ConsistencyInstance) -> ConsistencyOutcome:
    samples: GraphSampleSet = inst.samples
    order = samples.order
    rows = [(s.graph, s.label) for s in samples]
    for size in range(inst.k + 1):
        for combo in itertools.combinations(range(1, order + 1), size):
            chosen = frozenset(combo)
            if inst.kind == "hdeletion":
                ok = all(
                    int(free_of_family(g, inst.family, chosen)) == label
                    for g, label in rows
                )
            else:
                ok = all(int(is_acyclic(g, chosen)) == label for g, label in rows)
            if ok:
                return ConsistencyOutcome.found(VertexSet(chosen, order))
    return INCONSISTENT


def brute_force_consistency(inst: ConsistencyInstance) -> ConsistencyOutcome:
    """Independent test oracle: enumerate the entire hypothesis space in a
    fixed order and return the first hypothesis agreeing with every sample.

    Refuses spaces larger than BRUTE_FORCE_GUARD.
    """
    if _space_size(inst) > BRUTE_FORCE_GUARD:
        raise GuardError(
            f"hypothesis space for {inst.kind} exceeds {BRUTE_FORCE_GUARD}"
        )
    if inst.kind in ("kterm_dnf", "kclause_cnf"):
        outcome = _brute_subset_formulas(inst)
    elif inst.kind in ("kcnf", "kdnf"):
        outcome = _brute_clause_subsets(inst)
    else:
        outcome = _brute_vertex_subsets(inst)
    return _check_size_bound(inst, outcome)


def _check_size_bound(
    inst: ConsistencyInstance, outcome: ConsistencyOutcome
) -> ConsistencyOutcome:
    if outcome.consistent and inst.size_bound is not None:
        size = len(hypothesis_encoding(outcome.hypothesis).encode())
        if size > inst.size_bound:
            raise RuntimeError(
                f"hypothesis encoding length {size} exceeds the declared bound "
                f"{inst.size_bound}"
            )
    return outcome


def solve_instance(inst: ConsistencyInstance) -> ConsistencyOutcome:
    """Dispatch an instance to its class checker (not the brute-force oracle)."""
    if inst.kind == "kcnf":
        outcome = kcnf_consistency(inst.samples, inst.k)
    elif inst.kind == "kdnf":
        outcome = kdnf_consistency(inst.samples, inst.k)
    elif inst.kind == "kterm_dnf":
        outcome = kterm_dnf_consistency(inst.samples, inst.k)
    elif inst.kind == "kclause_cnf":
        outcome = kclause_cnf_consistency(inst.samples, inst.k)
    elif inst.kind == "hdeletion":
        outcome = hdeletion_consistency(inst.samples, inst.k, inst.family)
    else:
        outcome = fvs_consistency(inst.samples, inst.k)
    return _check_size_bound(inst, outcome)
