"""Boolean samples, DNF/CNF formulas, their evaluation, and the structural
parameters attached to formulas (size measures) and sample sets (backdoor size).

Variables are indexed from 1. Assignments are stored as bit masks where bit
``i - 1`` holds the value of variable ``i``; this keeps evaluation and
column manipulation cheap for the combinatorial search cores.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .errors import InputError, WidthMismatchError

__all__ = [
    "Assignment",
    "LabeledSample",
    "SampleSet",
    "Literal",
    "Term",
    "Clause",
    "DnfFormula",
    "CnfFormula",
    "ParamInfo",
    "eval_dnf",
    "eval_cnf",
    "dualize",
    "flip_polarity_transform",
    "kappa_term_count",
    "kappa_max_term_len",
    "kappa_subset_size",
    "lambda_backdoor",
]


@dataclass(frozen=True)
class Assignment:
    """A fixed-width truth assignment; bit ``i - 1`` of ``mask`` is variable ``i``."""

    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InputError(f"assignment width must be >= 1, got {self.n}")
        if not 0 <= self.mask < (1 << self.n):
            raise InputError(f"mask {self.mask:#x} does not fit width {self.n}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "Assignment":
        mask = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise InputError(f"bit {i + 1} is {b!r}, expected 0 or 1")
            mask |= b << i
        return cls(len(bits), mask)

    @classmethod
    def from_string(cls, text: str) -> "Assignment":
        """Parse e.g. ``"110"`` (variable 1 first)."""
        if not text or any(c not in "01" for c in text):
            raise InputError(f"assignment string must be nonempty over 0/1, got {text!r}")
        return cls.from_bits([int(c) for c in text])

    def value(self, variable: int) -> int:
        if not 1 <= variable <= self.n:
            raise InputError(f"variable {variable} out of range [1, {self.n}]")
        return (self.mask >> (variable - 1)) & 1

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.n))

    def complement(self) -> "Assignment":
        return Assignment(self.n, self.mask ^ ((1 << self.n) - 1))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class LabeledSample:
    assignment: Assignment
    label: int

    def __post_init__(self) -> None:
        if self.label not in (0, 1):
            raise InputError(f"label must be 0 or 1, got {self.label!r}")


class SampleSet:
    """An ordered list of labeled samples over a common width.

    Assignments are pairwise distinct: repeats with equal labels are dropped
    (sample oracles repeat themselves), repeats with conflicting labels are
    rejected.
    """

    __slots__ = ("samples", "n")

    def __init__(self, samples: Iterable[LabeledSample], n: int | None = None):
        seen: dict[int, int] = {}
        kept: list[LabeledSample] = []
        for s in samples:
            if n is None:
                n = s.assignment.n
            elif s.assignment.n != n:
                raise WidthMismatchError(
                    f"sample width {s.assignment.n} != expected {n}"
                )
            prev = seen.get(s.assignment.mask)
            if prev is None:
                seen[s.assignment.mask] = s.label
                kept.append(s)
            elif prev != s.label:
                raise InputError(
                    f"assignment {s.assignment} appears with conflicting labels"
                )
        if n is None:
            raise InputError("cannot infer width of an empty sample set; pass n")
        self.samples: tuple[LabeledSample, ...] = tuple(kept)
        self.n = n

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]], n: int | None = None) -> "SampleSet":
        return cls(
            (LabeledSample(Assignment.from_string(b), lab) for b, lab in pairs), n
        )

    @property
    def assignments(self) -> tuple[Assignment, ...]:
        return tuple(s.assignment for s in self.samples)

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[LabeledSample]:
        return iter(self.samples)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SampleSet):
            return NotImplemented
        return self.n == other.n and self.samples == other.samples

    def __repr__(self) -> str:
        return f"SampleSet(n={self.n}, t={len(self.samples)})"


@dataclass(frozen=True)
class Literal:
    variable: int
    positive: bool

    def __post_init__(self) -> None:
        if self.variable < 1:
            raise InputError(f"variable index must be >= 1, got {self.variable}")

    def negate(self) -> "Literal":
        return Literal(self.variable, not self.positive)

    def __str__(self) -> str:
        return ("x" if self.positive else "!x") + str(self.variable)


class _LiteralSet:
    """Common machinery of terms and clauses: a set of non-clashing literals."""

    __slots__ = ("literals", "pos_mask", "neg_mask")

    def __init__(self, literals: Iterable[Literal]):
        lits = frozenset(literals)
        pos = neg = 0
        for lit in lits:
            bit = 1 << (lit.variable - 1)
            if lit.positive:
                pos |= bit
            else:
                neg |= bit
        if pos & neg:
            raise InputError("a variable occurs with both polarities")
        self.literals = lits
        self.pos_mask = pos
        self.neg_mask = neg

    @classmethod
    def from_ints(cls, lits: Iterable[int]):
        """Build from signed variable indices (+v positive, -v negated)."""
        return cls(Literal(abs(v), v > 0) for v in lits)

    def max_variable(self) -> int:
        return max((lit.variable for lit in self.literals), default=0)

    def sorted_literals(self) -> list[Literal]:
        return sorted(self.literals, key=lambda l: (l.variable, not l.positive))

    def __len__(self) -> int:
        return len(self.literals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _LiteralSet):
            return NotImplemented
        return type(self) is type(other) and self.literals == other.literals

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.literals))


class Term(_LiteralSet):
    """A conjunction of literals; the empty term is constant true."""

    def satisfied_by(self, mask: int) -> bool:
        return (mask & self.pos_mask) == self.pos_mask and (mask & self.neg_mask) == 0

    def __str__(self) -> str:
        return " & ".join(str(l) for l in self.sorted_literals()) or "true"

    def __repr__(self) -> str:
        return f"Term({{{', '.join(map(str, self.sorted_literals()))}}})"


class Clause(_LiteralSet):
    """A disjunction of literals; the empty clause is constant false."""

    def satisfied_by(self, mask: int) -> bool:
        return bool(mask & self.pos_mask) or (self.neg_mask & ~mask) != 0

    def __str__(self) -> str:
        return " | ".join(str(l) for l in self.sorted_literals()) or "false"

    def __repr__(self) -> str:
        return f"Clause({{{', '.join(map(str, self.sorted_literals()))}}})"


@dataclass(frozen=True)
class DnfFormula:
    """A disjunction of terms; the empty DNF is constant false."""

    terms: tuple[Term, ...]
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("width must be nonnegative")
        for t in self.terms:
            if t.max_variable() > self.n:
                raise InputError(
                    f"term {t} mentions variable beyond width {self.n}"
                )

    def __str__(self) -> str:
        return " | ".join(f"({t})" for t in self.terms) or "false"


@dataclass(frozen=True)
class CnfFormula:
    """A conjunction of clauses; the empty CNF is constant true."""

    clauses: tuple[Clause, ...]
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("width must be nonnegative")
        for c in self.clauses:
            if c.max_variable() > self.n:
                raise InputError(
                    f"clause {c} mentions variable beyond width {self.n}"
                )

    def __str__(self) -> str:
        return " & ".join(f"({c})" for c in self.clauses) or "true"


Formula = Union[DnfFormula, CnfFormula]


@dataclass(frozen=True)
class ParamInfo:
    """The promised parameter pair: hypothesis parameter k, sample parameter ell."""

    k: int
    ell: int = 0

    def __post_init__(self) -> None:
        if self.k < 0 or self.ell < 0:
            raise InputError("parameters must be nonnegative")


def _check_width(formula_n: int, x: Assignment) -> None:
    if formula_n != x.n:
        raise WidthMismatchError(f"formula width {formula_n} != assignment width {x.n}")


def eval_dnf(formula: DnfFormula, x: Assignment) -> int:
    """1 iff some term has all its literals satisfied by ``x``."""
    _check_width(formula.n, x)
    return int(any(t.satisfied_by(x.mask) for t in formula.terms))


def eval_cnf(formula: CnfFormula, x: Assignment) -> int:
    """1 iff every clause contains a literal satisfied by ``x``."""
    _check_width(formula.n, x)
    return int(all(c.satisfied_by(x.mask) for c in formula.clauses))


def evaluate(formula: Formula, x: Assignment) -> int:
    return eval_dnf(formula, x) if isinstance(formula, DnfFormula) else eval_cnf(formula, x)


def _dual_formula(formula: Formula) -> Formula:
    """De Morgan dual: negate the formula and flip every literal's polarity."""
    if isinstance(formula, DnfFormula):
        return CnfFormula(
            tuple(Clause(l.negate() for l in t.literals) for t in formula.terms),
            formula.n,
        )
    return DnfFormula(
        tuple(Term(l.negate() for l in c.literals) for c in formula.clauses),
        formula.n,
    )


def _flip_labels(samples: SampleSet) -> SampleSet:
    return SampleSet(
        (LabeledSample(s.assignment, 1 - s.label) for s in samples), samples.n
    )


def dualize(
    formula: Formula | None = None, samples: SampleSet | None = None
) -> tuple[Formula | None, SampleSet | None]:
    """Negate a formula by De Morgan (DNF <-> CNF, all polarities flipped) and/or
    flip every sample label.

    The dual formula evaluates to ``1 - evaluate(original, x)`` on every x.
    """
    out_formula = _dual_formula(formula) if formula is not None else None
    out_samples = _flip_labels(samples) if samples is not None else None
    return out_formula, out_samples


def _flip_literals(formula: Formula) -> Formula:
    if isinstance(formula, DnfFormula):
        return DnfFormula(
            tuple(Term(l.negate() for l in t.literals) for t in formula.terms),
            formula.n,
        )
    return CnfFormula(
        tuple(Clause(l.negate() for l in c.literals) for c in formula.clauses),
        formula.n,
    )


def flip_polarity_transform(
    samples: SampleSet | None = None, formula: Formula | None = None
) -> tuple[SampleSet | None, Formula | None]:
    """Complement every assignment bit and flip every literal's polarity.

    The transformed formula evaluates on the transformed assignment exactly as
    the original does on the original, so consistency is preserved both ways.
    """
    out_samples = (
        SampleSet(
            (LabeledSample(s.assignment.complement(), s.label) for s in samples),
            samples.n,
        )
        if samples is not None
        else None
    )
    out_formula = _flip_literals(formula) if formula is not None else None
    return out_samples, out_formula


def kappa_term_count(formula: Formula) -> int:
    """Number of terms (DNF) or clauses (CNF)."""
    parts = formula.terms if isinstance(formula, DnfFormula) else formula.clauses
    return len(parts)


def kappa_max_term_len(formula: Formula) -> int:
    """Maximum number of literals in any term (DNF) or clause (CNF)."""
    parts = formula.terms if isinstance(formula, DnfFormula) else formula.clauses
    return max((len(p) for p in parts), default=0)


def kappa_subset_size(vertex_set) -> int:
    """Size of a vertex-subset hypothesis."""
    return len(vertex_set.vertices)


def _assignment_masks(samples) -> tuple[list[int], int]:
    if isinstance(samples, SampleSet):
        return [s.assignment.mask for s in samples], samples.n
    xs = list(samples)
    if not xs:
        return [], 0
    n = xs[0].n
    for x in xs:
        if x.n != n:
            raise WidthMismatchError("assignments have mixed widths")
    return [x.mask for x in xs], n


def lambda_backdoor(
    samples: SampleSet | Sequence[Assignment], pivot: int = 1
) -> tuple[int, frozenset[int]]:
    """Minimum backdoor set S: outside S, every assignment has at most one
    variable at the pivot value and every variable is at the pivot value in at
    most one assignment.  Returns ``(|S|, S)``.

    Variables at the pivot value in two or more assignments are forced into S
    by the second condition; the remaining pivot occurrences are unique to one
    assignment each, so keeping one per assignment (the lowest index) and
    moving the rest into S is exact.
    """
    if pivot not in (0, 1):
        raise InputError(f"pivot must be 0 or 1, got {pivot!r}")
    masks, n = _assignment_masks(samples)
    full = (1 << n) - 1
    if pivot == 0:
        masks = [m ^ full for m in masks]

    counts = [0] * (n + 1)
    for m in masks:
        v = m
        while v:
            low = v & -v
            counts[low.bit_length()] += 1
            v ^= low
    forced = frozenset(v for v in range(1, n + 1) if counts[v] >= 2)
    forced_mask = 0
    for v in forced:
        forced_mask |= 1 << (v - 1)

    extra: set[int] = set()
    for m in masks:
        rest = m & ~forced_mask
        if rest:
            rest ^= rest & -rest  # keep the lowest remaining pivot variable
            while rest:
                low = rest & -rest
                extra.add(low.bit_length())
                rest ^= low
    backdoor = frozenset(forced | extra)
    return len(backdoor), backdoor
