import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parapac import (
    Assignment,
    CnfFormula,
    Clause,
    DnfFormula,
    InputError,
    LabeledSample,
    Literal,
    SampleSet,
    Term,
    WidthMismatchError,
    dualize,
    eval_cnf,
    eval_dnf,
    flip_polarity_transform,
    kappa_max_term_len,
    kappa_subset_size,
    kappa_term_count,
    lambda_backdoor,
)
from parapac.graphs import VertexSet


def dnf(n, *terms):
    return DnfFormula(tuple(Term(Literal(abs(v), v > 0) for v in t) for t in terms), n)


def cnf(n, *clauses):
    return CnfFormula(tuple(Clause(Literal(abs(v), v > 0) for v in c) for c in clauses), n)


def naive_term_value(term: Term, x: Assignment) -> int:
    return int(all(x.bits[l.variable - 1] == int(l.positive) for l in term.literals))


def naive_dnf_value(f: DnfFormula, x: Assignment) -> int:
    return int(any(naive_term_value(t, x) for t in f.terms))


def naive_cnf_value(f: CnfFormula, x: Assignment) -> int:
    return int(
        all(
            any(x.bits[l.variable - 1] == int(l.positive) for l in c.literals)
            for c in f.clauses
        )
    )


def all_assignments(n):
    return [Assignment(n, m) for m in range(2**n)]


class TestAssignment:
    def test_string_round_trip(self):
        a = Assignment.from_string("110")
        assert a.n == 3 and a.bits == (1, 1, 0) and str(a) == "110"
        assert a.value(1) == 1 and a.value(3) == 0

    def test_complement(self):
        assert str(Assignment.from_string("101").complement()) == "010"

    def test_invalid(self):
        with pytest.raises(InputError):
            Assignment.from_string("10x")
        with pytest.raises(InputError):
            Assignment(0, 0)
        with pytest.raises(InputError):
            Assignment(2, 5)


class TestSampleSet:
    def test_conflicting_duplicate_rejected(self):
        with pytest.raises(InputError):
            SampleSet.from_pairs([("1", 1), ("1", 0)])

    def test_equal_duplicate_dropped(self):
        ss = SampleSet.from_pairs([("10", 1), ("10", 1), ("01", 0)])
        assert len(ss) == 2

    def test_width_mismatch(self):
        with pytest.raises(WidthMismatchError):
            SampleSet.from_pairs([("10", 1), ("011", 0)])

    def test_empty_needs_width(self):
        assert len(SampleSet([], n=3)) == 0
        with pytest.raises(InputError):
            SampleSet([])


class TestEval:
    def test_empty_dnf_is_false(self):
        for x in all_assignments(3):
            assert eval_dnf(DnfFormula((), 3), x) == 0

    def test_empty_cnf_is_true(self):
        for x in all_assignments(2):
            assert eval_cnf(CnfFormula((), 2), x) == 1

    def test_single_term(self):
        assert eval_dnf(dnf(2, (1, -2)), Assignment.from_string("10")) == 1

    def test_single_clause(self):
        assert eval_cnf(cnf(2, (2,)), Assignment.from_string("01")) == 1

    def test_spec_examples_by_enumeration(self):
        f = dnf(3, (1, 2), (-3,))
        x = Assignment.from_string("001")
        assert naive_dnf_value(f, x) == 0
        assert eval_dnf(f, x) == 0
        g = cnf(3, (1, -2), (3,))
        y = Assignment.from_string("010")
        assert naive_cnf_value(g, y) == 0
        assert eval_cnf(g, y) == 0

    def test_width_mismatch(self):
        with pytest.raises(WidthMismatchError):
            eval_dnf(dnf(2, (1,)), Assignment.from_string("101"))

    def test_exhaustive_agreement_with_truth_tables(self):
        # all <=2-term DNFs over n <= 3 against the naive evaluator
        for n in (1, 2, 3):
            literals = [v for v in range(1, n + 1)] + [-v for v in range(1, n + 1)]
            terms = []
            for size in (0, 1, 2):
                for combo in itertools.combinations(literals, size):
                    if len({abs(v) for v in combo}) != size:
                        continue
                    terms.append(combo)
            rng = random.Random(n)
            pairs = list(itertools.combinations(terms, 2))
            for t1, t2 in rng.sample(pairs, min(60, len(pairs))):
                f = dnf(n, t1, t2)
                for x in all_assignments(n):
                    assert eval_dnf(f, x) == naive_dnf_value(f, x)

    def test_term_invariant_no_clashing_polarity(self):
        with pytest.raises(InputError):
            Term([Literal(1, True), Literal(1, False)])

    def test_formula_width_invariant(self):
        with pytest.raises(InputError):
            dnf(1, (2,))


class TestDualize:
    def test_de_morgan_example(self):
        f = dnf(2, (1, -2))
        dual, _ = dualize(formula=f)
        assert isinstance(dual, CnfFormula)
        assert dual.clauses[0].literals == frozenset(
            [Literal(1, False), Literal(2, True)]
        )

    def test_label_flip(self):
        _, flipped = dualize(samples=SampleSet.from_pairs([("10", 1), ("01", 0)]))
        assert [s.label for s in flipped] == [0, 1]

    def test_dual_negates_semantics(self):
        f = dnf(3, (1, -2), (3,))
        dual, _ = dualize(formula=f)
        for x in all_assignments(3):
            assert eval_cnf(dual, x) == 1 - eval_dnf(f, x)

    def test_involution_up_to_semantics(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randint(1, 4)
            terms = []
            for _ in range(rng.randint(0, 2)):
                vs = rng.sample(range(1, n + 1), rng.randint(0, n))
                terms.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
            f = dnf(n, *terms)
            twice, _ = dualize(formula=dualize(formula=f)[0])
            for x in all_assignments(n):
                assert eval_dnf(twice, x) == eval_dnf(f, x)


class TestFlipPolarity:
    def test_bit_complement(self):
        flipped, _ = flip_polarity_transform(
            samples=SampleSet.from_pairs([("101", 1)])
        )
        assert str(flipped.samples[0].assignment) == "010"
        assert flipped.samples[0].label == 1

    def test_literal_flip(self):
        _, g = flip_polarity_transform(formula=dnf(3, (1, -3)))
        assert g.terms[0].literals == frozenset([Literal(1, False), Literal(3, True)])

    def test_semantic_contract(self):
        f = dnf(4, (1, -2), (3, 4))
        flipped_samples, g = flip_polarity_transform(
            samples=SampleSet.from_pairs([(format(m, "04b")[::-1], 1) for m in range(6)]),
            formula=f,
        )
        for orig, moved in zip(range(6), flipped_samples):
            x = Assignment(4, orig)
            assert eval_dnf(g, moved.assignment) == eval_dnf(f, x)


class TestKappa:
    def test_empty(self):
        assert kappa_term_count(DnfFormula((), 3)) == 0
        assert kappa_max_term_len(DnfFormula((), 3)) == 0

    def test_counts(self):
        f = dnf(3, (1, -2), (3,))
        assert kappa_term_count(f) == 2
        assert kappa_max_term_len(f) == 2

    def test_subset_size(self):
        assert kappa_subset_size(VertexSet(frozenset({2, 5}), 6)) == 2


def exhaustive_min_backdoor(masks: list[int], n: int) -> int:
    """Smallest valid pivot-true backdoor by scanning all variable subsets."""
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            s_mask = 0
            for v in combo:
                s_mask |= 1 << v
            per_var = {}
            ok = True
            for m in masks:
                outside = m & ~s_mask
                if bin(outside).count("1") > 1:
                    ok = False
                    break
                if outside:
                    v = outside.bit_length()
                    per_var[v] = per_var.get(v, 0) + 1
                    if per_var[v] > 1:
                        ok = False
                        break
            if ok:
                return size
    return n


class TestLambdaBackdoor:
    def test_already_trivial(self):
        ss = SampleSet.from_pairs([("100", 1), ("010", 0), ("000", 1)])
        ell, chosen = lambda_backdoor(ss, pivot=1)
        assert ell == 0 and chosen == frozenset()

    def test_forced_variable(self):
        ss = SampleSet.from_pairs([("1100", 1), ("1010", 0)])
        ell, chosen = lambda_backdoor(ss, pivot=1)
        assert (ell, chosen) == (1, frozenset({1}))

    def test_pivot_zero_variant(self):
        ss = SampleSet.from_pairs([("0011", 1), ("0101", 0)])
        ell, chosen = lambda_backdoor(ss, pivot=0)
        assert (ell, chosen) == (1, frozenset({1}))

    def test_matches_exhaustive_search(self, rng):
        for _ in range(60):
            n = rng.randint(1, 8)
            t = rng.randint(0, 8)
            masks = rng.sample(range(2**n), min(t, 2**n))
            samples = SampleSet(
                [LabeledSample(Assignment(n, m), 1) for m in masks], n=n
            )
            ell, chosen = lambda_backdoor(samples, pivot=1)
            assert ell == len(chosen)
            assert ell == exhaustive_min_backdoor(masks, n)
            # conditions (a) and (b) hold for the returned set
            s_mask = sum(1 << (v - 1) for v in chosen)
            seen = set()
            for m in masks:
                outside = m & ~s_mask
                assert bin(outside).count("1") <= 1
                if outside:
                    assert outside not in seen
                    seen.add(outside)

    @settings(max_examples=60, deadline=None)
    @given(
        st.integers(min_value=1, max_value=8),
        st.data(),
    )
    def test_monotone_under_sample_growth(self, n, data):
        universe = list(range(2**n))
        big = data.draw(st.lists(st.sampled_from(universe), min_size=0, max_size=10))
        big = list(dict.fromkeys(big))
        small = big[: data.draw(st.integers(min_value=0, max_value=len(big)))]
        to_set = lambda masks: [Assignment(n, m) for m in masks]
        assert (
            lambda_backdoor(to_set(small), pivot=1)[0]
            <= lambda_backdoor(to_set(big), pivot=1)[0]
        )

    def test_bad_pivot(self):
        with pytest.raises(InputError):
            lambda_backdoor(SampleSet.from_pairs([("1", 1)]), pivot=2)
