import pytest

from parapac import (
    Assignment,
    ConsistencyInstance,
    InputError,
    LabeledSample,
    SampleSet,
    brute_force_consistency,
    hypothesis_agrees,
    kterm_dnf_consistency,
    kterm_dnf_kernelize,
    lambda_backdoor,
)
from parapac.consistency import MergedVariables, RemovedNegative, RemovedPositive

from conftest import backdoored_sample_set


def kernelize_with_min_backdoor(samples, k):
    _, backdoor = lambda_backdoor(samples, pivot=1)
    return kterm_dnf_kernelize(samples, k, backdoor), backdoor


class TestRules:
    def test_untouched_instance(self):
        # distinct columns, no single-pivot negatives, small classes
        ss = SampleSet.from_pairs([("10", 1), ("01", 1)])
        (reduced, trace), backdoor = kernelize_with_min_backdoor(ss, 1)
        assert backdoor == frozenset()
        assert reduced == ss
        assert trace.entries == ()
        assert trace.variable_map == (1, 2)

    def test_unit_vector_positives(self):
        # four unit vectors, k = 1: the positive-drop rule fires, then the
        # all-false columns merge; bounds are 2^0 * 3 samples, 0 + 3 + 1 vars
        ss = SampleSet.from_pairs(
            [("1000", 1), ("0100", 1), ("0010", 1), ("0001", 1)]
        )
        (reduced, trace), backdoor = kernelize_with_min_backdoor(ss, 1)
        assert backdoor == frozenset()
        assert len(reduced) <= 3
        assert reduced.n <= 4
        kinds = [type(e) for e in trace.entries]
        assert RemovedPositive in kinds

    def test_negative_drop(self):
        # negative sample with a unique true variable outside S disappears
        ss = SampleSet.from_pairs([("100", 0), ("000", 1)])
        (reduced, trace), _ = kernelize_with_min_backdoor(ss, 1)
        assert any(isinstance(e, RemovedNegative) for e in trace.entries)
        assert all(s.label == 1 for s in reduced)

    def test_merge_identical_columns(self):
        ss = SampleSet.from_pairs([("110", 1), ("001", 0)])
        (reduced, trace), _ = kernelize_with_min_backdoor(ss, 1)
        merges = [e for e in trace.entries if isinstance(e, MergedVariables)]
        assert merges and merges[0].kept < merges[0].removed

    def test_invalid_backdoor_rejected(self):
        ss = SampleSet.from_pairs([("1100", 1), ("1010", 1)])
        with pytest.raises(InputError):
            kterm_dnf_kernelize(ss, 1, frozenset())  # variable 1 is true twice

    def test_merge_forest(self, rng):
        for _ in range(50):
            ss = backdoored_sample_set(rng, rng.randint(2, 10), 2, rng.randint(1, 12))
            (_, trace), _ = kernelize_with_min_backdoor(ss, rng.randint(0, 2))
            removed = set()
            for e in trace.entries:
                if isinstance(e, MergedVariables):
                    assert e.removed not in removed
                    removed.add(e.removed)
                    assert e.kept not in removed


class TestKernelBounds:
    def test_bounds_hold_on_random_instances(self, rng):
        for _ in range(300):
            n = rng.randint(2, 10)
            ss = backdoored_sample_set(rng, n, 2, rng.randint(1, 14))
            k = rng.randint(0, 2)
            ell, backdoor = lambda_backdoor(ss, pivot=1)
            reduced, _ = kterm_dnf_kernelize(ss, k, backdoor)
            assert len(reduced) <= 2**ell * (k + 2)
            assert reduced.n <= ell + 2**ell * (k + 2) + 1


class TestKernelSafety:
    def test_consistency_preserved(self, rng):
        checked = 0
        for _ in range(500):
            n = rng.randint(2, 6)
            ss = backdoored_sample_set(rng, n, 2, rng.randint(1, 8))
            k = rng.randint(0, 2)
            _, backdoor = lambda_backdoor(ss, pivot=1)
            reduced, _ = kterm_dnf_kernelize(ss, k, backdoor)
            before = brute_force_consistency(
                ConsistencyInstance(kind="kterm_dnf", samples=ss, k=k)
            )
            after = brute_force_consistency(
                ConsistencyInstance(kind="kterm_dnf", samples=reduced, k=k)
            )
            assert before.consistent == after.consistent
            checked += 1
        assert checked == 500

    def test_lifted_hypotheses_verify(self, rng):
        lifted = 0
        for _ in range(200):
            n = rng.randint(2, 8)
            ss = backdoored_sample_set(rng, n, 2, rng.randint(1, 10))
            k = rng.randint(0, 2)
            out = kterm_dnf_consistency(ss, k)
            if out.consistent:
                assert hypothesis_agrees(out.hypothesis, ss)
                lifted += 1
        assert lifted > 50  # the generator produces plenty of consistent cases


class TestLifting:
    def test_positive_lift_without_all_negative_term(self):
        # class agreeing on a true backdoor column: a reduced-instance
        # hypothesis like (!x1 & x4) has no all-negative term, yet dropping
        # the pivot's negation from it restores the removed sample
        from parapac.booleans import DnfFormula, Literal, Term, eval_dnf
        from parapac.consistency import KernelTrace, _lift_formula

        removed = LabeledSample(Assignment.from_string("1001"), 1)
        trace = KernelTrace(
            entries=(RemovedPositive(sample=removed, pivot=1),),
            variable_map=(1, 2, 3, 4),
            n_original=4,
        )
        reduced_hyp = DnfFormula(
            (Term([Literal(1, False), Literal(4, True)]),), 4
        )
        lifted = _lift_formula(reduced_hyp, trace)
        assert eval_dnf(lifted, removed.assignment) == 1
        # the other class members keep their values
        for bits, want in (("0101", 1), ("0011", 1), ("0000", 0)):
            assert eval_dnf(lifted, Assignment.from_string(bits)) == want

    def test_positive_lift_noop_when_already_satisfied(self):
        from parapac.booleans import DnfFormula, Literal, Term
        from parapac.consistency import KernelTrace, _lift_formula

        removed = LabeledSample(Assignment.from_string("1001"), 1)
        trace = KernelTrace(
            entries=(RemovedPositive(sample=removed, pivot=1),),
            variable_map=(1, 2, 3, 4),
            n_original=4,
        )
        hyp = DnfFormula((Term([Literal(4, True)]),), 4)
        assert _lift_formula(hyp, trace) == hyp

    def test_negative_lift_drops_contradicted_terms(self):
        # conjoining !x1 onto a term that requires x1 makes it unsatisfiable,
        # so the lift drops it rather than emit a clashing term
        from parapac.booleans import DnfFormula, Literal, Term, eval_dnf
        from parapac.consistency import KernelTrace, _lift_formula

        removed = LabeledSample(Assignment.from_string("10"), 0)
        trace = KernelTrace(
            entries=(RemovedNegative(sample=removed, pivot=1),),
            variable_map=(1, 2),
            n_original=2,
        )
        hyp = DnfFormula(
            (Term([Literal(1, True)]), Term([Literal(2, True)])), 2
        )
        lifted = _lift_formula(hyp, trace)
        assert len(lifted.terms) == 1
        assert eval_dnf(lifted, removed.assignment) == 0
        assert eval_dnf(lifted, Assignment.from_string("01")) == 1

    def test_merge_lift_renames_reduced_positions(self):
        # after a merge the reduced instance is renumbered; literals must map
        # back through variable_map to original indices
        ss = SampleSet.from_pairs([("110", 1), ("001", 0)])
        out = kterm_dnf_consistency(ss, 1)
        assert out.consistent
        assert out.hypothesis.n == 3
        assert hypothesis_agrees(out.hypothesis, ss)


class TestBackdoorInteraction:
    def test_sample_parameter_of_draws_never_exceeds_support(self, rng):
        # subsets of a support have backdoor size at most the support's
        for _ in range(40):
            n = rng.randint(2, 7)
            masks = rng.sample(range(2**n), rng.randint(1, min(10, 2**n)))
            support = [Assignment(n, m) for m in masks]
            sub = [support[i] for i in range(0, len(support), 2)]
            assert (
                lambda_backdoor(sub, pivot=1)[0]
                <= lambda_backdoor(support, pivot=1)[0]
            )
