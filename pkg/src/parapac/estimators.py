"""Scikit-learn estimator facade over the consistency checkers.

Each classifier's ``fit(X, y)`` searches its hypothesis class for a formula
or vertex set agreeing with every row and raises if none exists, so a fitted
model is a zero-training-error witness.  ``X`` is a binary matrix: assignments
for the formula classes, flattened adjacency matrices (row-major, N*N columns)
for the graph classes.  The usual conventions apply: ``get_params``/clone,
``classes_``, ``n_features_in_``, and ``score`` from ClassifierMixin.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from .booleans import Assignment, LabeledSample, SampleSet, eval_cnf, eval_dnf, DnfFormula
from .consistency import (
    fvs_consistency,
    hdeletion_consistency,
    kclause_cnf_consistency,
    kcnf_consistency,
    kdnf_consistency,
    kterm_dnf_consistency,
)
from .errors import InputError
from .graphs import (
    ForbiddenFamily,
    Graph,
    GraphSample,
    GraphSampleSet,
    free_of_family,
    is_acyclic,
)
from .validation import check_binary_labels, check_binary_matrix, check_square_width

__all__ = [
    "KCnfClassifier",
    "KDnfClassifier",
    "KTermDnfClassifier",
    "KClauseCnfClassifier",
    "DeletionSetClassifier",
    "FeedbackVertexSetClassifier",
]


def _row_assignment(row: np.ndarray) -> Assignment:
    return Assignment.from_bits([int(b) for b in row])


class _FormulaClassifier(BaseEstimator, ClassifierMixin):
    """Shared fit/predict plumbing for the boolean-formula classes."""

    _checker = None  # set by subclasses

    def __init__(self, k: int = 1):
        self.k = k

    def fit(self, X, y):
        X = check_binary_matrix(X)
        y = check_binary_labels(y, X.shape[0])
        samples = SampleSet(
            (
                LabeledSample(_row_assignment(row), int(label))
                for row, label in zip(X, y)
            ),
            n=X.shape[1],
        )
        outcome = type(self)._checker(samples, self.k)
        if not outcome.consistent:
            raise InputError(
                f"no hypothesis in the class (k={self.k}) is consistent with the data"
            )
        self.formula_ = outcome.hypothesis
        self.n_features_in_ = X.shape[1]
        self.classes_ = np.array([0, 1])
        return self

    def predict(self, X):
        check_is_fitted(self, "formula_")
        X = check_binary_matrix(X, self.n_features_in_)
        ev = eval_dnf if isinstance(self.formula_, DnfFormula) else eval_cnf
        return np.array(
            [ev(self.formula_, _row_assignment(row)) for row in X], dtype=np.int64
        )


class KCnfClassifier(_FormulaClassifier):
    """CNF with clauses of at most k literals, fit by survivor elimination."""

    _checker = staticmethod(kcnf_consistency)


class KDnfClassifier(_FormulaClassifier):
    """DNF with terms of at most k literals."""

    _checker = staticmethod(kdnf_consistency)


class KTermDnfClassifier(_FormulaClassifier):
    """DNF with at most k terms, fit through kernelization."""

    _checker = staticmethod(kterm_dnf_consistency)


class KClauseCnfClassifier(_FormulaClassifier):
    """CNF with at most k clauses."""

    _checker = staticmethod(kclause_cnf_consistency)


class _VertexSetClassifier(BaseEstimator, ClassifierMixin):
    """Shared plumbing for the graph classes; rows are flattened adjacency
    matrices over a common vertex set."""

    def __init__(self, k: int = 0):
        self.k = k

    def _family(self) -> ForbiddenFamily | None:
        return None

    def _sample_set(self, X, y) -> GraphSampleSet:
        order = check_square_width(X.shape[1])
        return GraphSampleSet(
            (
                GraphSample(
                    Graph.from_assignment(_row_assignment(row), order), int(label)
                )
                for row, label in zip(X, y)
            ),
            order,
        )

    def fit(self, X, y):
        X = check_binary_matrix(X)
        y = check_binary_labels(y, X.shape[0])
        samples = self._sample_set(X, y)
        family = self._family()
        if family is None:
            outcome = fvs_consistency(samples, self.k)
        else:
            outcome = hdeletion_consistency(samples, self.k, family)
        if not outcome.consistent:
            raise InputError(
                f"no deletion set of size <= {self.k} is consistent with the data"
            )
        self.vertex_set_ = outcome.hypothesis
        self.n_features_in_ = X.shape[1]
        self.classes_ = np.array([0, 1])
        return self

    def predict(self, X):
        check_is_fitted(self, "vertex_set_")
        X = check_binary_matrix(X, self.n_features_in_)
        order = check_square_width(self.n_features_in_)
        family = self._family()
        out = []
        for row in X:
            graph = Graph.from_assignment(_row_assignment(row), order)
            if family is None:
                out.append(int(is_acyclic(graph, self.vertex_set_.vertices)))
            else:
                out.append(int(free_of_family(graph, family, self.vertex_set_.vertices)))
        return np.array(out, dtype=np.int64)


class DeletionSetClassifier(_VertexSetClassifier):
    """Learns a vertex set whose removal makes every positive graph avoid all
    forbidden induced subgraphs.

    ``forbidden`` is a sequence of Graph objects (or a ForbiddenFamily); for
    example a single two-vertex complete graph makes this a hidden-vertex-cover
    learner.
    """

    def __init__(self, k: int = 0, forbidden=None):
        super().__init__(k=k)
        self.forbidden = forbidden

    def _family(self) -> ForbiddenFamily:
        if self.forbidden is None:
            raise InputError("DeletionSetClassifier requires a forbidden family")
        if isinstance(self.forbidden, ForbiddenFamily):
            return self.forbidden
        return ForbiddenFamily(tuple(self.forbidden))


class FeedbackVertexSetClassifier(_VertexSetClassifier):
    """Learns a vertex set whose removal makes every positive graph acyclic."""
