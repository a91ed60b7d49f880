import numpy as np
import pytest
from sklearn.base import clone
from sklearn.utils.validation import check_is_fitted

from parapac import (
    DeletionSetClassifier,
    FeedbackVertexSetClassifier,
    Graph,
    InputError,
    KClauseCnfClassifier,
    KCnfClassifier,
    KDnfClassifier,
    KTermDnfClassifier,
    complete_graph,
    cycle_graph,
    path_graph,
)
from parapac.booleans import CnfFormula, DnfFormula


def graph_rows(*graphs):
    return np.array([list(g.to_assignment().bits) for g in graphs])


X_BOOL = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 0]])
Y_BOOL = np.array([1, 1, 0])


class TestFormulaClassifiers:
    @pytest.mark.parametrize(
        "cls,formula_type",
        [
            (KCnfClassifier, CnfFormula),
            (KDnfClassifier, DnfFormula),
            (KTermDnfClassifier, DnfFormula),
            (KClauseCnfClassifier, CnfFormula),
        ],
    )
    def test_fit_predict_consistent(self, cls, formula_type):
        clf = cls(k=2).fit(X_BOOL, Y_BOOL)
        assert isinstance(clf.formula_, formula_type)
        assert list(clf.predict(X_BOOL)) == list(Y_BOOL)
        assert clf.score(X_BOOL, Y_BOOL) == 1.0
        assert clf.n_features_in_ == 3
        assert list(clf.classes_) == [0, 1]

    def test_inconsistent_raises(self):
        X = np.array([[1, 0], [0, 1], [0, 0]])
        y = np.array([1, 1, 0])
        with pytest.raises(InputError):
            KTermDnfClassifier(k=1).fit(X, y)

    def test_get_params_and_clone(self):
        clf = KCnfClassifier(k=2)
        assert clf.get_params() == {"k": 2}
        twin = clone(clf)
        assert twin.get_params() == {"k": 2}
        assert twin is not clf

    def test_unfitted_predict_rejected(self):
        from sklearn.exceptions import NotFittedError

        with pytest.raises(NotFittedError):
            KCnfClassifier(k=1).predict(X_BOOL)

    def test_input_validation(self):
        with pytest.raises(InputError):
            KCnfClassifier(k=1).fit(np.array([[0, 2]]), np.array([1]))
        with pytest.raises(InputError):
            KCnfClassifier(k=1).fit(X_BOOL, np.array([1, 1]))
        clf = KCnfClassifier(k=1).fit(X_BOOL, Y_BOOL)
        with pytest.raises(InputError):
            clf.predict(np.array([[1, 0]]))

    def test_predict_generalizes_off_sample(self):
        clf = KCnfClassifier(k=1).fit(X_BOOL, Y_BOOL)
        fresh = np.array([[0, 1, 0], [1, 0, 1]])
        preds = clf.predict(fresh)
        assert set(preds) <= {0, 1}


class TestGraphClassifiers:
    def test_feedback_vertex_set(self):
        X = graph_rows(complete_graph(4), cycle_graph(4), path_graph(4))
        y = np.array([0, 1, 1])
        clf = FeedbackVertexSetClassifier(k=1).fit(X, y)
        assert len(clf.vertex_set_.vertices) <= 1
        assert list(clf.predict(X)) == list(y)

    def test_deletion_set_vertex_cover(self):
        X = graph_rows(
            Graph.from_edges(4, [(1, 2), (2, 3), (1, 3)]),
            Graph.from_edges(4, [(1, 4)]),
        )
        y = np.array([1, 0])
        clf = DeletionSetClassifier(k=2, forbidden=[complete_graph(2)]).fit(X, y)
        assert clf.vertex_set_.vertices <= {1, 2, 3}
        assert list(clf.predict(X)) == [1, 0]

    def test_forbidden_required(self):
        X = graph_rows(path_graph(3))
        with pytest.raises(InputError):
            DeletionSetClassifier(k=1).fit(X, np.array([1]))

    def test_non_square_width_rejected(self):
        with pytest.raises(InputError):
            FeedbackVertexSetClassifier(k=1).fit(
                np.array([[0, 1, 1]]), np.array([1])
            )

    def test_clone_keeps_family(self):
        clf = DeletionSetClassifier(k=1, forbidden=[complete_graph(2)])
        twin = clone(clf)
        assert twin.get_params()["k"] == 1
        assert twin.get_params()["forbidden"] == clf.forbidden

    def test_fitted_flag(self):
        X = graph_rows(path_graph(3))
        clf = FeedbackVertexSetClassifier(k=0).fit(X, np.array([1]))
        check_is_fitted(clf)
