"""Test mvstack.cross_validation."""
from mvstack._seeding import STREAM_SUBMODEL, subseed
from mvstack.base import BaseLearner
from mvstack.cross_validation import (
    fit_fold,
    FoldAssignment,
    make_folds,
    oos_predictions,
    resolve_n_jobs,
    THREADS_VARIABLE,
)
from mvstack.data import Dataset
from mvstack.errors import ConfigError, DegenerateError, MissingDataError, ShapeError
from mvstack.learners.glm import GlmLearner
import numpy as np
import pytest
from utils import MeanLearner, view_data


def test_make_folds():
    """Test mvstack.cross_validation.make_folds."""
    y = np.arange(23, dtype=float)
    test = make_folds(y, 5, "gaussian", seed=1)
    assert isinstance(test, FoldAssignment)
    assert test.n == 23
    assert test.k == 5
    assert not test.stratified
    assert test.seed == 1
    assert sorted(test.sizes()) == [4, 4, 5, 5, 5]
    with pytest.raises(ValueError):
        test.folds[0] = 1

    # identical seeds give identical folds
    assert np.array_equal(make_folds(y, 5, "gaussian", seed=1).folds, test.folds)
    assert not np.array_equal(make_folds(y, 5, "gaussian", seed=2).folds, test.folds)
    # leave-one-out
    assert np.array_equal(np.sort(make_folds(y, 23).folds), np.arange(23))

    assert np.all(make_folds(np.arange(10.0), 5).sizes() == 2)

    with pytest.raises(ConfigError):
        make_folds(y, 1)
    with pytest.raises(ConfigError):
        make_folds(y, 24)


def test_make_folds_stratified():
    """Test the stratification of mvstack.cross_validation.make_folds."""
    y = np.array([1.0] * 12 + [0.0] * 28)
    test = make_folds(y, 4, "binomial", seed=3)
    assert test.stratified
    assert np.all(test.sizes() == 10)
    for fold in range(4):
        _, held_out = test.split(fold)
        assert np.sum(y[held_out]) == 3

    y = np.array([1.0] * 3 + [0.0] * 17)
    with pytest.warns(UserWarning, match="not stratified"):
        test = make_folds(y, 5, "binomial", seed=3)
    assert not test.stratified
    assert np.all(test.sizes() == 4)

    # exact stratification
    y = np.array([1.0] * 6 + [0.0] * 4)
    test = make_folds(y, 2, "binomial", seed=0)
    for fold in range(2):
        _, held_out = test.split(fold)
        assert np.sum(y[held_out]) == 3
        assert held_out.size == 5


def test_fold_assignment():
    """Test mvstack.cross_validation.FoldAssignment."""
    test = FoldAssignment(np.array([0, 1, 2, 0, 1, 2, 0]), 3, False, 0)
    train, held_out = test.split(0)
    assert np.array_equal(train, [1, 2, 4, 5])
    assert np.array_equal(held_out, [0, 3, 6])
    assert np.array_equal(test.sizes(), [3, 2, 2])
    sub = test.restrict(np.array([1, 4, 6]))
    assert np.array_equal(sub.folds, [1, 1, 0])
    assert sub.k == 3
    assert np.array_equal(sub.sizes(), [1, 2, 0])


def test_resolve_n_jobs(monkeypatch):
    """Test mvstack.cross_validation.resolve_n_jobs."""
    monkeypatch.delenv(THREADS_VARIABLE, raising=False)
    assert resolve_n_jobs(False) == 1
    assert resolve_n_jobs(True) == -1
    monkeypatch.setenv(THREADS_VARIABLE, "3")
    assert resolve_n_jobs(True) == 3
    assert resolve_n_jobs(False) == 1
    monkeypatch.setenv(THREADS_VARIABLE, "0")
    assert resolve_n_jobs(True) == -1
    monkeypatch.setenv(THREADS_VARIABLE, "many")
    with pytest.raises(ConfigError):
        resolve_n_jobs(True)
    monkeypatch.setenv(THREADS_VARIABLE, "-2")
    with pytest.raises(ConfigError):
        resolve_n_jobs(True)


def test_fit_fold():
    """Test mvstack.cross_validation.fit_fold."""
    data = Dataset(np.zeros((6, 1)), np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]), "gaussian")
    folds = FoldAssignment(np.array([0, 0, 1, 1, 1, 0]), 2, False, 0)
    learner = MeanLearner()
    held_out, predictions = fit_fold(data, learner, folds, 0, 17)
    assert np.array_equal(held_out, [0, 1, 5])
    assert np.allclose(predictions, 4.0)
    assert learner.seeds == [17]


class _FailingLearner(BaseLearner):
    """Learner that fails on the training rows of a given fold."""

    kind = "failing"

    def __init__(self, n_train):
        self.n_train = n_train

    def fit(self, data, seed):
        if data.n == self.n_train:
            raise DegenerateError("nothing to learn")
        return MeanLearner().fit(data, seed)


def test_fit_fold_error():
    """Test that mvstack.cross_validation.fit_fold annotates learner errors."""
    data = Dataset(np.zeros((5, 1)), np.arange(5.0), "gaussian")
    folds = FoldAssignment(np.array([0, 0, 1, 1, 1]), 2, False, 0)
    with pytest.raises(DegenerateError, match="fold 1: nothing to learn") as error:
        fit_fold(data, _FailingLearner(2), folds, 1, 0)
    assert error.value.fold == 1


def test_oos_predictions():
    """Test mvstack.cross_validation.oos_predictions."""
    y = np.arange(10.0)
    x = np.column_stack([np.zeros(10), np.full(10, np.nan)])
    data = Dataset(x, y, "gaussian")
    folds = make_folds(y, 5, seed=0)
    learner = MeanLearner()
    z = oos_predictions(data, np.array([0]), learner, folds, seed=4, key=(1, 2))
    # every prediction is the mean of the outcome outside of its fold
    for fold in range(5):
        train, held_out = folds.split(fold)
        assert np.allclose(z[held_out], np.mean(y[train]))
    assert learner.seeds == [subseed(4, STREAM_SUBMODEL, 1, 2, fold) for fold in range(5)]

    with pytest.raises(MissingDataError):
        oos_predictions(data, None, learner, folds)
    with pytest.raises(ShapeError):
        oos_predictions(data, np.array([0]), learner, make_folds(np.arange(8.0), 4))


def test_oos_predictions_no_leakage():
    """Test that held-out observations do not influence their own predictions."""
    data, _ = view_data(40, [3], [1.0, 0.0, -1.0], seed=5)
    folds = make_folds(data.y, 4, seed=6)
    learner = GlmLearner("gaussian", k_lambda=3, n_lambda=10)
    z = oos_predictions(data, None, learner, folds, seed=7)
    assert not np.isnan(z).any()

    # changing the outcome of the observations of fold 0 leaves their predictions unchanged
    _, held_out = folds.split(0)
    y = data.y.copy()
    y[held_out] += 100.0
    z_changed = oos_predictions(Dataset(data.x, y, "gaussian"), None, learner, folds, seed=7)
    assert np.allclose(z_changed[held_out], z[held_out])

    parallel = oos_predictions(data, None, learner, folds, seed=7, n_jobs=2)
    assert np.allclose(parallel, z)


def test_oos_predictions_leave_one_out():
    """Test leave-one-out predictions of a null model."""
    y = np.array([3.0, 1.0, 4.0, 1.0, 5.0, 9.0])
    data = Dataset(np.ones((6, 1)), y, "gaussian")
    z = oos_predictions(data, None, MeanLearner(), make_folds(y, 6))
    assert np.allclose(z, (y.sum() - y) / 5)
