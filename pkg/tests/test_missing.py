"""Test mvstack.missing."""
from mvstack.cross_validation import FoldAssignment, make_folds
from mvstack.data import Dataset, ViewHierarchy
from mvstack.errors import ConfigError, DataError, ImputeError, MissingDataError, ShapeError
from mvstack.missing import (
    FAIL_MESSAGE,
    impute_meta,
    ImputationReport,
    NaAction,
    oos_predictions_partial,
    partial_folds,
    screen_missing,
)
import numpy as np
import pytest
from utils import MeanLearner


def test_na_action():
    """Test mvstack.missing.NaAction."""
    test = NaAction()
    assert test.kind == "fail"
    assert test.options == {}
    test = NaAction("matched-draw", m=3)
    assert test.kind == "matched_draw"
    assert test.options == {"m": 3, "donors": 5}
    with pytest.raises(ConfigError, match="fail,pass,mean,matched-draw"):
        NaAction("drop")
    with pytest.raises(ConfigError):
        NaAction("mean", m=0)
    with pytest.raises(ConfigError):
        NaAction("mean", m=1.5)
    with pytest.raises(ConfigError):
        NaAction("mean", donors=True)


def test_na_action_from_options():
    """Test mvstack.missing.NaAction.from_options."""
    test = NaAction.from_options("matched-draw", {"m": "10", "donors": "3"})
    assert test == NaAction("matched_draw", m=10, donors=3)
    assert NaAction.from_options("pass") == NaAction("pass")
    with pytest.raises(ConfigError):
        NaAction.from_options("mean", {"m": 3})
    with pytest.raises(ConfigError):
        NaAction.from_options("matched_draw", {"k": 3})
    with pytest.raises(ConfigError):
        NaAction.from_options("matched_draw", {"m": "many"})


def test_screen_missing():
    """Test mvstack.missing.screen_missing."""
    x = np.arange(20, dtype=float).reshape(5, 4)
    x[1, 0] = np.nan
    x[3, 3] = np.nan
    data = Dataset(x, np.arange(5.0), "gaussian")
    hierarchy = ViewHierarchy(np.array([1, 1, 2, 2]))
    complete = screen_missing(data, hierarchy, NaAction("pass"))
    assert np.array_equal(complete[0], [0, 2, 3, 4])
    assert np.array_equal(complete[1], [0, 1, 2, 4])

    with pytest.raises(MissingDataError, match="Missing values detected in x"):
        screen_missing(data, hierarchy, NaAction())
    with pytest.raises(ShapeError):
        screen_missing(data, ViewHierarchy(np.array([1, 2, 2])), NaAction("pass"))
    with pytest.raises(TypeError):
        screen_missing(data, np.array([1, 1, 2, 2]), NaAction("pass"))
    with pytest.raises(TypeError):
        screen_missing(data, hierarchy, "pass")
    # complete data passes every action
    data = Dataset(np.ones((3, 4)), np.arange(3.0), "gaussian")
    assert all(rows.size == 3 for rows in screen_missing(data, hierarchy, NaAction()))


def test_partial_folds():
    """Test mvstack.missing.partial_folds."""
    folds = FoldAssignment(np.array([0, 1, 2, 0, 1, 2, 0, 1]), 3, False, 5)
    y = np.arange(8.0)
    test = partial_folds(folds, np.array([0, 1, 2, 4, 5]), y, "gaussian")
    assert np.array_equal(test.folds, [0, 1, 2, 1, 2])

    # fold 2 is empty among the rows; the folds are redrawn
    test = partial_folds(folds, np.array([0, 1, 3, 4]), y, "gaussian")
    assert test.n == 4
    assert np.all(test.sizes() > 0)
    again = partial_folds(folds, np.array([0, 1, 3, 4]), y, "gaussian")
    assert np.array_equal(test.folds, again.folds)

    with pytest.raises(DataError):
        partial_folds(folds, np.array([0, 1]), y, "gaussian")


def test_oos_predictions_partial():
    """Test mvstack.missing.oos_predictions_partial."""
    x = np.zeros((12, 2))
    x[[2, 7], 1] = np.nan
    y = np.arange(12.0)
    data = Dataset(x, y, "gaussian")
    folds = make_folds(y, 3, seed=0)
    rows = np.flatnonzero(~np.isnan(x[:, 1]))
    z = oos_predictions_partial(data, np.array([1]), MeanLearner(), folds, rows)
    assert np.all(np.isnan(z[[2, 7]]))
    assert not np.isnan(z[rows]).any()
    # incomplete observations are not used for training
    restricted = partial_folds(folds, rows, y, data.family)
    for fold in range(3):
        train, held_out = restricted.split(fold)
        assert np.allclose(z[rows[held_out]], np.mean(y[rows[train]]))

    # complete views use the global folds
    z = oos_predictions_partial(data, np.array([0]), MeanLearner(), folds, np.arange(12))
    for fold in range(3):
        train, held_out = folds.split(fold)
        assert np.allclose(z[held_out], np.mean(y[train]))


def test_impute_meta_simple():
    """Test mvstack.missing.impute_meta with the fail, pass and mean actions."""
    y = np.array([0.0, 1.0, 0.0, 1.0])
    z = np.array([[0.1, 0.2], [0.5, np.nan], [0.3, 0.6], [0.7, np.nan]])
    with pytest.raises(MissingDataError) as error:
        impute_meta(z, y, NaAction())
    assert str(error.value) == FAIL_MESSAGE

    passed, report = impute_meta(z, y, NaAction("pass"))
    assert np.array_equal(passed, z, equal_nan=True)
    assert report.methods == ("", "pass")
    assert report.imputed_columns == (1,)
    assert np.array_equal(report.missing_rows[1], [1, 3])

    filled, report = impute_meta(z, y, NaAction("mean"))
    assert np.allclose(filled, [[0.1, 0.2], [0.5, 0.4], [0.3, 0.6], [0.7, 0.4]])
    assert report.methods == ("", "mean")
    assert report.order == (1,)
    assert report.draws == {}

    # complete matrices are returned as they are
    filled, report = impute_meta(z[[0, 2]], y[[0, 2]], NaAction())
    assert np.allclose(filled, z[[0, 2]])
    assert report.methods == ("", "")

    with pytest.raises(ImputeError):
        impute_meta(np.array([[0.1, np.nan], [0.2, np.nan]]), y[:2], NaAction("mean"))
    with pytest.raises(ShapeError):
        impute_meta(z, y[:3], NaAction("mean"))


def test_impute_meta_matched_draw():
    """Test mvstack.missing.impute_meta with matched draws."""
    rng = np.random.default_rng(0)
    n = 60
    y = rng.binomial(1, 0.5, n).astype(float)
    z = np.column_stack([
        np.clip(0.5 + 0.3 * (y - 0.5) + 0.1 * rng.standard_normal(n), 0, 1),
        np.clip(0.5 + 0.2 * (y - 0.5) + 0.1 * rng.standard_normal(n), 0, 1),
        rng.uniform(size=n),
    ])
    z[:8, 0] = np.nan
    z[20:25, 1] = np.nan
    na = NaAction("matched_draw", m=4, donors=3)
    filled, report = impute_meta(z, y, na, seed=11)
    observed = ~np.isnan(z)
    assert np.array_equal(filled[observed], z[observed])
    assert not np.isnan(filled).any()
    assert report.methods == ("matched_draw", "matched_draw", "")
    assert report.order == (0, 1)
    assert report.m == 4
    assert report.options == {"m": 4, "donors": 3}
    assert report.draws[0].shape == (4, 8)
    assert report.draws[1].shape == (4, 5)
    for j in (0, 1):
        column = z[observed[:, j], j]
        # every draw is an observed value of its column
        assert np.all(np.isin(report.draws[j], column))
        assert np.allclose(filled[~observed[:, j], j], report.draws[j].mean(axis=0))
        assert np.all(filled[:, j] >= column.min())
        assert np.all(filled[:, j] <= column.max())

    again, _ = impute_meta(z, y, na, seed=11)
    assert np.array_equal(again, filled)
    parallel, _ = impute_meta(z, y, na, seed=11, n_jobs=2)
    assert np.array_equal(parallel, filled)
    other, _ = impute_meta(z, y, na, seed=12)
    assert not np.array_equal(other, filled)


def test_imputation_report():
    """Test mvstack.missing.ImputationReport.to_dict and from_dict."""
    report = ImputationReport(
        ("", "matched_draw"), 2, {"m": 2, "donors": 5},
        (np.array([], dtype=int), np.array([0, 3])), (1,), {1: np.array([[0.2, 0.3], [0.4, 0.1]])},
    )
    payload = report.to_dict()
    assert payload["draws"] == {"1": [[0.2, 0.3], [0.4, 0.1]]}
    assert payload["missing_rows"] == [[], [0, 3]]
    test = ImputationReport.from_dict(payload)
    assert test.methods == report.methods
    assert test.order == (1,)
    assert test.imputed_columns == (1,)
    assert np.array_equal(test.missing_rows[1], [0, 3])
    assert np.allclose(test.draws[1], report.draws[1])
