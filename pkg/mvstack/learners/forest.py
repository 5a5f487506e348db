"""Random forests of CART trees for binomial (classification) and other (regression) outcomes."""
from dataclasses import dataclass
import logging

from joblib import delayed, Parallel
from mvstack._seeding import STREAM_FOREST, STREAM_TREE, substream, subseed
from mvstack.base import BaseFit, BaseLearner, ImportanceRecord
from mvstack.data import Dataset
from mvstack.errors import (
    ConfigError,
    DataError,
    DegenerateError,
    MissingDataError,
    NumericError,
    ShapeError,
)
from mvstack.families import get_family
from mvstack.learners._tree import grow_tree
import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ForestSpec:
    """Configuration of a random forest.

    Attributes
    ----------
    n_trees : int
        Number of trees.
    mtry : {int, None}
        Number of candidate features per split. Default is floor(sqrt(P)) for classification
        and floor(P / 3) (at least 1) for regression.
    min_node : {int, None}
        Minimum number of training rows in each child. Default is 1 for classification and 5
        for regression.
    bootstrap : bool
        Whether every tree is grown on a bootstrap resample of size N. Otherwise every tree
        sees all rows.
    seed : int
        Seed of the forest. Tree `t` uses the stream ``(STREAM_TREE, t)``.
    n_jobs : int
        Number of joblib workers over the trees. The forest does not depend on it.

    """

    n_trees: int = 500
    mtry: int = None
    min_node: int = None
    bootstrap: bool = True
    seed: int = 0
    n_jobs: int = 1

    def __post_init__(self):
        if int(self.n_trees) < 1:
            raise ConfigError("Number of trees must be at least 1.")
        if self.mtry is not None and int(self.mtry) < 1:
            raise ConfigError("`mtry` must be at least 1.")
        if self.min_node is not None and int(self.min_node) < 1:
            raise ConfigError("`min_node` must be at least 1.")
        if int(self.seed) < 0:
            raise ConfigError("Seed must be nonnegative.")

    def resolve(self, p, classification):
        """Return the number of candidate features and the minimum child size for `p` features.

        Raises
        ------
        ConfigError
            If `mtry` is larger than `p`.

        """
        if self.mtry is None:
            mtry = int(np.floor(np.sqrt(p))) if classification else p // 3
            mtry = max(mtry, 1)
        else:
            mtry = int(self.mtry)
        if mtry > p:
            raise ConfigError("`mtry` ({0}) exceeds the number of features ({1}).".format(mtry, p))
        if self.min_node is None:
            min_node = 1 if classification else 5
        else:
            min_node = int(self.min_node)
        return mtry, min_node


@dataclass(frozen=True, eq=False)
class ForestFit(BaseFit):
    """Fitted random forest.

    Attributes
    ----------
    trees : tuple of Tree
        Trees of the forest.
    feature_importance : np.ndarray(P,)
        Mean decrease in impurity of every feature (Gini impurity for classification, variance
        for regression), averaged over the trees.
    oob_predictions : np.ndarray(N,)
        Mean prediction of the trees for which a training row was out of bag; NaN for rows
        that were in every bootstrap sample.
    spec : ForestSpec
        Configuration of the forest.
    family : Family
        Outcome family.

    """

    trees: tuple
    feature_importance: np.ndarray
    oob_predictions: np.ndarray
    spec: ForestSpec
    family: object

    kind = "rf"

    @property
    def p(self):
        """Number of features."""
        return self.feature_importance.size

    @property
    def classification(self):
        """True if the forest predicts probabilities of a binomial outcome."""
        return self.family.name == "binomial"

    @property
    def measure(self):
        """Name of the importance measure."""
        return "mean_decrease_gini" if self.classification else "mean_decrease_variance"

    def predict(self, x_new):
        """Return the predictions of the forest (see `forest_predict`)."""
        return forest_predict(self, x_new)

    def importance(self, names):
        """Return the mean decrease in impurity of the named inputs."""
        return ImportanceRecord(self.feature_importance.copy(), tuple(names), self.measure)


def _grow(x, y, t, mtry, min_node, spec):
    """Grow tree `t` of a forest and return it with its rows and impurity decreases."""
    rng = substream(spec.seed, STREAM_TREE, t)
    n = y.size
    rows = rng.integers(0, n, size=n) if spec.bootstrap else np.arange(n)
    tree, decrease = grow_tree(x, y, rows, mtry, min_node, rng)
    return tree, rows, decrease


def forest_fit(data, spec):
    """Return a random forest fitted to the given data.

    Parameters
    ----------
    data : Dataset
        Training data without missing values.
    spec : ForestSpec
        Configuration of the forest.

    Returns
    -------
    fit : ForestFit
        Fitted forest. Identical seeds and data give identical forests, whatever `n_jobs`.

    Raises
    ------
    TypeError
        If `data` is not a `Dataset` instance.
    MissingDataError
        If the features contain missing values.
    DataError
        If there are fewer than 2 observations.
    DegenerateError
        If a binomial outcome contains a single class.
    ConfigError
        If `mtry` exceeds the number of features.

    """
    if not isinstance(data, Dataset):
        raise TypeError("`data` must be a `Dataset` instance.")
    x = data.x
    y = data.y
    if np.isnan(x).any():
        raise MissingDataError("Feature matrix of a forest must not contain missing values.")
    if not np.all(np.isfinite(x)):
        raise NumericError("Feature matrix must only contain finite values.")
    if data.n < 2:
        raise DataError("At least 2 observations are needed to grow a forest.")
    classification = data.family.name == "binomial"
    if classification and np.unique(y).size < 2:
        raise DegenerateError("Binomial outcome of a forest contains a single class.")
    mtry, min_node = spec.resolve(data.p, classification)

    grown = Parallel(n_jobs=spec.n_jobs)(
        delayed(_grow)(x, y, t, mtry, min_node, spec) for t in range(int(spec.n_trees))
    )
    trees = tuple(tree for tree, _, _ in grown)
    decrease = np.zeros(data.p)
    oob_sum = np.zeros(data.n)
    oob_count = np.zeros(data.n)
    for tree, rows, tree_decrease in grown:
        decrease += tree_decrease
        out_of_bag = np.ones(data.n, dtype=bool)
        out_of_bag[rows] = False
        if out_of_bag.any():
            oob_sum[out_of_bag] += tree.predict(x[out_of_bag])
            oob_count[out_of_bag] += 1
    if classification:
        decrease *= 2
    importance = decrease / len(trees)
    with np.errstate(invalid="ignore", divide="ignore"):
        oob = np.where(oob_count > 0, oob_sum / np.maximum(oob_count, 1), np.nan)
    logger.debug(
        "Grew %d trees (mtry=%d, min_node=%d) on %d rows", len(trees), mtry, min_node, data.n
    )
    for array in (importance, oob):
        array.setflags(write=False)
    return ForestFit(trees, importance, oob, spec, data.family)


def forest_predict(fit, x_new):
    """Return the mean of the tree predictions.

    Parameters
    ----------
    fit : ForestFit
        Fitted forest.
    x_new : np.ndarray(N, P)
        Features of the observations to predict.

    Returns
    -------
    predictions : np.ndarray(N,)
        Class-1 probabilities for binomial forests, mean outcomes otherwise.

    Raises
    ------
    ShapeError
        If `x_new` does not have one column per feature of the forest.
    MissingDataError
        If `x_new` contains missing values.

    """
    x_new = np.asarray(x_new, dtype=float)
    if x_new.ndim != 2 or x_new.shape[1] != fit.p:
        raise ShapeError(
            "Features must be a matrix with {0} column(s), not shape {1}.".format(
                fit.p, x_new.shape
            )
        )
    if np.isnan(x_new).any():
        raise MissingDataError("Features to predict must not contain missing values.")
    total = np.zeros(x_new.shape[0])
    for tree in fit.trees:
        total += tree.predict(x_new)
    return total / len(fit.trees)


class ForestLearner(BaseLearner):
    """Random forest learner.

    Attributes
    ----------
    family : Family
        Outcome family; binomial forests are classification forests.
    spec : ForestSpec
        Configuration of the forests; the seed is replaced at every fit.

    """

    kind = "rf"

    def __init__(self, family, n_trees=500, mtry=None, min_node=None, bootstrap=True, n_jobs=1):
        """Initialize."""
        self.family = get_family(family)
        self.spec = ForestSpec(
            n_trees=n_trees, mtry=mtry, min_node=min_node, bootstrap=bootstrap, n_jobs=n_jobs
        )

    def fit(self, data, seed):
        """Return the forest fitted to the data, seeded with the stream ``(STREAM_FOREST,)``."""
        spec = ForestSpec(
            n_trees=self.spec.n_trees,
            mtry=self.spec.mtry,
            min_node=self.spec.min_node,
            bootstrap=self.spec.bootstrap,
            seed=subseed(seed, STREAM_FOREST),
            n_jobs=self.spec.n_jobs,
        )
        return forest_fit(data, spec)

    def __repr__(self):
        return "ForestLearner(family={0!r}, n_trees={1})".format(
            self.family.name, self.spec.n_trees
        )
