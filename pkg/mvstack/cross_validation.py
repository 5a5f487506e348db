"""Fold assignment and out-of-sample predictions of a learner."""
from dataclasses import dataclass
import logging
import os
import warnings

from joblib import delayed, Parallel
from mvstack._seeding import STREAM_SUBMODEL, substream, subseed
from mvstack.errors import ConfigError, MissingDataError, MvsError, ShapeError, annotate_fold
from mvstack.families import get_family
import numpy as np

logger = logging.getLogger(__name__)

THREADS_VARIABLE = "MVSTACK_THREADS"


@dataclass(frozen=True, eq=False)
class FoldAssignment:
    """Assignment of the observations to cross-validation folds.

    Attributes
    ----------
    folds : np.ndarray(N,) of int
        Fold (0 to `k` - 1) of each observation.
    k : int
        Number of folds.
    stratified : bool
        True if the folds were stratified by outcome class.
    seed : int
        Seed of the assignment.

    """

    folds: np.ndarray
    k: int
    stratified: bool
    seed: int

    @property
    def n(self):
        """Number of observations."""
        return self.folds.size

    def sizes(self):
        """Return the number of observations in each fold."""
        return np.bincount(self.folds, minlength=self.k)

    def split(self, fold):
        """Return the training and held-out observations of a fold.

        Parameters
        ----------
        fold : int
            Held-out fold.

        Returns
        -------
        train : np.ndarray of int
            Indices of the observations outside of the fold.
        test : np.ndarray of int
            Indices of the observations in the fold.

        """
        return np.flatnonzero(self.folds != fold), np.flatnonzero(self.folds == fold)

    def restrict(self, rows):
        """Return the assignment of a subset of the observations.

        Parameters
        ----------
        rows : np.ndarray of int
            Observations to keep.

        Returns
        -------
        folds : FoldAssignment
            Assignment of the kept observations, in the order of `rows`. Folds may be empty.

        """
        return FoldAssignment(self.folds[rows], self.k, self.stratified, self.seed)


def make_folds(y, k, family="gaussian", seed=0):
    """Return a random assignment of the observations to `k` folds.

    Fold sizes differ by at most one. Binomial outcomes are stratified: every class is spread
    over the folds as evenly as possible. If a class has fewer than `k` members, the folds are
    drawn without stratification and a warning is issued.

    Parameters
    ----------
    y : np.ndarray(N,)
        Outcome vector.
    k : int
        Number of folds.
    family : {str, Family}
        Outcome family.
    seed : int
        Seed of the assignment.

    Returns
    -------
    folds : FoldAssignment

    Raises
    ------
    ConfigError
        If `k` is smaller than 2 or larger than the number of observations.

    """
    y = np.asarray(y)
    n = y.size
    k = int(k)
    if k < 2:
        raise ConfigError("Number of folds must be at least 2.")
    if k > n:
        raise ConfigError("Number of folds ({0}) exceeds the number of observations ({1}).".format(
            k, n
        ))
    rng = substream(seed)
    stratified = get_family(family).name == "binomial"
    if stratified:
        classes = [np.flatnonzero(y == label) for label in (0, 1)]
        if min(members.size for members in classes) < k:
            message = "A class has fewer than {0} members; folds are not stratified.".format(k)
            logger.warning(message)
            warnings.warn(message, UserWarning)
            stratified = False

    folds = np.empty(n, dtype=int)
    if stratified:
        order = np.concatenate([rng.permutation(members) for members in classes])
        folds[order] = np.arange(n) % k
        folds = rng.permutation(k)[folds]
    else:
        folds[rng.permutation(n)] = np.arange(n) % k
    folds.setflags(write=False)
    return FoldAssignment(folds, k, stratified, int(seed))


def resolve_n_jobs(parallel):
    """Return the number of joblib workers.

    Parameters
    ----------
    parallel : bool
        Whether independent sub-problems run concurrently.

    Returns
    -------
    n_jobs : int
        1 for sequential runs; otherwise the value of the environment variable
        ``MVSTACK_THREADS`` (-1, i.e. all cores, when unset or 0).

    Raises
    ------
    ConfigError
        If ``MVSTACK_THREADS`` is not an integer.

    """
    if not parallel:
        return 1
    value = os.environ.get(THREADS_VARIABLE, "").strip()
    if not value:
        return -1
    try:
        threads = int(value)
    except ValueError:
        raise ConfigError("{0} must be an integer, not {1!r}.".format(THREADS_VARIABLE, value))
    if threads < 0:
        raise ConfigError("{0} must be nonnegative.".format(THREADS_VARIABLE))
    return threads if threads > 0 else -1


def fit_fold(data, learner, folds, fold, seed):
    """Train a learner without a fold and predict the held-out observations.

    Parameters
    ----------
    data : Dataset
        Inputs of the learner, without missing values.
    learner : BaseLearner
        Learning algorithm.
    folds : FoldAssignment
        Fold assignment of the observations of `data`.
    fold : int
        Held-out fold.
    seed : int
        Seed of the training run.

    Returns
    -------
    test : np.ndarray of int
        Held-out observations.
    predictions : np.ndarray
        Response-scale predictions of the held-out observations.

    Raises
    ------
    MvsError
        Errors of the learner, annotated with the fold.

    """
    train, test = folds.split(fold)
    try:
        fitted = learner.fit(data.subset(train), seed)
    except MvsError as error:
        raise annotate_fold(error, fold) from error
    return test, learner.predict(fitted, data.x[test])


def oos_predictions(data, columns, learner, folds, seed=0, key=(), n_jobs=1):
    """Return the cross-validated predictions of a learner on a group of features.

    The learner (including its internal tuning) is trained on the complement of every fold and
    predicts the held-out observations on the response scale.

    Parameters
    ----------
    data : Dataset
        Training data.
    columns : {np.ndarray of int, None}
        Features used by the learner. Default uses every feature.
    learner : BaseLearner
        Learning algorithm.
    folds : FoldAssignment
        Fold assignment of the observations.
    seed : int
        User seed. Fold `f` is trained with ``subseed(seed, STREAM_SUBMODEL, *key, f)``.
    key : tuple of int
        Identifier of the sub-problem, e.g. ``(level, view)``.
    n_jobs : int
        Number of joblib workers over the folds.

    Returns
    -------
    z : np.ndarray(N,)
        Out-of-sample predictions; `z[i]` comes from a model that never saw observation `i`.

    Raises
    ------
    ShapeError
        If the fold assignment does not cover the observations.
    MissingDataError
        If the selected features contain missing values.

    """
    if folds.n != data.n:
        raise ShapeError(
            "Fold assignment covers {0} observations, the data has {1}.".format(folds.n, data.n)
        )
    if columns is not None:
        data = data.subset(columns=np.asarray(columns))
    if data.has_missing():
        raise MissingDataError(
            "Out-of-sample predictions need complete features; restrict the rows first."
        )
    results = Parallel(n_jobs=n_jobs)(
        delayed(fit_fold)(data, learner, folds, fold, subseed(seed, STREAM_SUBMODEL, *key, fold))
        for fold in range(folds.k)
    )
    z = np.full(data.n, np.nan)
    for test, predictions in results:
        z[test] = predictions
    return z
