"""Core records shared by all modules: datasets, view hierarchies and fitting plans."""
from dataclasses import dataclass, field
import logging
import warnings

from mvstack.errors import (
    ConfigError,
    LabelError,
    NestingError,
    NumericError,
    ShapeError,
)
from mvstack.families import get_family
import numpy as np

logger = logging.getLogger(__name__)

LEARNER_ALIASES = {
    "glm": "glm",
    "penalized_glm": "glm",
    "staplr": "glm",
    "rf": "rf",
    "random_forest": "rf",
}
LAMBDA_RULES = ("min", "1se")


class Dataset:
    """Feature matrix, outcome vector and outcome family.

    Missing feature values are represented by NaN. The outcome may not contain missing values.
    Arrays are copied on construction and made read-only.

    Attributes
    ----------
    x : np.ndarray(N, P)
        Feature matrix.
        Rows correspond to observations and columns correspond to features.
    y : np.ndarray(N,)
        Outcome vector.
    family : Family
        Outcome distribution.
    n : int
        Number of observations.
        Property of `Dataset`.
    p : int
        Number of features.
        Property of `Dataset`.

    Methods
    -------
    __init__(self, x, y, family="binomial")
        Initialize.
    has_missing(self) : bool
        Return True if the feature matrix contains missing values.
    subset(self, rows=None, columns=None) : Dataset
        Return the dataset restricted to the given rows and columns.

    """

    def __init__(self, x, y, family="binomial"):
        """Initialize.

        Parameters
        ----------
        x : np.ndarray(N, P)
            Feature matrix. NaN marks a missing value.
        y : np.ndarray(N,)
            Outcome vector. Real for "gaussian", 0/1 for "binomial" and nonnegative integers for
            "poisson".
        family : {"gaussian", "binomial", "poisson", Family}
            Outcome distribution.

        Raises
        ------
        TypeError
            If `x` is not a two-dimensional `numpy` array.
            If `y` is not a one-dimensional `numpy` array.
        ShapeError
            If the number of rows of `x` is not equal to the length of `y`.
        NumericError
            If `x` contains infinite values.
        DataError
            If `y` contains missing values or values outside of the support of the family.

        """
        if not (isinstance(x, np.ndarray) and x.ndim == 2):
            raise TypeError("Feature matrix must be given as a two-dimensional `numpy` array.")
        if not (isinstance(y, np.ndarray) and y.ndim == 1):
            raise TypeError("Outcome must be given as a one-dimensional `numpy` array.")
        if x.dtype.kind not in "biuf" or y.dtype.kind not in "biuf":
            raise TypeError("Feature matrix and outcome must have a numerical data type.")
        if x.shape[0] != y.size:
            raise ShapeError(
                "Number of rows of the feature matrix ({0}) must be equal to the length of the "
                "outcome ({1}).".format(x.shape[0], y.size)
            )
        if np.any(np.isinf(x)):
            raise NumericError("Feature matrix must not contain infinite values.")
        self._family = get_family(family)
        self._y = self._family.validate_outcome(y).copy()
        self._x = np.array(x, dtype=float)
        self._x.setflags(write=False)
        self._y.setflags(write=False)

    @property
    def x(self):
        """Feature matrix."""
        return self._x

    @property
    def y(self):
        """Outcome vector."""
        return self._y

    @property
    def family(self):
        """Outcome distribution."""
        return self._family

    @property
    def n(self):
        """Number of observations."""
        return self._x.shape[0]

    @property
    def p(self):
        """Number of features."""
        return self._x.shape[1]

    def has_missing(self):
        """Return True if the feature matrix contains missing values."""
        return bool(np.isnan(self._x).any())

    def subset(self, rows=None, columns=None):
        """Return the dataset restricted to the given rows and columns.

        Parameters
        ----------
        rows : {np.ndarray, None}
            Indices (or boolean mask) of the observations to keep. Default keeps all.
        columns : {np.ndarray, None}
            Indices of the features to keep. Default keeps all.

        Returns
        -------
        subset : Dataset
            Restricted dataset with the same family.

        """
        x = self._x
        y = self._y
        if rows is not None:
            x = x[rows]
            y = y[rows]
        if columns is not None:
            x = x[:, columns]
        return Dataset(x, y, self._family)

    def __repr__(self):
        return "Dataset(n={0}, p={1}, family={2!r})".format(self.n, self.p, self._family.name)


class ViewHierarchy:
    """Grouping of the features into nested views at every level of a stacked model.

    Column 0 of the assignment is the lowest grouping level (the views whose features feed the
    base learners); column `levels - 2` is the highest. Views of a lower column are nested in
    exactly one view of every higher column.

    Attributes
    ----------
    levels : int
        Number of levels of the stacked model (number of assignment columns plus one).
    assignment : np.ndarray(P, levels - 1)
        View labels, 1 to `V` in every column.
    label_maps : tuple of dict
        For each column, the mapping from the labels given on ingest to the labels used.
    view_counts : tuple of int
        Number of views in each column.
        Property of `ViewHierarchy`.
    p : int
        Number of features.
        Property of `ViewHierarchy`.

    Methods
    -------
    __init__(self, assignment, levels=None, remap=True)
        Initialize.
    members(self, column) : list of np.ndarray
        Return the feature indices of each view of the given column.
    parents(self, column) : np.ndarray
        Return the label (0-based) of the parent view of each view of the given column.
    children(self, column) : list of np.ndarray
        Return the (0-based) views of column `column - 1` nested in each view of `column`.
    permute(self, order) : ViewHierarchy
        Return the hierarchy of the features reordered by `order`.

    """

    def __init__(self, assignment, levels=None, remap=True):
        """Initialize.

        Parameters
        ----------
        assignment : np.ndarray(P,) or np.ndarray(P, L - 1)
            View labels of the features. A one-dimensional array is treated as a single column
            (a two-level model).
        levels : {int, None}
            Number of levels. Default is the number of columns plus one.
        remap : bool
            If True, positive integer labels with gaps are remapped to 1, ..., V (in increasing
            order) and the mapping is recorded in `label_maps`. If False, gaps raise a
            `LabelError`.

        Raises
        ------
        TypeError
            If `assignment` is not a `numpy` array.
        ShapeError
            If the number of columns does not correspond to `levels`.
        ConfigError
            If `levels` is smaller than 2.
        LabelError
            If a label is missing, not a positive integer, or (with `remap=False`) labels are
            not 1 to V without gaps.
        NestingError
            If features that share a view in one column are split over several views in a
            higher column.

        """
        if not isinstance(assignment, np.ndarray):
            raise TypeError("View assignment must be given as a `numpy` array.")
        if assignment.ndim == 1:
            assignment = assignment[:, np.newaxis]
        if assignment.ndim != 2:
            raise ShapeError("View assignment must be a vector or a two-dimensional array.")
        if levels is None:
            levels = assignment.shape[1] + 1
        if not isinstance(levels, (int, np.integer)) or isinstance(levels, bool):
            raise TypeError("Number of levels must be an integer.")
        if levels < 2:
            raise ConfigError("Number of levels must be at least 2.")
        if assignment.shape[1] != levels - 1:
            raise ShapeError(
                "View assignment of a {0}-level model must have {1} column(s), not {2}.".format(
                    levels, levels - 1, assignment.shape[1]
                )
            )
        if assignment.shape[0] == 0:
            raise ShapeError("View assignment must contain at least one feature.")

        labels = np.asarray(assignment, dtype=float)
        if np.any(~np.isfinite(labels)):
            raise LabelError("View labels must not be missing.")
        if np.any(labels != np.round(labels)) or np.any(labels < 1):
            raise LabelError("View labels must be positive integers.")
        labels = labels.astype(int)

        columns = []
        label_maps = []
        for col in labels.T:
            unique = np.unique(col)
            if unique[-1] != unique.size:
                if not remap:
                    raise LabelError(
                        "View labels must run from 1 to the number of views without gaps."
                    )
                logger.debug("Remapping view labels %s to 1..%d", unique.tolist(), unique.size)
            mapping = {int(old): new for new, old in enumerate(unique, start=1)}
            columns.append(np.searchsorted(unique, col) + 1)
            label_maps.append(mapping)
        assignment = np.column_stack(columns)

        for level in range(assignment.shape[1] - 1):
            for view in range(1, assignment[:, level].max() + 1):
                parents = np.unique(assignment[assignment[:, level] == view, level + 1])
                if parents.size != 1:
                    raise NestingError(
                        "View {0} of column {1} is split over views {2} of column {3}.".format(
                            view, level + 1, parents.tolist(), level + 2
                        )
                    )

        assignment.setflags(write=False)
        self._levels = int(levels)
        self._assignment = assignment
        self._label_maps = tuple(label_maps)

    @property
    def levels(self):
        """Number of levels of the stacked model."""
        return self._levels

    @property
    def assignment(self):
        """View labels, 1 to `V` in every column."""
        return self._assignment

    @property
    def label_maps(self):
        """Mapping of the ingested labels to the labels used, per column."""
        return self._label_maps

    @property
    def view_counts(self):
        """Number of views in each column."""
        return tuple(int(col.max()) for col in self._assignment.T)

    @property
    def p(self):
        """Number of features."""
        return self._assignment.shape[0]

    def members(self, column):
        """Return the feature indices of each view of the given column.

        Parameters
        ----------
        column : int
            Column (0-based) of the assignment.

        Returns
        -------
        members : list of np.ndarray
            Feature indices of the views 1, ..., V of the column, in increasing order.

        """
        labels = self._assignment[:, column]
        return [np.flatnonzero(labels == view) for view in range(1, labels.max() + 1)]

    def parents(self, column):
        """Return the parent view of each view of the given column.

        Parameters
        ----------
        column : int
            Column (0-based) of the assignment. Must not be the last column.

        Returns
        -------
        parents : np.ndarray(V,)
            Parent view (0-based) in column `column + 1` of each view (0-based) of `column`.

        """
        labels = self._assignment[:, column]
        upper = self._assignment[:, column + 1]
        return np.array(
            [upper[np.flatnonzero(labels == view)[0]] - 1 for view in range(1, labels.max() + 1)]
        )

    def children(self, column):
        """Return the views of the column below that are nested in each view of `column`.

        Parameters
        ----------
        column : int
            Column (0-based) of the assignment. Must be at least 1.

        Returns
        -------
        children : list of np.ndarray
            For each view (0-based) of `column`, the views (0-based) of `column - 1` nested in it.

        """
        parents = self.parents(column - 1)
        return [np.flatnonzero(parents == view) for view in range(self.view_counts[column])]

    def permute(self, order):
        """Return the hierarchy of the features reordered by `order`.

        Parameters
        ----------
        order : np.ndarray(P,)
            New order of the features, i.e. feature `i` of the result is feature `order[i]`.

        Returns
        -------
        hierarchy : ViewHierarchy
            Hierarchy with its rows permuted.

        """
        return ViewHierarchy(self._assignment[order], levels=self._levels)

    def __eq__(self, other):
        return (
            isinstance(other, ViewHierarchy)
            and self._levels == other.levels
            and np.array_equal(self._assignment, other.assignment)
        )

    def __repr__(self):
        return "ViewHierarchy(levels={0}, view_counts={1})".format(self._levels, self.view_counts)


def validate_views(assignment, p, levels=None, remap=True):
    """Return the validated view hierarchy of a feature matrix with `p` columns.

    Parameters
    ----------
    assignment : {np.ndarray(P,), np.ndarray(P, L - 1), list}
        View labels of the features. A vector is accepted for two-level models.
    p : int
        Number of features.
    levels : {int, None}
        Number of levels. Default is the number of columns of `assignment` plus one.
    remap : bool
        Whether labels with gaps are remapped (see `ViewHierarchy`).

    Returns
    -------
    hierarchy : ViewHierarchy
        Validated hierarchy. `hierarchy.view_counts` reports the number of views per level.

    Raises
    ------
    ShapeError
        If `assignment` does not have `p` rows.
    LabelError
        If the labels are invalid.
    NestingError
        If the views are not nested.

    """
    assignment = np.asarray(assignment)
    if assignment.shape[0] != p:
        raise ShapeError(
            "View assignment has {0} rows but the feature matrix has {1} columns.".format(
                assignment.shape[0], p
            )
        )
    hierarchy = ViewHierarchy(assignment, levels=levels, remap=remap)
    logger.debug("Validated views: %r", hierarchy)
    return hierarchy


def _per_level(value, levels, name):
    """Broadcast a scalar option to all levels and check the length of a sequence."""
    if isinstance(value, (list, tuple, np.ndarray)):
        value = tuple(value)
        if len(value) != levels:
            raise ConfigError(
                "`{0}` must have one entry per level ({1}), not {2}.".format(
                    name, levels, len(value)
                )
            )
        return value
    return (value,) * levels


@dataclass(frozen=True)
class LevelPlan:
    """Learner and penalty configuration of every level of a stacked model.

    Level 1 holds the base learners (one per lowest-level view); the last level holds the final
    meta-learner.

    Attributes
    ----------
    alphas : tuple of float
        Elastic-net mixing parameter per level; 0 is ridge, 1 is lasso.
    nnc : tuple of int
        Nonnegativity constraint per level (1 to constrain the coefficients).
    learners : tuple of str
        "glm" (penalized GLM) or "rf" (random forest) per level.
    relax : tuple of bool
        Unpenalized refit on the selected support per level.
    adaptive : tuple of bool
        Ridge-initialised adaptive penalty weights per level.
    n_trees : int
        Number of trees of every random forest in the model.
    lambda_ratio : float
        Ratio of the smallest to the largest penalty strength of the paths of the GLM
        sub-models.
    warnings : tuple of str
        Messages about options that were ignored.

    """

    alphas: tuple
    nnc: tuple
    learners: tuple
    relax: tuple
    adaptive: tuple
    n_trees: int = 500
    lambda_ratio: float = 1e-4
    warnings: tuple = field(default=(), compare=False)

    def __post_init__(self):
        levels = len(self.alphas)
        if levels < 2:
            raise ConfigError("A stacked model has at least 2 levels.")
        for name in ("nnc", "learners", "relax", "adaptive"):
            if len(getattr(self, name)) != levels:
                raise ConfigError("`{0}` must have one entry per level ({1}).".format(name, levels))
        for alpha in self.alphas:
            if not 0 <= alpha <= 1:
                raise ConfigError("Each alpha must be in [0, 1], not {0}.".format(alpha))
        for nnc in self.nnc:
            if nnc not in (0, 1):
                raise ConfigError("Each nnc entry must be 0 or 1, not {0}.".format(nnc))
        learners = []
        for learner in self.learners:
            try:
                learners.append(LEARNER_ALIASES[str(learner).lower()])
            except KeyError:
                raise ConfigError(
                    "Learner type must be 'glm' or 'rf', not {0!r}.".format(learner)
                )
        if int(self.n_trees) < 1:
            raise ConfigError("Number of trees must be at least 1.")
        if not 0 < self.lambda_ratio < 1:
            raise ConfigError("`lambda_ratio` must be in (0, 1).")
        object.__setattr__(self, "learners", tuple(learners))
        object.__setattr__(self, "alphas", tuple(float(i) for i in self.alphas))
        object.__setattr__(self, "nnc", tuple(int(i) for i in self.nnc))
        object.__setattr__(self, "relax", tuple(bool(i) for i in self.relax))
        object.__setattr__(self, "adaptive", tuple(bool(i) for i in self.adaptive))

        messages = list(self.warnings)
        for level, (learner, nnc) in enumerate(zip(learners, self.nnc), start=1):
            message = "nnc is ignored at level {0} since its learner is a random forest.".format(
                level
            )
            if learner == "rf" and nnc and message not in messages:
                messages.append(message)
                warnings.warn(message, UserWarning)
        object.__setattr__(self, "warnings", tuple(messages))

    @property
    def levels(self):
        """Number of levels."""
        return len(self.alphas)

    @classmethod
    def create(cls, levels, alphas=None, nnc=None, learners="glm", relax=False, adaptive=False,
               n_trees=500, lambda_ratio=1e-4):
        """Return a plan, broadcasting scalar options to every level.

        Parameters
        ----------
        levels : int
            Number of levels.
        alphas : {float, sequence of float, None}
            Elastic-net mixing per level. Default is (0, 1) for two-level models; models with
            more levels require explicit values.
        nnc : {int, sequence of int, None}
            Nonnegativity constraints per level. Default is (0, 1) for two-level models; models
            with more levels require explicit values.
        learners : {str, sequence of str}
            Learner type per level ("glm" or "rf").
        relax : {bool, sequence of bool}
            Model relaxation per level.
        adaptive : {bool, sequence of bool}
            Adaptive weights per level.
        n_trees : int
            Number of trees of every random forest.
        lambda_ratio : float
            Ratio of the smallest to the largest penalty strength of every GLM path.

        Returns
        -------
        plan : LevelPlan

        Raises
        ------
        ConfigError
            If `alphas` or `nnc` are omitted for a model with more than two levels.
            If an option has the wrong number of entries.

        """
        if levels < 2:
            raise ConfigError("A stacked model has at least 2 levels.")
        if alphas is None or nnc is None:
            if levels != 2:
                raise ConfigError(
                    "Models with more than two levels require explicit `alphas` and `nnc`."
                )
            alphas = (0.0, 1.0) if alphas is None else alphas
            nnc = (0, 1) if nnc is None else nnc
        return cls(
            alphas=_per_level(alphas, levels, "alphas"),
            nnc=_per_level(nnc, levels, "nnc"),
            learners=_per_level(learners, levels, "learners"),
            relax=_per_level(relax, levels, "relax"),
            adaptive=_per_level(adaptive, levels, "adaptive"),
            n_trees=int(n_trees),
            lambda_ratio=float(lambda_ratio),
        )


@dataclass(frozen=True)
class CvConfig:
    """Cross-validation settings of a fit.

    Attributes
    ----------
    k_outer : int
        Number of folds used to generate the out-of-sample meta features.
    k_lambda : int
        Number of folds used to select the penalty strength of each GLM.
    seed : int
        User seed from which every random stream of the fit is derived.
    lambda_rule : {"min", "1se"}
        Rule used to pick the penalty strength from the cross-validated deviance.

    """

    k_outer: int = 10
    k_lambda: int = 10
    seed: int = 0
    lambda_rule: str = "min"

    def __post_init__(self):
        if int(self.k_outer) < 2 or int(self.k_lambda) < 2:
            raise ConfigError("Number of folds must be at least 2.")
        if self.lambda_rule not in LAMBDA_RULES:
            raise ConfigError(
                "`lambda_rule` must be one of {0}, not {1!r}.".format(
                    LAMBDA_RULES, self.lambda_rule
                )
            )
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ConfigError("Seed must be a nonnegative 64-bit integer.")

    def with_seed(self, seed):
        """Return a copy of the configuration with another seed."""
        return CvConfig(self.k_outer, self.k_lambda, int(seed), self.lambda_rule)
