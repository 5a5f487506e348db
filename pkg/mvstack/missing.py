"""Missing views: screening, partial cross-validation and meta-level imputation.

Missing feature values are never imputed in the feature space. A view is missing for an
observation if any of its features is missing; the sub-models of that view are trained and
cross-validated on the complete observations only, and the resulting missing entries of the
matrix of cross-validated predictions are handled at the meta level.

"""
from dataclasses import dataclass, field
import logging

from joblib import delayed, Parallel
from mvstack._seeding import STREAM_IMPUTE, substream, subseed
from mvstack.cross_validation import make_folds, oos_predictions
from mvstack.data import Dataset, ViewHierarchy
from mvstack.errors import ConfigError, DataError, ImputeError, MissingDataError, ShapeError
import numpy as np
from scipy import linalg

logger = logging.getLogger(__name__)

NA_KINDS = ("fail", "pass", "mean", "matched_draw")
NA_ALIASES = {"matched-draw": "matched_draw"}
NA_OPTIONS = {"fail": (), "pass": (), "mean": (), "matched_draw": ("m", "donors")}
FAIL_MESSAGE = (
    "Missing values detected in x. Either remove or impute missing values, or choose a "
    "different na_action."
)
RIDGE = 1e-5


def _cli_name(kind):
    return kind.replace("_", "-")


@dataclass(frozen=True)
class NaAction:
    """Handling of missing views.

    Attributes
    ----------
    kind : {"fail", "pass", "mean", "matched_draw"}
        "fail" rejects missing values. The other kinds train every view on its complete
        observations and then either pass the missing entries of the meta features on
        ("pass"), replace them by the column mean ("mean") or impute them by matched draws
        averaged over `m` rounds ("matched_draw").
    m : int
        Number of imputation rounds.
    donors : int
        Number of nearest observed values among which a matched draw is made.

    """

    kind: str = "fail"
    m: int = 5
    donors: int = 5

    def __post_init__(self):
        kind = NA_ALIASES.get(self.kind, self.kind)
        if kind not in NA_KINDS:
            raise ConfigError(
                "Unknown na_action {0!r}; supported actions are {{{1}}}.".format(
                    self.kind, ",".join(_cli_name(i) for i in NA_KINDS)
                )
            )
        object.__setattr__(self, "kind", kind)
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 1:
            raise ConfigError("Number of imputations `m` must be a positive integer.")
        if isinstance(self.donors, bool) or int(self.donors) != self.donors or self.donors < 1:
            raise ConfigError("Number of donors must be a positive integer.")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "donors", int(self.donors))

    @classmethod
    def from_options(cls, kind, options=None):
        """Return the action of the given kind with method-specific options.

        Parameters
        ----------
        kind : str
            Name of the action. "matched-draw" is accepted for "matched_draw".
        options : {dict, None}
            Options of the action ("m" and "donors" for "matched_draw"). Values may be strings.

        Raises
        ------
        ConfigError
            If the kind is unknown or an option is not accepted by the kind.

        """
        options = dict(options or {})
        probe = cls(kind)
        allowed = NA_OPTIONS[probe.kind]
        for key in options:
            if key not in allowed:
                raise ConfigError(
                    "na_action {0!r} does not accept the option {1!r}.".format(
                        _cli_name(probe.kind), key
                    )
                )
        try:
            values = {key: int(value) for key, value in options.items()}
        except ValueError:
            raise ConfigError("Options of na_action must be integers.")
        return cls(probe.kind, **values)

    @property
    def options(self):
        """Options of the action, as given to `from_options`."""
        return {key: getattr(self, key) for key in NA_OPTIONS[self.kind]}


@dataclass(frozen=True, eq=False)
class ImputationReport:
    """Description of the handling of the missing entries of a matrix of meta features.

    Attributes
    ----------
    methods : tuple of str
        Method applied to each column ("pass", "mean" or "matched_draw"); "" for columns
        without missing entries.
    m : int
        Number of imputation rounds.
    options : dict
        Options of the action.
    missing_rows : tuple of np.ndarray
        Rows with a missing entry, per column.
    order : tuple of int
        Columns in the order in which they were imputed.
    draws : dict of int to np.ndarray(m, K)
        Drawn values of every round, per column with missing entries (matched draws only).

    """

    methods: tuple
    m: int
    options: dict = field(default_factory=dict)
    missing_rows: tuple = ()
    order: tuple = ()
    draws: dict = field(default_factory=dict)

    @property
    def imputed_columns(self):
        """Columns with a nonempty method tag."""
        return tuple(j for j, method in enumerate(self.methods) if method)

    def to_dict(self):
        """Return the report as plain lists and numbers."""
        return {
            "methods": list(self.methods),
            "m": self.m,
            "options": dict(self.options),
            "missing_rows": [rows.tolist() for rows in self.missing_rows],
            "order": list(self.order),
            "draws": {str(j): draws.tolist() for j, draws in self.draws.items()},
        }

    @classmethod
    def from_dict(cls, payload):
        """Return the report stored by `to_dict`."""
        return cls(
            methods=tuple(payload["methods"]),
            m=int(payload["m"]),
            options=dict(payload["options"]),
            missing_rows=tuple(np.array(rows, dtype=int) for rows in payload["missing_rows"]),
            order=tuple(int(j) for j in payload["order"]),
            draws={int(j): np.array(draws, dtype=float) for j, draws in payload["draws"].items()},
        )


def screen_missing(data, hierarchy, na):
    """Return the complete observations of every lowest-level view.

    Parameters
    ----------
    data : Dataset
        Training data.
    hierarchy : ViewHierarchy
        Views of the features.
    na : NaAction
        Handling of missing views.

    Returns
    -------
    complete : list of np.ndarray of int
        For each view of the lowest level, the observations without any missing feature of
        the view.

    Raises
    ------
    TypeError
        If the arguments have the wrong types.
    ShapeError
        If the hierarchy does not describe the features of the data.
    MissingDataError
        If the data contains missing values and `na.kind` is "fail".

    """
    if not isinstance(data, Dataset):
        raise TypeError("`data` must be a `Dataset` instance.")
    if not isinstance(hierarchy, ViewHierarchy):
        raise TypeError("`hierarchy` must be a `ViewHierarchy` instance.")
    if not isinstance(na, NaAction):
        raise TypeError("`na` must be a `NaAction` instance.")
    if hierarchy.p != data.p:
        raise ShapeError(
            "Hierarchy describes {0} features, the data has {1}.".format(hierarchy.p, data.p)
        )
    missing = np.isnan(data.x)
    if na.kind == "fail" and missing.any():
        raise MissingDataError(FAIL_MESSAGE)
    complete = [np.flatnonzero(~missing[:, view].any(axis=1)) for view in hierarchy.members(0)]
    for view, rows in enumerate(complete, start=1):
        if rows.size < data.n:
            logger.info("View %d is missing for %d observations", view, data.n - rows.size)
    return complete


def partial_folds(folds, rows, y, family):
    """Return the fold assignment of the given rows.

    The global assignment is kept for the rows; if a fold ends up empty, the folds of the rows
    are redrawn from a seed derived from the global one.

    Parameters
    ----------
    folds : FoldAssignment
        Assignment of all observations.
    rows : np.ndarray of int
        Observations to keep.
    y : np.ndarray(N,)
        Outcome of all observations.
    family : Family
        Outcome family.

    Returns
    -------
    folds : FoldAssignment
        Assignment of the kept observations, in the order of `rows`.

    Raises
    ------
    DataError
        If there are fewer rows than folds.

    """
    rows = np.asarray(rows, dtype=int)
    if rows.size < folds.k:
        raise DataError(
            "Only {0} complete observations are left for {1} folds.".format(rows.size, folds.k)
        )
    restricted = folds.restrict(rows)
    if np.all(restricted.sizes() > 0):
        return restricted
    logger.debug("Redrawing the folds of %d complete observations", rows.size)
    return make_folds(y[rows], folds.k, family, subseed(folds.seed, rows.size))


def oos_predictions_partial(data, columns, learner, folds, complete_rows, seed=0, key=(),
                            n_jobs=1):
    """Return the cross-validated predictions of a view trained on its complete observations.

    Parameters
    ----------
    data : Dataset
        Training data.
    columns : np.ndarray of int
        Features of the view.
    learner : BaseLearner
        Learning algorithm of the view.
    folds : FoldAssignment
        Fold assignment of all observations.
    complete_rows : np.ndarray of int
        Observations without missing features in the view.
    seed : int
        User seed (see `oos_predictions`).
    key : tuple of int
        Identifier of the sub-problem.
    n_jobs : int
        Number of joblib workers over the folds.

    Returns
    -------
    z : np.ndarray(N,)
        Out-of-sample predictions; NaN on the incomplete observations.

    Raises
    ------
    DataError
        If there are fewer complete observations than folds.

    """
    rows = np.asarray(complete_rows, dtype=int)
    if rows.size == data.n:
        return oos_predictions(data, columns, learner, folds, seed=seed, key=key, n_jobs=n_jobs)
    restricted = partial_folds(folds, rows, data.y, data.family)
    z = np.full(data.n, np.nan)
    z[rows] = oos_predictions(
        data.subset(rows, np.asarray(columns)), None, learner, restricted, seed=seed, key=key,
        n_jobs=n_jobs,
    )
    return z


def _posterior_draw(x_obs, t, rng):
    """Return the least-squares and a posterior draw of the coefficients of a linear model."""
    gram = x_obs.T @ x_obs
    gram = gram + RIDGE * np.diag(np.diag(gram))
    cov = linalg.inv(gram)
    coef = cov @ (x_obs.T @ t)
    resid = t - x_obs @ coef
    df = max(t.size - x_obs.shape[1], 1)
    sigma = np.sqrt(np.sum(resid ** 2) / rng.chisquare(df))
    try:
        root = linalg.cholesky(cov, lower=True)
    except linalg.LinAlgError:
        vecs, vals, _ = linalg.svd(cov)
        root = vecs * np.sqrt(np.maximum(vals, 0))
    draw = coef + sigma * root @ rng.standard_normal(coef.size)
    return coef, draw


def _matched_round(z, missing, y, order, donors, rng):
    """Return one completion of `z` by matched draws, and the values drawn per column."""
    filled = z.copy()
    for j in order:
        filled[missing[:, j], j] = np.mean(z[~missing[:, j], j])
    draws = {}
    n, q = z.shape
    for j in order:
        observed = ~missing[:, j]
        others = [i for i in range(q) if i != j]
        design = np.column_stack([np.ones(n), filled[:, others], y])
        t = z[observed, j]
        coef, draw = _posterior_draw(design[observed], t, rng)
        fitted_obs = design[observed] @ coef
        fitted_mis = design[~observed] @ draw
        size = min(donors, t.size)
        values = np.empty(fitted_mis.size)
        for i, target in enumerate(fitted_mis):
            nearest = np.argsort(np.abs(fitted_obs - target), kind="stable")[:size]
            values[i] = t[rng.choice(nearest)]
        filled[~observed, j] = values
        draws[j] = values
    return filled, draws


def impute_meta(z, y, na, seed=0, n_jobs=1):
    """Return the matrix of meta features with its missing entries handled.

    Parameters
    ----------
    z : np.ndarray(N, K)
        Cross-validated predictions; NaN marks a missing entry.
    y : np.ndarray(N,)
        Outcome. It is a predictor of the matched draws.
    na : NaAction
        Handling of the missing entries.
    seed : int
        Seed of the matched draws. Round `r` uses the stream ``(STREAM_IMPUTE, r)``.
    n_jobs : int
        Number of joblib workers over the imputation rounds.

    Returns
    -------
    z : np.ndarray(N, K)
        Completed matrix ("pass" returns the input unchanged). Observed entries are untouched;
        matched-draw entries are the average of the `m` rounds.
    report : ImputationReport
        Method per column, options and per-round draws.

    Raises
    ------
    ShapeError
        If `z` is not a matrix with one row per outcome.
    MissingDataError
        If `z` has missing entries and `na.kind` is "fail".
    ImputeError
        If a column is entirely missing (except for "pass").

    """
    z = np.array(z, dtype=float)
    y = np.asarray(y, dtype=float)
    if z.ndim != 2 or z.shape[0] != y.size:
        raise ShapeError("Meta features must be a matrix with one row per observation.")
    missing = np.isnan(z)
    has_missing = missing.any(axis=0)
    missing_rows = tuple(np.flatnonzero(col) for col in missing.T)
    methods = tuple(na.kind if flag else "" for flag in has_missing)
    order = tuple(int(j) for j in np.flatnonzero(has_missing))
    if not missing.any():
        return z, ImputationReport(("",) * z.shape[1], na.m, na.options, missing_rows)
    if na.kind == "fail":
        raise MissingDataError(FAIL_MESSAGE)
    if na.kind == "pass":
        return z, ImputationReport(methods, na.m, na.options, missing_rows, order)
    empty = np.flatnonzero(missing.all(axis=0))
    if empty.size:
        raise ImputeError(
            "Meta feature column(s) {0} are entirely missing.".format((empty + 1).tolist())
        )

    result = z.copy()
    if na.kind == "mean":
        for j in order:
            result[missing[:, j], j] = np.mean(z[~missing[:, j], j])
        return result, ImputationReport(methods, na.m, na.options, missing_rows, order)

    rounds = Parallel(n_jobs=n_jobs)(
        delayed(_matched_round)(z, missing, y, order, na.donors, substream(seed, STREAM_IMPUTE, r))
        for r in range(na.m)
    )
    draws = {j: np.array([round_draws[j] for _, round_draws in rounds]) for j in order}
    for j in order:
        total = np.zeros(missing_rows[j].size)
        for values in draws[j]:
            total += values
        result[missing[:, j], j] = total / na.m
    logger.info(
        "Imputed %d meta feature(s) by matched draws averaged over %d round(s)", len(order), na.m
    )
    return result, ImputationReport(methods, na.m, na.options, missing_rows, order, draws)
