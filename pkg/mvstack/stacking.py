"""Multi-view stacking over hierarchies of views with any number of levels.

Level 1 trains one sub-model per view of the lowest grouping level on the features of the view.
Every level below the top trains one sub-model per view of its grouping level on the
cross-validated predictions of the views nested in it. The top level trains a single
meta-model on the cross-validated predictions of the views of the highest grouping level.

"""
from dataclasses import dataclass, field
import logging

from mvstack._seeding import STREAM_FOLDS, STREAM_IMPUTE, STREAM_SUBMODEL, subseed
from mvstack.base import NA
from mvstack.cross_validation import make_folds, resolve_n_jobs
from mvstack.data import CvConfig, Dataset, LevelPlan, ViewHierarchy
from mvstack.errors import ConfigError, DataError, MissingDataError, ShapeError
from mvstack.learners.forest import ForestLearner
from mvstack.learners.glm import GlmLearner
from mvstack.missing import impute_meta, NaAction, oos_predictions_partial, screen_missing
import numpy as np

logger = logging.getLogger(__name__)

PREDTYPES = ("response", "class", "link")


@dataclass(frozen=True, eq=False)
class LevelFit:
    """Sub-models of one level of a stacked model.

    Attributes
    ----------
    level : int
        Level (1 is the lowest).
    models : tuple of BaseFit
        Sub-model of every view of the level (a single model at the top level), trained on
        all (complete) observations.
    inputs : tuple of np.ndarray of int
        Columns of the level's input matrix used by each sub-model: feature indices at level
        1, columns of the meta features of the level below otherwise.
    names : tuple of tuple of str
        Names of the inputs of each sub-model.
    rows : tuple of np.ndarray of int
        Observations on which each sub-model was trained.
    z : {np.ndarray(N, V), None}
        Cross-validated predictions of the sub-models (NaN on observations where a view is
        missing); None at the top level.
    z_complete : {np.ndarray(N, V), None}
        Meta features passed to the next level, after the handling of missing entries.
    report : {ImputationReport, None}
        Handling of the missing entries of `z`.
    folds : {np.ndarray(N,), None}
        Outer fold of every observation used to compute `z`.

    """

    level: int
    models: tuple
    inputs: tuple
    names: tuple
    rows: tuple
    z: np.ndarray = None
    z_complete: np.ndarray = None
    report: object = None
    folds: np.ndarray = None

    @property
    def n_models(self):
        """Number of sub-models."""
        return len(self.models)


@dataclass(frozen=True, eq=False)
class MvsModel:
    """Fitted multi-view stacking model.

    Attributes
    ----------
    levels : tuple of LevelFit
        Fitted levels, from the lowest to the top.
    hierarchy : ViewHierarchy
        Views of the features.
    plan : LevelPlan
        Learners and penalties of every level.
    cv : CvConfig
        Cross-validation settings and seed.
    na : NaAction
        Handling of missing views.
    family : Family
        Outcome family.
    p : int
        Number of features.
    outcome_mean : float
        Mean of the training outcome.
    metadata : dict
        Choices recorded with the model.

    """

    levels: tuple
    hierarchy: ViewHierarchy
    plan: LevelPlan
    cv: CvConfig
    na: NaAction
    family: object
    p: int
    outcome_mean: float
    metadata: dict = field(default_factory=dict)

    @property
    def n_levels(self):
        """Number of levels."""
        return len(self.levels)

    @property
    def top(self):
        """Final meta-model."""
        return self.levels[-1].models[0]

    def predict(self, x_new, predtype="response"):
        """Return the predictions of the model (see `mvs_predict`)."""
        return mvs_predict(self, x_new, predtype)

    def selected_views(self):
        """Return the (1-based) views of the highest grouping level with a nonzero meta weight.

        Returns None if the final meta-model has no coefficients.

        """
        record = self.top.coef(self.levels[-1].names[0])
        if record is NA:
            return None
        return tuple(int(j) + 1 for j in np.flatnonzero(record.coefficients))


def make_learner(plan, level, family, cv):
    """Return the learner of a level of the plan.

    Features are standardized at level 1 only; meta features share a common scale.

    """
    index = level - 1
    if plan.learners[index] == "rf":
        return ForestLearner(family, n_trees=plan.n_trees)
    return GlmLearner(
        family,
        alpha=plan.alphas[index],
        nonneg=bool(plan.nnc[index]),
        relax=plan.relax[index],
        adaptive=plan.adaptive[index],
        standardize=level == 1,
        k_lambda=cv.k_lambda,
        lambda_rule=cv.lambda_rule,
        lambda_ratio=plan.lambda_ratio,
    )


def _input_names(level, groups):
    prefix = "X" if level == 1 else "V"
    return tuple(tuple("{0}{1}".format(prefix, j + 1) for j in group) for group in groups)


def _fit_level(data, inputs, groups, rows, learner, folds, level, cv, n_jobs, progress):
    """Fit the sub-models of one level and return them with their cross-validated predictions.

    Fold `f` of view `v` is trained with ``subseed(cv.seed, STREAM_SUBMODEL, level, v, f)``;
    the sub-model on all rows of the view uses the fold index ``cv.k_outer``. `folds` is None at
    the top level, where only the full fits are needed.

    """
    level_data = Dataset(inputs, data.y, data.family)
    k = cv.k_outer
    jobs_per_view = 1 if folds is None else k + 1
    total = jobs_per_view * len(groups)
    done = 0
    if progress is not None:
        progress(level, done, total)

    models = []
    z = None if folds is None else np.full((data.n, len(groups)), np.nan)
    for view, (group, view_rows) in enumerate(zip(groups, rows)):
        if view_rows.size == 0:
            raise DataError(
                "Input {0} of level {1} is missing for every observation.".format(view + 1, level)
            )
        if folds is not None:
            z[:, view] = oos_predictions_partial(
                level_data, group, learner, folds, view_rows, seed=cv.seed, key=(level, view),
                n_jobs=n_jobs,
            )
            done += k
            if progress is not None:
                progress(level, done, total)
        full_seed = subseed(cv.seed, STREAM_SUBMODEL, level, view, k)
        models.append(learner.fit(level_data.subset(view_rows, group), full_seed))
        done += 1
        if progress is not None:
            progress(level, done, total)
    return tuple(models), z


def _complete_rows(matrix, groups):
    return [np.flatnonzero(~np.isnan(matrix[:, group]).any(axis=1)) for group in groups]


def mvs_fit(data, hierarchy, plan=None, cv=None, na=None, parallel=False, progress=None):
    """Return a multi-view stacking model fitted to the data.

    Parameters
    ----------
    data : Dataset
        Training data. Missing features are allowed unless `na.kind` is "fail".
    hierarchy : ViewHierarchy
        Views of the features; its number of levels is the number of levels of the model.
    plan : {LevelPlan, None}
        Learners and penalties per level. Default is `LevelPlan.create(hierarchy.levels)`
        (ridge base learners and a nonnegative lasso meta-learner for two levels).
    cv : {CvConfig, None}
        Cross-validation settings and seed. Default is `CvConfig()`.
    na : {NaAction, None}
        Handling of missing views. Default is "fail".
    parallel : bool
        Whether the independent sub-problems of a level run concurrently (see
        `resolve_n_jobs`). The model does not depend on it.
    progress : {callable, None}
        Called as ``progress(level, done, total)`` while the sub-problems of a level are fitted.

    Returns
    -------
    model : MvsModel

    Raises
    ------
    TypeError
        If an argument has the wrong type.
    ConfigError
        If the plan and the hierarchy have different numbers of levels.
    ShapeError
        If the hierarchy does not describe the features of the data.
    MissingDataError
        If the data has missing values and `na.kind` is "fail".
    DataError
        If a view is missing for too many observations.

    Errors of the learners are propagated; errors raised on a fold carry a `fold` attribute.

    """
    if not isinstance(data, Dataset):
        raise TypeError("`data` must be a `Dataset` instance.")
    if not isinstance(hierarchy, ViewHierarchy):
        raise TypeError("`hierarchy` must be a `ViewHierarchy` instance.")
    n_levels = hierarchy.levels
    plan = LevelPlan.create(n_levels) if plan is None else plan
    cv = CvConfig() if cv is None else cv
    na = NaAction() if na is None else na
    if not isinstance(plan, LevelPlan):
        raise TypeError("`plan` must be a `LevelPlan` instance.")
    if not isinstance(cv, CvConfig):
        raise TypeError("`cv` must be a `CvConfig` instance.")
    if plan.levels != n_levels:
        raise ConfigError(
            "Plan has {0} levels but the hierarchy has {1}.".format(plan.levels, n_levels)
        )
    if cv.k_outer > data.n:
        raise ConfigError(
            "Number of outer folds ({0}) exceeds the number of observations ({1}).".format(
                cv.k_outer, data.n
            )
        )
    complete = screen_missing(data, hierarchy, na)
    n_jobs = resolve_n_jobs(parallel)
    family = data.family
    logger.info(
        "Fitting a %d-level model on %d observations and %d features (views per level: %s)",
        n_levels, data.n, data.p, hierarchy.view_counts,
    )

    levels = []
    inputs = data.x
    for level in range(1, n_levels + 1):
        learner = make_learner(plan, level, family, cv)
        top = level == n_levels
        if level == 1:
            groups = hierarchy.members(0)
            rows = complete
        elif top:
            groups = [np.arange(inputs.shape[1])]
            rows = _complete_rows(inputs, groups)
        else:
            groups = hierarchy.children(level - 1)
            rows = _complete_rows(inputs, groups)
        folds = None
        if not top:
            folds = make_folds(data.y, cv.k_outer, family, subseed(cv.seed, STREAM_FOLDS, level))
        models, z = _fit_level(data, inputs, groups, rows, learner, folds, level, cv, n_jobs,
                               progress)
        names = _input_names(level, groups)
        if top:
            levels.append(LevelFit(level, models, tuple(groups), names, tuple(rows)))
            break
        z_complete, report = impute_meta(
            z, data.y, na, seed=subseed(cv.seed, STREAM_IMPUTE, level), n_jobs=n_jobs
        )
        for array in (z, z_complete, folds.folds):
            if array.flags.writeable:
                array.setflags(write=False)
        levels.append(
            LevelFit(level, models, tuple(groups), names, tuple(rows), z, z_complete, report,
                     folds.folds)
        )
        logger.info("Level %d: %d sub-model(s) fitted", level, len(models))
        inputs = z_complete

    metadata = {
        "lambda_rule": cv.lambda_rule,
        "lambda_tuning": "per_outer_fold",
        "meta_inputs": "response",
        "class_threshold": 0.5,
    }
    return MvsModel(
        levels=tuple(levels),
        hierarchy=hierarchy,
        plan=plan,
        cv=cv,
        na=na,
        family=family,
        p=data.p,
        outcome_mean=float(np.mean(data.y)),
        metadata=metadata,
    )


def _propagate(model, inputs, first_level, stop_level):
    """Return the outputs of the levels `first_level` to `stop_level` - 1."""
    for fit in model.levels[first_level - 1:stop_level - 1]:
        inputs = np.column_stack(
            [sub.predict(inputs[:, group]) for sub, group in zip(fit.models, fit.inputs)]
        )
    return inputs


def _compose(model, inputs, first_level):
    """Return the response-scale output of the model given the inputs of `first_level`.

    Parameters
    ----------
    model : MvsModel
        Fitted model.
    inputs : np.ndarray(N, K)
        Inputs of level `first_level` (features for level 1, meta features otherwise).
    first_level : int
        Level at which the composition starts.

    Returns
    -------
    predictions : np.ndarray(N,)
        Predictions of the final meta-model on the response scale.

    """
    return _propagate(model, inputs, first_level, model.n_levels + 1)[:, 0]


def _check_features(model, x_new):
    if not (isinstance(x_new, np.ndarray) and x_new.ndim == 2):
        raise TypeError("Features must be given as a two-dimensional `numpy` array.")
    if x_new.shape[1] != model.p:
        raise ShapeError(
            "Model was fitted on {0} features, not {1}.".format(model.p, x_new.shape[1])
        )
    x_new = np.asarray(x_new, dtype=float)
    if np.isnan(x_new).any():
        raise MissingDataError("Features to predict must not contain missing values.")
    return x_new


def mvs_predict(model, x_new, predtype="response"):
    """Return the predictions of a stacked model.

    Parameters
    ----------
    model : MvsModel
        Fitted model.
    x_new : np.ndarray(N, P)
        Features of the observations to predict, without missing values.
    predtype : {"response", "class", "link"}
        "response" returns the mean of the outcome (probabilities for binomial outcomes);
        "class" returns 1 where the probability is strictly larger than 0.5 and 0 otherwise;
        "link" returns the linear predictor of a GLM meta-learner.

    Returns
    -------
    predictions : np.ndarray(N,)
        Floats, or integers for "class".

    Raises
    ------
    ShapeError
        If `x_new` does not have one column per feature of the model.
    MissingDataError
        If `x_new` contains missing values.
    ConfigError
        If classes are requested for a non-binomial model, link values for a forest
        meta-learner, or `predtype` is unknown.

    """
    if predtype not in PREDTYPES:
        raise ConfigError(
            "`predtype` must be one of {0}, not {1!r}.".format(PREDTYPES, predtype)
        )
    if predtype == "class" and model.family.name != "binomial":
        raise ConfigError("Class predictions are only available for binomial models.")
    if predtype == "link" and model.top.kind != "glm":
        raise ConfigError("Link predictions need a GLM meta-learner.")
    x_new = _check_features(model, x_new)
    if predtype == "link":
        inputs = _propagate(model, x_new, 1, model.n_levels)
        return model.top.predict(inputs, scale="link")
    response = _compose(model, x_new, 1)
    if predtype == "class":
        return (response > 0.5).astype(int)
    return response


def mvs_coef(model):
    """Return the coefficients of every sub-model.

    Returns
    -------
    coefficients : list of list
        Per level, the `CoefficientRecord` of every GLM sub-model and `NA` for forests.

    """
    return [
        [sub.coef(names) for sub, names in zip(fit.models, fit.names)] for fit in model.levels
    ]


def mvs_importance(model):
    """Return the importance of the inputs of every sub-model.

    Returns
    -------
    importance : list of list
        Per level, the `ImportanceRecord` of every forest sub-model and `NA` for GLMs.

    """
    return [
        [sub.importance(names) for sub, names in zip(fit.models, fit.names)]
        for fit in model.levels
    ]
