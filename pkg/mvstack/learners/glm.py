"""Elastic-net penalized generalized linear models with optional nonnegativity constraints.

The penalized objective minimized for a penalty strength :math:`\\lambda` is

.. math::

    \\frac{1}{2N} \\sum_i d(y_i, \\mu_i)
    + \\lambda \\sum_j w_j \\left( \\alpha |\\beta_j| + \\frac{1 - \\alpha}{2} \\beta_j^2 \\right)

where :math:`d` is the unit deviance of the family and the coefficients are those of the
standardized features. Gaussian problems are solved directly by coordinate descent; the other
families use an IRLS outer loop around the same kernels.

"""
from dataclasses import dataclass, replace
import logging
import warnings

from mvstack._seeding import STREAM_ADAPTIVE, STREAM_LAMBDA_FOLDS, subseed
from mvstack.base import BaseFit, BaseLearner, CoefficientRecord
from mvstack.cross_validation import make_folds
from mvstack.data import CvConfig, Dataset, LAMBDA_RULES
from mvstack.errors import (
    ConfigError,
    ConvergenceError,
    DataError,
    DegenerateError,
    MissingDataError,
    NumericError,
    ShapeError,
    StratificationError,
    annotate_fold,
)
from mvstack.families import get_family
from mvstack.learners._coordinate_descent import (
    BINOMIAL,
    cd_solve,
    CONVERGED,
    HALVING_FAILED,
    irls_solve,
    POISSON,
    SWEEPS_EXCEEDED,
    weighted_sq_norms,
)
import numpy as np

logger = logging.getLogger(__name__)

WEIGHT_CAP = 1e12
IRLS_WEIGHT_FLOOR = 1e-5
SATURATION = 0.999
MAX_HALVINGS = 20


@dataclass(frozen=True, eq=False)
class GlmSpec:
    """Configuration of a penalized GLM fit.

    Attributes
    ----------
    family : str
        Name of the outcome family.
    alpha : float
        Elastic-net mixing parameter in [0, 1]; 0 is ridge and 1 is lasso.
    nonneg : bool
        Whether the (non-intercept) coefficients are constrained to be nonnegative.
    penalty_weights : {np.ndarray(P,), None}
        Nonnegative penalty weight of each feature. Default is 1 for every feature.
    standardize : bool
        Whether the features are scaled to unit (population) variance before fitting. Features
        are always centered.
    lambdas : {np.ndarray, None}
        Explicit strictly decreasing positive penalty strengths. Default is a log-spaced path of
        `n_lambda` values from the smallest strength that sets every coefficient to zero down
        to `lambda_ratio` times that value.
    n_lambda : int
        Number of penalty strengths of the default path.
    lambda_ratio : float
        Ratio of the smallest to the largest strength of the default path.
    relax : bool
        Whether `cv_select_lambda` refits the selected support without penalty.
    tol : float
        Convergence tolerance on the largest coordinate change (standardized scale).
    max_sweeps : int
        Maximum number of coordinate-descent sweeps per solve.
    irls_tol : float
        Convergence tolerance on the change of the mean deviance between IRLS iterations.
    max_irls : int
        Maximum number of IRLS iterations per penalty strength.

    """

    family: str = "binomial"
    alpha: float = 1.0
    nonneg: bool = False
    penalty_weights: np.ndarray = None
    standardize: bool = True
    lambdas: np.ndarray = None
    n_lambda: int = 100
    lambda_ratio: float = 1e-2
    relax: bool = False
    tol: float = 1e-7
    max_sweeps: int = 100000
    irls_tol: float = 1e-8
    max_irls: int = 25

    def __post_init__(self):
        object.__setattr__(self, "family", get_family(self.family).name)
        if not 0 <= self.alpha <= 1:
            raise ConfigError("`alpha` must be in [0, 1], not {0}.".format(self.alpha))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "nonneg", bool(self.nonneg))
        if self.penalty_weights is not None:
            weights = np.array(self.penalty_weights, dtype=float)
            if weights.ndim != 1:
                raise ShapeError("Penalty weights must be a one-dimensional array.")
            if np.any(~np.isfinite(weights)) or np.any(weights < 0):
                raise ConfigError("Penalty weights must be finite and nonnegative.")
            weights.setflags(write=False)
            object.__setattr__(self, "penalty_weights", weights)
        if self.lambdas is not None:
            lambdas = np.array(self.lambdas, dtype=float).ravel()
            if lambdas.size == 0 or np.any(~np.isfinite(lambdas)) or np.any(lambdas <= 0):
                raise ConfigError("Penalty strengths must be finite and positive.")
            if np.any(np.diff(lambdas) >= 0):
                raise ConfigError("Penalty strengths must be strictly decreasing.")
            lambdas.setflags(write=False)
            object.__setattr__(self, "lambdas", lambdas)
        if int(self.n_lambda) < 1:
            raise ConfigError("`n_lambda` must be at least 1.")
        if not 0 < self.lambda_ratio < 1:
            raise ConfigError("`lambda_ratio` must be in (0, 1).")
        if self.tol <= 0 or self.irls_tol <= 0:
            raise ConfigError("Tolerances must be positive.")
        if int(self.max_sweeps) < 1 or int(self.max_irls) < 1:
            raise ConfigError("Iteration caps must be at least 1.")

    @property
    def family_obj(self):
        """Family instance."""
        return get_family(self.family)


@dataclass(frozen=True, eq=False)
class GlmPath:
    """Coefficients of a penalized GLM along a path of penalty strengths.

    Attributes
    ----------
    lambdas : np.ndarray(L,)
        Penalty strengths, in decreasing order.
    intercepts : np.ndarray(L,)
        Intercept at each penalty strength (original feature scale).
    betas : np.ndarray(L, P)
        Coefficients at each penalty strength (original feature scale).
    deviance : np.ndarray(L,)
        Mean training deviance at each penalty strength.
    n_solved : int
        Number of strengths actually solved. Strengths past a saturated fit reuse the last
        solution.
    cv_mean : {np.ndarray(L,), None}
        Mean held-out deviance over the tuning folds.
    cv_se : {np.ndarray(L,), None}
        Standard error of the held-out deviance over the tuning folds.

    """

    lambdas: np.ndarray
    intercepts: np.ndarray
    betas: np.ndarray
    deviance: np.ndarray
    n_solved: int
    cv_mean: np.ndarray = None
    cv_se: np.ndarray = None

    def link(self, x_new):
        """Return the linear predictor of every strength of the path.

        Parameters
        ----------
        x_new : np.ndarray(N, P)

        Returns
        -------
        eta : np.ndarray(N, L)

        """
        return x_new @ self.betas.T + self.intercepts


@dataclass(frozen=True, eq=False)
class GlmFit(BaseFit):
    """Penalized GLM at the selected penalty strength.

    Attributes
    ----------
    intercept : float
        Intercept.
    beta : np.ndarray(P,)
        Coefficients on the original feature scale.
    lambda_selected : float
        Selected penalty strength.
    lambda_index : int
        Index of the selected strength on the path.
    path : GlmPath
        Path with the cross-validated deviance.
    spec : GlmSpec
        Configuration of the fit.
    lambda_rule : str
        Rule used to select the penalty strength.
    relaxed : bool
        True if the coefficients come from an unpenalized refit on the selected support.

    """

    intercept: float
    beta: np.ndarray
    lambda_selected: float
    lambda_index: int
    path: GlmPath
    spec: GlmSpec
    lambda_rule: str = "min"
    relaxed: bool = False

    kind = "glm"

    @property
    def family(self):
        """Outcome family."""
        return self.spec.family_obj

    def predict(self, x_new, scale="response"):
        """Return the predictions of the model (see `glm_predict`)."""
        return glm_predict(self, x_new, scale=scale)

    def coef(self, names):
        """Return the intercept and the named coefficients of the model."""
        return CoefficientRecord(float(self.intercept), self.beta.copy(), tuple(names))


def _standardize(x, standardize):
    """Return the centered (and scaled) design, center, scale and mask of varying columns."""
    center = x.mean(axis=0)
    scale = x.std(axis=0)
    active = scale > 1e-10 * np.maximum(1.0, np.abs(center))
    if not standardize:
        scale = np.ones_like(scale)
    scale[~active] = 1.0
    xs = (x - center) / scale
    xs[:, ~active] = 0.0
    return np.asfortranarray(xs), center, scale, active


def canonical_order(x):
    """Return the order of the columns sorted lexicographically by their values.

    Parameters
    ----------
    x : np.ndarray(N, P)
        Design matrix.

    Returns
    -------
    order : np.ndarray(P,) of int
        Column indices, ordered by the value in the first row, then the second row, and so on.
        Identical columns keep their relative order.

    """
    return np.lexsort(x[::-1])


def lambda_max(xs, y, mu0, weights, active, alpha):
    """Return the smallest penalty strength at which every penalized coefficient is zero.

    Parameters
    ----------
    xs : np.ndarray(N, P)
        Centered (and scaled) design.
    y : np.ndarray(N,)
        Outcome.
    mu0 : float
        Mean of the null model.
    weights : np.ndarray(P,)
        Penalty weights.
    active : np.ndarray(P,) of bool
        Columns that are not constant.
    alpha : float
        Elastic-net mixing parameter. Values below 1e-3 are raised to 1e-3.

    Returns
    -------
    lambda_max : float
        Largest useful penalty strength; 1.0 when no penalized column correlates with the
        null residual.

    """
    grad = np.abs(xs.T @ (y - mu0)) / y.size
    usable = active & (weights > 0)
    if not usable.any():
        return 1.0
    value = np.max(grad[usable] / weights[usable]) / max(alpha, 1e-3)
    if not np.isfinite(value) or value <= 0:
        return 1.0
    return float(value)


FAMILY_CODES = {"binomial": BINOMIAL, "poisson": POISSON}
IRLS_FAILURES = {
    SWEEPS_EXCEEDED: "Coordinate descent did not converge",
    HALVING_FAILED: "IRLS step-halving failed",
}


def _irls(xs, y, family, beta, intercept, lam, weights, active, spec, index):
    """Solve one penalty strength of a non-Gaussian family, updating `beta`, `intercept`."""
    status, dev = irls_solve(
        xs, y, FAMILY_CODES[family.name], beta, intercept, lam, spec.alpha, weights,
        spec.nonneg, active, spec.tol, int(spec.max_sweeps), spec.irls_tol, int(spec.max_irls),
        IRLS_WEIGHT_FLOOR, MAX_HALVINGS,
    )
    if status == CONVERGED:
        return dev
    message = IRLS_FAILURES.get(
        status, "IRLS did not converge in {0} iterations".format(spec.max_irls)
    )
    raise ConvergenceError(message, index)


def _check_fit_data(data, spec):
    """Return the family, features and outcome of a dataset after checking it can be fitted."""
    if not isinstance(data, Dataset):
        raise TypeError("`data` must be a `Dataset` instance.")
    if not isinstance(spec, GlmSpec):
        raise TypeError("`spec` must be a `GlmSpec` instance.")
    family = spec.family_obj
    if data.family != family:
        raise ConfigError(
            "Dataset family {0!r} does not match the model family {1!r}.".format(
                data.family.name, family.name
            )
        )
    x = data.x
    y = data.y
    if np.isnan(x).any():
        raise MissingDataError("Feature matrix of a GLM fit must not contain missing values.")
    if not np.all(np.isfinite(x)):
        raise NumericError("Feature matrix must only contain finite values.")
    if data.n < 2:
        raise DataError("At least 2 observations are needed to fit a GLM.")
    if spec.penalty_weights is not None and spec.penalty_weights.size != data.p:
        raise ShapeError(
            "Number of penalty weights ({0}) must be equal to the number of features "
            "({1}).".format(spec.penalty_weights.size, data.p)
        )
    if family.name == "binomial" and np.unique(y).size < 2:
        raise DegenerateError("Binomial outcome contains a single class.")
    if family.name == "poisson" and not np.any(y > 0):
        raise DegenerateError("Poisson outcome contains only zeros.")
    return family, x, y


def fit_path(data, spec):
    """Return the coefficients of a penalized GLM along a path of penalty strengths.

    Solutions are warm-started along the path. Non-Gaussian paths stop early once the fit
    explains more than 99.9% of the null deviance; later strengths reuse the last solution.
    Coordinates are visited in `canonical_order`, so the path does not depend on the order of
    the columns.

    Parameters
    ----------
    data : Dataset
        Training data without missing values.
    spec : GlmSpec
        Configuration of the fit.

    Returns
    -------
    path : GlmPath
        Intercepts and coefficients on the original feature scale.

    Raises
    ------
    TypeError
        If `data` is not a `Dataset` or `spec` is not a `GlmSpec`.
    ConfigError
        If the family of the data and of the specification differ.
    MissingDataError
        If the features contain missing values.
    NumericError
        If the features contain non-finite values.
    DegenerateError
        If every feature is constant.
        If the outcome carries no information (single binomial class, all-zero counts).
    ConvergenceError
        If the solver fails at some penalty strength. The index of the strength is stored in
        the `lambda_index` attribute.

    """
    family, x, y = _check_fit_data(data, spec)
    n, p = x.shape
    order = canonical_order(x)
    x = x[:, order]
    xs, center, scale, active = _standardize(x, spec.standardize)
    if p > 0 and not active.any():
        raise DegenerateError("Every feature is constant.")
    weights = np.ones(p) if spec.penalty_weights is None else spec.penalty_weights[order]

    mu0 = float(np.mean(y))
    null_deviance = family.deviance(y, np.full(n, mu0))
    if spec.lambdas is not None:
        lambdas = np.array(spec.lambdas)
    else:
        top = lambda_max(xs, y, mu0, weights, active, spec.alpha)
        lambdas = np.geomspace(top, top * spec.lambda_ratio, int(spec.n_lambda))

    beta = np.zeros(p)
    intercept = np.array([float(family.link(mu0))])
    betas = np.zeros((lambdas.size, p))
    intercepts = np.zeros(lambdas.size)
    deviance = np.zeros(lambdas.size)
    n_solved = lambdas.size
    for index, lam in enumerate(lambdas):
        if family.name == "gaussian":
            v = np.full(n, 1.0 / n)
            xv = weighted_sq_norms(xs, v)
            r = y - intercept[0] - xs @ beta
            sweeps = cd_solve(
                xs, v, r, beta, intercept, xv, lam, spec.alpha, weights, spec.nonneg, active,
                spec.tol, int(spec.max_sweeps),
            )
            if sweeps > spec.max_sweeps:
                raise ConvergenceError("Coordinate descent did not converge", index)
            dev = family.deviance(y, intercept[0] + xs @ beta)
        else:
            dev = _irls(xs, y, family, beta, intercept, lam, weights, active, spec, index)
        betas[index] = beta
        intercepts[index] = intercept[0]
        deviance[index] = dev
        if (
            family.name != "gaussian"
            and null_deviance > 0
            and 1 - dev / null_deviance > SATURATION
            and index < lambdas.size - 1
        ):
            logger.debug(
                "Path saturated at lambda index %d; reusing the solution for the remaining "
                "%d strengths.", index, lambdas.size - index - 1
            )
            betas[index + 1:] = beta
            intercepts[index + 1:] = intercept[0]
            deviance[index + 1:] = dev
            n_solved = index + 1
            break

    betas /= scale
    intercepts = intercepts - betas @ center
    restored = np.empty_like(betas)
    restored[:, order] = betas
    return GlmPath(lambdas, intercepts, restored, deviance, n_solved)


def _select(cv_mean, cv_se, rule):
    """Return the index of the penalty strength chosen by the given rule."""
    best = int(np.argmin(cv_mean))
    if rule == "min":
        return best
    threshold = cv_mean[best] + cv_se[best]
    return int(np.flatnonzero(cv_mean <= threshold)[0])


def _intercept_only(y, family):
    """Return the intercept of the null model."""
    return float(family.link(np.mean(y)))


def cv_select_lambda(data, spec, cv):
    """Return the penalized GLM at the penalty strength selected by cross-validation.

    The path is fitted on the full data; every tuning fold refits the same strengths on its
    complement and scores the held-out mean deviance. The strength is selected with the rule of
    `cv` ("min": lowest mean deviance; "1se": largest strength within one standard error of the
    minimum). With `spec.relax` the selected support is refitted without penalty, keeping the
    nonnegativity constraint.

    Parameters
    ----------
    data : Dataset
        Training data without missing values.
    spec : GlmSpec
        Configuration of the fit.
    cv : CvConfig
        Tuning folds (`k_lambda`), seed and selection rule.

    Returns
    -------
    fit : GlmFit
        Model at the selected strength.

    Raises
    ------
    ConfigError
        If `k_lambda` is larger than the number of observations.
    StratificationError
        If a binomial training fold contains a single outcome class.

    Other errors are those of `fit_path`; errors raised on a fold carry a `fold` attribute.

    """
    if not isinstance(cv, CvConfig):
        raise TypeError("`cv` must be a `CvConfig` instance.")
    if cv.lambda_rule not in LAMBDA_RULES:
        raise ConfigError("Unknown lambda rule {0!r}.".format(cv.lambda_rule))
    family, x, y = _check_fit_data(data, spec)
    path = fit_path(data, spec)
    fold_spec = replace(spec, lambdas=path.lambdas)
    folds = make_folds(y, cv.k_lambda, family, cv.seed)

    scores = np.zeros((folds.k, path.lambdas.size))
    for fold in range(folds.k):
        train, test = folds.split(fold)
        if family.name == "binomial" and np.unique(y[train]).size < 2:
            raise StratificationError(
                "Training fold {0} contains a single outcome class.".format(fold)
            )
        try:
            fold_path = fit_path(data.subset(train), fold_spec)
        except DegenerateError as error:
            raise annotate_fold(error, fold)
        except ConvergenceError as error:
            raise annotate_fold(error, fold)
        mu = family.inverse_link(fold_path.link(x[test]))
        scores[fold] = np.mean(family.unit_deviance(y[test][:, np.newaxis], mu), axis=0)

    cv_mean = scores.mean(axis=0)
    cv_se = scores.std(axis=0, ddof=1) / np.sqrt(folds.k)
    path = replace(path, cv_mean=cv_mean, cv_se=cv_se)
    index = _select(cv_mean, cv_se, cv.lambda_rule)
    lam = float(path.lambdas[index])
    intercept = float(path.intercepts[index])
    beta = path.betas[index].copy()
    relaxed = False

    if spec.relax:
        support = np.flatnonzero(beta != 0)
        if support.size == 0:
            intercept = _intercept_only(y, family)
            relaxed = True
        else:
            refit_spec = replace(
                spec, penalty_weights=np.zeros(support.size), lambdas=np.array([lam]),
                relax=False,
            )
            try:
                refit = fit_path(data.subset(columns=support), refit_spec)
            except ConvergenceError as error:
                message = "Unpenalized refit failed ({0}); keeping the penalized fit.".format(
                    error
                )
                logger.warning(message)
                warnings.warn(message, RuntimeWarning)
            else:
                beta = np.zeros(data.p)
                beta[support] = refit.betas[0]
                intercept = float(refit.intercepts[0])
                relaxed = True

    beta.setflags(write=False)
    return GlmFit(
        intercept=intercept,
        beta=beta,
        lambda_selected=lam,
        lambda_index=index,
        path=path,
        spec=spec,
        lambda_rule=cv.lambda_rule,
        relaxed=relaxed,
    )


def reciprocal_weights(beta, cap=WEIGHT_CAP):
    """Return the adaptive penalty weights 1 / |beta|, capped at `cap` (also used for zeros).

    Parameters
    ----------
    beta : np.ndarray(P,)
        Initial coefficients.
    cap : float
        Largest weight.

    Returns
    -------
    weights : np.ndarray(P,)

    """
    beta = np.abs(np.asarray(beta, dtype=float))
    weights = np.full(beta.shape, float(cap))
    nonzero = beta > 0
    weights[nonzero] = np.minimum(1.0 / beta[nonzero], cap)
    return weights


def adaptive_weights(data, family, cv, standardize=True, nonneg=False, cap=WEIGHT_CAP):
    """Return adaptive penalty weights initialized with a cross-validated ridge fit.

    Parameters
    ----------
    data : Dataset
        Training data without missing values.
    family : {str, Family}
        Outcome family.
    cv : CvConfig
        Tuning folds, seed and selection rule of the ridge fit.
    standardize : bool
        Whether the ridge fit standardizes the features.
    nonneg : bool
        Whether the ridge fit is constrained to nonnegative coefficients.
    cap : float
        Weight of features whose ridge coefficient is zero, and largest weight overall.

    Returns
    -------
    weights : np.ndarray(P,)
        Reciprocal absolute ridge coefficients (original feature scale).

    """
    spec = GlmSpec(family=get_family(family).name, alpha=0.0, nonneg=nonneg,
                   standardize=standardize)
    ridge = cv_select_lambda(data, spec, cv)
    logger.debug("Adaptive weights from ridge at lambda %.6g", ridge.lambda_selected)
    return reciprocal_weights(ridge.beta, cap)


def glm_predict(fit, x_new, scale="response"):
    """Return the predictions of a fitted penalized GLM.

    Parameters
    ----------
    fit : GlmFit
        Fitted model.
    x_new : np.ndarray(N, P)
        Features of the observations to predict.
    scale : {"response", "link"}
        Scale of the predictions.

    Returns
    -------
    predictions : np.ndarray(N,)
        Linear predictor (link scale) or mean (response scale).

    Raises
    ------
    ShapeError
        If `x_new` does not have one column per coefficient.
    MissingDataError
        If `x_new` contains missing values.
    ConfigError
        If `scale` is not supported.

    """
    x_new = np.asarray(x_new, dtype=float)
    if x_new.ndim != 2 or x_new.shape[1] != fit.beta.size:
        raise ShapeError(
            "Features must be a matrix with {0} column(s), not shape {1}.".format(
                fit.beta.size, x_new.shape
            )
        )
    if np.isnan(x_new).any():
        raise MissingDataError("Features to predict must not contain missing values.")
    eta = fit.intercept + x_new @ fit.beta
    if scale == "link":
        return eta
    if scale == "response":
        return fit.family.inverse_link(eta)
    raise ConfigError("Scale must be 'link' or 'response', not {0!r}.".format(scale))


class GlmLearner(BaseLearner):
    """Penalized GLM learner with internal cross-validated selection of the penalty strength.

    Attributes
    ----------
    family : Family
        Outcome family.
    alpha : float
        Elastic-net mixing parameter.
    nonneg : bool
        Nonnegativity constraint of the coefficients.
    relax : bool
        Unpenalized refit on the selected support.
    adaptive : bool
        Adaptive penalty weights from a ridge fit.
    standardize : bool
        Standardization of the features.
    k_lambda : int
        Number of tuning folds (lowered to the number of observations for small data).
    lambda_rule : {"min", "1se"}
        Selection rule of the penalty strength.

    """

    kind = "glm"

    def __init__(self, family, alpha=1.0, nonneg=False, relax=False, adaptive=False,
                 standardize=True, k_lambda=10, lambda_rule="min", n_lambda=100,
                 lambda_ratio=1e-2):
        """Initialize.

        Raises
        ------
        ConfigError
            If an option has an invalid value.

        """
        self.family = get_family(family)
        self._spec = GlmSpec(
            family=self.family.name, alpha=alpha, nonneg=nonneg, standardize=standardize,
            relax=relax, n_lambda=n_lambda, lambda_ratio=lambda_ratio,
        )
        if int(k_lambda) < 2:
            raise ConfigError("Number of tuning folds must be at least 2.")
        if lambda_rule not in LAMBDA_RULES:
            raise ConfigError("Unknown lambda rule {0!r}.".format(lambda_rule))
        self.adaptive = bool(adaptive)
        self.k_lambda = int(k_lambda)
        self.lambda_rule = lambda_rule

    @property
    def alpha(self):
        return self._spec.alpha

    @property
    def nonneg(self):
        return self._spec.nonneg

    @property
    def relax(self):
        return self._spec.relax

    @property
    def standardize(self):
        return self._spec.standardize

    def fit(self, data, seed):
        """Return the penalized GLM fitted to the data with a tuned penalty strength.

        The tuning folds use the stream `(STREAM_LAMBDA_FOLDS,)` of `seed`; the ridge fit of the
        adaptive weights uses `(STREAM_ADAPTIVE,)`.

        """
        k = min(self.k_lambda, data.n)
        if k < 2:
            raise DataError("At least 2 observations are needed to tune a GLM.")
        cv = CvConfig(k_lambda=k, seed=subseed(seed, STREAM_LAMBDA_FOLDS),
                      lambda_rule=self.lambda_rule)
        spec = self._spec
        if self.adaptive:
            weights = adaptive_weights(
                data, self.family, cv.with_seed(subseed(seed, STREAM_ADAPTIVE)),
                standardize=spec.standardize, nonneg=spec.nonneg,
            )
            spec = replace(spec, penalty_weights=weights)
        return cv_select_lambda(data, spec, cv)

    def __repr__(self):
        return (
            "GlmLearner(family={0!r}, alpha={1}, nonneg={2}, relax={3}, adaptive={4})".format(
                self.family.name, self.alpha, self.nonneg, self.relax, self.adaptive
            )
        )
