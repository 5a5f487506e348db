"""Utility functions for running tests."""
from mvstack.base import BaseFit, BaseLearner
from mvstack.data import Dataset
from mvstack.learners.glm import _standardize
import numpy as np


def skip_init(class_obj):
    """Return instance of the given class without initialization.

    Parameters
    ----------
    class_obj : type
        Class.

    Returns
    -------
    instance : class_obj
        Instance of the given class without intialization.

    """

    class NoInitClass(class_obj):
        """Class {} without the __init__."""

        def __init__(self):
            """Null initialization."""
            pass

    NoInitClass.__name__ = "NoInit{}".format(class_obj.__name__)
    NoInitClass.__doc__ = NoInitClass.__doc__.format(class_obj.__name__)
    return NoInitClass()


def disable_abstract(abclass, dict_overwrite={}):
    """Return a class that is a copy of the given abstract class without its abstract methods.

    Parameters
    ----------
    abclass : type
        Class.

    Returns
    -------
    new_class : type
        Child of the given abstract class without its abstract methods.

    Notes
    -----
    This code was adapted from
    https://stackoverflow.com/questions/9757299/python-testing-an-abstract-base-class.

    """
    if "__abstractmethods__" not in abclass.__dict__:
        return abclass
    new_dict = abclass.__dict__.copy()
    for abstractmethod in abclass.__abstractmethods__:
        # replace abstract methods with a function that does nothing
        new_dict[abstractmethod] = lambda *args: None
    # replace namespace
    new_dict.update(dict_overwrite)
    # make subclass of the abstract class with
    return type(
        "{} class with abstract methods disabled".format(abclass.__name__), (abclass,), new_dict
    )


def view_data(n, sizes, signal, family="gaussian", seed=0, noise=1.0):
    """Return a dataset whose outcome depends on the features through the given coefficients.

    Parameters
    ----------
    n : int
        Number of observations.
    sizes : sequence of int
        Number of features of each view.
    signal : np.ndarray(P,)
        Coefficients of the features.
    family : str
        "gaussian" (normal noise with standard deviation `noise`) or "binomial".
    seed : int
        Seed of the features and of the outcome.
    noise : float
        Standard deviation of the Gaussian noise.

    Returns
    -------
    data : Dataset
    labels : np.ndarray(P,)
        View (1-based) of each feature.

    """
    rng = np.random.default_rng(seed)
    p = sum(sizes)
    x = rng.standard_normal((n, p))
    eta = x @ np.asarray(signal, dtype=float)
    if family == "binomial":
        y = rng.binomial(1, 1 / (1 + np.exp(-eta))).astype(float)
    else:
        y = eta + noise * rng.standard_normal(n)
    labels = np.repeat(np.arange(1, len(sizes) + 1), sizes)
    return Dataset(x, y, family), labels


def kkt_violation(data, intercept, beta, lam, spec):
    """Return the largest violation of the optimality conditions of a penalized GLM.

    Parameters
    ----------
    data : Dataset
        Training data.
    intercept : float
        Intercept on the original scale.
    beta : np.ndarray(P,)
        Coefficients on the original scale.
    lam : float
        Penalty strength.
    spec : GlmSpec
        Configuration of the fit.

    Returns
    -------
    violation : float
        Largest absolute violation over the coefficients, on the standardized scale.

    """
    xs, _, scale, active = _standardize(data.x, spec.standardize)
    family = spec.family_obj
    mu = family.inverse_link(intercept + data.x @ beta)
    beta_std = beta * scale
    weights = np.ones(data.p) if spec.penalty_weights is None else spec.penalty_weights
    grad = xs.T @ (data.y - mu) / data.n - lam * weights * (1 - spec.alpha) * beta_std
    bound = lam * weights * spec.alpha
    violation = np.zeros(data.p)
    positive = beta_std > 0
    negative = beta_std < 0
    zero = ~(positive | negative)
    violation[positive] = np.abs(grad[positive] - bound[positive])
    violation[negative] = np.abs(grad[negative] + bound[negative])
    if spec.nonneg:
        violation[zero] = np.maximum(grad[zero] - bound[zero], 0)
    else:
        violation[zero] = np.maximum(np.abs(grad[zero]) - bound[zero], 0)
    violation[~active] = 0
    return float(np.max(violation, initial=0.0))


class MeanFit(BaseFit):
    """Intercept-only model that predicts the training mean."""

    kind = "mean"

    def __init__(self, mean):
        """Initialize."""
        self.mean = mean

    def predict(self, x_new):
        """Return the training mean for every row."""
        return np.full(np.asarray(x_new).shape[0], self.mean)


class MeanLearner(BaseLearner):
    """Learner of `MeanFit` models; records the seeds it was called with."""

    kind = "mean"

    def __init__(self):
        """Initialize."""
        self.seeds = []

    def fit(self, data, seed):
        """Return the model of the training mean."""
        self.seeds.append(seed)
        return MeanFit(float(np.mean(data.y)))
