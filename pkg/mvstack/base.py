"""Base classes for the learners of the sub-problems and for their fitted models."""
import abc
from dataclasses import dataclass

import numpy as np


class NotApplicable:
    """Marker returned where a fitted model has no such quantity (printed as NA)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NA"

    def __bool__(self):
        return False

    def __reduce__(self):
        return (NotApplicable, ())


NA = NotApplicable()


@dataclass(frozen=True, eq=False)
class CoefficientRecord:
    """Coefficients of a fitted GLM sub-model.

    Attributes
    ----------
    intercept : float
        Intercept.
    coefficients : np.ndarray(K,)
        Coefficients of the inputs on their original scale.
    names : tuple of str
        Name of each input.

    """

    intercept: float
    coefficients: np.ndarray
    names: tuple

    def __len__(self):
        return self.coefficients.size + 1

    def selected(self):
        """Return the names of the inputs with a nonzero coefficient."""
        return tuple(name for name, coef in zip(self.names, self.coefficients) if coef != 0)


@dataclass(frozen=True, eq=False)
class ImportanceRecord:
    """Mean decrease in impurity of the inputs of a fitted random forest.

    Attributes
    ----------
    values : np.ndarray(K,)
        Importance of each input.
    names : tuple of str
        Name of each input.
    measure : str
        Name of the importance measure.

    """

    values: np.ndarray
    names: tuple
    measure: str


class BaseFit(abc.ABC):
    """Base class for the fitted model of a sub-problem.

    Methods
    -------
    predict(self, x_new) : np.ndarray(N,)
        Return the predictions on the response scale.
    coef(self, names) : {CoefficientRecord, NotApplicable}
        Return the coefficients of the model.
    importance(self, names) : {ImportanceRecord, NotApplicable}
        Return the importance of the inputs of the model.

    """

    kind = None

    @abc.abstractmethod
    def predict(self, x_new):
        """Return the predictions of the model on the response scale.

        Parameters
        ----------
        x_new : np.ndarray(N, K)
            Inputs of the model.

        Returns
        -------
        predictions : np.ndarray(N,)
            Predictions on the response scale.

        """

    def coef(self, names):
        """Return the coefficients of the model, or `NA` if it has none."""
        return NA

    def importance(self, names):
        """Return the importance of the inputs of the model, or `NA` if it has none."""
        return NA


class BaseLearner(abc.ABC):
    """Base class for the learning algorithms of the sub-problems of a stacked model.

    A learner holds the configuration of a learning algorithm. It is stateless: `fit` returns a
    new `BaseFit` instance and learners can be shared by concurrent workers.

    Methods
    -------
    fit(self, data, seed) : BaseFit
        Return the model fitted to the given dataset.
    predict(self, fitted, x_new) : np.ndarray(N,)
        Return the response-scale predictions of a fitted model.

    """

    kind = None

    @abc.abstractmethod
    def fit(self, data, seed):
        """Return the model fitted to the given dataset.

        Parameters
        ----------
        data : Dataset
            Training data without missing values.
        seed : int
            Seed of every random decision made while fitting (including internal tuning).

        Returns
        -------
        fitted : BaseFit
            Fitted model.

        """

    def predict(self, fitted, x_new):
        """Return the response-scale predictions of a fitted model.

        Parameters
        ----------
        fitted : BaseFit
            Model returned by `fit`.
        x_new : np.ndarray(N, K)
            Inputs of the model.

        Returns
        -------
        predictions : np.ndarray(N,)
            Predictions on the response scale.

        """
        return fitted.predict(x_new)
