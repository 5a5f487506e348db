"""Outcome distributions supported by the penalized GLM and the stacking engine."""
import abc

from mvstack.errors import ConfigError, DataError
import numpy as np
from scipy.special import expit, logit, xlogy


class Family(abc.ABC):
    """Base class for the exponential families with canonical link.

    Attributes
    ----------
    name : str
        Name of the family.

    Methods
    -------
    link(self, mu) : np.ndarray
        Return the canonical link of the mean.
    inverse_link(self, eta) : np.ndarray
        Return the mean given the linear predictor.
    variance(self, mu) : np.ndarray
        Return the variance function evaluated at the mean.
    unit_deviance(self, y, mu) : np.ndarray
        Return the deviance contribution of each observation.
    deviance(self, y, mu) : float
        Return the mean deviance.
    validate_outcome(self, y) : np.ndarray
        Check that the outcome is admissible for the family.

    """

    name = None

    @abc.abstractmethod
    def link(self, mu):
        """Return the canonical link of the mean."""

    @abc.abstractmethod
    def inverse_link(self, eta):
        """Return the mean given the linear predictor."""

    @abc.abstractmethod
    def variance(self, mu):
        """Return the variance function evaluated at the mean."""

    @abc.abstractmethod
    def unit_deviance(self, y, mu):
        """Return the deviance contribution of each observation."""

    @abc.abstractmethod
    def validate_outcome(self, y):
        """Check that the outcome is admissible for the family.

        Parameters
        ----------
        y : np.ndarray(N,)
            Outcome vector.

        Returns
        -------
        y : np.ndarray(N,)
            Outcome vector as floats.

        Raises
        ------
        DataError
            If the outcome contains values outside of the support of the family.

        """

    def deviance(self, y, mu):
        """Return the mean deviance of the fitted means.

        Parameters
        ----------
        y : np.ndarray(N,)
            Outcome vector.
        mu : np.ndarray(N,)
            Fitted means.

        Returns
        -------
        deviance : float
            Mean of the unit deviances.

        """
        return float(np.mean(self.unit_deviance(y, mu)))

    def __repr__(self):
        return "{0}()".format(type(self).__name__)

    def __eq__(self, other):
        return isinstance(other, Family) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class Gaussian(Family):
    """Normal outcome with identity link."""

    name = "gaussian"

    def link(self, mu):
        return np.asarray(mu, dtype=float)

    def inverse_link(self, eta):
        return np.asarray(eta, dtype=float)

    def variance(self, mu):
        return np.ones_like(mu, dtype=float)

    def unit_deviance(self, y, mu):
        return (y - mu) ** 2

    def validate_outcome(self, y):
        y = np.asarray(y, dtype=float)
        if not np.all(np.isfinite(y)):
            raise DataError("Outcome must not contain missing or non-finite values.")
        return y


class Binomial(Family):
    """Binary outcome with logit link."""

    name = "binomial"

    def link(self, mu):
        mu = np.clip(mu, 1e-12, 1 - 1e-12)
        return logit(mu)

    def inverse_link(self, eta):
        return expit(eta)

    def variance(self, mu):
        return mu * (1 - mu)

    def unit_deviance(self, y, mu):
        mu = np.clip(mu, 1e-15, 1 - 1e-15)
        return -2 * (xlogy(y, mu) + xlogy(1 - y, 1 - mu))

    def validate_outcome(self, y):
        y = np.asarray(y, dtype=float)
        if not np.all(np.isfinite(y)):
            raise DataError("Outcome must not contain missing or non-finite values.")
        if not np.all((y == 0) | (y == 1)):
            raise DataError("Binomial outcome must only contain the values 0 and 1.")
        return y


class Poisson(Family):
    """Count outcome with log link."""

    name = "poisson"

    def link(self, mu):
        return np.log(np.maximum(mu, 1e-300))

    def inverse_link(self, eta):
        return np.exp(eta)

    def variance(self, mu):
        return np.asarray(mu, dtype=float)

    def unit_deviance(self, y, mu):
        mu = np.maximum(mu, 1e-300)
        return 2 * (xlogy(y, y) - xlogy(y, mu) - (y - mu))

    def validate_outcome(self, y):
        y = np.asarray(y, dtype=float)
        if not np.all(np.isfinite(y)):
            raise DataError("Outcome must not contain missing or non-finite values.")
        if np.any(y < 0) or not np.all(y == np.round(y)):
            raise DataError("Poisson outcome must only contain nonnegative integers.")
        return y


FAMILIES = {"gaussian": Gaussian(), "binomial": Binomial(), "poisson": Poisson()}


def get_family(family):
    """Return the family instance that corresponds to the given name.

    Parameters
    ----------
    family : {str, Family}
        Name of the family ("gaussian", "binomial" or "poisson") or a `Family` instance.

    Returns
    -------
    family : Family
        Family instance.

    Raises
    ------
    ConfigError
        If the family is not supported.

    """
    if isinstance(family, Family):
        return family
    try:
        return FAMILIES[family]
    except (KeyError, TypeError):
        raise ConfigError(
            "Family must be one of {0}, not {1!r}.".format(", ".join(sorted(FAMILIES)), family)
        )
