"""Minority report measure: importance of the views of any level of a stacked model.

The measure of a view is the change of the final prediction as the prediction of that view
moves from `a` to `b` while the predictions of the other views of the same level are held at a
constant. For nonnegative meta-learners of a binomial outcome with a = 0 and b = 1 it lies in
[0, 1]; otherwise the raw signed difference is reported.

"""
from dataclasses import dataclass
import logging

from mvstack.errors import ConfigError
from mvstack.stacking import _compose, MvsModel
import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MrmQuery:
    """Views to score and the values to which their predictions are set.

    Attributes
    ----------
    level : int
        Level whose views are scored. Level 1 holds the features, level 2 the views of the
        lowest grouping level and the last level the views of the highest grouping level.
    a : float
        Reference value of the prediction of the scored view.
    b : float
        Value to which the prediction of the scored view is changed.
    constant : {float, None}
        Value of the predictions of the other views. Default is the mean training outcome.

    """

    level: int
    a: float = 0.0
    b: float = 1.0
    constant: float = None

    def __post_init__(self):
        if isinstance(self.level, bool) or int(self.level) != self.level:
            raise ConfigError("MRM level must be an integer.")
        object.__setattr__(self, "level", int(self.level))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if self.a == self.b:
            raise ConfigError("MRM values `a` and `b` must differ.")
        if self.constant is not None:
            object.__setattr__(self, "constant", float(self.constant))


@dataclass(frozen=True, eq=False)
class MrmResult:
    """Minority report measure of the views of one level.

    Attributes
    ----------
    values : np.ndarray(V,)
        Change of the final prediction for each view.
    names : tuple of str
        Name of each view.
    constant : float
        Value of the predictions of the other views.
    level : int
        Level of the scored views.
    a : float
    b : float

    """

    values: np.ndarray
    names: tuple
    constant: float
    level: int
    a: float
    b: float


def mrm(model, query):
    """Return the minority report measure of every view of a level.

    Parameters
    ----------
    model : MvsModel
        Fitted model.
    query : MrmQuery
        Level and values of the measure.

    Returns
    -------
    result : MrmResult

    Raises
    ------
    TypeError
        If the arguments have the wrong types.
    ConfigError
        If the level is not between 2 and the number of levels.

    """
    if not isinstance(model, MvsModel):
        raise TypeError("`model` must be an `MvsModel` instance.")
    if not isinstance(query, MrmQuery):
        raise TypeError("`query` must be an `MrmQuery` instance.")
    if not 2 <= query.level <= model.n_levels:
        raise ConfigError(
            "MRM level must be between 2 and {0}, not {1}.".format(model.n_levels, query.level)
        )
    constant = model.outcome_mean if query.constant is None else query.constant
    n_views = model.hierarchy.view_counts[query.level - 2]
    high = np.full((n_views, n_views), constant)
    low = np.full((n_views, n_views), constant)
    np.fill_diagonal(high, query.b)
    np.fill_diagonal(low, query.a)
    values = _compose(model, high, query.level) - _compose(model, low, query.level)
    if model.family.name != "binomial":
        logger.debug("MRM of a %s model is reported on the response scale", model.family.name)
    names = tuple("V{0}".format(view + 1) for view in range(n_views))
    return MrmResult(values, names, float(constant), query.level, query.a, query.b)
