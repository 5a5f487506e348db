"""Simulated multi-view data with a planted set of relevant features."""
from dataclasses import asdict, dataclass
import logging

from mvstack._seeding import STREAM_SIMULATE, substream
from mvstack.data import Dataset, ViewHierarchy
from mvstack.errors import ConfigError
from mvstack.families import get_family
import numpy as np

logger = logging.getLogger(__name__)

SIGNS, FEATURES, OUTCOME = 0, 1, 2


@dataclass(frozen=True)
class SimSpec:
    """Design of a simulated dataset.

    Features are independent standard normal. A contiguous block of `signal_count` features
    starting at `signal_start` has coefficient `signal` (times a random sign); the other
    coefficients are zero.

    Attributes
    ----------
    n : int
        Number of observations.
    view_sizes : tuple of int
        Number of features of every view of the highest grouping level.
    signal : float
        Magnitude of the nonzero coefficients.
    signal_start : int
        First (0-based) feature with a nonzero coefficient.
    signal_count : int
        Number of features with a nonzero coefficient.
    random_sign : bool
        Whether every nonzero coefficient gets an independent random sign.
    family : str
        Outcome family ("binomial": Bernoulli with logistic mean; "gaussian": unit-variance
        noise; "poisson": log mean).
    seed : int
        Seed of the simulation.
    sub_view_sizes : {tuple of int, None}
        Number of features of every view of a lower grouping level, nested in `view_sizes`.
        Gives a three-level hierarchy.
    missing_blocks : tuple of (int, int, int)
        Blocks ``(first_row, last_row, view)`` (1-based, inclusive) of observations for which
        every feature of a view of the lowest grouping level is set missing.

    """

    n: int = 100
    view_sizes: tuple = (45, 20, 20)
    signal: float = 10.0
    signal_start: int = 0
    signal_count: int = 65
    random_sign: bool = True
    family: str = "binomial"
    seed: int = 0
    sub_view_sizes: tuple = None
    missing_blocks: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "view_sizes", tuple(int(i) for i in self.view_sizes))
        object.__setattr__(self, "family", get_family(self.family).name)
        if int(self.n) < 1 or not self.view_sizes or min(self.view_sizes) < 1:
            raise ConfigError("Number of observations and view sizes must be positive.")
        p = sum(self.view_sizes)
        if self.signal_start < 0 or self.signal_count < 0:
            raise ConfigError("Signal start and count must be nonnegative.")
        if self.signal_start + self.signal_count > p:
            raise ConfigError(
                "Signal block [{0}, {1}) exceeds the {2} features.".format(
                    self.signal_start, self.signal_start + self.signal_count, p
                )
            )
        if self.sub_view_sizes is not None:
            sizes = tuple(int(i) for i in self.sub_view_sizes)
            if not sizes or min(sizes) < 1 or sum(sizes) != p:
                raise ConfigError("Sub-view sizes must be positive and add up to {0}.".format(p))
            bounds = set(np.cumsum(sizes).tolist())
            if not set(np.cumsum(self.view_sizes).tolist()) <= bounds:
                raise ConfigError("Every sub-view must lie inside a single view.")
            object.__setattr__(self, "sub_view_sizes", sizes)
        blocks = tuple(tuple(int(i) for i in block) for block in self.missing_blocks)
        n_lowest = len(self.sub_view_sizes or self.view_sizes)
        for first, last, view in blocks:
            if not (1 <= first <= last <= self.n and 1 <= view <= n_lowest):
                raise ConfigError(
                    "Invalid missing block ({0}, {1}, {2}).".format(first, last, view)
                )
        object.__setattr__(self, "missing_blocks", blocks)

    @property
    def p(self):
        """Number of features."""
        return sum(self.view_sizes)

    @property
    def levels(self):
        """Number of levels of the hierarchy."""
        return 2 if self.sub_view_sizes is None else 3

    def to_dict(self):
        """Return the design as plain values."""
        payload = asdict(self)
        payload["view_sizes"] = list(self.view_sizes)
        payload["sub_view_sizes"] = (
            None if self.sub_view_sizes is None else list(self.sub_view_sizes)
        )
        payload["missing_blocks"] = [list(block) for block in self.missing_blocks]
        return payload

    @classmethod
    def from_dict(cls, payload):
        """Return the design described by a dictionary (e.g. a parsed JSON file).

        Raises
        ------
        ConfigError
            If a key is unknown.

        """
        unknown = set(payload) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError("Unknown simulation field(s): {0}.".format(sorted(unknown)))
        payload = dict(payload)
        for key in ("view_sizes", "sub_view_sizes", "missing_blocks"):
            if payload.get(key) is not None:
                value = payload[key]
                payload[key] = tuple(tuple(i) if isinstance(i, list) else i for i in value)
        return cls(**payload)


PRESETS = {
    "two_level": SimSpec(),
    "three_level": SimSpec(
        signal_start=15, signal_count=40, sub_view_sizes=(15, 15, 15, 10, 10, 5, 5, 5, 5)
    ),
}


def preset(name, **changes):
    """Return a named design, with some fields changed.

    Parameters
    ----------
    name : {"two_level", "three_level"}
        "two_level": 100 observations, views of 45, 20 and 20 features, the first 65 features
        relevant. "three_level": the same views split into sub-views of 15, 15, 15 | 10, 10 |
        5, 5, 5, 5 features, features 16 to 55 relevant.
    changes
        Fields of `SimSpec` to change, e.g. `seed`.

    """
    try:
        spec = PRESETS[name]
    except KeyError:
        raise ConfigError(
            "Unknown simulation preset {0!r}; choose from {1}.".format(name, sorted(PRESETS))
        )
    payload = asdict(spec)
    payload.update(changes)
    return SimSpec(**payload)


def coefficients(spec):
    """Return the coefficients of the simulated linear predictor.

    Parameters
    ----------
    spec : SimSpec

    Returns
    -------
    beta : np.ndarray(P,)

    """
    beta = np.zeros(spec.p)
    beta[spec.signal_start:spec.signal_start + spec.signal_count] = spec.signal
    if spec.random_sign:
        beta *= substream(spec.seed, STREAM_SIMULATE, SIGNS).integers(0, 2, size=spec.p) * 2 - 1
    return beta


def _labels(sizes):
    return np.repeat(np.arange(1, len(sizes) + 1), sizes)


def hierarchy_of(spec):
    """Return the view hierarchy of a design."""
    top = _labels(spec.view_sizes)
    if spec.sub_view_sizes is None:
        return ViewHierarchy(top)
    return ViewHierarchy(np.column_stack([_labels(spec.sub_view_sizes), top]))


def simulate(spec):
    """Return a simulated dataset and its view hierarchy.

    Signs, features and outcome are drawn from separate streams of the seed, so the same
    seed gives the same coefficients for any `n`.

    Parameters
    ----------
    spec : SimSpec
        Design.

    Returns
    -------
    data : Dataset
        Simulated data, with the missing blocks applied last.
    hierarchy : ViewHierarchy
        Views of the features.

    """
    beta = coefficients(spec)
    x = substream(spec.seed, STREAM_SIMULATE, FEATURES).standard_normal((spec.n, spec.p))
    eta = x @ beta
    rng = substream(spec.seed, STREAM_SIMULATE, OUTCOME)
    family = get_family(spec.family)
    if family.name == "binomial":
        y = rng.binomial(1, family.inverse_link(eta)).astype(float)
    elif family.name == "poisson":
        y = rng.poisson(np.exp(np.clip(eta, None, 20))).astype(float)
    else:
        y = eta + rng.standard_normal(spec.n)
    hierarchy = hierarchy_of(spec)
    members = hierarchy.members(0)
    for first, last, view in spec.missing_blocks:
        x[np.ix_(np.arange(first - 1, last), members[view - 1])] = np.nan
    logger.debug("Simulated %d observations of %d features", spec.n, spec.p)
    return Dataset(x, y, family), hierarchy
