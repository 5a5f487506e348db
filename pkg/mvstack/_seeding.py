"""Derivation of independent random streams from a single user seed.

Every random decision in a fit is drawn from a stream identified by the user seed and a key of
small integers, e.g. ``(STREAM_FOLDS, level)`` or ``(STREAM_TREE, level, view, fold, tree)``.
Streams are derived with `numpy.random.SeedSequence` spawn keys, so they do not depend on the
order in which sub-problems are executed.

"""
import numpy as np

STREAM_FOLDS = 1
STREAM_LAMBDA_FOLDS = 2
STREAM_ADAPTIVE = 3
STREAM_FOREST = 4
STREAM_TREE = 5
STREAM_IMPUTE = 6
STREAM_SIMULATE = 7
STREAM_SUBMODEL = 8


def _entropy(seed):
    seed = int(seed)
    if seed < 0:
        raise ValueError("Seed must be a nonnegative integer.")
    return seed


def substream(seed, *key):
    """Return the random generator of the stream with the given key.

    Parameters
    ----------
    seed : int
        User seed (nonnegative 64-bit integer).
    key : int
        Nonnegative integers identifying the stream.

    Returns
    -------
    rng : np.random.Generator
        Generator of the stream.

    """
    sequence = np.random.SeedSequence(_entropy(seed), spawn_key=tuple(int(i) for i in key))
    return np.random.default_rng(sequence)


def subseed(seed, *key):
    """Return an integer seed for the stream with the given key.

    Used to hand a stream over to a component that takes a plain integer seed.

    Parameters
    ----------
    seed : int
        User seed (nonnegative 64-bit integer).
    key : int
        Nonnegative integers identifying the stream.

    Returns
    -------
    seed : int
        Nonnegative 63-bit integer.

    """
    sequence = np.random.SeedSequence(_entropy(seed), spawn_key=tuple(int(i) for i in key))
    return int(sequence.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))
