"""Exceptions raised by mvstack."""


class MvsError(Exception):
    """Base class of the errors raised deliberately by mvstack."""


class ConfigError(MvsError, ValueError):
    """Invalid option values or inconsistent configuration."""


class ShapeError(MvsError, ValueError):
    """Dimension mismatch between arrays."""


class LabelError(MvsError, ValueError):
    """Invalid view labels."""


class NestingError(MvsError, ValueError):
    """View hierarchy in which a sub-view is split over more than one parent view."""


class VersionError(MvsError, ValueError):
    """Unsupported model file format version."""


class DataError(MvsError, ValueError):
    """Data that cannot be used for fitting."""


class MissingDataError(DataError):
    """Missing values where none are allowed."""


class ParseError(DataError):
    """Malformed CSV input.

    Attributes
    ----------
    line : int
        Line number (1-based) of the offending record.
    column : {int, None}
        Column number (1-based) of the offending cell, if known.

    """

    def __init__(self, message, line, column=None):
        """Initialize.

        Parameters
        ----------
        message : str
            Description of the problem.
        line : int
            Line number (1-based) of the offending record.
        column : {int, None}
            Column number (1-based) of the offending cell.

        """
        location = "line {0}".format(line)
        if column is not None:
            location += ", column {0}".format(column)
        super().__init__("{0} ({1})".format(message, location))
        self.line = line
        self.column = column


class StratificationError(DataError):
    """Training fold that contains a single outcome class."""


class DegenerateError(DataError):
    """Data without any information to learn from."""


class ImputeError(DataError):
    """Meta-level imputation that cannot be carried out."""


class NumericError(MvsError, ArithmeticError):
    """Non-finite values in the numerical input."""


class ConvergenceError(NumericError):
    """Iterative solver that failed to converge.

    Attributes
    ----------
    lambda_index : {int, None}
        Index of the penalty strength on the path at which the solver failed.

    """

    def __init__(self, message, lambda_index=None):
        """Initialize.

        Parameters
        ----------
        message : str
            Description of the failure.
        lambda_index : {int, None}
            Index of the penalty strength on the path at which the solver failed.

        """
        if lambda_index is not None:
            message = "{0} (lambda index {1})".format(message, lambda_index)
        super().__init__(message)
        self.lambda_index = lambda_index


def annotate_fold(error, fold):
    """Return a copy of a learner error that records the fold in which it occurred.

    Parameters
    ----------
    error : MvsError
        Error raised while training on a cross-validation fold.
    fold : int
        Index of the held-out fold.

    Returns
    -------
    annotated : MvsError
        Error of the same class with the fold prepended to the message and a `fold` attribute.

    """
    message = "fold {0}: {1}".format(fold, error)
    if isinstance(error, ConvergenceError):
        annotated = ConvergenceError("fold {0}: {1}".format(fold, error.args[0]))
        annotated.lambda_index = error.lambda_index
    elif isinstance(error, ParseError):
        annotated = error
    else:
        annotated = type(error)(message)
    annotated.fold = fold
    return annotated
