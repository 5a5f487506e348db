"""Parsers and writers of the CSV files of features, outcomes, views and predictions."""
import csv
import logging
import os

from mvstack.data import Dataset, validate_views
from mvstack.errors import ConfigError, ParseError, ShapeError
import numpy as np

logger = logging.getLogger(__name__)

MISSING_TOKENS = ("", "NA")


def _is_number(cell):
    try:
        float(cell)
    except ValueError:
        return False
    return True


def read_matrix(path, header=None):
    """Parse a rectangular numeric CSV file.

    Parameters
    ----------
    path : str
        Path to the CSV file.
    header : {bool, None}
        Whether the first record holds column names. Default detects a header by a first
        record with a cell that is neither a number nor a missing token.

    Returns
    -------
    matrix : np.ndarray(N, K)
        Values of the file. Empty fields and the token `NA` are parsed as NaN.
    names : {tuple of str, None}
        Column names if the file has a header.

    Raises
    ------
    ParseError
        If the records do not all have the same number of fields.
        If a cell is not a number.
        If the file has no records.

    """
    with open(path, "r", newline="") as handle:
        records = [
            (line, [cell.strip() for cell in record])
            for line, record in enumerate(csv.reader(handle), start=1)
            if record and any(cell.strip() for cell in record)
        ]
    if not records:
        raise ParseError("File {0} has no records".format(path), 1)
    if header is None:
        header = any(
            cell not in MISSING_TOKENS and not _is_number(cell) for cell in records[0][1]
        )
    names = None
    if header:
        names = tuple(records[0][1])
        records = records[1:]
    width = len(names) if names is not None else len(records[0][1]) if records else 0
    values = np.empty((len(records), width))
    for row, (line, record) in enumerate(records):
        if len(record) != width:
            raise ParseError(
                "Expected {0} fields but found {1}".format(width, len(record)), line
            )
        for column, cell in enumerate(record):
            if cell in MISSING_TOKENS:
                values[row, column] = np.nan
                continue
            try:
                values[row, column] = float(cell)
            except ValueError:
                raise ParseError("Cell {0!r} is not a number".format(cell), line, column + 1)
    logger.debug("Read %d x %d values from %s", values.shape[0], values.shape[1], path)
    return values, names


def read_views(path, p=None, levels=None, remap=True):
    """Parse a CSV file of view labels (one row per feature, one column per grouping level).

    Parameters
    ----------
    path : str
        Path to the CSV file.
    p : {int, None}
        Number of features. Default is the number of rows of the file.
    levels : {int, None}
        Number of levels. Default is the number of columns plus one.
    remap : bool
        Whether labels with gaps are remapped to 1, ..., V.

    Returns
    -------
    hierarchy : ViewHierarchy

    Raises
    ------
    ParseError
        If the file is malformed.
    ShapeError
        If the file does not have `p` rows.
    LabelError
        If the labels are not positive integers.

    """
    labels, _ = read_matrix(path)
    p = labels.shape[0] if p is None else p
    return validate_views(labels, p, levels=levels, remap=remap)


def _outcome_column(names, outcome, width):
    """Return the 0-based index of the outcome column given by name or 1-based position."""
    if names is not None and outcome in names:
        return names.index(outcome)
    try:
        index = int(outcome) - 1
    except (TypeError, ValueError):
        raise ConfigError("Outcome column {0!r} not found.".format(outcome))
    if not 0 <= index < width:
        raise ConfigError("Outcome column {0} is out of range 1..{1}.".format(index + 1, width))
    return index


def load_csv(features, outcome, views, family="binomial", levels=None, remap=True):
    """Return the dataset and the view hierarchy stored in CSV files.

    Parameters
    ----------
    features : str
        Path to the CSV file of features (one row per observation).
    outcome : {str, int}
        Path to a one-column CSV file of outcomes, or the name or 1-based position of the
        outcome column of the features file.
    views : str
        Path to the CSV file of view labels.
    family : str
        Outcome family.
    levels : {int, None}
        Number of levels. Default is the number of columns of the views file plus one.
    remap : bool
        Whether view labels with gaps are remapped to 1, ..., V.

    Returns
    -------
    data : Dataset
        Features (with NaN for missing cells), outcome and family.
    hierarchy : ViewHierarchy

    Raises
    ------
    ParseError
        If a file is malformed.
    ShapeError
        If the files disagree on the number of observations or features.
    DataError
        If the outcome is missing or invalid for the family.

    """
    x, names = read_matrix(features)
    if isinstance(outcome, str) and os.path.isfile(outcome):
        y, _ = read_matrix(outcome)
        if y.shape[1] != 1:
            raise ShapeError("Outcome file must have a single column, not {0}.".format(y.shape[1]))
        y = y[:, 0]
    else:
        column = _outcome_column(names, outcome, x.shape[1])
        y = x[:, column]
        x = np.delete(x, column, axis=1)
    if y.size != x.shape[0]:
        raise ShapeError(
            "Outcome has {0} values but there are {1} observations.".format(y.size, x.shape[0])
        )
    data = Dataset(x, y, family)
    hierarchy = read_views(views, p=data.p, levels=levels, remap=remap)
    return data, hierarchy


def format_value(value):
    """Return a number as written to CSV files (`NA` for NaN, integers without a decimal point)."""
    if np.isnan(value):
        return "NA"
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def write_matrix(path, matrix, names=None):
    """Write a matrix (or vector, as one column) to a CSV file.

    Floats are written with `repr` so that they are read back exactly; NaN is written as `NA`.

    Parameters
    ----------
    path : str
        Path to the CSV file.
    matrix : np.ndarray
        Values to write.
    names : {sequence of str, None}
        Column names written as a header.

    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim == 1:
        matrix = matrix[:, np.newaxis]
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        if names is not None:
            writer.writerow(names)
        for row in matrix:
            writer.writerow([format_value(value) for value in row])


def write_views(path, hierarchy):
    """Write the view labels of a hierarchy to a CSV file."""
    write_matrix(path, hierarchy.assignment)
