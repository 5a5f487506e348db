"""Storage of fitted stacked models as JSON documents.

Arrays are stored with their shape and data type, floats with their shortest exact
representation and NaN as null, so that a loaded model predicts exactly as the saved one.

"""
from dataclasses import asdict, fields
from datetime import datetime, timezone
import json
import logging

from mvstack.data import CvConfig, LevelPlan, ViewHierarchy
from mvstack.errors import DataError, MvsError, ParseError, VersionError
from mvstack.families import get_family
from mvstack.learners._tree import Tree
from mvstack.learners.forest import ForestFit, ForestSpec
from mvstack.learners.glm import GlmFit, GlmPath, GlmSpec
from mvstack.missing import ImputationReport, NaAction
from mvstack.stacking import LevelFit, MvsModel
import numpy as np

logger = logging.getLogger(__name__)

FORMAT = "mvstack-model/1"
TREE_FIELDS = ("feature", "threshold", "left", "right", "value")


def _encode(array):
    """Return an array as a JSON-compatible dictionary."""
    if array is None:
        return None
    array = np.asarray(array)
    if array.dtype.kind in "biu":
        return {"dtype": "int", "shape": list(array.shape), "values": array.ravel().tolist()}
    flat = array.astype(float).ravel()
    values = flat.astype(object)
    values[np.isnan(flat)] = None
    return {"dtype": "float", "shape": list(array.shape), "values": values.tolist()}


def _decode(payload, writeable=False):
    """Return the array stored by `_encode`."""
    if payload is None:
        return None
    dtype = int if payload["dtype"] == "int" else float
    array = np.array(payload["values"], dtype=dtype).reshape(payload["shape"])
    array.setflags(write=writeable)
    return array


def _glm_to_dict(fit):
    spec = {}
    for item in fields(GlmSpec):
        value = getattr(fit.spec, item.name)
        spec[item.name] = _encode(value) if item.name in ("penalty_weights", "lambdas") else value
    path = fit.path
    return {
        "kind": "glm",
        "intercept": float(fit.intercept),
        "beta": _encode(fit.beta),
        "lambda_selected": float(fit.lambda_selected),
        "lambda_index": int(fit.lambda_index),
        "lambda_rule": fit.lambda_rule,
        "relaxed": bool(fit.relaxed),
        "spec": spec,
        "path": {
            "lambdas": _encode(path.lambdas),
            "intercepts": _encode(path.intercepts),
            "betas": _encode(path.betas),
            "deviance": _encode(path.deviance),
            "n_solved": int(path.n_solved),
            "cv_mean": _encode(path.cv_mean),
            "cv_se": _encode(path.cv_se),
        },
    }


def _glm_from_dict(payload):
    spec = dict(payload["spec"])
    for name in ("penalty_weights", "lambdas"):
        spec[name] = _decode(spec[name])
    path = payload["path"]
    return GlmFit(
        intercept=float(payload["intercept"]),
        beta=_decode(payload["beta"]),
        lambda_selected=float(payload["lambda_selected"]),
        lambda_index=int(payload["lambda_index"]),
        path=GlmPath(
            lambdas=_decode(path["lambdas"]),
            intercepts=_decode(path["intercepts"]),
            betas=_decode(path["betas"]),
            deviance=_decode(path["deviance"]),
            n_solved=int(path["n_solved"]),
            cv_mean=_decode(path["cv_mean"]),
            cv_se=_decode(path["cv_se"]),
        ),
        spec=GlmSpec(**spec),
        lambda_rule=payload["lambda_rule"],
        relaxed=bool(payload["relaxed"]),
    )


def _forest_to_dict(fit):
    return {
        "kind": "rf",
        "family": fit.family.name,
        "spec": asdict(fit.spec),
        "feature_importance": _encode(fit.feature_importance),
        "oob_predictions": _encode(fit.oob_predictions),
        "trees": [
            {name: _encode(getattr(tree, name)) for name in TREE_FIELDS} for tree in fit.trees
        ],
    }


def _forest_from_dict(payload):
    return ForestFit(
        trees=tuple(
            Tree(**{name: _decode(tree[name]) for name in TREE_FIELDS}) for tree in payload["trees"]
        ),
        feature_importance=_decode(payload["feature_importance"]),
        oob_predictions=_decode(payload["oob_predictions"]),
        spec=ForestSpec(**payload["spec"]),
        family=get_family(payload["family"]),
    )


def submodel_to_dict(fit):
    """Return a fitted sub-model (GLM or forest) as plain values.

    Raises
    ------
    TypeError
        If the sub-model is of an unknown type.

    """
    if isinstance(fit, GlmFit):
        return _glm_to_dict(fit)
    if isinstance(fit, ForestFit):
        return _forest_to_dict(fit)
    raise TypeError("Cannot store a sub-model of type {0}.".format(type(fit).__name__))


def submodel_from_dict(payload):
    """Return the sub-model stored by `submodel_to_dict`."""
    if payload["kind"] == "glm":
        return _glm_from_dict(payload)
    if payload["kind"] == "rf":
        return _forest_from_dict(payload)
    raise DataError("Unknown sub-model kind {0!r}.".format(payload["kind"]))


def _hierarchy_to_dict(hierarchy):
    return {
        "levels": hierarchy.levels,
        "assignment": _encode(hierarchy.assignment),
        "label_maps": [
            [[old, new] for old, new in sorted(mapping.items())] for mapping in hierarchy.label_maps
        ],
    }


def _hierarchy_from_dict(payload):
    assignment = _decode(payload["assignment"], writeable=True)
    ingested = np.empty_like(assignment)
    for column, pairs in enumerate(payload["label_maps"]):
        inverse = {new: old for old, new in pairs}
        ingested[:, column] = [inverse[label] for label in assignment[:, column]]
    return ViewHierarchy(ingested, levels=int(payload["levels"]))


def _level_to_dict(fit):
    return {
        "level": fit.level,
        "models": [submodel_to_dict(sub) for sub in fit.models],
        "inputs": [_encode(group) for group in fit.inputs],
        "names": [list(names) for names in fit.names],
        "rows": [_encode(rows) for rows in fit.rows],
        "z": _encode(fit.z),
        "z_complete": _encode(fit.z_complete),
        "report": None if fit.report is None else fit.report.to_dict(),
        "folds": _encode(fit.folds),
    }


def _level_from_dict(payload):
    report = payload["report"]
    return LevelFit(
        level=int(payload["level"]),
        models=tuple(submodel_from_dict(sub) for sub in payload["models"]),
        inputs=tuple(_decode(group) for group in payload["inputs"]),
        names=tuple(tuple(names) for names in payload["names"]),
        rows=tuple(_decode(rows) for rows in payload["rows"]),
        z=_decode(payload["z"]),
        z_complete=_decode(payload["z_complete"]),
        report=None if report is None else ImputationReport.from_dict(report),
        folds=_decode(payload["folds"]),
    )


def model_to_dict(model):
    """Return a fitted stacked model as a JSON-compatible dictionary.

    Parameters
    ----------
    model : MvsModel
        Fitted model.

    Returns
    -------
    payload : dict
        Model with the format tag "mvstack-model/1" and a creation timestamp.

    Raises
    ------
    TypeError
        If `model` is not an `MvsModel` instance.

    """
    if not isinstance(model, MvsModel):
        raise TypeError("`model` must be an `MvsModel` instance.")
    plan = asdict(model.plan)
    plan = {key: list(value) if isinstance(value, tuple) else value for key, value in plan.items()}
    return {
        "format": FORMAT,
        "created": datetime.now(timezone.utc).isoformat(),
        "family": model.family.name,
        "p": int(model.p),
        "outcome_mean": float(model.outcome_mean),
        "hierarchy": _hierarchy_to_dict(model.hierarchy),
        "plan": plan,
        "cv": asdict(model.cv),
        "na": asdict(model.na),
        "metadata": dict(model.metadata),
        "levels": [_level_to_dict(fit) for fit in model.levels],
    }


def model_from_dict(payload):
    """Return the stacked model stored by `model_to_dict`.

    Raises
    ------
    VersionError
        If the format tag is missing or unknown.
    DataError
        If a field is missing or malformed.

    """
    if not isinstance(payload, dict) or "format" not in payload:
        raise VersionError("Model file has no format tag.")
    if payload["format"] != FORMAT:
        raise VersionError(
            "Unsupported model format {0!r}; expected {1!r}.".format(payload["format"], FORMAT)
        )
    try:
        plan = dict(payload["plan"])
        plan["warnings"] = tuple(plan.get("warnings", ()))
        return MvsModel(
            levels=tuple(_level_from_dict(fit) for fit in payload["levels"]),
            hierarchy=_hierarchy_from_dict(payload["hierarchy"]),
            plan=LevelPlan(**plan),
            cv=CvConfig(**payload["cv"]),
            na=NaAction(**payload["na"]),
            family=get_family(payload["family"]),
            p=int(payload["p"]),
            outcome_mean=float(payload["outcome_mean"]),
            metadata=dict(payload["metadata"]),
        )
    except MvsError:
        raise
    except (KeyError, TypeError, ValueError) as error:
        raise DataError("Malformed model file: {0!r}".format(error)) from error


def save_model(model, path):
    """Write a fitted stacked model to a JSON file.

    Parameters
    ----------
    model : MvsModel
        Fitted model.
    path : str
        Path of the file.

    """
    with open(path, "w") as handle:
        json.dump(model_to_dict(model), handle)
    logger.info("Saved %d-level model to %s", model.n_levels, path)


def load_model(path):
    """Return the stacked model stored in a JSON file.

    Parameters
    ----------
    path : str
        Path of the file.

    Returns
    -------
    model : MvsModel

    Raises
    ------
    ParseError
        If the file is not valid JSON.
    VersionError
        If the format tag is missing or unknown.
    DataError
        If a field is missing or malformed.

    """
    with open(path, "r") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as error:
            raise ParseError("Invalid JSON: {0}".format(error.msg), error.lineno, error.colno)
    return model_from_dict(payload)
