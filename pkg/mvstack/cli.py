"""Command-line interface: ``mvstack {fit,predict,coef,importance,mrm,simulate}``.

Errors are reported on stderr as ``error: <ClassName>: <message>`` with the exit status 1 for
usage and configuration errors, 2 for data errors and 3 for numerical failures.

"""
import argparse
import json
import logging
import os
import sys

from mvstack.base import NA
from mvstack.data import CvConfig, LAMBDA_RULES, LevelPlan
from mvstack.errors import (
    ConfigError,
    DataError,
    LabelError,
    MvsError,
    NestingError,
    NumericError,
    ParseError,
    ShapeError,
    VersionError,
)
from mvstack.families import FAMILIES
from mvstack.missing import NaAction
from mvstack.mrm import mrm, MrmQuery
from mvstack.parsers import format_value, load_csv, read_matrix, write_matrix, write_views
from mvstack.serialization import load_model, save_model
from mvstack.simulate import preset, PRESETS, SimSpec, simulate
from mvstack.stacking import mvs_coef, mvs_fit, mvs_importance, mvs_predict, PREDTYPES

logger = logging.getLogger(__name__)

TABLE_ROW = "{0:<7}{1:<7}{2:<16}{3:>24}"


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser that raises a `ConfigError` on usage errors instead of exiting."""

    def error(self, message):
        raise ConfigError(message)


def exit_code(error):
    """Return the exit status of an error raised by a subcommand."""
    if isinstance(error, (ConfigError, VersionError)):
        return 1
    if isinstance(error, NumericError):
        return 3
    if isinstance(error, (DataError, ShapeError, LabelError, NestingError, OSError)):
        return 2
    return 1


def _split(text, cast, name):
    """Return a comma-separated option as a scalar (one entry) or a list."""
    if text is None:
        return None
    try:
        values = [cast(item.strip()) for item in text.split(",")]
    except ValueError:
        raise ConfigError("Invalid value {0!r} for --{1}.".format(text, name))
    return values[0] if len(values) == 1 else values


def _switch(text):
    if text.lower() in ("1", "true", "yes"):
        return True
    if text.lower() in ("0", "false", "no"):
        return False
    raise ValueError(text)


def _key_values(items):
    options = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError("Expected key=value, not {0!r}.".format(item))
        options[key.strip()] = value.strip()
    return options


def _log_progress(level, done, total):
    logger.info("Level %d: %d/%d sub-problems done", level, done, total)


def _check_level(model, level):
    if level is None:
        return list(range(1, model.n_levels + 1))
    if not 1 <= level <= model.n_levels:
        raise ConfigError("Level must be between 1 and {0}, not {1}.".format(model.n_levels, level))
    return [level]


def _fmt(value):
    return "NA" if value is NA else "{0:.10g}".format(value)


def run_fit(args):
    """Fit a stacked model to CSV data and write it to a model file."""
    na = NaAction.from_options(args.na_action, _key_values(args.na_arg))
    cv = CvConfig(k_outer=args.k, k_lambda=args.k_lambda, seed=args.seed,
                  lambda_rule=args.lambda_rule)
    alphas = _split(args.alphas, float, "alphas")
    nnc = _split(args.nnc, int, "nnc")
    learners = _split(args.type, str, "type")
    relax = _split(args.relax, _switch, "relax")
    adaptive = _split(args.adaptive, _switch, "adaptive")

    data, hierarchy = load_csv(args.x, args.y, args.views, family=args.family, levels=args.levels)
    plan = LevelPlan.create(
        hierarchy.levels,
        alphas=alphas,
        nnc=nnc,
        learners=learners,
        relax=relax,
        adaptive=adaptive,
        n_trees=args.n_trees,
        lambda_ratio=args.lambda_ratio,
    )
    model = mvs_fit(data, hierarchy, plan, cv, na, parallel=args.parallel, progress=_log_progress)
    save_model(model, args.out)

    print("levels: {0}".format(model.n_levels))
    for column, count in enumerate(hierarchy.view_counts):
        print("level {0}: {1} views".format(column + 2, count))
    selected = model.selected_views()
    if selected is None:
        print("selected views: NA")
    else:
        print("selected views: {0}".format(" ".join(str(view) for view in selected) or "none"))
    print("model written to {0}".format(args.out))


def run_predict(args):
    """Write the predictions of a model file for the features of a CSV file."""
    model = load_model(args.model)
    x, _ = read_matrix(args.x)
    predictions = mvs_predict(model, x, args.predtype)
    if args.out:
        write_matrix(args.out, predictions)
    else:
        sys.stdout.write("".join(format_value(value) + "\n" for value in predictions))


def run_coef(args):
    """Print the coefficients of the GLM sub-models of a model file."""
    model = load_model(args.model)
    records = mvs_coef(model)
    print(TABLE_ROW.format("level", "model", "input", "coefficient"))
    for level in _check_level(model, args.level):
        for index, record in enumerate(records[level - 1], start=1):
            if record is NA:
                print(TABLE_ROW.format(level, index, "NA", "NA"))
                continue
            print(TABLE_ROW.format(level, index, "(Intercept)", _fmt(record.intercept)))
            for name, value in zip(record.names, record.coefficients):
                print(TABLE_ROW.format(level, index, name, _fmt(value)))


def run_importance(args):
    """Print the impurity importance of the inputs of the forest sub-models of a model file."""
    model = load_model(args.model)
    records = mvs_importance(model)
    print(TABLE_ROW.format("level", "model", "input", "importance"))
    for level in _check_level(model, args.level):
        for index, record in enumerate(records[level - 1], start=1):
            if record is NA:
                print(TABLE_ROW.format(level, index, "NA", "NA"))
                continue
            for name, value in zip(record.names, record.values):
                print(TABLE_ROW.format(level, index, name, _fmt(value)))


def run_mrm(args):
    """Print the minority report measure of the views of a level of a model file."""
    model = load_model(args.model)
    result = mrm(model, MrmQuery(args.level, args.a, args.b, args.constant))
    print("constant: {0}".format(_fmt(result.constant)))
    print("{0:<16}{1:>24}".format("view", "mrm"))
    for name, value in zip(result.names, result.values):
        print("{0:<16}{1:>24}".format(name, _fmt(value)))
    if model.n_levels == 2:
        record = model.top.coef(model.levels[-1].names[0])
        if record is not NA:
            print("{0:<16}{1:>24}".format("view", "meta coefficient"))
            for name, value in zip(record.names, record.coefficients):
                print("{0:<16}{1:>24}".format(name, _fmt(value)))


def _sim_spec(args):
    if args.spec:
        with open(args.spec, "r") as handle:
            try:
                payload = json.load(handle)
            except json.JSONDecodeError as error:
                raise ParseError("Invalid JSON: {0}".format(error.msg), error.lineno, error.colno)
        if not isinstance(payload, dict):
            raise ConfigError("Simulation file must hold a JSON object.")
        return SimSpec.from_dict(payload)
    changes = {
        "n": args.n,
        "seed": args.seed,
        "family": args.family,
        "signal": args.signal,
        "view_sizes": _split(args.view_sizes, int, "view-sizes"),
        "sub_view_sizes": _split(args.sub_view_sizes, int, "sub-view-sizes"),
    }
    changes = {key: value for key, value in changes.items() if value is not None}
    for key in ("view_sizes", "sub_view_sizes"):
        if key in changes and not isinstance(changes[key], list):
            changes[key] = [changes[key]]
    if args.missing_block:
        changes["missing_blocks"] = [
            _split(block, int, "missing-block") for block in args.missing_block
        ]
        for block in changes["missing_blocks"]:
            if not isinstance(block, list) or len(block) != 3:
                raise ConfigError("A missing block is given as first_row,last_row,view.")
    return preset(args.preset, **changes)


def run_simulate(args):
    """Write a simulated dataset to CSV files."""
    spec = _sim_spec(args)
    data, hierarchy = simulate(spec)
    os.makedirs(args.out_dir, exist_ok=True)
    paths = [os.path.join(args.out_dir, name) for name in ("x.csv", "y.csv", "views.csv")]
    write_matrix(paths[0], data.x)
    write_matrix(paths[1], data.y)
    write_views(paths[2], hierarchy)
    print("simulated {0} observations of {1} features in {2} levels".format(
        data.n, data.p, hierarchy.levels
    ))
    for path in paths:
        print("written {0}".format(path))


def build_parser():
    """Return the argument parser of the `mvstack` command."""
    parser = ArgumentParser(prog="mvstack", description="Multi-view stacking.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress on stderr")
    commands = parser.add_subparsers(dest="command", parser_class=ArgumentParser)
    commands.required = True

    fit = commands.add_parser("fit", help="fit a stacked model")
    fit.add_argument("--x", "--data", dest="x", required=True, help="features CSV")
    fit.add_argument("--y", required=True, help="outcome CSV, or outcome column of the features")
    fit.add_argument("--views", required=True, help="view labels CSV")
    fit.add_argument("--family", default="binomial", choices=sorted(FAMILIES))
    fit.add_argument("--levels", type=int, default=None)
    fit.add_argument("--alphas", help="elastic-net mixing per level, e.g. 0,1")
    fit.add_argument("--nnc", help="nonnegativity per level, e.g. 0,1")
    fit.add_argument("--type", default="glm", help="learner per level: glm or rf")
    fit.add_argument("--relax", default="0", help="relaxed refit per level (0/1)")
    fit.add_argument("--adaptive", default="0", help="adaptive weights per level (0/1)")
    fit.add_argument("--n-trees", type=int, default=500)
    fit.add_argument("--lambda-ratio", type=float, default=1e-4,
                     help="smallest over largest penalty strength of the GLM paths")
    fit.add_argument("--na-action", default="fail")
    fit.add_argument("--na-arg", action="append", metavar="KEY=VALUE")
    fit.add_argument("--k", type=int, default=10, help="outer folds")
    fit.add_argument("--k-lambda", type=int, default=10, help="penalty tuning folds")
    fit.add_argument("--seed", type=int, default=0)
    fit.add_argument("--lambda-rule", default="min", choices=LAMBDA_RULES)
    fit.add_argument("--parallel", action="store_true")
    fit.add_argument("--out", required=True, help="model file to write")
    fit.set_defaults(run=run_fit)

    predict = commands.add_parser("predict", help="predict with a model file")
    predict.add_argument("--model", required=True)
    predict.add_argument("--x", "--data", dest="x", required=True, help="features CSV")
    predict.add_argument("--predtype", default="response", choices=PREDTYPES)
    predict.add_argument("--out", default=None, help="predictions CSV (default stdout)")
    predict.set_defaults(run=run_predict)

    for name, run in (("coef", run_coef), ("importance", run_importance)):
        command = commands.add_parser(name, help="print the {0} of the sub-models".format(name))
        command.add_argument("--model", required=True)
        command.add_argument("--level", type=int, default=None)
        command.set_defaults(run=run)

    measure = commands.add_parser("mrm", help="minority report measure of the views")
    measure.add_argument("--model", required=True)
    measure.add_argument("--level", type=int, required=True)
    measure.add_argument("--a", type=float, default=0.0)
    measure.add_argument("--b", type=float, default=1.0)
    measure.add_argument("--constant", type=float, default=None)
    measure.set_defaults(run=run_mrm)

    sim = commands.add_parser("simulate", help="write a simulated dataset")
    sim.add_argument("--spec", default=None, help="JSON file of simulation fields")
    sim.add_argument("--preset", default="two_level", choices=sorted(PRESETS))
    sim.add_argument("--n", type=int, default=None)
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--family", default=None, choices=sorted(FAMILIES))
    sim.add_argument("--signal", type=float, default=None)
    sim.add_argument("--view-sizes", default=None)
    sim.add_argument("--sub-view-sizes", default=None)
    sim.add_argument("--missing-block", action="append", metavar="FIRST,LAST,VIEW")
    sim.add_argument("--out-dir", required=True)
    sim.set_defaults(run=run_simulate)
    return parser


def main(argv=None):
    """Run the `mvstack` command and return its exit status."""
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            logging.basicConfig(
                level=logging.INFO, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
            )
        args.run(args)
    except (MvsError, OSError) as error:
        sys.stderr.write("error: {0}: {1}\n".format(type(error).__name__, error))
        return exit_code(error)
    return 0
