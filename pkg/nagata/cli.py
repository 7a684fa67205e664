#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Command line front end: one subcommand per analysis, each loading its
inputs, running a single operation and writing its report as JSON or CSV.

Exit codes: 0 if every verdict is clean, 1 if the report documents a
violation (the report is still written), 2 on usage, input or
verification errors.
"""
import argparse
import csv
import dataclasses
import io
import json
import logging
import sys
import typing

from nagata import dimension
from nagata import heisenberg
from nagata import maps
from nagata import serialize
from nagata import space as spaces
from nagata.report import Report
from nagata.report import Sections
from nagata.report import cell
from nagata.report import stable
from nagata.exceptions import BadParameter
from nagata.exceptions import MissingInput
from nagata.exceptions import TooLarge
from nagata.exceptions import Unsatisfiable
from nagata.exceptions import UnknownFlag

log = logging.getLogger(__name__)

EXIT_CLEAN = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2

SUBCOMMANDS = ("validate", "nagata", "decompose", "cover", "map-check",
               "pullback", "fiber-cover", "heisenberg-word",
               "heisenberg-profile", "nagata-constant")

REQUIRED = {
    "validate": ("space",),
    "nagata": ("space", "n"),
    "decompose": ("space", "r", "K"),
    "cover": ("space", "r"),
    "map-check": ("map",),
    "pullback": ("map", "parts", "r", "K"),
    "fiber-cover": ("map", "subset", "r", "R", "c"),
    "heisenberg-word": ("k",),
    "heisenberg-profile": ("L",),
    "nagata-constant": (),
}


@dataclasses.dataclass
class RunConfig(object):
    """
    Everything a run needs, as parsed from the command line.
    """
    subcommand: str
    space: typing.Optional[str] = None
    map: typing.Optional[str] = None
    parts: typing.Optional[str] = None
    subset: typing.Optional[typing.List[int]] = None
    n: typing.Optional[int] = None
    r: typing.Optional[float] = None
    K: typing.Optional[float] = None
    c: typing.Optional[float] = None
    p: typing.Optional[float] = None
    s: typing.Optional[float] = None
    R: typing.Optional[float] = None
    k: typing.Optional[int] = None
    L: typing.Optional[int] = None
    generators: str = "ab"
    midpoints: bool = False
    normalize: bool = False
    truncate: bool = False
    out: typing.Optional[str] = None
    format: str = "json"
    verbose: bool = False


class _Parser(argparse.ArgumentParser):
    """
    ArgumentParser raising the usage errors of this package instead of
    printing and exiting.
    """
    def error(self, message):
        if message.startswith("unrecognized arguments"):
            raise UnknownFlag(message)
        if message.startswith("the following arguments are required"):
            raise MissingInput(message)
        raise BadParameter(message)


def _index_list(text):
    try:
        indices = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated "
                                         + "indices, got {!r}".format(text))
    if any(i < 0 for i in indices):
        raise argparse.ArgumentTypeError("indices must not be negative, "
                                         + "got {!r}".format(text))
    return indices


def build_parser():
    parser = _Parser(prog="nagata", allow_abbrev=False,
                     description="Finite certificates for Assouad-Nagata "
                                 + "dimension and the Heisenberg group.")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--space", help="JSON space file")
    parser.add_argument("--map", help="JSON map file")
    parser.add_argument("--parts", help="JSON list of parts")
    parser.add_argument("--subset", type=_index_list,
                        help="comma separated domain indices")
    parser.add_argument("--n", type=int, help="dimension")
    parser.add_argument("--r", type=float, help="scale")
    parser.add_argument("--K", type=float, help="diameter constant")
    parser.add_argument("--c", type=float, help="fiber decomposition constant")
    parser.add_argument("--p", type=float, help="snowflake exponent")
    parser.add_argument("--s", type=float, help="rescaling factor")
    parser.add_argument("--R", type=float, help="codomain scale")
    parser.add_argument("--k", type=int, help="exponent of c")
    parser.add_argument("--L", type=int, help="ball radius")
    parser.add_argument("--generators", choices=heisenberg.GENERATING_SETS,
                        default="ab")
    parser.add_argument("--midpoints", action="store_true",
                        help="also scan midpoints between distances")
    parser.add_argument("--normalize", action="store_true",
                        help="rescale the codomain to openness 1")
    parser.add_argument("--truncate", action="store_true",
                        help="truncate the metric at 1")
    parser.add_argument("--out", help="report file, stdout by default")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--verbose", action="store_true")
    return parser


def _check_parameters(config):
    def bad(flag, message):
        raise BadParameter("--{}: {}".format(flag, message))

    if config.n is not None and config.n < 0:
        bad("n", "must not be negative, got {}".format(config.n))
    if config.L is not None and config.L < 0:
        bad("L", "must not be negative, got {}".format(config.L))
    for flag in ("r", "K", "c", "s", "R"):
        value = getattr(config, flag)
        if value is not None and not 0 < value < float("inf"):
            bad(flag, "must be positive and finite, got {}".format(value))
    if config.p is not None and not 0 < config.p <= 1:
        bad("p", "must lie in (0, 1], got {}".format(config.p))
    if config.subset is not None and not config.subset:
        bad("subset", "must not be empty")

    for flag in REQUIRED[config.subcommand]:
        if getattr(config, flag) is None:
            raise MissingInput("{} needs --{}".format(config.subcommand, flag))


def parse_args(argv):
    """
    Parse the command line into a RunConfig.

    Raises
    ------
    UnknownFlag
        for flags not understood
    MissingInput
        if the subcommand lacks an input it needs
    BadParameter
        if a value is malformed or out of range, naming the flag
    """
    namespace = build_parser().parse_args(argv)
    config = RunConfig(**vars(namespace))
    _check_parameters(config)
    return config


def _load_space(config):
    """
    Load the space and apply the requested transforms: truncation at 1,
    then snowflaking, then rescaling.
    """
    space = serialize.load_space(config.space)
    if config.truncate:
        space = spaces.truncate_to_one(space)
    if config.p is not None:
        space = spaces.snowflake(space, config.p)
    if config.s is not None:
        space = spaces.rescale(space, config.s)
    return space


def _load_map(config):
    f = serialize.load_map(config.map)
    if config.normalize:
        f = maps.normalize_openness(f)
    return f


class SpaceReport(Report):
    """
    A validated space in matrix form together with its diameter and its
    ultrametric verdict. It reloads as a space.
    """
    def __init__(self, space):
        self._space = space
        self._ultrametric, self._witness = spaces.is_ultrametric(space)

    def to_dict(self):
        data = serialize.space_to_dict(self._space)
        data.update({"size": len(self._space),
                     "diameter": self._space.diameter(),
                     "ultrametric": self._ultrametric,
                     "witness": (None if self._witness is None
                                 else self._witness.to_dict())})
        return data

    def to_rows(self):
        return ["label"] + list(self._space.labels), [
            [label] + row for label, row in zip(self._space.labels,
                                                self._space.matrix.tolist())]


def _validate(config):
    return SpaceReport(_load_space(config))


def _nagata(config):
    space = _load_space(config)
    if config.r is not None:
        return dimension.nagata_check(space, config.n, config.r)
    return dimension.nagata_scan(space, config.n, midpoints=config.midpoints)


def _decompose(config):
    space = _load_space(config)
    if config.parts is not None:
        parts = serialize.load_parts(config.parts)
        return dimension.verify_decomposition(space, parts, config.r, config.K)
    try:
        return dimension.min_parts_exact(space, config.r, config.K)
    except (TooLarge, Unsatisfiable) as error:
        log.warning("%s, falling back to the greedy decomposition", error)
        return dimension.greedy_parts(space, config.r, config.K)


def _cover(config):
    return dimension.cover_report(_load_space(config), config.r, config.n)


def _map_check(config):
    f = _load_map(config)
    analysis = maps.analyze(f)
    return Sections(constants=analysis,
                    fibers=maps.fiber_space_check(f),
                    balls=maps.check_brodskiy(f))


def _pullback(config):
    f = _load_map(config)
    parts = serialize.load_parts(config.parts)
    return maps.pullback_decomposition(f, parts, config.r, config.K)


def _fiber_cover(config):
    f = _load_map(config)
    if config.parts is not None:
        fiber_parts = serialize.load_parts(config.parts)
    else:
        base = min(f(x) for x in config.subset)
        fiber_parts = maps.fiber_decomposition(f, base, 2 * config.R + config.r,
                                               config.c)
    return maps.fiber_cover(f, config.subset, config.r, config.R, config.c,
                            fiber_parts)


def _heisenberg_word(config):
    if config.K is not None:
        return heisenberg.word_report(config.k, config.K)
    return heisenberg.word_report(config.k)


def _heisenberg_profile(config):
    return heisenberg.central_distance_profile(config.L, config.generators)


def _nagata_constant(config):
    return heisenberg.nagata_constant()


COMMANDS = {
    "validate": _validate,
    "nagata": _nagata,
    "decompose": _decompose,
    "cover": _cover,
    "map-check": _map_check,
    "pullback": _pullback,
    "fiber-cover": _fiber_cover,
    "heisenberg-word": _heisenberg_word,
    "heisenberg-profile": _heisenberg_profile,
    "nagata-constant": _nagata_constant,
}


def render(result, format="json"):
    """
    Return the report as text. JSON is dumped with sorted keys and floats
    rounded to 12 significant digits, CSV with one header row.
    """
    if format == "json":
        return json.dumps(stable(result.to_dict()), sort_keys=True,
                          indent=2) + "\n"
    if format == "csv":
        header, rows = result.to_rows()
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([cell(v) for v in row])
        return buffer.getvalue()
    raise ValueError("unknown format {!r}".format(format))


def emit_report(result, format="json", path=None):
    """
    Write the report to path, or to stdout when path is None. Identical
    reports give byte identical output.
    """
    text = render(result, format)
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def run(config):
    """
    Dispatch the configured subcommand and write its report.

    Returns
    -------
    code : int
        0 for clean verdicts, 1 if the report documents a violation, 2 if
        the run failed
    """
    try:
        result = COMMANDS[config.subcommand](config)
        emit_report(result, config.format, config.out)
    except (OSError, ValueError) as error:
        log.error("%s failed: %s: %s", config.subcommand,
                  type(error).__name__, error)
        return EXIT_ERROR
    except Exception:
        # exit code 1 is reserved for reported violations
        log.exception("%s failed unexpectedly", config.subcommand)
        return EXIT_ERROR
    if result.violation:
        return EXIT_VIOLATION
    return EXIT_CLEAN


def main(argv=None):
    """
    Parse argv, configure logging on stderr and run.
    """
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
    except (UnknownFlag, MissingInput, BadParameter) as error:
        logging.basicConfig(level=logging.WARNING)
        log.error("%s", error)
        return EXIT_ERROR
    logging.basicConfig(level=logging.DEBUG if config.verbose
                        else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return run(config)
