#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Reading and writing spaces, maps and part lists as JSON.

A space is either {"labels": [...], "matrix": [[...]]} or
{"points": [[...]], "metric": "l1" | "l2" | "linf"} with optional labels;
coordinates are turned into a distance matrix on load. A map is
{"domain": <space>, "codomain": <space>, "assignment": [...]}. Keys not
listed here are ignored.
"""
import json

from nagata.space import FiniteMetricSpace
from nagata.space import from_points
from nagata.maps import MetricMap
from nagata.util import whole_number


def read_json(path):
    """
    Return the parsed content of a JSON file.
    """
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def space_from_dict(data):
    """
    Build a FiniteMetricSpace from its dictionary form.

    Raises
    ------
    ValueError
        if neither a matrix nor points are given, or the data is no metric
    """
    if not isinstance(data, dict):
        raise ValueError("a space must be a JSON object")
    if "matrix" in data:
        matrix = data["matrix"]
        labels = data.get("labels")
        if labels is None:
            labels = [str(i) for i in range(len(matrix))]
        return FiniteMetricSpace(labels, matrix)
    if "points" in data:
        return from_points(data["points"], data.get("metric", "l2"),
                           data.get("labels"))
    raise ValueError("a space needs either 'matrix' or 'points'")


def space_to_dict(space):
    """
    Return the matrix form of a space at full float precision, so that
    loading it again gives an equal space.
    """
    return {"labels": list(space.labels),
            "matrix": space.matrix.tolist()}


def map_from_dict(data):
    """
    Build a MetricMap from its dictionary form.
    """
    if not isinstance(data, dict):
        raise ValueError("a map must be a JSON object")
    for key in ("domain", "codomain", "assignment"):
        if key not in data:
            raise ValueError("a map needs {!r}".format(key))
    return MetricMap(space_from_dict(data["domain"]),
                     space_from_dict(data["codomain"]),
                     data["assignment"])


def map_to_dict(f):
    return {"domain": space_to_dict(f.domain),
            "codomain": space_to_dict(f.codomain),
            "assignment": list(f.assignment)}


def parts_from_dict(data):
    """
    Accept either a bare list of parts or an object with a "parts" list, as
    written for decompositions. Entries must be non-negative whole numbers;
    whether they address a point is checked against the space they are
    used with.
    """
    if isinstance(data, dict):
        data = data.get("parts")
    if not isinstance(data, list) or not all(isinstance(p, list)
                                             for p in data):
        raise ValueError("parts must be a list of index lists")
    parts = []
    for part in data:
        indices = [whole_number(i) for i in part]
        if any(i is None or i < 0 for i in indices):
            raise ValueError("part {} holds an entry that is not ".format(part)
                             + "a point index")
        parts.append(indices)
    return parts


def load_space(path):
    return space_from_dict(read_json(path))


def load_map(path):
    return map_from_dict(read_json(path))


def load_parts(path):
    return parts_from_dict(read_json(path))


def dump_space(space, path):
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(space_to_dict(space), handle, sort_keys=True)
        handle.write("\n")


def dump_map(f, path):
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(map_to_dict(f), handle, sort_keys=True)
        handle.write("\n")
