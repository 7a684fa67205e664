#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Every analysis returns a Report. Report is an abstract base class defining
how results turn into JSON objects and CSV rows; the concrete reports live
next to the analyses producing them.
"""
import numbers

import numpy as np

SIGNIFICANT_DIGITS = 12


def format_float(value):
    """
    Format a float with 12 significant digits.

    Examples
    --------
    >>> format_float(2 ** 0.5)
    '1.41421356237'
    """
    return format(float(value), ".{}g".format(SIGNIFICANT_DIGITS))


def stable(obj):
    """
    Recursively convert obj into plain JSON types. Floats are rounded to 12
    significant digits, numpy scalars and arrays become python numbers and
    lists, tuples become lists.

    Parameters
    ----------
    obj : object
        nested dicts, lists, tuples, numbers and strings

    Returns
    -------
    plain : object
        the same structure, safe to pass to json.dumps
    """
    if isinstance(obj, dict):
        return {str(k): stable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [stable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return stable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, numbers.Integral):
        return int(obj)
    if isinstance(obj, numbers.Real):
        if not np.isfinite(obj):
            return str(float(obj))
        return float(format_float(obj))
    return obj


def cell(value):
    """
    Render a single CSV cell.
    """
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return format_float(value)
    if isinstance(value, (list, tuple)):
        return " ".join(cell(v) for v in value)
    if value is None:
        return ""
    return str(value)


class Report(object):
    """
    Baseclass for results. A report knows whether it documents a violation,
    how to render itself as a JSON object and, optionally, as table rows.

    Examples
    --------
    >>> Report().violation
    False
    """

    @property
    def violation(self):
        """
        True if the report documents a found violation. The command line
        turns this into exit code 1.
        """
        return False

    def to_dict(self):
        """
        Returns the report as a dictionary of plain values.

        Raises
        ------
        NotImplementedError
            because this is an abstract base class
        """
        raise NotImplementedError()

    def to_rows(self):
        """
        Returns (header, rows) for CSV output. The default renders the
        dictionary form as key/value pairs sorted by key.
        """
        data = self.to_dict()
        return ["key", "value"], [[k, data[k]] for k in sorted(data)]

    def __repr__(self):
        return "{}({})".format(type(self).__name__, self.to_dict())


class Sections(Report):
    """
    Several named reports combined into one. It documents a violation as
    soon as one of its sections does.

    Parameters
    ----------
    sections : keyword arguments of Report
    """
    def __init__(self, **sections):
        self._sections = sections

    def __getitem__(self, name):
        return self._sections[name]

    def __iter__(self):
        return iter(sorted(self._sections))

    @property
    def violation(self):
        return any(s.violation for s in self._sections.values())

    def to_dict(self):
        return {name: s.to_dict() for name, s in self._sections.items()}

    def to_rows(self):
        rows = []
        for name in self:
            data = self._sections[name].to_dict()
            rows.extend([name, k, data[k]] for k in sorted(data))
        return ["section", "key", "value"], rows
