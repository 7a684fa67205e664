#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Utilities contains the tolerance convention shared by every comparison in
the package and a few input checks.
"""
import numbers
import os

import numpy as np

DEFAULT_TOLERANCE = 1e-9
TOLERANCE_VARIABLE = "NAGATA_TOL"


def relative_tolerance():
    """
    Returns the relative tolerance, 1e-9 unless the environment variable
    NAGATA_TOL holds another positive float.

    Returns
    -------
    tolerance : float
        multiplied by the largest distance of a space it gives the absolute
        slack of every comparison on that space

    Raises
    ------
    ValueError
        if NAGATA_TOL is set but is not a positive finite float

    Examples
    --------
    >>> relative_tolerance()
    1e-09
    """
    value = os.environ.get(TOLERANCE_VARIABLE)
    if value is None or value.strip() == "":
        return DEFAULT_TOLERANCE
    try:
        tol = float(value)
    except ValueError:
        raise ValueError("{} must be a float, ".format(TOLERANCE_VARIABLE)
                         + "got {!r}".format(value))
    if not np.isfinite(tol) or tol <= 0:
        raise ValueError("{} must be positive, ".format(TOLERANCE_VARIABLE)
                         + "got {}".format(tol))
    return tol


def strictly_less(a, b, tol):
    """
    a < b in the tolerant sense, a < b - tol. Works elementwise on arrays.
    """
    return np.less(a, np.subtract(b, tol))


def less_equal(a, b, tol):
    """
    a <= b in the tolerant sense, a <= b + tol. Works elementwise on arrays.
    """
    return np.less_equal(a, np.add(b, tol))


def check_finite(*args):
    """
    Validate the input parameters and raise ValueErrors if any contains
    incompatible values (Infs or NaNs) are present.

    Parameters
    ----------
    args : numpy.ndarray_like
        a list of lists or arrays

    Raises
    ------
    ValueError
        if any passed in element is Inf or NaN.
    """
    for e in args:
        if not np.isfinite(np.asarray(e, dtype=np.float64)).all():
            raise ValueError("Input was {}".format(e)
                            + ", but can not contain Inf or NaN")


def check_positive(name, value):
    """
    Raise a ValueError unless value is a finite number larger than zero.
    """
    check_finite(value)
    if value <= 0:
        raise ValueError("{} must be positive, got {}".format(name, value))


def whole_number(value):
    """
    Return value as an int if it is a whole number, None otherwise. Booleans
    and strings do not count as numbers.

    Examples
    --------
    >>> whole_number(3.0), whole_number(1.7), whole_number(True)
    (3, None, None)
    """
    if isinstance(value, (bool, np.bool_)):
        return None
    if isinstance(value, numbers.Integral):
        return int(value)
    if (isinstance(value, numbers.Real) and np.isfinite(value)
            and float(value).is_integer()):
        return int(value)
    return None
