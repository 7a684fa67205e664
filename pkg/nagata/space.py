#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Finite metric spaces: construction and validation, the transforms used by
the dimension arguments (snowflaking, rescaling, truncation), ultrametric
detection and the Hausdorff distance between point sets.

Points are addressed by index. Labels are opaque strings carried along for
input and output only.
"""
import logging

import numpy as np
from scipy.cluster.hierarchy import cophenet
from scipy.cluster.hierarchy import linkage
from scipy.spatial.distance import pdist
from scipy.spatial.distance import squareform

from nagata.util import check_finite
from nagata.util import less_equal
from nagata.util import relative_tolerance
from nagata.util import strictly_less
from nagata.util import whole_number
from nagata.exceptions import AsymmetricMatrix
from nagata.exceptions import DuplicateLabel
from nagata.exceptions import DuplicatePoint
from nagata.exceptions import EmptySubset
from nagata.exceptions import InvalidExponent
from nagata.exceptions import InvalidIndex
from nagata.exceptions import MetricError
from nagata.exceptions import NegativeDistance
from nagata.exceptions import NonPositiveScale
from nagata.exceptions import NonZeroDiagonal
from nagata.exceptions import TriangleViolation

log = logging.getLogger(__name__)

POINT_METRICS = {"l1": "cityblock", "l2": "euclidean", "linf": "chebyshev"}


class FiniteMetricSpace(object):
    """
    A finite set of points together with a validated distance matrix.

    The matrix is checked for symmetry, a zero diagonal, positive
    off-diagonal entries and the triangle inequality, all up to the space's
    tolerance: the relative tolerance times the largest entry. Once built
    the space is immutable.

    Parameters
    ----------
    labels : sequence of str
        one identifier per point, must be unique
    matrix : numpy.ndarray_like of shape (n, n)
        pairwise distances, n >= 1

    Raises
    ------
    MetricError
        or one of its subclasses AsymmetricMatrix, NegativeDistance,
        NonZeroDiagonal, DuplicatePoint, TriangleViolation and DuplicateLabel
        if the input is not a finite metric space
    ValueError
        if the matrix contains Inf or NaN

    Examples
    --------
    >>> FiniteMetricSpace(["p", "q"], [[0, 1], [1, 0]])
    FiniteMetricSpace(labels=['p', 'q'], matrix=[[0. 1.] [1. 0.]])
    """
    def __init__(self, labels, matrix):
        matrix = np.array(matrix, dtype=np.float64)
        labels = tuple(str(l) for l in labels)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise MetricError("distance matrix must be square, "
                              + "got shape {}".format(matrix.shape))
        if len(labels) != matrix.shape[0]:
            raise MetricError("{} labels for ".format(len(labels))
                              + "{} points".format(matrix.shape[0]))
        if len(labels) == 0:
            raise EmptySubset("metric space")
        check_finite(matrix)
        seen = set()
        for label in labels:
            if label in seen:
                raise DuplicateLabel(label)
            seen.add(label)

        tol = relative_tolerance() * float(np.abs(matrix).max())
        _check_metric(matrix, tol)

        # entries agree up to tol, store the exact symmetric part
        matrix = (matrix + matrix.T) / 2
        np.fill_diagonal(matrix, 0.0)
        matrix.setflags(write=False)

        self._labels = labels
        self._matrix = matrix
        self._tolerance = tol

    @property
    def labels(self):
        """
        Return the point labels.
        """
        return self._labels

    @property
    def matrix(self):
        """
        Return the read-only distance matrix.
        """
        return self._matrix

    @property
    def tolerance(self):
        """
        Return the absolute slack used by every comparison on this space.
        """
        return self._tolerance

    def __len__(self):
        return len(self._labels)

    def __iter__(self):
        return iter(range(len(self)))

    def index(self, i):
        """
        Return i as a point index of this space.

        Raises
        ------
        InvalidIndex
            unless i is a whole number in range(len(self)); negative
            indices are rejected, not counted from the end
        """
        index = whole_number(i)
        if index is None or not 0 <= index < len(self):
            raise InvalidIndex(i, len(self))
        return index

    def indices(self, subset):
        """
        Return the subset as a tuple of checked point indices.
        """
        return tuple(self.index(i) for i in subset)

    def distance(self, i, j):
        """
        Return the distance between the points with index i and j.
        """
        return float(self._matrix[self.index(i), self.index(j)])

    def lt(self, a, b):
        """
        a < b up to the tolerance of this space, that is a < b - tol.
        """
        return strictly_less(a, b, self._tolerance)

    def le(self, a, b):
        """
        a <= b up to the tolerance of this space, that is a <= b + tol.
        """
        return less_equal(a, b, self._tolerance)

    def diameter(self, subset=None):
        """
        Return the largest distance within subset (all points by default).
        The diameter of a single point is zero.
        """
        if subset is None:
            return float(self._matrix.max())
        subset = self.indices(subset)
        if len(subset) == 0:
            raise EmptySubset()
        return float(self._matrix[np.ix_(subset, subset)].max())

    def ball(self, x, radius):
        """
        Return the indices of the open ball B(x, radius) = {z : d(x,z) < r}.
        """
        inside = self.lt(self._matrix[self.index(x)], radius)
        return tuple(int(i) for i in np.flatnonzero(inside))

    def distance_to_set(self, x, subset):
        """
        Return d(x, S), the smallest distance from point x to the subset S.

        Raises
        ------
        EmptySubset
            if S is empty
        """
        subset = self.indices(subset)
        if len(subset) == 0:
            raise EmptySubset()
        return float(self._matrix[self.index(x), subset].min())

    def subspace(self, subset):
        """
        Return the subset as a metric space of its own, points in the given
        order.
        """
        subset = self.indices(subset)
        if len(subset) == 0:
            raise EmptySubset()
        return FiniteMetricSpace([self._labels[i] for i in subset],
                                 self._matrix[np.ix_(subset, subset)])

    def relabel(self, order):
        """
        Return the same space with its points listed in the given order, so
        that point i of the result is point order[i] of this space.
        """
        order = self.indices(order)
        if sorted(order) != list(range(len(self))):
            raise ValueError("{} is not a permutation".format(order))
        return self.subspace(order)

    def distances(self):
        """
        Return the sorted distinct positive distances of the space.
        """
        upper = self._matrix[np.triu_indices(len(self), k=1)]
        return [float(d) for d in np.unique(upper)]

    def __eq__(self, other):
        if not isinstance(other, FiniteMetricSpace):
            return NotImplemented
        if self._labels != other._labels:
            return False
        tol = max(self._tolerance, other._tolerance)
        return bool(np.all(np.abs(self._matrix - other._matrix) <= tol))

    __hash__ = None

    def __repr__(self):
        m = np.array2string(self._matrix, separator=" ").replace("\n", "")
        return "FiniteMetricSpace(labels={}, matrix={})".format(
            list(self._labels), m)


class Witness(object):
    """
    Point indices tagged with the role they play in a certificate, for
    example the triple breaking the strong triangle inequality.

    Parameters
    ----------
    space : FiniteMetricSpace
        the space the indices refer to
    roles : keyword arguments of int sequences
        one tuple of indices per role

    Raises
    ------
    InvalidIndex
        if an index does not address a point of the space

    Examples
    --------
    >>> Witness(space, triple=(0, 1, 2))["triple"]
    (0, 1, 2)
    """
    def __init__(self, space, **roles):
        self._roles = {}
        for role, indices in roles.items():
            self._roles[role] = space.indices(indices)

    @property
    def roles(self):
        """
        Return the role names in sorted order.
        """
        return sorted(self._roles)

    def __getitem__(self, role):
        return self._roles[role]

    def to_dict(self):
        return {role: list(self._roles[role]) for role in self.roles}

    def __repr__(self):
        return "Witness({})".format(self.to_dict())


def _check_metric(matrix, tol):
    """
    Raise the first metric axiom violation found in index order.
    """
    bad = np.argwhere(matrix < 0)
    if len(bad):
        raise NegativeDistance(*(int(v) for v in bad[0]))

    bad = np.flatnonzero(np.abs(np.diag(matrix)) > tol)
    if len(bad):
        raise NonZeroDiagonal(int(bad[0]))

    bad = np.argwhere(np.triu(np.abs(matrix - matrix.T) > tol, k=1))
    if len(bad):
        raise AsymmetricMatrix(*(int(v) for v in bad[0]))

    n = matrix.shape[0]
    off_diagonal = ~np.eye(n, dtype=bool)
    bad = np.argwhere(np.triu((matrix <= tol) & off_diagonal, k=1))
    if len(bad):
        raise DuplicatePoint(*(int(v) for v in bad[0]))

    for i in range(n):
        # violated[j, k]: dist[i][k] > dist[i][j] + dist[j][k]
        violated = matrix[i][None, :] > matrix[i][:, None] + matrix + tol
        if violated.any():
            j, k = np.argwhere(violated)[0]
            raise TriangleViolation(i, int(j), int(k))


def validate(labels, matrix):
    """
    Returns the finite metric space described by labels and matrix.

    Parameters
    ----------
    labels : sequence of str
        point identifiers, same length as the matrix
    matrix : numpy.ndarray_like of shape (n, n)
        the distances

    Returns
    -------
    space : FiniteMetricSpace

    Raises
    ------
    MetricError
        AsymmetricMatrix, NegativeDistance, TriangleViolation(i, j, k),
        DuplicatePoint(i, j) and friends, see FiniteMetricSpace

    Examples
    --------
    >>> validate("ab", [[0, 1], [1, 0]])
    >>> validate("abc", [[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    Traceback (most recent call last):
    TriangleViolation: triangle inequality fails for (0, 1, 2)
    """
    return FiniteMetricSpace(labels, matrix)


def is_ultrametric(space):
    """
    Decide whether the space satisfies d(x,z) <= max(d(x,y), d(y,z)) for all
    triples, up to the space's tolerance.

    Parameters
    ----------
    space : FiniteMetricSpace

    Returns
    -------
    (ultrametric, witness) : (bool, Witness or None)
        On failure the witness has role "triple" holding (i, j, k) with
        d(i,k) > max(d(i,j), d(j,k)), the first such triple in index order.

    Examples
    --------
    >>> is_ultrametric(validate("abc", [[0, 1, 1.5], [1, 0, 1], [1.5, 1, 0]]))
    (False, Witness({'triple': [0, 1, 2]}))
    """
    d = space.matrix
    for i in space:
        violated = d[i][None, :] > np.maximum(d[i][:, None], d) + space.tolerance
        if violated.any():
            j, k = np.argwhere(violated)[0]
            return False, Witness(space, triple=(i, int(j), int(k)))
    return True, None


def snowflake(space, p):
    """
    Returns the snowflaked space with distances d**p.

    Parameters
    ----------
    space : FiniteMetricSpace
    p : float
        exponent in (0, 1]

    Raises
    ------
    InvalidExponent
        if p <= 0 or p > 1

    Examples
    --------
    >>> snowflake(validate("ab", [[0, 4], [4, 0]]), 0.5).distance(0, 1)
    2.0
    """
    check_finite(p)
    if not 0 < p <= 1:
        raise InvalidExponent(p)
    return FiniteMetricSpace(space.labels, space.matrix ** p)


def rescale(space, s):
    """
    Returns the space with every distance divided by s.

    Raises
    ------
    NonPositiveScale
        if s <= 0
    """
    check_finite(s)
    if s <= 0:
        raise NonPositiveScale(s)
    return FiniteMetricSpace(space.labels, space.matrix / s)


def truncate_to_one(space):
    """
    Returns the space where every distance in (0, 1) is raised to 1 while
    distances of at least 1 stay as they are. Coarse geometry does not see
    the difference, and the result is uniformly discrete.

    Examples
    --------
    >>> truncate_to_one(validate("abc", [[0, .5, 2], [.5, 0, 2], [2, 2, 0]]))
    FiniteMetricSpace(labels=['a', 'b', 'c'], matrix=[[0. 1. 2.] ...])
    """
    d = space.matrix
    return FiniteMetricSpace(space.labels, np.where((d > 0) & (d < 1), 1.0, d))


def hausdorff(space, a, b):
    """
    Returns the Hausdorff distance between the point sets a and b, the
    larger of max d(x, b) over x in a and max d(y, a) over y in b.

    Parameters
    ----------
    space : FiniteMetricSpace
    a, b : sequence of int
        non-empty subsets given by point index

    Raises
    ------
    EmptySubset
        if a or b is empty

    Examples
    --------
    >>> line = from_points([0, 1, 3], "l1")
    >>> hausdorff(line, [0], [1, 2])
    3.0
    """
    a, b = space.indices(a), space.indices(b)
    if len(a) == 0 or len(b) == 0:
        raise EmptySubset()
    block = space.matrix[np.ix_(a, b)]
    return float(max(block.min(axis=1).max(), block.min(axis=0).max()))


def from_points(points, metric="l2", labels=None):
    """
    Returns the space of the given coordinate vectors under the l1, l2 or
    linf metric.

    Parameters
    ----------
    points : numpy.ndarray_like of shape (n, dim) or (n, )
        coordinates, one row per point
    metric : str
        one of "l1", "l2", "linf"
    labels : sequence of str
        defaults to "0" .. "n-1"
    """
    if metric not in POINT_METRICS:
        raise ValueError("metric must be one of {}, ".format(sorted(POINT_METRICS))
                         + "got {!r}".format(metric))
    points = np.array(points, dtype=np.float64)
    if points.ndim == 1:
        points = points.reshape(-1, 1)
    check_finite(points)
    if labels is None:
        labels = [str(i) for i in range(len(points))]
    matrix = squareform(pdist(points, metric=POINT_METRICS[metric]))
    return FiniteMetricSpace(labels, matrix.reshape(len(points), len(points)))


def product(first, second, metric="sum"):
    """
    Returns the product of two spaces with either the sum metric or the
    euclidean combination of the factor metrics. Point (i, j) of the
    product has index i * len(second) + j.

    Parameters
    ----------
    first, second : FiniteMetricSpace
    metric : str
        "sum" or "euclidean"
    """
    d1 = first.matrix[:, None, :, None]
    d2 = second.matrix[None, :, None, :]
    if metric == "sum":
        d = d1 + d2
    elif metric == "euclidean":
        d = np.sqrt(d1 ** 2 + d2 ** 2)
    else:
        raise ValueError("metric must be 'sum' or 'euclidean', "
                         + "got {!r}".format(metric))
    n = len(first) * len(second)
    labels = ["{},{}".format(u, v) for u in first.labels for v in second.labels]
    return FiniteMetricSpace(labels, d.reshape(n, n))


def subdominant_ultrametric(space):
    """
    Returns the largest ultrametric below the metric of space: the
    single-linkage cophenetic distance, where d'(x, y) is the smallest
    possible longest hop of a chain from x to y.
    """
    if len(space) < 2:
        return space
    tree = linkage(squareform(space.matrix, checks=False), method="single")
    return FiniteMetricSpace(space.labels, squareform(cophenet(tree)))
