#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Errors raised across the package. All of them are ValueErrors so callers
that only care about rejected input can catch the builtin.
"""


class NagataError(ValueError):
    """
    Base class of every error raised by this package.
    """


# finite metric spaces

class MetricError(NagataError):
    """
    The distance matrix does not describe a finite metric space.
    """


class AsymmetricMatrix(MetricError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__("dist[{0}][{1}] differs from dist[{1}][{0}]"
                         .format(i, j))


class NegativeDistance(MetricError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__("dist[{}][{}] is negative".format(i, j))


class NonZeroDiagonal(MetricError):
    def __init__(self, i):
        self.i = i
        super().__init__("dist[{0}][{0}] is not zero".format(i))


class TriangleViolation(MetricError):
    """
    dist[i][k] exceeds dist[i][j] + dist[j][k].
    """
    def __init__(self, i, j, k):
        self.i, self.j, self.k = i, j, k
        super().__init__("triangle inequality fails for "
                         + "({}, {}, {})".format(i, j, k))


class DuplicatePoint(MetricError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__("points {} and {} are at distance zero".format(i, j))


class DuplicateLabel(MetricError):
    def __init__(self, label):
        self.label = label
        super().__init__("label {!r} is used twice".format(label))


class EmptySubset(NagataError):
    def __init__(self, what="subset"):
        super().__init__("{} must not be empty".format(what))


class InvalidIndex(NagataError, IndexError):
    """
    A point index that is not a whole number in range(size).
    """
    def __init__(self, index, size):
        self.index, self.size = index, size
        super().__init__("{!r} is not a point index of ".format(index)
                         + "a space of {} points".format(size))


class InvalidExponent(NagataError):
    def __init__(self, p):
        self.p = p
        super().__init__("snowflake exponent must lie in (0, 1], "
                         + "got {}".format(p))


class NonPositiveScale(NagataError):
    def __init__(self, s):
        self.s = s
        super().__init__("scale must be positive, got {}".format(s))


# decompositions and covers

class NotACover(NagataError):
    def __init__(self, point):
        self.point = point
        super().__init__("point {} is not covered".format(point))


class TooLarge(NagataError):
    def __init__(self, size, limit):
        self.size, self.limit = size, limit
        super().__init__("exhaustive search limited to {}, ".format(limit)
                         + "got {}".format(size))


class Unsatisfiable(NagataError):
    def __init__(self, K, max_parts):
        self.K, self.max_parts = K, max_parts
        super().__init__("no decomposition with K={} ".format(K)
                         + "fits into {} parts".format(max_parts))


# maps

class InvalidAssignment(NagataError):
    pass


class InvalidMu(NagataError):
    def __init__(self, mu):
        self.mu = mu
        super().__init__("openness constant must be positive, "
                         + "got {}".format(mu))


class DegenerateMap(NagataError):
    def __init__(self):
        super().__init__("Lipschitz constant is zero on a non-trivial image")


class NonUltrametricFiber(NagataError):
    def __init__(self, y, triple):
        self.y, self.triple = y, triple
        super().__init__("fiber over {} is not ultrametric, ".format(y)
                         + "witness {}".format(triple))


class MuExceedsOne(NagataError):
    def __init__(self, mu):
        self.mu = mu
        super().__init__("openness constant {} exceeds 1, ".format(mu)
                         + "rescale the codomain first")


class PartHypothesisFails(NagataError):
    def __init__(self, i, diameter, bound):
        self.i, self.diameter, self.bound = i, diameter, bound
        super().__init__("part {} has a component of diameter ".format(i)
                         + "{} > {}".format(diameter, bound))


class ImageTooLarge(NagataError):
    def __init__(self, diameter, bound):
        self.diameter, self.bound = diameter, bound
        super().__init__("f(A) has diameter {}, ".format(diameter)
                         + "needs to be below {}".format(bound))


class FiberPartsHypothesisFails(NagataError):
    def __init__(self, i, reason):
        self.i = i
        super().__init__("fiber part {}: {}".format(i, reason))


class NotCovered(NagataError):
    def __init__(self, x):
        self.x = x
        super().__init__("point {} lies in no part".format(x))


class CertificateFailure(NagataError):
    """
    A construction whose preconditions held failed its own verification.
    """


# heisenberg group

class KTooSmall(NagataError):
    def __init__(self, K):
        self.K = K
        super().__init__("K={} is below 12 + 6*sqrt(2)".format(K))


class BudgetExceeded(NagataError):
    def __init__(self, L, budget):
        self.L, self.budget = L, budget
        super().__init__("radius {} exceeds the budget {}".format(L, budget))


# command line

class UsageError(NagataError):
    pass


class UnknownFlag(UsageError):
    pass


class MissingInput(UsageError):
    pass


class BadParameter(UsageError):
    pass
