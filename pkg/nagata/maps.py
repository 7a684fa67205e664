#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Maps between finite metric spaces: Lipschitz and openness constants,
metrically parallel fibers, the ball-image form of metric openness, the
space of fibers under the Hausdorff distance, and the two constructions
turning decompositions of the codomain or of a fiber into decompositions
of the domain.

A map is metrically open with constant mu when
d(x, f^-1(y)) <= mu * d(f(x), y) for every x and every y in the image.
"""
import logging

import numpy as np

from nagata.report import Report
from nagata.space import hausdorff
from nagata.space import is_ultrametric
from nagata.space import product
from nagata.space import rescale
from nagata.util import check_finite
from nagata.util import check_positive
from nagata.util import relative_tolerance
from nagata.util import whole_number
from nagata.dimension import check_components
from nagata.dimension import greedy_parts
from nagata.dimension import min_parts_exact
from nagata.dimension import r_components
from nagata.exceptions import CertificateFailure
from nagata.exceptions import DegenerateMap
from nagata.exceptions import EmptySubset
from nagata.exceptions import FiberPartsHypothesisFails
from nagata.exceptions import ImageTooLarge
from nagata.exceptions import InvalidAssignment
from nagata.exceptions import InvalidMu
from nagata.exceptions import MuExceedsOne
from nagata.exceptions import NonUltrametricFiber
from nagata.exceptions import NotACover
from nagata.exceptions import NotCovered
from nagata.exceptions import PartHypothesisFails
from nagata.exceptions import TooLarge
from nagata.exceptions import Unsatisfiable

log = logging.getLogger(__name__)


class MetricMap(object):
    """
    A map f from a finite metric space to another one, given by the index
    of the image of every domain point. Fibers are computed once on
    construction. The map need not hit every codomain point; all notions
    here refer to the image f(X).

    Parameters
    ----------
    domain : nagata.space.FiniteMetricSpace
    codomain : nagata.space.FiniteMetricSpace
    assignment : sequence of int
        assignment[x] is the codomain index of f(x)

    Raises
    ------
    InvalidAssignment
        if the assignment does not define a map between the spaces

    Examples
    --------
    >>> f = MetricMap(X, Y, [0, 0, 1])
    >>> f.image, f.fiber(0)
    ((0, 1), (0, 1))
    """
    def __init__(self, domain, codomain, assignment):
        assignment = tuple(assignment)
        if len(assignment) != len(domain):
            raise InvalidAssignment("{} values ".format(len(assignment))
                                    + "for {} points".format(len(domain)))
        for x, value in enumerate(assignment):
            y = whole_number(value)
            if y is None or not 0 <= y < len(codomain):
                raise InvalidAssignment("f({}) = {!r} is not ".format(x, value)
                                        + "a codomain point")
        assignment = tuple(whole_number(y) for y in assignment)
        fibers = {}
        for x, y in enumerate(assignment):
            fibers.setdefault(y, []).append(x)

        self._domain = domain
        self._codomain = codomain
        self._assignment = assignment
        self._image = tuple(sorted(fibers))
        self._fibers = {y: tuple(xs) for y, xs in fibers.items()}
        self._fiber_distances = None

    @property
    def domain(self):
        return self._domain

    @property
    def codomain(self):
        return self._codomain

    @property
    def assignment(self):
        return self._assignment

    @property
    def image(self):
        """
        Return the sorted codomain indices hit by the map.
        """
        return self._image

    def fiber(self, y):
        """
        Return the preimage of codomain point y, empty outside the image.
        """
        return self._fibers.get(y, ())

    def __call__(self, x):
        return self._assignment[self._domain.index(x)]

    def fiber_distances(self):
        """
        Return the matrix of d(x, f^-1(y)), one row per domain point x and
        one column per image point y in the order of self.image.
        """
        if self._fiber_distances is None:
            d = self._domain.matrix
            columns = [d[:, list(self._fibers[y])].min(axis=1)
                       for y in self._image]
            distances = np.stack(columns, axis=1)
            distances.setflags(write=False)
            self._fiber_distances = distances
        return self._fiber_distances

    def rescale_codomain(self, s):
        """
        Return the same map into the codomain with distances divided by s.
        """
        return MetricMap(self._domain, rescale(self._codomain, s),
                         self._assignment)

    def __repr__(self):
        return "MetricMap({} -> {} points, image={})".format(
            len(self._domain), len(self._codomain), list(self._image))


def product_projection(first, second, metric="sum"):
    """
    Return the projection first x second -> second, where point (i, j) of
    the product maps to j. With the sum or the euclidean metric on the
    product its fibers are metrically parallel.
    """
    space = product(first, second, metric)
    assignment = [j for _ in range(len(first)) for j in range(len(second))]
    return MetricMap(space, second, assignment)


def lipschitz_constant(f):
    """
    Return the smallest lambda with d(f(x), f(x')) <= lambda * d(x, x'),
    zero for a single point domain.

    Examples
    --------
    >>> lipschitz_constant(MetricMap(X, X, range(len(X))))
    1.0
    """
    n = len(f.domain)
    if n < 2:
        return 0.0
    a = list(f.assignment)
    dy = f.codomain.matrix[np.ix_(a, a)]
    dx = f.domain.matrix
    off_diagonal = ~np.eye(n, dtype=bool)
    return float((dy[off_diagonal] / dx[off_diagonal]).max())


def openness_constant(f):
    """
    Return the smallest mu with d(x, f^-1(y)) <= mu * d(f(x), y) for every
    domain point x and image point y != f(x), zero if the image is a single
    point.
    """
    image = list(f.image)
    if len(image) < 2:
        return 0.0
    dy = f.codomain.matrix[np.ix_(list(f.assignment), image)]
    apart = dy > 0
    return float((f.fiber_distances()[apart] / dy[apart]).max())


def normalize_openness(f):
    """
    Return f with its codomain rescaled so that the openness constant
    becomes 1. Maps with a single image point come back unchanged.
    """
    mu = openness_constant(f)
    if mu == 0:
        return f
    return f.rescale_codomain(1 / mu)


def _tolerant_at_most(value, bound):
    return value <= bound * (1 + relative_tolerance())


def check_parallel_fibers(f):
    """
    Decide whether f has metrically parallel fibers: for every x and every
    image point y some x' in f^-1(y) satisfies d(x, x') = d(f(x), y).

    Returns
    -------
    (parallel, counterexample) : (bool, tuple or None)
        the counterexample is the first pair (x, y) without such x'
    """
    tol = max(f.domain.tolerance, f.codomain.tolerance)
    d = f.domain.matrix
    for x in f.domain:
        for y in f.image:
            if y == f(x):
                continue
            target = f.codomain.distance(f(x), y)
            if not np.any(np.abs(d[x, list(f.fiber(y))] - target) <= tol):
                return False, (x, y)
    return True, None


class MapAnalysis(Report):
    """
    The constants of a map: lambda, mu and whether the fibers are
    metrically parallel.
    """
    def __init__(self, lipschitz, openness, parallel, counterexample=None):
        self._lipschitz = lipschitz
        self._openness = openness
        self._parallel = parallel
        self._counterexample = counterexample

    @property
    def lipschitz(self):
        return self._lipschitz

    @property
    def openness(self):
        return self._openness

    @property
    def parallel(self):
        return self._parallel

    def to_dict(self):
        return {"lambda": self._lipschitz, "mu": self._openness,
                "parallel": self._parallel,
                "counterexample": (None if self._counterexample is None
                                   else list(self._counterexample))}


def analyze(f):
    """
    Return the MapAnalysis of f.
    """
    parallel, counterexample = check_parallel_fibers(f)
    return MapAnalysis(lipschitz_constant(f), openness_constant(f), parallel,
                       counterexample)


class BrodskiyReport(Report):
    """
    Outcome of checking B(f(x), R/mu) within f(B(x, R)) for every domain
    point x and radius R of the grid.
    """
    def __init__(self, mu, radii, failure=None, certified=True):
        self._mu = mu
        self._radii = list(radii)
        self._failure = failure
        self._certified = certified

    @property
    def ok(self):
        return self._failure is None

    @property
    def violation(self):
        return not self.ok

    @property
    def mu(self):
        return self._mu

    @property
    def radii(self):
        return self._radii

    @property
    def failure(self):
        """
        Return (x, R, y): codomain point y lies in B(f(x), R/mu) but not in
        f(B(x, R)). None if every inclusion holds.
        """
        return self._failure

    @property
    def mu_certified(self):
        """
        True if mu is at least the openness constant, in which case every
        inclusion is guaranteed.
        """
        return self._certified

    def to_dict(self):
        return {"verdict": "ok" if self.ok else "violation", "mu": self._mu,
                "radii": len(self._radii), "mu_certified": self._certified,
                "failure": None if self._failure is None else list(self._failure)}


def check_brodskiy(f, mu=None, radii=None):
    """
    Check the ball-image form of metric openness, B(f(x), R/mu) within
    f(B(x, R)), with open balls restricted to the image.

    Both memberships are decided in codomain units: y is in the codomain
    ball if d(f(x), y) < R/mu and in f(B(x, R)) if d(x, f^-1(y))/mu < R/mu,
    so one tolerance governs the comparison.

    Parameters
    ----------
    f : MetricMap
    mu : float or None
        defaults to the openness constant of f (1 for a constant map)
    radii : sequence of float or None
        the radii R; by default mu * t for every positive distance t between
        image points and every midpoint between consecutive ones

    Returns
    -------
    report : BrodskiyReport

    Raises
    ------
    InvalidMu
        if mu <= 0
    CertificateFailure
        if mu is at least the openness constant and an inclusion fails
    """
    openness = openness_constant(f)
    if mu is None:
        mu = openness if openness > 0 else 1.0
    check_finite(mu)
    if mu <= 0:
        raise InvalidMu(mu)
    lam = 1.0 / mu
    image = list(f.image)

    if radii is None:
        block = f.codomain.matrix[np.ix_(image, image)]
        t = sorted(set(block[np.triu_indices(len(image), k=1)].tolist()))
        t = t + [(a + b) / 2 for a, b in zip(t, t[1:])]
        radii = [mu * v for v in sorted(t)]

    dy = f.codomain.matrix[np.ix_(list(f.assignment), image)]
    to_fiber = lam * f.fiber_distances()
    failure = None
    for R in radii:
        inside = f.codomain.lt(dy, lam * R)
        hit = f.codomain.lt(to_fiber, lam * R)
        missed = np.argwhere(inside & ~hit)
        if len(missed):
            x, j = missed[0]
            failure = (int(x), float(R), image[j])
            break

    certified = _tolerant_at_most(openness, mu)
    report = BrodskiyReport(mu, radii, failure, certified)
    if failure is not None and certified:
        log.error("ball inclusion fails at %s with mu=%g", failure, mu)
        raise CertificateFailure("ball inclusion fails at (x, R, y) = "
                                 + "{} although mu={} ".format(failure, mu)
                                 + "bounds the openness {}".format(openness))
    return report


class FiberSpaceReport(Report):
    """
    Comparison of the image distances with the Hausdorff distances of the
    corresponding fibers, d(y1, y2)/lambda <= d_H <= mu * d(y1, y2).
    """
    def __init__(self, lipschitz, openness, pairs, failure=None):
        self._lipschitz = lipschitz
        self._openness = openness
        self._pairs = pairs
        self._failure = failure

    @property
    def ok(self):
        return self._failure is None

    @property
    def violation(self):
        return not self.ok

    @property
    def lipschitz(self):
        return self._lipschitz

    @property
    def openness(self):
        return self._openness

    @property
    def failure(self):
        """
        Return (y1, y2, hausdorff distance) of the first failing pair.
        """
        return self._failure

    def to_dict(self):
        return {"ok": self.ok, "lambda": self._lipschitz,
                "mu": self._openness, "pairs": self._pairs,
                "failure": None if self._failure is None else list(self._failure)}


def fiber_space_check(f):
    """
    Check that y -> f^-1(y) is bi-Lipschitz from the image onto the fibers
    with the Hausdorff distance, with constants 1/lambda and mu.

    Returns
    -------
    report : FiberSpaceReport

    Raises
    ------
    DegenerateMap
        if lambda is zero while the image has two points or more
    """
    lam = lipschitz_constant(f)
    mu = openness_constant(f)
    image = f.image
    if len(image) >= 2 and lam == 0:
        raise DegenerateMap()

    domain = f.domain
    pairs = 0
    for i, y1 in enumerate(image):
        for y2 in image[i + 1:]:
            pairs += 1
            h = hausdorff(domain, f.fiber(y1), f.fiber(y2))
            dy = f.codomain.distance(y1, y2)
            if not (domain.le(dy / lam, h) and domain.le(h, mu * dy)):
                log.debug("fiber pair (%d, %d) out of bounds", y1, y2)
                return FiberSpaceReport(lam, mu, pairs, (y1, y2, h))
    return FiberSpaceReport(lam, mu, pairs)


def _check_ultrametric_fibers(f):
    for y in f.image:
        fiber = f.fiber(y)
        if len(fiber) < 3:
            continue
        ultrametric, witness = is_ultrametric(f.domain.subspace(fiber))
        if not ultrametric:
            raise NonUltrametricFiber(y, tuple(fiber[i]
                                               for i in witness["triple"]))


def _check_openness_at_most_one(f):
    mu = openness_constant(f)
    if not _tolerant_at_most(mu, 1.0):
        raise MuExceedsOne(mu)
    return mu


class PullbackReport(Report):
    """
    The preimages of a decomposition of the codomain, with the bound 4K + r
    on their r-components and the largest diameter found.
    """
    def __init__(self, parts, r, K, lipschitz, max_diameter):
        self._parts = [tuple(p) for p in parts]
        self._r = r
        self._K = K
        self._lipschitz = lipschitz
        self._max_diameter = max_diameter

    @property
    def parts(self):
        return self._parts

    @property
    def bound(self):
        return 4 * self._K + self._r

    @property
    def max_diameter(self):
        return self._max_diameter

    @property
    def lipschitz(self):
        return self._lipschitz

    def to_dict(self):
        return {"r": self._r, "K": self._K, "lambda": self._lipschitz,
                "bound": self.bound, "max_diameter": self._max_diameter,
                "parts": [list(p) for p in self._parts]}

    def to_rows(self):
        return ["part", "members"], [[i, list(p)]
                                     for i, p in enumerate(self._parts)]


def pullback_decomposition(f, codomain_parts, r, K):
    """
    Pull a decomposition of the codomain back along a map with ultrametric
    fibers and openness constant at most 1. If the (lambda*r)-components of
    every codomain part are K-bounded, then the r-components of its
    preimage are (4K + r)-bounded: the construction measures and asserts
    this.

    Parameters
    ----------
    f : MetricMap
        lambda-Lipschitz, ultrametric fibers, openness at most 1
    codomain_parts : sequence of sequences of int
        subsets of the codomain covering the image
    r : float
        scale on the domain
    K : float
        absolute bound on the (lambda*r)-components of each codomain part

    Returns
    -------
    report : PullbackReport

    Raises
    ------
    NonUltrametricFiber
        naming the first image point whose fiber is not ultrametric
    MuExceedsOne
        if the openness constant exceeds 1, see normalize_openness
    NotACover
        if the codomain parts miss an image point
    InvalidIndex
        if a codomain part holds an index outside the codomain
    PartHypothesisFails
        if a codomain part has a (lambda*r)-component wider than K
    CertificateFailure
        if a pulled back part breaks the bound 4K + r
    """
    check_positive("r", r)
    check_positive("K", K)
    _check_ultrametric_fibers(f)
    _check_openness_at_most_one(f)
    lam = lipschitz_constant(f)

    codomain_parts = [f.codomain.indices(p) for p in codomain_parts]
    covered = set()
    for part in codomain_parts:
        covered.update(part)
    for y in f.image:
        if y not in covered:
            raise NotACover(y)

    for i, part in enumerate(codomain_parts):
        if not part or lam == 0:
            continue
        for component in r_components(f.codomain, part, lam * r):
            if not f.codomain.le(component.diameter, K):
                raise PartHypothesisFails(i, component.diameter, K)

    parts = []
    for part in codomain_parts:
        members = set(part)
        parts.append([x for x in f.domain if f(x) in members])
    check = check_components(f.domain, parts, r, 4 * K + r)
    if check.violation:
        log.error("pulled back part %d has diameter %g > %g", check.part,
                  check.diameter, 4 * K + r)
        raise CertificateFailure("pulled back part {} breaks ".format(check.part)
                                 + "the bound 4K + r")
    return PullbackReport(parts, r, K, lam, check.max_diameter)


def pullback_constant(c, lam):
    """
    Return 4*c*lambda + 1: if the (lambda*r)-components of the codomain
    parts are (c*lambda*r)-bounded, the pulled back r-components are
    bounded by this constant times r.
    """
    return 4 * c * lam + 1


def fiber_decomposition(f, y, r, K):
    """
    Decompose the fiber over y into parts whose r-components are
    K*r-bounded, exactly when the fiber is small enough and greedily
    otherwise. Returns the parts as domain indices.
    """
    fiber = f.fiber(y)
    if not fiber:
        raise EmptySubset("fiber")
    space = f.domain.subspace(fiber)
    try:
        decomposition = min_parts_exact(space, r, K)
    except (TooLarge, Unsatisfiable):
        decomposition = greedy_parts(space, r, K)
    return [[fiber[i] for i in part] for part in decomposition]


class FiberCoverReport(Report):
    """
    The sets A_i = {x in A : d(x, F_i) < R_Y} built from a decomposition
    F_0..F_k of one fiber, with the bound a*r_X + b*R_Y on their
    r_X-components, a = c and b = 2c + 2.
    """
    def __init__(self, base, parts, r_X, R_Y, c, max_diameter):
        self._base = base
        self._parts = [tuple(p) for p in parts]
        self._r_X = r_X
        self._R_Y = R_Y
        self._c = c
        self._max_diameter = max_diameter

    @property
    def base(self):
        """
        Return the image point whose fiber was decomposed.
        """
        return self._base

    @property
    def parts(self):
        return self._parts

    @property
    def a(self):
        return self._c

    @property
    def b(self):
        return 2 * self._c + 2

    @property
    def bound(self):
        return self.a * self._r_X + self.b * self._R_Y

    @property
    def max_diameter(self):
        return self._max_diameter

    def to_dict(self):
        return {"base": self._base, "r_X": self._r_X, "R_Y": self._R_Y,
                "a": self.a, "b": self.b, "bound": self.bound,
                "max_diameter": self._max_diameter,
                "parts": [list(p) for p in self._parts]}

    def to_rows(self):
        return ["part", "members"], [[i, list(p)]
                                     for i, p in enumerate(self._parts)]


def fiber_cover(f, subset, r_X, R_Y, c, fiber_parts):
    """
    Spread a decomposition of a single fiber over a set A whose image has
    diameter below R_Y. The fiber is the one over the smallest image point
    of A. With openness at most 1 every point of A lies within R_Y of that
    fiber, so the thickened parts cover A, and their r_X-components are
    (c*r_X + (2c+2)*R_Y)-bounded.

    Parameters
    ----------
    f : MetricMap
        openness constant at most 1
    subset : sequence of int
        the set A, domain indices
    r_X, R_Y : float
        positive scales on the domain and the codomain
    c : float
        constant of the fiber decomposition
    fiber_parts : sequence of sequences of int
        F_0..F_k covering the fiber, domain indices, with
        (2R_Y + r_X)-components that are c*(2R_Y + r_X)-bounded

    Returns
    -------
    report : FiberCoverReport

    Raises
    ------
    InvalidIndex
        if A or a fiber part holds an index outside the domain
    ImageTooLarge
        if f(A) has diameter R_Y or more
    MuExceedsOne
        if the openness constant exceeds 1
    FiberPartsHypothesisFails
        if the fiber parts do not decompose the fiber as required
    NotCovered
        if a point of A lies in no part
    CertificateFailure
        if a part breaks the bound
    """
    subset = sorted(set(f.domain.indices(subset)))
    if not subset:
        raise EmptySubset("A")
    check_positive("r_X", r_X)
    check_positive("R_Y", R_Y)
    check_positive("c", c)
    domain = f.domain

    images = sorted(set(f(x) for x in subset))
    diameter = f.codomain.diameter(images)
    if not f.codomain.lt(diameter, R_Y):
        raise ImageTooLarge(diameter, R_Y)
    _check_openness_at_most_one(f)

    base = images[0]
    fiber = set(f.fiber(base))
    scale = 2 * R_Y + r_X
    fiber_parts = [sorted(set(domain.indices(p))) for p in fiber_parts]
    covered = set()
    for i, part in enumerate(fiber_parts):
        outside = [x for x in part if x not in fiber]
        if outside:
            raise FiberPartsHypothesisFails(
                i, "point {} is not in the fiber over {}".format(outside[0],
                                                                 base))
        covered.update(part)
        if not part:
            continue
        for component in r_components(domain, part, scale):
            if not domain.le(component.diameter, c * scale):
                raise FiberPartsHypothesisFails(
                    i, "component diameter {} > {}".format(component.diameter,
                                                           c * scale))
    if covered != fiber:
        missing = min(fiber - covered)
        raise FiberPartsHypothesisFails(
            None, "fiber point {} lies in no part".format(missing))

    parts = []
    for part in fiber_parts:
        if not part:
            parts.append([])
            continue
        parts.append([x for x in subset
                      if domain.lt(domain.distance_to_set(x, part), R_Y)])
    placed = set()
    for part in parts:
        placed.update(part)
    for x in subset:
        if x not in placed:
            raise NotCovered(x)

    bound = c * r_X + (2 * c + 2) * R_Y
    max_diameter = 0.0
    for i, part in enumerate(parts):
        if not part:
            continue
        for component in r_components(domain, part, r_X):
            max_diameter = max(max_diameter, component.diameter)
            if not domain.le(component.diameter, bound):
                log.error("part %d has diameter %g > %g", i,
                          component.diameter, bound)
                raise CertificateFailure("part {} breaks ".format(i)
                                         + "the bound {}".format(bound))
    return FiberCoverReport(base, parts, r_X, R_Y, c, max_diameter)
