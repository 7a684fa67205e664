#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Assouad-Nagata dimension at a single scale: r-components, decompositions
into parts with bounded r-components, the Nagata property and its witness
search, and covers by balls around maximal nets.

Everything here is per scale. A space passing a check at scale r says
nothing about other scales.
"""
import collections
import logging

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from nagata.report import Report
from nagata.util import check_positive
from nagata.exceptions import CertificateFailure
from nagata.exceptions import EmptySubset
from nagata.exceptions import NotACover
from nagata.exceptions import TooLarge
from nagata.exceptions import Unsatisfiable

log = logging.getLogger(__name__)

EXHAUSTIVE_POINT_LIMIT = 14
EXHAUSTIVE_PART_LIMIT = 4

Component = collections.namedtuple("Component", ["members", "diameter"])


def _indices(subset):
    return tuple(int(i) for i in subset)


def r_components(space, subset, r):
    """
    Split subset into its r-components: two points belong to the same
    component if a chain of points of the subset connects them with every
    hop shorter than r.

    Parameters
    ----------
    space : nagata.space.FiniteMetricSpace
    subset : sequence of int
        the points to split, given by index
    r : float
        the scale, r > 0

    Returns
    -------
    components : list of Component
        (members, diameter) pairs. Members are sorted, components are
        ordered by their smallest member.

    Raises
    ------
    EmptySubset
        if subset is empty
    InvalidIndex
        if a member is not a point of the space

    Examples
    --------
    >>> line = from_points([0, 1, 2, 10], "l1")
    >>> [c.members for c in r_components(line, range(4), 1.5)]
    [(0, 1, 2), (3,)]
    """
    check_positive("r", r)
    subset = np.array(sorted(set(space.indices(subset))), dtype=int)
    if len(subset) == 0:
        raise EmptySubset()
    block = space.matrix[np.ix_(subset, subset)]
    links = csr_matrix(space.lt(block, r))
    count, labels = connected_components(links, directed=False)

    groups = collections.defaultdict(list)
    for position, label in enumerate(labels):
        groups[label].append(position)
    components = []
    for positions in sorted(groups.values(), key=min):
        members = tuple(int(subset[p]) for p in positions)
        diameter = float(block[np.ix_(positions, positions)].max())
        components.append(Component(members, diameter))
    return components


class Decomposition(Report):
    """
    A decomposition X = X_0 u ... u X_m together with the scale r and the
    constant K: all r-components of every part are to be K*r-bounded.

    Parameters
    ----------
    space : nagata.space.FiniteMetricSpace
    parts : sequence of sequences of int
        the parts, each given by point index
    r : float
        the scale, r > 0
    K : float
        the diameter constant, K > 0

    Examples
    --------
    >>> d = Decomposition(line, [[0, 1, 2, 6, 7, 8], [3, 4, 5, 9]], 2, 1)
    >>> d.m, d.bound
    (1, 2)
    """
    def __init__(self, space, parts, r, K):
        check_positive("r", r)
        check_positive("K", K)
        self._space = space
        self._parts = tuple(tuple(sorted(space.indices(p))) for p in parts)
        self._r = r
        self._K = K

    @property
    def space(self):
        return self._space

    @property
    def parts(self):
        return self._parts

    @property
    def r(self):
        return self._r

    @property
    def K(self):
        return self._K

    @property
    def bound(self):
        """
        Return K * r, the bound on the diameter of every r-component.
        """
        return self._K * self._r

    @property
    def m(self):
        """
        Return the number of parts minus one.
        """
        return len(self._parts) - 1

    def __iter__(self):
        return iter(self._parts)

    def __len__(self):
        return len(self._parts)

    def verify(self):
        """
        Return the DecompositionCheck of this decomposition.
        """
        return verify_decomposition(self._space, self._parts, self._r, self._K)

    def to_dict(self):
        return {"r": self._r, "K": self._K, "bound": self.bound, "m": self.m,
                "parts": [list(p) for p in self._parts]}

    def to_rows(self):
        return ["part", "members"], [[i, list(p)]
                                     for i, p in enumerate(self._parts)]


class DecompositionCheck(Report):
    """
    Outcome of verify_decomposition: either ok, or the first part holding an
    r-component whose diameter exceeds the bound.
    """
    def __init__(self, bound, max_diameter, part=None, component=None,
                 diameter=None):
        self._bound = bound
        self._max_diameter = max_diameter
        self._part = part
        self._component = component
        self._diameter = diameter

    @property
    def ok(self):
        return self._part is None

    @property
    def violation(self):
        return not self.ok

    @property
    def bound(self):
        return self._bound

    @property
    def max_diameter(self):
        """
        Return the largest r-component diameter over all parts.
        """
        return self._max_diameter

    @property
    def part(self):
        return self._part

    @property
    def component(self):
        return self._component

    @property
    def diameter(self):
        return self._diameter

    def to_dict(self):
        return {"verdict": "ok" if self.ok else "violation",
                "bound": self._bound,
                "max_diameter": self._max_diameter,
                "part": self._part,
                "component": list(self._component or ()),
                "diameter": self._diameter}


def check_components(space, parts, r, bound):
    """
    Check that every r-component of every part has diameter at most bound,
    up to the space's tolerance. The parts must cover the space.

    Returns
    -------
    check : DecompositionCheck

    Raises
    ------
    NotACover
        naming the first point that lies in no part
    InvalidIndex
        if a part holds an index outside the space
    """
    parts = [space.indices(p) for p in parts]
    covered = set()
    for p in parts:
        covered.update(p)
    for x in space:
        if x not in covered:
            raise NotACover(x)

    max_diameter = 0.0
    first = None
    for i, part in enumerate(parts):
        if not part:
            continue
        for component in r_components(space, part, r):
            max_diameter = max(max_diameter, component.diameter)
            if first is None and not space.le(component.diameter, bound):
                first = (i, component.members, component.diameter)
    if first is None:
        return DecompositionCheck(bound, max_diameter)
    return DecompositionCheck(bound, max_diameter, *first)


def verify_decomposition(space, parts, r, K):
    """
    Check that all r-components of every part are K*r-bounded.

    Parameters
    ----------
    space : nagata.space.FiniteMetricSpace
    parts : sequence of sequences of int
        must cover the space
    r, K : float
        positive scale and constant

    Returns
    -------
    check : DecompositionCheck
        ok, or violation naming part index, component and its diameter

    Raises
    ------
    NotACover
        if some point lies in no part

    Examples
    --------
    >>> line = from_points(range(10), "l1")
    >>> verify_decomposition(line, [range(10)], 2, 1).ok
    False
    """
    check_positive("r", r)
    check_positive("K", K)
    return check_components(space, parts, r, K * r)


class _PartBuilder(object):
    """
    Incremental bookkeeping for assigning points to parts at scale r. Adding
    points to a part can only merge its r-components, so a part that breaks
    the bound stays broken and searches may prune on the first failure.
    """
    def __init__(self, space, r, bound):
        self._d = space.matrix
        self._links = space.lt(space.matrix, r)
        self._limit = bound + space.tolerance

    def fits(self, members, point):
        """
        Return True if the r-component of point within members + [point]
        stays within the bound.
        """
        component = [point]
        reached = {point}
        pool = set(members)
        while component:
            current = component.pop()
            for other in [o for o in pool if self._links[current, o]]:
                pool.discard(other)
                reached.add(other)
                component.append(other)
        if len(reached) == 1:
            return True
        reached = list(reached)
        return self._d[np.ix_(reached, reached)].max() <= self._limit


def min_parts_exact(space, r, K, point_limit=EXHAUSTIVE_POINT_LIMIT,
                    part_limit=EXHAUSTIVE_PART_LIMIT):
    """
    Find the smallest m such that the space splits into m+1 parts with
    K*r-bounded r-components, by exhaustive search over set partitions.
    Points are assigned in index order and a point may only open the next
    unused part, so every partition is visited once.

    Parameters
    ----------
    space : nagata.space.FiniteMetricSpace
    r, K : float
        positive scale and constant
    point_limit : int
        largest space searched exhaustively
    part_limit : int
        largest number of parts tried

    Returns
    -------
    decomposition : Decomposition
        with exactly m+1 non-empty parts

    Raises
    ------
    TooLarge
        if the space has more than point_limit points
    Unsatisfiable
        if no decomposition into at most part_limit parts exists

    Examples
    --------
    >>> min_parts_exact(from_points(range(10), "l1"), 2, 1).parts
    ((0, 1, 2, 4, 5, 6, 8, 9), (3, 7))
    """
    check_positive("r", r)
    check_positive("K", K)
    if len(space) > point_limit:
        raise TooLarge(len(space), point_limit)

    builder = _PartBuilder(space, r, K * r)
    n = len(space)

    def assign(point, parts, used):
        if point == n:
            return True
        for p in range(min(used + 1, len(parts))):
            if builder.fits(parts[p], point):
                parts[p].append(point)
                if assign(point + 1, parts, max(used, p + 1)):
                    return True
                parts[p].pop()
        return False

    for count in range(1, part_limit + 1):
        parts = [[] for _ in range(count)]
        if assign(0, parts, 0):
            log.debug("exact search: %d parts at r=%g, K=%g", count, r, K)
            return Decomposition(space, parts, r, K)
    raise Unsatisfiable(K, part_limit)


def greedy_parts(space, r, K, max_parts=None):
    """
    Build a decomposition greedily: every point, in index order, joins the
    first part that keeps its r-components K*r-bounded, or opens a new one.
    A new singleton part always fits, so the result is always valid but
    not necessarily minimal.

    Parameters
    ----------
    space : nagata.space.FiniteMetricSpace
    r, K : float
        positive scale and constant
    max_parts : int or None
        optional budget on the number of parts

    Returns
    -------
    decomposition : Decomposition

    Raises
    ------
    Unsatisfiable
        if max_parts is given and a point fits into none of them
    """
    check_positive("r", r)
    check_positive("K", K)
    builder = _PartBuilder(space, r, K * r)
    parts = []
    for point in space:
        for members in parts:
            if builder.fits(members, point):
                members.append(point)
                break
        else:
            if max_parts is not None and len(parts) >= max_parts:
                raise Unsatisfiable(K, max_parts)
            parts.append([point])
    log.debug("greedy: %d parts at r=%g, K=%g", len(parts), r, K)
    return Decomposition(space, parts, r, K)


class NagataReport(Report):
    """
    The verdict of the n-dimensional Nagata property at scale r. On a
    violation the report carries the witness: a center x, distinct points
    y_1..y_{n+2} pairwise at least r apart and auxiliaries z_i with
    d(y_i, z_i) < r and d(x, z_i) < r/2, together with the margin
    epsilon = min_i min(r - d(y_i, z_i), r - 2 d(x, z_i)).

    Parameters
    ----------
    space : nagata.space.FiniteMetricSpace
    n : int
        the dimension tested
    r : float
        the scale
    center : int or None
        None for the verdict ok
    points, auxiliaries : sequence of int
        the y_i and the z_i, aligned
    margin : float
        the slack of the witness, 0 for the verdict ok
    """
    def __init__(self, space, n, r, center=None, points=(), auxiliaries=(),
                 margin=0.0):
        self._space = space
        self._n = n
        self._r = r
        self._center = center
        self._points = _indices(points)
        self._auxiliaries = _indices(auxiliaries)
        self._margin = float(margin)

    @property
    def n(self):
        return self._n

    @property
    def r(self):
        return self._r

    @property
    def ok(self):
        return self._center is None

    @property
    def violation(self):
        return not self.ok

    @property
    def verdict(self):
        return "ok" if self.ok else "violation"

    @property
    def center(self):
        return self._center

    @property
    def points(self):
        return self._points

    @property
    def auxiliaries(self):
        return self._auxiliaries

    @property
    def margin(self):
        return self._margin

    def holds(self):
        """
        Re-check the witness from scratch: True if every inequality of a
        violation holds. A report with verdict ok holds trivially.
        """
        if self.ok:
            return True
        space, r, x = self._space, self._r, self._center
        if len(set(self._points)) != self._n + 2:
            return False
        for y, z in zip(self._points, self._auxiliaries):
            if not (space.lt(space.distance(y, z), r)
                    and space.lt(space.distance(x, z), r / 2)):
                return False
        for i, y in enumerate(self._points):
            for other in self._points[i + 1:]:
                if space.lt(space.distance(y, other), r):
                    return False
        return True

    def to_dict(self):
        return {"n": self._n, "r": self._r, "verdict": self.verdict,
                "center": self._center, "points": list(self._points),
                "auxiliaries": list(self._auxiliaries),
                "margin": self._margin}

    def row(self):
        return [self._r, self.verdict, self._center, list(self._points),
                list(self._auxiliaries), self._margin]

    def to_rows(self):
        return NagataScan.HEADER, [self.row()]


class NagataScan(Report):
    """
    A sequence of NagataReports over a grid of scales.
    """
    HEADER = ["r", "verdict", "center", "points", "auxiliaries", "margin"]

    def __init__(self, reports):
        self._reports = list(reports)

    def __iter__(self):
        return iter(self._reports)

    def __len__(self):
        return len(self._reports)

    @property
    def ok(self):
        return all(report.ok for report in self._reports)

    @property
    def violation(self):
        return not self.ok

    def to_dict(self):
        return {"verdict": "ok" if self.ok else "violation",
                "scales": [report.to_dict() for report in self._reports]}

    def to_rows(self):
        return self.HEADER, [report.row() for report in self._reports]


def _best_clique(order, apart, size, score, floor):
    """
    Branch and bound for `size` pairwise apart vertices maximising the
    smallest score. order lists the candidates by decreasing score, so the
    bottleneck of a clique is the score of its last member.
    """
    best = [floor, None]

    def extend(chosen, start):
        if len(chosen) == size:
            if score[chosen[-1]] > best[0]:
                best[0], best[1] = score[chosen[-1]], list(chosen)
            return
        for position in range(start, len(order) - (size - len(chosen)) + 1):
            y = order[position]
            if score[y] <= best[0]:
                return
            if all(apart[y, c] for c in chosen):
                chosen.append(y)
                extend(chosen, position + 1)
                chosen.pop()

    extend([], 0)
    if best[1] is None:
        return None
    return best[0], best[1]


def nagata_check(space, n, r):
    """
    Decide the n-dimensional Nagata property at scale r. A violation is a
    center x with n+2 distinct points y_i, pairwise at least r apart, each
    within r of some z_i lying within r/2 of x. The z_i may coincide with
    each other, with x or with the y_i.

    Every center is searched: its candidates are the points y admitting
    such a z, scored by the best slack over their z, and a branch and bound
    finds n+2 pairwise apart candidates maximising the smallest score.

    Parameters
    ----------
    space : nagata.space.FiniteMetricSpace
    n : int
        the dimension, n >= 0
    r : float
        the scale, r > 0

    Returns
    -------
    report : NagataReport
        with the witness of largest margin; ties go to the smallest center

    Examples
    --------
    >>> space = validate("xyz", [[0, 1, 1.5], [1, 0, 1], [1.5, 1, 0]])
    >>> report = nagata_check(space, 0, 1.5)
    >>> report.center, report.points, report.margin
    (1, (0, 2), 0.5)
    """
    if int(n) != n or n < 0:
        raise ValueError("n must be a non-negative integer, got {}".format(n))
    n = int(n)
    check_positive("r", r)
    size = n + 2
    if size > len(space):
        return NagataReport(space, n, r)

    d = space.matrix
    apart = ~space.lt(d, r)
    np.fill_diagonal(apart, False)

    best = None
    for x in space:
        zs = np.flatnonzero(space.lt(d[x], r / 2))
        if len(zs) == 0:
            continue
        reach = space.lt(d[:, zs], r)
        slack = np.minimum(r - d[:, zs], r - 2 * d[x, zs][None, :])
        slack = np.where(reach, slack, -np.inf)
        score = slack.max(axis=1)
        best_z = zs[np.argmax(slack, axis=1)]

        candidates = [int(y) for y in np.flatnonzero(reach.any(axis=1))]
        if len(candidates) < size:
            continue
        order = sorted(candidates, key=lambda y: (-score[y], y))
        floor = -np.inf if best is None else best[0]
        found = _best_clique(order, apart, size, score, floor)
        if found is not None:
            margin, ys = found
            ys = sorted(ys)
            best = (float(margin), x, ys, [int(best_z[y]) for y in ys])

    if best is None:
        log.debug("nagata n=%d r=%g: ok", n, r)
        return NagataReport(space, n, r)
    margin, x, ys, zs = best
    report = NagataReport(space, n, r, x, ys, zs, margin)
    log.debug("nagata n=%d r=%g: violation at center %d", n, r, x)
    if not report.holds():
        log.error("witness %s does not re-check", report)
        raise CertificateFailure("witness {} does not re-check".format(report))
    return report


def nagata_margin(space, n, r):
    """
    Return the largest margin epsilon over all violating witnesses at scale
    r, or 0 when the property holds. Rescaling the space by s divides both
    the scale and the margin by s.
    """
    return nagata_check(space, n, r).margin


def scale_grid(space, midpoints=False):
    """
    Return the pairwise distances of the space and, on request, the
    midpoints between consecutive ones: the scales at which verdicts can
    change.
    """
    scales = space.distances()
    if midpoints:
        middle = [(a + b) / 2 for a, b in zip(scales, scales[1:])]
        scales = sorted(scales + middle)
    return scales


def nagata_scan(space, n, scales=None, midpoints=False):
    """
    Run nagata_check at every scale of the grid, by default the pairwise
    distances of the space.

    Returns
    -------
    scan : NagataScan
    """
    if scales is None:
        scales = scale_grid(space, midpoints)
    return NagataScan(nagata_check(space, n, r) for r in scales)


def nagata_order(space, r):
    """
    Return the least n such that the space has the n-dimensional Nagata
    property at scale r. n = max(|X| - 2, 0) always works, since a
    violation needs n+2 distinct points.
    """
    top = max(len(space) - 2, 0)
    for n in range(top):
        if nagata_check(space, n, r).ok:
            return n
    return top


class Cover(Report):
    """
    A family of point subsets covering a space. Covers built by net_cover
    also remember their net and radius; their elements are the open balls
    B(a, radius) around the net points a.

    Parameters
    ----------
    space : nagata.space.FiniteMetricSpace
    elements : sequence of sequences of int
        the cover elements
    net : sequence of int or None
        the centers of the elements when they are balls
    radius : float or None
        the radius of the balls
    """
    def __init__(self, space, elements, net=None, radius=None):
        self._space = space
        self._elements = tuple(tuple(sorted(space.indices(e)))
                               for e in elements)
        self._net = None if net is None else space.indices(net)
        self._radius = radius

    @property
    def elements(self):
        return self._elements

    @property
    def net(self):
        return self._net

    @property
    def radius(self):
        return self._radius

    def __iter__(self):
        return iter(self._elements)

    def __len__(self):
        return len(self._elements)

    def to_dict(self):
        return {"net": None if self._net is None else list(self._net),
                "radius": self._radius,
                "elements": [list(e) for e in self._elements]}


def net_cover(space, r):
    """
    Return the cover by open r-balls around a maximal r-separated net, the
    net picked greedily in index order: a point joins the net unless it
    lies within r of a net point already chosen.

    Examples
    --------
    >>> net_cover(from_points(range(5), "l1"), 2).net
    (0, 2, 4)
    """
    check_positive("r", r)
    d = space.matrix
    net = []
    for point in space:
        if not any(space.lt(d[point, a], r) for a in net):
            net.append(point)
    return Cover(space, [space.ball(a, r) for a in net], net, r)


def _check_cover(space, cover):
    covered = set()
    for element in cover:
        covered.update(space.indices(element))
    for x in space:
        if x not in covered:
            raise NotACover(x)


def cover_multiplicity(space, cover, s):
    """
    Return the largest number of cover elements met by an open ball B(x, s),
    together with the first point x attaining it.

    Parameters
    ----------
    space : nagata.space.FiniteMetricSpace
    cover : Cover or sequence of sequences of int
    s : float
        radius of the probing balls, s > 0

    Returns
    -------
    (multiplicity, x) : (int, int)

    Raises
    ------
    NotACover
        if some point lies in no element
    """
    check_positive("s", s)
    _check_cover(space, cover)
    d = space.matrix
    hits = np.zeros(len(space), dtype=int)
    for element in cover:
        if element:
            hits += space.lt(d[:, list(element)], s).any(axis=1)
    x = int(np.argmax(hits))
    return int(hits[x]), x


def cover_diameter_ratio(space, cover):
    """
    Return the largest element diameter divided by the cover's radius: the
    constant c with all elements of diameter at most c * r.
    """
    if not cover.radius:
        raise ValueError("cover has no radius")
    return max(space.diameter(e) for e in cover if e) / cover.radius


class CoverReport(Report):
    """
    A net cover at radius r together with its multiplicity at probing
    radius s and, optionally, the dimension n it is tested against.
    """
    def __init__(self, cover, multiplicity, center, s, ratio, n=None):
        self._cover = cover
        self._multiplicity = multiplicity
        self._center = center
        self._s = s
        self._ratio = ratio
        self._n = n

    @property
    def cover(self):
        return self._cover

    @property
    def multiplicity(self):
        return self._multiplicity

    @property
    def violation(self):
        return self._n is not None and self._multiplicity > self._n + 1

    def to_dict(self):
        data = self._cover.to_dict()
        data.update({"multiplicity": self._multiplicity,
                     "center": self._center, "s": self._s,
                     "diameter_ratio": self._ratio, "n": self._n})
        return data


def cover_report(space, r, n=None):
    """
    Build the net cover at radius r and check it with balls of radius r/2,
    the multiplicity bounded by n+1 under the n-dimensional Nagata
    property.
    """
    cover = net_cover(space, r)
    multiplicity, center = cover_multiplicity(space, cover, r / 2)
    return CoverReport(cover, multiplicity, center, r / 2,
                       cover_diameter_ratio(space, cover), n)
