#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
The discrete Heisenberg group H3(Z) of upper unitriangular integer 3x3
matrices, generated by a, b and the central element c = [a, b].

The module provides exact group arithmetic, words over the generators,
short words for the central powers c^k of length O(sqrt(k)), and a
breadth-first search computing exact word lengths in a ball of the Cayley
graph. Together they certify that the word metric restricted to the center
grows like the square root: 2*sqrt(k) <= |c^k| <= 21*sqrt(k).
"""
import functools
import itertools
import logging
import math
import operator

import numpy as np

from nagata.report import Report
from nagata.exceptions import BudgetExceeded
from nagata.exceptions import CertificateFailure
from nagata.exceptions import KTooSmall

log = logging.getLogger(__name__)

DEFAULT_K = 21
DEFAULT_RADIUS_BUDGET = 40
NAGATA_THRESHOLD = 12 + 6 * math.sqrt(2)
GENERATING_SETS = ("ab", "abc")


class HeisenbergElement(object):
    """
    The matrix [[1, x, z], [0, 1, y], [0, 0, 1]] stored by its three
    integer coordinates. Products follow
    (x, y, z)(x', y', z') = (x + x', y + y', z + z' + x*y').

    Parameters
    ----------
    x, y, z : int
        arbitrary precision integers

    Raises
    ------
    TypeError
        if a coordinate is not an integer

    Examples
    --------
    >>> HeisenbergElement(1, 0, 0) * HeisenbergElement(0, 1, 0)
    HeisenbergElement(1, 1, 1)
    """
    __slots__ = ("_x", "_y", "_z")

    def __init__(self, x=0, y=0, z=0):
        self._x = operator.index(x)
        self._y = operator.index(y)
        self._z = operator.index(z)

    @property
    def x(self):
        return self._x

    @property
    def y(self):
        return self._y

    @property
    def z(self):
        return self._z

    def as_tuple(self):
        return (self._x, self._y, self._z)

    def as_matrix(self):
        """
        Return the element as a 3x3 numpy matrix of python integers.
        """
        return np.array([[1, self._x, self._z],
                         [0, 1, self._y],
                         [0, 0, 1]], dtype=object)

    def __mul__(self, other):
        if not isinstance(other, HeisenbergElement):
            return NotImplemented
        return HeisenbergElement(self._x + other._x, self._y + other._y,
                                 self._z + other._z + self._x * other._y)

    def inverse(self):
        return HeisenbergElement(-self._x, -self._y,
                                 self._x * self._y - self._z)

    def __pow__(self, exponent):
        exponent = operator.index(exponent)
        base = self if exponent >= 0 else self.inverse()
        result = IDENTITY
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other):
        if not isinstance(other, HeisenbergElement):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return "HeisenbergElement({}, {}, {})".format(*self.as_tuple())


IDENTITY = HeisenbergElement(0, 0, 0)
A = HeisenbergElement(1, 0, 0)
B = HeisenbergElement(0, 1, 0)
C = HeisenbergElement(0, 0, 1)


def multiply(g, h):
    return g * h


def inverse(g):
    return g.inverse()


def commutator(g, h):
    """
    Return [g, h] = g h g^-1 h^-1.
    """
    return g * h * g.inverse() * h.inverse()


class Word(object):
    """
    A word over a, b, c and their inverses, stored as syllables: pairs of
    a generator and a non-zero exponent. The length counts letters, so the
    syllable a^-3 contributes 3.

    Letters print as a, b, c and their inverses as A, B, C.

    Parameters
    ----------
    syllables : sequence of (str, int)
        generator in "abc" and exponent; zero exponents are dropped

    Examples
    --------
    >>> w = Word([("a", 2), ("b", 1)])
    >>> str(w), len(w)
    ('aab', 3)
    """
    def __init__(self, syllables=()):
        cleaned = []
        for generator, exponent in syllables:
            if generator not in "abc" or len(generator) != 1:
                raise ValueError("unknown generator {!r}".format(generator))
            exponent = operator.index(exponent)
            if exponent == 0:
                continue
            if (cleaned and cleaned[-1][0] == generator
                    and (cleaned[-1][1] > 0) == (exponent > 0)):
                cleaned[-1] = (generator, cleaned[-1][1] + exponent)
            else:
                cleaned.append((generator, exponent))
        self._syllables = tuple(cleaned)
        self._length = sum(abs(e) for _, e in cleaned)

    @classmethod
    def from_string(cls, letters):
        """
        Parse a string over {a, A, b, B, c, C}, capitals being inverses.
        """
        syllables = []
        for letter, run in itertools.groupby(letters):
            if letter.lower() not in "abc":
                raise ValueError("unknown letter {!r}".format(letter))
            count = len(list(run))
            syllables.append((letter.lower(),
                              count if letter.islower() else -count))
        return cls(syllables)

    @property
    def syllables(self):
        return self._syllables

    @property
    def letters(self):
        return "".join((g if e > 0 else g.upper()) * abs(e)
                       for g, e in self._syllables)

    def __len__(self):
        return self._length

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self._syllables + other._syllables)

    def __pow__(self, exponent):
        exponent = operator.index(exponent)
        if exponent < 0:
            raise ValueError("use inverse() for negative powers")
        return Word(self._syllables * exponent)

    def inverse(self):
        """
        Return the formal inverse: syllables reversed, exponents negated.
        """
        return Word((g, -e) for g, e in reversed(self._syllables))

    def evaluate(self):
        """
        Return the group element the word spells, in time linear in the
        number of syllables.
        """
        x = y = z = 0
        for generator, exponent in self._syllables:
            if generator == "a":
                x += exponent
            elif generator == "b":
                z += x * exponent
                y += exponent
            else:
                z += exponent
        return HeisenbergElement(x, y, z)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self._syllables == other._syllables

    def __hash__(self):
        return hash(self._syllables)

    def __str__(self):
        return self.letters

    def __repr__(self):
        return "Word({!r})".format(self.letters)


def evaluate(word):
    """
    Return the element spelled by word, the identity for the empty word.
    """
    return word.evaluate()


def commutator_power(u, v):
    """
    Return the word a^u b^v a^-u b^-v of length 2|u| + 2|v|, which spells
    [a^u, b^v] = c^(u*v).

    Examples
    --------
    >>> w = commutator_power(2, 3)
    >>> len(w), w.evaluate()
    (10, HeisenbergElement(0, 0, 6))
    """
    return Word([("a", u), ("b", v), ("a", -u), ("b", -v)])


@functools.lru_cache(maxsize=None)
def _short_central_word(k):
    """
    Word in a, b spelling c^k for k >= 0, by induction on k: squares are
    single commutators, anything else is the nearest square commutator
    followed by a word for the remainder.
    """
    if k <= 3:
        return commutator_power(1, 1) ** k
    n = math.isqrt(k)
    if k == n * n:
        return commutator_power(n, n)
    if k <= n * n + n:
        return commutator_power(n, n) * _short_central_word(k - n * n)
    rest = _short_central_word((n + 1) ** 2 - k).inverse()
    return commutator_power(n + 1, n + 1) * rest


def claim1_word(k, K=DEFAULT_K):
    """
    Return a word in a and b (with inverses) spelling c^k of length at most
    K * sqrt(|k|). Negative k get the formal inverse of the word for |k|.

    Parameters
    ----------
    k : int
        the exponent of c
    K : float
        the length constant, at least 12 + 6*sqrt(2)

    Returns
    -------
    word : Word

    Raises
    ------
    KTooSmall
        if K < 12 + 6*sqrt(2)
    CertificateFailure
        if the word does not spell c^k or is longer than K*sqrt(|k|)

    Examples
    --------
    >>> str(claim1_word(5))
    'aabbAABBabAB'
    """
    k = operator.index(k)
    if K < NAGATA_THRESHOLD:
        raise KTooSmall(K)
    word = _short_central_word(abs(k))
    if k < 0:
        word = word.inverse()
    if word.evaluate() != HeisenbergElement(0, 0, k):
        raise CertificateFailure("{!r} does not spell c^{}".format(word, k))
    if len(word) > K * math.sqrt(abs(k)):
        raise CertificateFailure("word for c^{} has length {} ".format(k, len(word))
                                 + "> {}*sqrt({})".format(K, abs(k)))
    return word


class WordReport(Report):
    """
    A word for c^k with its length and the bound K*sqrt(|k|).
    """
    def __init__(self, k, word, K=DEFAULT_K):
        self._k = k
        self._word = word
        self._K = K

    @property
    def word(self):
        return self._word

    @property
    def length(self):
        return len(self._word)

    def to_dict(self):
        return {"k": self._k, "word": str(self._word), "length": self.length,
                "bound": self._K * math.sqrt(abs(self._k)),
                "element": list(self._word.evaluate().as_tuple())}


def word_report(k, K=DEFAULT_K):
    return WordReport(k, claim1_word(k, K), K)


def nagata_term(n):
    """
    Return 4(n + 1) / (n - sqrt(n)), the smallest K closing the induction
    step at n.
    """
    return 4 * (n + 1) / (n - np.sqrt(n))


class ConstantCertificate(Report):
    """
    The supremum of 4(n + 1)/(n - sqrt(n)) over n >= 2, with the evidence of
    a numeric scan: the terms decrease strictly and peak at n = 2.
    """
    def __init__(self, value, scan_limit, scan_max, argmax, decreasing):
        self._value = value
        self._scan_limit = scan_limit
        self._scan_max = scan_max
        self._argmax = argmax
        self._decreasing = decreasing

    @property
    def value(self):
        return self._value

    @property
    def scan_max(self):
        return self._scan_max

    @property
    def argmax(self):
        return self._argmax

    @property
    def decreasing(self):
        return self._decreasing

    def to_dict(self):
        return {"value": self._value, "scan_limit": self._scan_limit,
                "scan_max": self._scan_max, "argmax": self._argmax,
                "decreasing": self._decreasing}


def nagata_constant(scan_limit=10 ** 6):
    """
    Return the supremum over n >= 2 of 4(n + 1)/(n - sqrt(n)), which is
    attained at n = 2 and equals 12 + 6*sqrt(2).

    Examples
    --------
    >>> round(nagata_constant().value, 6)
    20.485281
    """
    n = np.arange(2, scan_limit + 1, dtype=np.float64)
    terms = nagata_term(n)
    position = int(np.argmax(terms))
    certificate = ConstantCertificate(NAGATA_THRESHOLD, scan_limit,
                                      float(terms[position]),
                                      int(n[position]),
                                      bool(np.all(np.diff(terms) < 0)))
    if certificate.argmax != 2 or not certificate.decreasing:
        raise CertificateFailure("scan does not peak at n = 2")
    return certificate


def _key(g):
    if isinstance(g, HeisenbergElement):
        return g.as_tuple()
    return tuple(operator.index(v) for v in g)


class WordBall(object):
    """
    Exact word lengths of every element within distance `radius` of the
    identity in the Cayley graph for the generators a, b (and c).
    """
    def __init__(self, radius, generators, lengths):
        self._radius = radius
        self._generators = generators
        self._lengths = lengths

    @property
    def radius(self):
        return self._radius

    @property
    def generators(self):
        return self._generators

    def __len__(self):
        return len(self._lengths)

    def __contains__(self, g):
        return _key(g) in self._lengths

    def __iter__(self):
        return iter(self._lengths)

    def length(self, g):
        """
        Return the word length of g.

        Raises
        ------
        KeyError
            if g lies outside the ball
        """
        return self._lengths[_key(g)]

    def central_lengths(self):
        """
        Return {k: |c^k|} for every central element c^k of the ball.
        """
        return {z: n for (x, y, z), n in self._lengths.items()
                if x == 0 and y == 0}


def bfs_word_lengths(L, generators="ab", budget=DEFAULT_RADIUS_BUDGET):
    """
    Breadth-first search of the Cayley graph from the identity up to
    distance L, one level at a time, so every element is recorded with
    its exact word length.

    Parameters
    ----------
    L : int
        radius of the ball
    generators : str
        "ab" for {a, b} and inverses, "abc" to add c and its inverse
    budget : int
        largest radius allowed; the ball grows like L^4

    Returns
    -------
    ball : WordBall

    Raises
    ------
    BudgetExceeded
        if L > budget

    Examples
    --------
    >>> bfs_word_lengths(4).length(C)
    4
    """
    L = operator.index(L)
    if generators not in GENERATING_SETS:
        raise ValueError("generators must be one of "
                         + "{}, got {!r}".format(GENERATING_SETS, generators))
    if L < 0:
        raise ValueError("radius must not be negative, got {}".format(L))
    if L > budget:
        raise BudgetExceeded(L, budget)
    with_c = generators == "abc"

    lengths = {(0, 0, 0): 0}
    frontier = [(0, 0, 0)]
    for level in range(1, L + 1):
        following = []
        for x, y, z in frontier:
            # right multiplication by a, a^-1, b, b^-1 (, c, c^-1)
            neighbours = [(x + 1, y, z), (x - 1, y, z),
                          (x, y + 1, z + x), (x, y - 1, z - x)]
            if with_c:
                neighbours += [(x, y, z + 1), (x, y, z - 1)]
            for g in neighbours:
                if g not in lengths:
                    lengths[g] = level
                    following.append(g)
        frontier = following
        log.debug("radius %d: %d elements", level, len(lengths))
    return WordBall(L, generators, lengths)


def _ceil_two_sqrt(k):
    # smallest m with m*m >= 4k
    return math.isqrt(4 * k - 1) + 1


class DistanceProfile(Report):
    """
    Rows (k, |c^k|, length of the constructed word, 2*sqrt(k), ratio) for
    the central elements of a ball, ratio being |c^k| / sqrt(k).
    """
    HEADER = ["k", "exact_length", "claim1_length", "lower_bound", "ratio"]

    def __init__(self, radius, generators, rows):
        self._radius = radius
        self._generators = generators
        self._rows = [tuple(row) for row in rows]

    @property
    def rows(self):
        return self._rows

    @property
    def generators(self):
        return self._generators

    def max_ratio(self):
        return max((row[4] for row in self._rows), default=0.0)

    def to_dict(self):
        return {"radius": self._radius, "generators": self._generators,
                "max_ratio": self.max_ratio(),
                "rows": [dict(zip(self.HEADER, row)) for row in self._rows]}

    def to_rows(self):
        return list(self.HEADER), [list(row) for row in self._rows]


def central_distance_profile(L, generators="ab",
                             budget=DEFAULT_RADIUS_BUDGET):
    """
    Tabulate |c^k| for every k >= 1 with c^k in the ball of radius L and
    check it against the constructed words and, for the generators a and b,
    against the lower bound: ceil(2*sqrt(k)) <= |c^k| <= claim1 <= 21*sqrt(k),
    all compared in integers.

    Raises
    ------
    CertificateFailure
        if a row breaks the chain of inequalities
    BudgetExceeded
        if L > budget
    """
    ball = bfs_word_lengths(L, generators, budget)
    central = ball.central_lengths()
    rows = []
    for k in sorted(z for z in central if z > 0):
        exact = central[k]
        claim = len(claim1_word(k))
        row = (k, exact, claim, 2 * math.sqrt(k), exact / math.sqrt(k))
        if generators == "ab" and exact < _ceil_two_sqrt(k):
            raise CertificateFailure("|c^{}| = {} is below 2*sqrt(k)".format(k, exact))
        if exact > claim or claim * claim > DEFAULT_K ** 2 * k:
            raise CertificateFailure("row {} breaks the upper bounds".format(row))
        rows.append(row)
    return DistanceProfile(L, generators, rows)
