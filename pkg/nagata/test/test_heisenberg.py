#!/usr/bin/python
# -*- coding: utf-8 -*-

import math
import unittest

import numpy as np
import numpy.testing as nt
import hypothesis as hy
import hypothesis.strategies as st

from nagata.heisenberg import A
from nagata.heisenberg import B
from nagata.heisenberg import C
from nagata.heisenberg import IDENTITY
from nagata.heisenberg import NAGATA_THRESHOLD
from nagata.heisenberg import HeisenbergElement
from nagata.heisenberg import Word
from nagata.heisenberg import bfs_word_lengths
from nagata.heisenberg import central_distance_profile
from nagata.heisenberg import claim1_word
from nagata.heisenberg import commutator
from nagata.heisenberg import commutator_power
from nagata.heisenberg import evaluate
from nagata.heisenberg import inverse
from nagata.heisenberg import multiply
from nagata.heisenberg import nagata_constant
from nagata.heisenberg import word_report
from nagata.exceptions import BudgetExceeded
from nagata.exceptions import KTooSmall

integers = st.integers(min_value=-10 ** 6, max_value=10 ** 6)
elements = st.builds(HeisenbergElement, integers, integers, integers)
words = st.text(alphabet="aAbBcC", max_size=30).map(Word.from_string)
short_words = st.text(alphabet="aAbBcC", max_size=6).map(Word.from_string)
tiny_words = st.text(alphabet="aAbBcC", max_size=3).map(Word.from_string)


def letter_by_letter(word):
    generators = {"a": A, "b": B, "c": C}
    g = IDENTITY
    for letter in str(word):
        h = generators[letter.lower()]
        g = g * (h if letter.islower() else h.inverse())
    return g


class TestHeisenbergElement(unittest.TestCase):
    def test_products(self):
        self.assertEqual(A * B, HeisenbergElement(1, 1, 1))
        self.assertEqual(B * A, HeisenbergElement(1, 1, 0))
        self.assertEqual(multiply(A, B), A * B)
        self.assertEqual(commutator(A, B), C)
        self.assertEqual(inverse(A * B), HeisenbergElement(-1, -1, 0))
        self.assertEqual(A ** 3, HeisenbergElement(3, 0, 0))
        self.assertEqual(B ** -2, HeisenbergElement(0, -2, 0))
        self.assertEqual(C ** 0, IDENTITY)

    def test_input(self):
        with self.assertRaises(TypeError):
            HeisenbergElement(1.5, 0, 0)
        self.assertEqual(HeisenbergElement(np.int64(2), 0, 0).x, 2)

    def test_hashing(self):
        self.assertEqual(len({A * B, HeisenbergElement(1, 1, 1), B * A}), 2)
        self.assertEqual(repr(A), "HeisenbergElement(1, 0, 0)")

    @hy.given(elements, elements, elements)
    def test_group_laws(self, g, h, k):
        """
        Associativity, inverses, the center and agreement with integer
        matrix multiplication.
        """
        self.assertEqual((g * h) * k, g * (h * k))
        self.assertEqual(g * g.inverse(), IDENTITY)
        self.assertEqual(g.inverse() * g, IDENTITY)
        self.assertEqual(g * C, C * g)
        product = np.dot(g.as_matrix(), h.as_matrix())
        self.assertEqual(product.tolist(), (g * h).as_matrix().tolist())
        self.assertEqual(commutator(g, h),
                         HeisenbergElement(0, 0, g.x * h.y - h.x * g.y))


class TestWord(unittest.TestCase):
    def test_syllables(self):
        w = Word([("a", 2), ("a", 1), ("b", 0), ("b", -1), ("c", 1)])
        self.assertEqual(w.syllables, (("a", 3), ("b", -1), ("c", 1)))
        self.assertEqual(str(w), "aaaBc")
        self.assertEqual(len(w), 5)
        self.assertEqual(Word.from_string("aaaBc"), w)
        self.assertEqual(str(w.inverse()), "CbAAA")
        self.assertEqual(len(Word()), 0)
        self.assertEqual(evaluate(Word()), IDENTITY)

    def test_no_cancellation(self):
        """
        Words are formal: a a^-1 keeps both letters.
        """
        w = Word.from_string("aA")
        self.assertEqual(len(w), 2)
        self.assertEqual(w.evaluate(), IDENTITY)

    def test_input(self):
        with self.assertRaises(ValueError):
            Word([("d", 1)])
        with self.assertRaises(ValueError):
            Word.from_string("abx")
        with self.assertRaises(ValueError):
            Word.from_string("ab") ** -1

    def test_commutator_power(self):
        w = commutator_power(2, 3)
        self.assertEqual(len(w), 10)
        self.assertEqual(w.evaluate(), HeisenbergElement(0, 0, 6))
        self.assertEqual(str(commutator_power(1, 1)), "abAB")

    @hy.given(words, words)
    def test_evaluate(self, u, v):
        """
        Evaluating syllables agrees with multiplying letter by letter, and
        concatenation and inversion are homomorphic.
        """
        self.assertEqual(u.evaluate(), letter_by_letter(u))
        self.assertEqual((u * v).evaluate(), u.evaluate() * v.evaluate())
        self.assertEqual(u.inverse().evaluate(), u.evaluate().inverse())
        self.assertEqual(len(u * v), len(u) + len(v))
        self.assertEqual(Word.from_string(str(u)), u)


class TestClaim1(unittest.TestCase):
    def test_examples(self):
        """
        Test the words of the recursion for small exponents.
        """
        self.assertEqual(str(claim1_word(1)), "abAB")
        self.assertEqual(str(claim1_word(4)), "aabbAABB")
        self.assertEqual(str(claim1_word(5)), "aabbAABBabAB")
        self.assertEqual(len(claim1_word(5)), 12)
        self.assertEqual(len(claim1_word(7)), 20)
        self.assertEqual(len(claim1_word(0)), 0)
        self.assertEqual(claim1_word(-5), claim1_word(5).inverse())
        self.assertEqual(claim1_word(-5).evaluate(), C ** -5)

    def test_constant(self):
        claim1_word(5, K=NAGATA_THRESHOLD)
        with self.assertRaises(KTooSmall):
            claim1_word(5, K=20)

    def test_report(self):
        data = word_report(5).to_dict()
        self.assertEqual(data["word"], "aabbAABBabAB")
        self.assertEqual(data["length"], 12)
        self.assertEqual(data["element"], [0, 0, 5])

    def test_square_lengths(self):
        for n in range(1, 200):
            self.assertLessEqual(len(claim1_word(n * n)), 4 * n)

    def test_soundness_at_scale(self):
        """
        Every exponent up to 10^5 in absolute value gets a word spelling
        c^k of length at most 21*sqrt(|k|), compared in integers.
        """
        for k in range(-10 ** 5, 10 ** 5 + 1):
            word = claim1_word(k)
            self.assertEqual(word.evaluate(), HeisenbergElement(0, 0, k))
            self.assertLessEqual(len(word) ** 2, 441 * abs(k))

    def test_nagata_constant(self):
        certificate = nagata_constant()
        nt.assert_allclose(certificate.value, 12 + 6 * math.sqrt(2),
                           rtol=0, atol=1e-9)
        nt.assert_allclose(certificate.scan_max, certificate.value,
                           rtol=0, atol=1e-9)
        self.assertEqual(certificate.argmax, 2)
        self.assertTrue(certificate.decreasing)
        self.assertFalse(certificate.violation)


class TestWordLengths(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.ball = bfs_word_lengths(6, "abc")

    def test_small_ball(self):
        ball = bfs_word_lengths(4)
        self.assertEqual(ball.length(IDENTITY), 0)
        self.assertEqual(ball.length(A), 1)
        self.assertEqual(ball.length(A * B), 2)
        self.assertEqual(ball.length(C), 4)
        self.assertEqual(ball.length((1, 1, 0)), 2)
        self.assertIn(C, ball)
        self.assertNotIn(C ** 10, ball)
        with self.assertRaises(KeyError):
            ball.length(C ** 10)
        self.assertEqual(len(bfs_word_lengths(1)), 5)
        self.assertEqual(len(bfs_word_lengths(0)), 1)

    def test_with_c(self):
        ball = bfs_word_lengths(3, "abc")
        self.assertEqual(ball.length(C), 1)
        self.assertEqual(ball.length(C * A), 2)
        self.assertEqual(len(bfs_word_lengths(1, "abc")), 7)

    def test_input(self):
        with self.assertRaises(BudgetExceeded):
            bfs_word_lengths(41)
        with self.assertRaises(BudgetExceeded):
            bfs_word_lengths(6, budget=5)
        with self.assertRaises(ValueError):
            bfs_word_lengths(3, "ac")
        with self.assertRaises(ValueError):
            bfs_word_lengths(-1)

    @hy.given(short_words)
    def test_lengths_bound_words(self, word):
        """
        The word length of an element never exceeds the length of a word
        spelling it.
        """
        self.assertLessEqual(self.ball.length(word.evaluate()), len(word))

    def test_more_generators_are_shorter(self):
        """
        Adding c to the generators never makes an element longer.
        """
        ab = bfs_word_lengths(8)
        abc = bfs_word_lengths(8, "abc")
        for g in ab:
            self.assertLessEqual(abc.length(g), ab.length(g))

    @hy.given(tiny_words, tiny_words, tiny_words)
    def test_word_metric(self, u, v, w):
        """
        d(g, h) = |g^-1 h| is a metric on the ball.
        """
        g, h, k = u.evaluate(), v.evaluate(), w.evaluate()

        def d(first, second):
            return self.ball.length(first.inverse() * second)

        self.assertEqual(d(g, g), 0)
        self.assertEqual(d(g, h) == 0, g == h)
        self.assertEqual(d(g, h), d(h, g))
        self.assertLessEqual(d(g, k), d(g, h) + d(h, k))

    def test_profile(self):
        profile = central_distance_profile(12)
        header, rows = profile.to_rows()
        self.assertEqual(header, ["k", "exact_length", "claim1_length",
                                  "lower_bound", "ratio"])
        self.assertEqual(rows[0][:3], [1, 4, 4])
        self.assertEqual([row[0] for row in rows],
                         sorted(row[0] for row in rows))
        abc = central_distance_profile(8, "abc")
        self.assertEqual(abc.rows[0][:2], (1, 1))

    def test_sandwich(self):
        """
        Over the ball of radius 40: ceil(2 sqrt(k)) <= |c^k| <= 21 sqrt(k)
        in integers, |c| = 4 and |c^(n^2)| <= 4n.
        """
        profile = central_distance_profile(40)
        central = {row[0]: row[1] for row in profile.rows}
        self.assertEqual(central[1], 4)
        for k, exact, claim, _, _ in profile.rows:
            self.assertGreaterEqual(exact * exact, 4 * k)
            self.assertLessEqual(exact, claim)
            self.assertLessEqual(claim * claim, 441 * k)
        n = 1
        while n * n in central:
            self.assertLessEqual(central[n * n], 4 * n)
            n += 1
        self.assertGreater(n, 5)
        self.assertLessEqual(profile.max_ratio(), 21)
