#!/usr/bin/python
# -*- coding: utf-8 -*-

import json
import os
import shutil
import tempfile
import unittest

from nagata.cli import main
from nagata.cli import parse_args
from nagata.cli import render
from nagata.cli import run
from nagata.space import from_points
from nagata.space import subdominant_ultrametric
from nagata.space import validate
from nagata.maps import MetricMap
from nagata.maps import product_projection
from nagata.heisenberg import central_distance_profile
from nagata.serialize import dump_map
from nagata.serialize import dump_space
from nagata.serialize import load_map
from nagata.serialize import load_parts
from nagata.serialize import load_space
from nagata.serialize import space_from_dict
from nagata.exceptions import BadParameter
from nagata.exceptions import MissingInput
from nagata.exceptions import UnknownFlag


class CliTestCase(unittest.TestCase):
    """
    Writes fixtures into a temporary directory.
    """
    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.isoceles = self.path("isoceles.json")
        dump_space(validate("xyz", [[0, 1, 1.5], [1, 0, 1], [1.5, 1, 0]]),
                   self.isoceles)
        self.ultrametric = self.path("ultrametric.json")
        with open(self.ultrametric, "w") as handle:
            json.dump({"labels": list("abcd"),
                       "matrix": [[0, 1, 4, 4], [1, 0, 4, 4],
                                  [4, 4, 0, 2], [4, 4, 2, 0]]}, handle)
        self.line = self.path("line.json")
        with open(self.line, "w") as handle:
            json.dump({"points": [[x] for x in range(10)], "metric": "l1",
                       "comment": "ignored"}, handle)
        self.pair = self.path("pair.json")
        dump_space(from_points([0, 1], "l1"), self.pair)

    def tearDown(self):
        shutil.rmtree(self.directory)

    def path(self, name):
        return os.path.join(self.directory, name)

    def read(self, name):
        with open(self.path(name)) as handle:
            return handle.read()

    def run_cli(self, *argv):
        return main(list(argv))


class TestParseArgs(CliTestCase):
    def test_examples(self):
        config = parse_args(["nagata", "--space", self.isoceles, "--n", "1",
                             "--r", "2.5"])
        self.assertEqual(config.subcommand, "nagata")
        self.assertEqual((config.n, config.r), (1, 2.5))
        self.assertEqual(config.format, "json")
        config = parse_args(["heisenberg-profile", "--L", "40"])
        self.assertEqual(config.L, 40)
        self.assertEqual(config.generators, "ab")

    def test_errors(self):
        """
        Every usage error names the offending flag.
        """
        with self.assertRaises(BadParameter) as context:
            parse_args(["nagata", "--n", "-1"])
        self.assertIn("--n", str(context.exception))
        with self.assertRaises(UnknownFlag) as context:
            parse_args(["validate", "--bogus", "1"])
        self.assertIn("--bogus", str(context.exception))
        with self.assertRaises(MissingInput) as context:
            parse_args(["nagata", "--n", "0"])
        self.assertIn("--space", str(context.exception))
        with self.assertRaises(BadParameter):
            parse_args(["nagata", "--space", self.isoceles, "--n", "x"])
        with self.assertRaises(BadParameter):
            parse_args(["cover", "--space", self.line, "--r", "0"])
        with self.assertRaises(BadParameter):
            parse_args(["validate", "--space", self.line, "--p", "1.5"])
        with self.assertRaises(BadParameter):
            parse_args(["validate", "--space", self.line, "--format", "xml"])
        with self.assertRaises(BadParameter):
            parse_args(["render"])
        with self.assertRaises(MissingInput):
            parse_args([])

    def test_subset(self):
        config = parse_args(["fiber-cover", "--map", "m.json", "--subset",
                             "0,1,4", "--r", "1", "--R", "1.5", "--c", "1"])
        self.assertEqual(config.subset, [0, 1, 4])
        with self.assertRaises(BadParameter):
            parse_args(["fiber-cover", "--map", "m.json", "--subset", "a,b",
                        "--r", "1", "--R", "1.5", "--c", "1"])
        with self.assertRaises(BadParameter) as context:
            parse_args(["fiber-cover", "--map", "m.json", "--subset=-1",
                        "--r", "1", "--R", "1.5", "--c", "1"])
        self.assertIn("--subset", str(context.exception))


class TestRun(CliTestCase):
    def test_ultrametric_is_clean(self):
        """
        An ultrametric space has the 0-dimensional property at every scale.
        """
        code = self.run_cli("nagata", "--space", self.ultrametric, "--n", "0",
                            "--out", self.path("scan.json"))
        self.assertEqual(code, 0)
        data = json.loads(self.read("scan.json"))
        self.assertEqual(data["verdict"], "ok")
        self.assertEqual(len(data["scales"]), 3)

    def test_violation(self):
        code = self.run_cli("nagata", "--space", self.isoceles, "--n", "0",
                            "--r", "1.5", "--out", self.path("check.json"))
        self.assertEqual(code, 1)
        data = json.loads(self.read("check.json"))
        self.assertEqual(data["verdict"], "violation")
        self.assertEqual(data["center"], 1)
        self.assertEqual(data["points"], [0, 2])
        self.assertEqual(data["margin"], 0.5)

    def test_scan_csv(self):
        code = self.run_cli("nagata", "--space", self.isoceles, "--n", "0",
                            "--format", "csv", "--out", self.path("scan.csv"))
        self.assertEqual(code, 1)
        lines = self.read("scan.csv").splitlines()
        self.assertEqual(lines[0], "r,verdict,center,points,auxiliaries,margin")
        self.assertEqual(lines[1], "1,ok,,,,0")
        self.assertEqual(lines[2], "1.5,violation,1,0 2,1 1,0.5")

    def test_heisenberg_word(self):
        code = self.run_cli("heisenberg-word", "--k", "5",
                            "--out", self.path("word.json"))
        self.assertEqual(code, 0)
        data = json.loads(self.read("word.json"))
        self.assertEqual(data["word"], "aabbAABBabAB")
        self.assertEqual(data["length"], 12)
        self.assertEqual(self.run_cli("heisenberg-word", "--k", "5",
                                      "--K", "20"), 2)

    def test_profile_csv(self):
        code = self.run_cli("heisenberg-profile", "--L", "8", "--format",
                            "csv", "--out", self.path("profile.csv"))
        self.assertEqual(code, 0)
        lines = self.read("profile.csv").splitlines()
        self.assertEqual(lines[0], "k,exact_length,claim1_length,lower_bound,ratio")
        self.assertEqual(lines[1], "1,4,4,2,4")
        self.assertEqual(self.run_cli("heisenberg-profile", "--L", "41"), 2)

    def test_constant(self):
        code = self.run_cli("nagata-constant", "--out", self.path("c.json"))
        self.assertEqual(code, 0)
        data = json.loads(self.read("c.json"))
        self.assertEqual(data["argmax"], 2)
        self.assertAlmostEqual(data["value"], 20.4852813742, places=9)

    def test_decompose(self):
        code = self.run_cli("decompose", "--space", self.line, "--r", "2",
                            "--K", "1", "--out", self.path("parts.json"))
        self.assertEqual(code, 0)
        data = json.loads(self.read("parts.json"))
        self.assertEqual(data["parts"], [[0, 1, 2, 4, 5, 6, 8, 9], [3, 7]])
        self.assertEqual(data["m"], 1)

        self.assertEqual(load_parts(self.path("parts.json")),
                         [[0, 1, 2, 4, 5, 6, 8, 9], [3, 7]])
        code = self.run_cli("decompose", "--space", self.line, "--r", "2",
                            "--K", "1", "--parts", self.path("parts.json"))
        self.assertEqual(code, 0)
        with open(self.path("one.json"), "w") as handle:
            json.dump([list(range(10))], handle)
        code = self.run_cli("decompose", "--space", self.line, "--r", "2",
                            "--K", "1", "--parts", self.path("one.json"))
        self.assertEqual(code, 1)

    def test_cover(self):
        self.assertEqual(self.run_cli("cover", "--space", self.line, "--r",
                                      "2", "--n", "0", "--out",
                                      self.path("cover.json")), 1)
        self.assertEqual(self.run_cli("cover", "--space", self.line, "--r",
                                      "2", "--n", "1", "--out",
                                      self.path("cover.json")), 0)

    def test_maps(self):
        """
        Test map-check, pullback and fiber-cover on a product projection.
        """
        u = validate("abcd", [[0, 1, 4, 4], [1, 0, 4, 4],
                              [4, 4, 0, 2], [4, 4, 2, 0]])
        f = product_projection(u, from_points(range(4), "l1"))
        dump_map(f, self.path("map.json"))
        self.assertEqual(load_map(self.path("map.json")).assignment,
                         f.assignment)

        code = self.run_cli("map-check", "--map", self.path("map.json"),
                            "--out", self.path("check.json"))
        self.assertEqual(code, 0)
        data = json.loads(self.read("check.json"))
        self.assertEqual(data["constants"]["mu"], 1)
        self.assertTrue(data["fibers"]["ok"])
        self.assertEqual(data["balls"]["verdict"], "ok")

        with open(self.path("codomain_parts.json"), "w") as handle:
            json.dump({"parts": [[0, 1, 3], [2]]}, handle)
        code = self.run_cli("pullback", "--map", self.path("map.json"),
                            "--parts", self.path("codomain_parts.json"),
                            "--r", "2", "--K", "2",
                            "--out", self.path("pullback.json"))
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(self.read("pullback.json"))["bound"], 10)

        code = self.run_cli("fiber-cover", "--map", self.path("map.json"),
                            "--subset", "0,1,4,5,8,9,12,13", "--r", "1",
                            "--R", "1.5", "--c", "1",
                            "--out", self.path("fiber.json"))
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(self.read("fiber.json"))["bound"], 7)

        code = self.run_cli("fiber-cover", "--map", self.path("map.json"),
                            "--subset", "0,2", "--r", "1", "--R", "1.5",
                            "--c", "1")
        self.assertEqual(code, 2)

    def test_errors(self):
        """
        Missing files, broken metrics and usage errors exit with 2.
        """
        self.assertEqual(self.run_cli("validate", "--space",
                                      self.path("missing.json")), 2)
        with open(self.path("broken.json"), "w") as handle:
            json.dump({"labels": ["a", "b", "c"],
                       "matrix": [[0, 1, 3], [1, 0, 1], [3, 1, 0]]}, handle)
        self.assertEqual(self.run_cli("validate", "--space",
                                      self.path("broken.json")), 2)
        self.assertEqual(self.run_cli("nagata", "--n", "-1"), 2)
        self.assertEqual(self.run_cli("validate", "--bogus"), 2)

    def test_invalid_indices(self):
        """
        Parts, subsets and assignments naming no point exit with 2.
        """
        with open(self.path("outside.json"), "w") as handle:
            json.dump([[0, 1, 7]], handle)
        self.assertEqual(self.run_cli("decompose", "--space", self.pair,
                                      "--r", "1", "--K", "1", "--parts",
                                      self.path("outside.json")), 2)
        with open(self.path("fraction.json"), "w") as handle:
            json.dump([[0, 1.5]], handle)
        self.assertEqual(self.run_cli("decompose", "--space", self.pair,
                                      "--r", "1", "--K", "1", "--parts",
                                      self.path("fraction.json")), 2)

        pair = from_points([0, 1], "l1")
        dump_map(MetricMap(pair, pair, [0, 1]), self.path("pair_map.json"))
        self.assertEqual(self.run_cli("pullback", "--map",
                                      self.path("pair_map.json"), "--parts",
                                      self.path("outside.json"), "--r", "1",
                                      "--K", "1"), 2)
        for subset in (["--subset", "9"], ["--subset=-1"]):
            self.assertEqual(self.run_cli("fiber-cover", "--map",
                                          self.path("pair_map.json"), "--r",
                                          "1", "--R", "1.5", "--c", "1",
                                          *subset), 2)

        data = json.loads(self.read("pair_map.json"))
        data["assignment"] = [0, 1.7]
        with open(self.path("truncated_map.json"), "w") as handle:
            json.dump(data, handle)
        self.assertEqual(self.run_cli("map-check", "--map",
                                      self.path("truncated_map.json")), 2)

    def test_determinism(self):
        """
        Repeated runs write byte identical reports.
        """
        for name in ("a.json", "b.json"):
            self.run_cli("nagata", "--space", self.line, "--n", "0",
                         "--midpoints", "--out", self.path(name))
        self.assertEqual(self.read("a.json"), self.read("b.json"))
        for name in ("a.csv", "b.csv"):
            self.run_cli("nagata", "--space", self.line, "--n", "0",
                         "--format", "csv", "--out", self.path(name))
        self.assertEqual(self.read("a.csv"), self.read("b.csv"))

    def test_round_trip(self):
        """
        Spaces written by validate load again as equal spaces, also after
        transforms.
        """
        code = self.run_cli("validate", "--space", self.line, "--p", "0.5",
                            "--s", "3", "--out", self.path("flake.json"))
        self.assertEqual(code, 0)
        space = load_space(self.path("flake.json"))
        expected = from_points(range(10), "l1")
        expected = validate(expected.labels, expected.matrix ** 0.5 / 3)
        self.assertEqual(space, expected)

        ultra = subdominant_ultrametric(from_points([0, 3, 4, 10], "l1"))
        dump_space(ultra, self.path("ultra.json"))
        self.assertEqual(load_space(self.path("ultra.json")), ultra)
        data = json.loads(self.read("flake.json"))
        self.assertFalse(data["ultrametric"])
        self.assertEqual(space_from_dict(data), space)

    def test_run_config(self):
        config = parse_args(["nagata-constant", "--out",
                             self.path("constant.json")])
        self.assertEqual(run(config), 0)
        self.assertTrue(os.path.exists(self.path("constant.json")))

    def test_render(self):
        profile = central_distance_profile(4)
        self.assertEqual(render(profile), render(profile))
        self.assertTrue(render(profile, "csv").startswith("k,exact_length"))
        with self.assertRaises(ValueError):
            render(profile, "xml")
