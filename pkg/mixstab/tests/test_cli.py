import contextlib
import io
import json
import math
import os
import tempfile
import unittest
from unittest import mock

from mixstab.constants import THREADS_ENV, ExitCode
from mixstab.service.cli import run


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run(argv)
    return code, out.getvalue(), err.getvalue()


def json_body(text: str):
    header, body = text.split("\n", 1)
    assert header.startswith("# mixstab ")
    return json.loads(body)


def read(path: str) -> str:
    with open(path, encoding="utf-8") as f:
        return f.read()


class TestStabilityCommand(unittest.TestCase):
    def test_immiscible(self):
        code, out, _ = invoke(["stability", "--g11", "1", "--g22", "1", "--g12", "1.2"])
        self.assertEqual(code, ExitCode.OK)
        payload = json_body(out)
        self.assertEqual(payload["verdict"], "separation")
        self.assertAlmostEqual(payload["det_a"], 1.0 - 1.44, places=12)
        self.assertAlmostEqual(payload["energy_density"], 0.5 + 0.5 + 1.2, places=12)

    def test_balanced_shorthand_with_closure(self):
        code, out, _ = invoke(["stability", "--g", "1", "--lambda", "0.5", "--n", "100", "--fluct", "minus", "--fd-check"])
        self.assertEqual(code, ExitCode.OK)
        payload = json_body(out)
        self.assertEqual(payload["verdict"], "stable")
        self.assertLess(payload["fd_disagreement"], 1e-6)
        self.assertGreater(payload["g12_eff"], 0.5)
        self.assertEqual(payload["mu1"], payload["mu2"])

    def test_mixed_parameter_sets(self):
        code, _, err = invoke(["stability", "--g11", "1", "--g22", "1", "--g12", "0.5", "--lambda", "0.5"])
        self.assertEqual(code, ExitCode.CONFIG_INVALID)
        self.assertEqual(json.loads(err.strip().splitlines()[-1])["type"], "ParameterError")

    def test_missing_coupling(self):
        code, _, _ = invoke(["stability", "--g11", "1", "--g22", "1"])
        self.assertEqual(code, ExitCode.CONFIG_INVALID)


class TestUsageAndConfig(unittest.TestCase):
    def test_unknown_flag(self):
        code, _, err = invoke(["stability", "--g11", "1", "--bogus"])
        self.assertEqual(code, ExitCode.USAGE)
        body = json.loads(err.strip().splitlines()[-1])
        self.assertEqual(body["type"], "UsageError")
        self.assertEqual(body["code"], 1)

    def test_unknown_command(self):
        code, _, _ = invoke(["plot"])
        self.assertEqual(code, ExitCode.USAGE)

    def test_missing_config_file(self):
        code, _, _ = invoke(["stability", "--config", "/nonexistent/mixstab.json"])
        self.assertEqual(code, ExitCode.CONFIG_INVALID)

    def test_malformed_thread_variable(self):
        with mock.patch.dict(os.environ, {THREADS_ENV: "four"}):
            code, _, err = invoke(["stability", "--g11", "1", "--g22", "1", "--g12", "0.5"])
        self.assertEqual(code, ExitCode.CONFIG_INVALID)
        body = json.loads(err.strip().splitlines()[-1])
        self.assertEqual(body["type"], "ParameterError")
        self.assertIn(THREADS_ENV, body["message"])

    def test_unknown_config_section(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "config.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump({"plots": {}}, f)
            code, _, _ = invoke(["stability", "--config", path])
        self.assertEqual(code, ExitCode.CONFIG_INVALID)


class TestScanCommand(unittest.TestCase):
    def test_scan_from_config(self):
        config = {
            "params": {"g": 1.0, "lambda": 0.0},
            "scan": {"parameter": "lambda", "start": -0.5, "stop": 1.5, "count": 5},
        }
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "config.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump(config, f)
            prefix = os.path.join(tmp, "out", "map")
            code, out, _ = invoke(["scan", "--config", path, "--output", prefix, "--threads", "2"])
            lines = read(prefix + ".csv").splitlines()
        self.assertEqual(code, ExitCode.OK)
        self.assertEqual(out, "")
        self.assertTrue(lines[0].startswith("# mixstab "))
        self.assertEqual(lines[1], "lambda,G1,G2,G12,trace_a,det_a,verdict")
        self.assertEqual(len(lines), 7)
        self.assertTrue(lines[-1].endswith(",separation"))

    def test_flags_override_config_range(self):
        code, out, _ = invoke([
            "scan", "--g", "1", "--lambda", "0", "--parameter", "g12",
            "--start", "0", "--stop", "1", "--step", "0.5", "--outputs", "energy",
        ])
        self.assertEqual(code, ExitCode.OK)
        lines = out.splitlines()
        self.assertEqual(lines[1], "g12,energy")
        self.assertEqual(len(lines), 5)

    def test_scan_needs_parameter(self):
        code, _, _ = invoke(["scan", "--g", "1", "--lambda", "0"])
        self.assertEqual(code, ExitCode.CONFIG_INVALID)


class TestDropletCommand(unittest.TestCase):
    def test_minus_branch_figure(self):
        with tempfile.TemporaryDirectory() as tmp:
            prefix = os.path.join(tmp, "fig2")
            code, _, _ = invoke([
                "droplet", "--g", "1", "--dg", "0.01", "--branch", "minus",
                "--form", "asymptotic", "--coeff", "paper_rounded", "--output", prefix,
            ])
            minima = json_body(read(prefix + "_minima.json"))
            curve = read(prefix + "_curve.csv").splitlines()
        self.assertEqual(code, ExitCode.OK)
        self.assertAlmostEqual(minima["n_star_corr"], 2464.02, delta=0.01)
        self.assertAlmostEqual(minima["ratios"]["n"], 4.0, delta=1e-9)
        self.assertAlmostEqual(minima["ratios"]["e"], 16.0, delta=1e-8)
        self.assertEqual(curve[1], "n,e_correlated,e_uncorrelated")
        self.assertEqual(len(curve), 2 + 400)

    def test_invalid_excess_coupling(self):
        code, _, _ = invoke(["droplet", "--dg", "3", "--n-min", "1", "--n-max", "2"])
        self.assertEqual(code, ExitCode.CONFIG_INVALID)


class TestFluctAndSpectrumCommands(unittest.TestCase):
    def test_fluct_quadrature(self):
        code, out, _ = invoke(["fluct", "--g", "1", "--lambda", "0", "--n", "100", "--mode", "quadrature"])
        self.assertEqual(code, ExitCode.OK)
        report = json_body(out)
        self.assertEqual(report["method"], "quadrature")
        self.assertAlmostEqual(report["lhy_sum"], -0.1 / math.pi, delta=1e-9)
        self.assertAlmostEqual(report["nt"] + report["mt"], -0.0116811, delta=1e-7)

    def test_fluct_self_consistent(self):
        code, out, _ = invoke(["fluct", "--g", "1", "--lambda", "0.5", "--n", "100", "--self-consistent"])
        self.assertEqual(code, ExitCode.OK)
        self.assertGreater(json_body(out)["self_consistency"]["iterations"], 1)

    def test_spectrum(self):
        code, out, _ = invoke(["spectrum", "--g11", "1", "--g22", "1", "--g12", "0.5", "--points", "5", "--general"])
        self.assertEqual(code, ExitCode.OK)
        lines = out.splitlines()
        self.assertEqual(lines[1].split(","), [
            "k", "eps", "omega_minus_re", "omega_minus_im", "omega_plus_re", "omega_plus_im", "deviation",
        ])
        self.assertEqual(len(lines), 7)
        self.assertLess(max(float(line.split(",")[-1]) for line in lines[2:]), 1e-10)


    def test_spectrum_phonon_regime_columns(self):
        code, out, _ = invoke([
            "spectrum", "--g", "1", "--lambda", "-0.5", "--general",
            "--eps-start", "1e-10", "--eps-stop", "1e-10", "--points", "1",
        ])
        self.assertEqual(code, ExitCode.OK)
        row = out.splitlines()[2].split(",")
        self.assertAlmostEqual(float(row[2]) / (math.sqrt(3.0) * 1e-5), 1.0, delta=1e-6)
        self.assertAlmostEqual(float(row[4]) / 1e-5, 1.0, delta=1e-6)


class TestValidateCommand(unittest.TestCase):
    def test_selected_oracle(self):
        code, out, err = invoke(["validate", "--only", "lhy_sum_coefficient"])
        self.assertEqual(code, ExitCode.OK)
        self.assertTrue(json_body(out)["passed"])
        self.assertIn("lhy_sum_coefficient", err)

    def test_unknown_oracle(self):
        code, _, _ = invoke(["validate", "--only", "nonsense"])
        self.assertEqual(code, ExitCode.CONFIG_INVALID)


if __name__ == "__main__":
    unittest.main()
