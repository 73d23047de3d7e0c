import json
import tempfile
import unittest
from pathlib import Path

from tests.graphs import SAMPLES

try:
    from typer.testing import CliRunner

    from qlap.cli import app
except Exception:  # pragma: no cover
    CliRunner = None  # type: ignore[assignment]
    app = None  # type: ignore[assignment]


def sample(name: str) -> str:
    return str(SAMPLES / name)


@unittest.skipIf(CliRunner is None or app is None, "typer not installed")
class TestCli(unittest.TestCase):
    def setUp(self) -> None:
        self.runner = CliRunner()

    def invoke(self, *args: str):
        return self.runner.invoke(app, list(args))

    def lines(self, *args: str) -> list[str]:
        result = self.invoke(*args)
        self.assertEqual(result.exit_code, 0, result.output)
        return result.stdout.splitlines()

    def test_spectrum_text(self) -> None:
        self.assertIn("lambda1 = 0.5", self.lines("spectrum", sample("c6.txt")))

    def test_spectrum_json(self) -> None:
        result = self.invoke("spectrum", sample("k4.txt"), "--format", "json")
        self.assertEqual(result.exit_code, 0, result.output)
        doc = json.loads(result.stdout)
        self.assertEqual(doc["meta"]["tool"], "qlap")
        eig = doc["spectrum"]["eigenvalues"]
        self.assertAlmostEqual(eig[0], 0.0, delta=1e-9)
        self.assertAlmostEqual(eig[1], 4 / 3, delta=1e-9)

    def test_disconnected_exit_code(self) -> None:
        self.assertEqual(self.invoke("spectrum", sample("disconnected.txt")).exit_code, 2)

    def test_missing_file(self) -> None:
        self.assertEqual(self.invoke("spectrum", sample("nope.txt")).exit_code, 1)

    def test_orbits(self) -> None:
        lines = self.lines("orbits", sample("petersen.txt"))
        self.assertIn("aut_order: 120", lines)
        self.assertIn("vertex_transitive: true", lines)
        self.assertIn("edge_classes: 1", lines)
        self.assertIn("vertex_transitive: false", self.lines("orbits", sample("star4.txt")))
        self.assertIn("aut_order: 10", self.lines("orbits", sample("c5.txt")))

    def test_bounds_petersen(self) -> None:
        lines = self.lines("bounds", sample("petersen.txt"), "--k", "1")
        self.assertIn("chung_bound: 0.25", lines)
        self.assertIn("improved_bound_certified: 0.25", lines)
        self.assertIn("lambda1: 0.6666666667", lines)
        self.assertIn("applicable: true", lines)
        self.assertIn("violations: 0", lines)

    def test_bounds_applicability_window(self) -> None:
        lines = self.lines("bounds", sample("c8.txt"), "--k", "1")
        self.assertIn("applicable: false", lines)
        self.assertIn("chung_bound: 0.0625", lines)
        self.assertIn("improved_bound_certified: n/a", lines)
        self.assertIn("applicable: true", self.lines("bounds", sample("c8.txt"), "--k", "2"))

    def test_bounds_not_vertex_transitive(self) -> None:
        self.assertEqual(self.invoke("bounds", sample("star4.txt")).exit_code, 4)

    def test_equiv(self) -> None:
        lines = self.lines("equiv", sample("c4.txt"), "--k", "1", "--alpha", "1")
        self.assertIn("exact: true", lines)
        self.assertIn("classes: 1", lines)
        self.assertIn("classes: 2", self.lines("equiv", sample("star4.txt"), "--k", "1"))
        self.assertIn("classes: 1", self.lines("equiv", sample("k3.txt"), "--alpha", "0"))

    def test_equiv_alpha_out_of_window(self) -> None:
        result = self.invoke("equiv", sample("c4.txt"), "--k", "1", "--alpha", "4")
        self.assertEqual(result.exit_code, 1)

    def test_bad_k(self) -> None:
        self.assertEqual(self.invoke("bounds", sample("c6.txt"), "--k", "0").exit_code, 1)

    def test_sweep_limit_from_config(self) -> None:
        with tempfile.TemporaryDirectory() as td:
            cfg = Path(td) / "qlap.yaml"
            cfg.write_text("limits:\n  sweep_limit: 1\n", encoding="utf-8")
            result = self.invoke("spectrum", sample("petersen.txt"), "--config", str(cfg))
        self.assertEqual(result.exit_code, 3)

    def test_vertex_limit_from_config(self) -> None:
        with tempfile.TemporaryDirectory() as td:
            cfg = Path(td) / "qlap.yaml"
            cfg.write_text("limits:\n  max_vertices: 3\n", encoding="utf-8")
            capped = self.invoke("spectrum", sample("c4.txt"), "--config", str(cfg))
            big = Path(td) / "big.txt"
            big.write_text("3000\n0 1\n", encoding="utf-8")
            oversized = self.invoke("spectrum", str(big))
        self.assertEqual(capped.exit_code, 1)
        self.assertIn("max_vertices", capped.output)
        self.assertEqual(oversized.exit_code, 1)

    def test_report_is_deterministic(self) -> None:
        a = self.invoke("report", sample("prism.txt"))
        b = self.invoke("report", sample("prism.txt"))
        self.assertEqual(a.exit_code, 0, a.output)
        self.assertEqual(a.stdout, b.stdout)
        for section in ("[spectrum]", "[orbits]", "[equiv]", "[bounds]"):
            self.assertIn(section, a.stdout)

    def test_report_skips_bounds_when_not_transitive(self) -> None:
        result = self.invoke("report", sample("star4.txt"), "--format", "json")
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIsNone(json.loads(result.stdout)["bounds"])

    def test_validate_config(self) -> None:
        with tempfile.TemporaryDirectory() as td:
            good = Path(td) / "good.yaml"
            good.write_text("defaults:\n  k: 2\n", encoding="utf-8")
            bad = Path(td) / "bad.yaml"
            bad.write_text("limits:\n  path_cap: 0\n", encoding="utf-8")
            ok = self.invoke("validate-config", "--config", str(good))
            self.assertEqual(ok.exit_code, 0, ok.output)
            self.assertIn("OK", ok.stdout)
            self.assertEqual(self.invoke("validate-config", "--config", str(bad)).exit_code, 1)
            missing = self.invoke("validate-config", "--config", str(Path(td) / "none.yaml"))
            self.assertEqual(missing.exit_code, 1)


if __name__ == "__main__":
    unittest.main()
