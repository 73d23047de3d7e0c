import unittest
from fractions import Fraction

from qlap.graph.paths import reverse
from qlap.quantum.bracket import (
    BracketError,
    PartitionBracket,
    bracket,
    monotonicity_check,
    r_k_bracket,
    witnesses,
)
from qlap.quantum.closure import closure_fixed_point, closure_partition
from qlap.quantum.compat import LengthMismatch, WindowError, base_compatible
from qlap.symmetry.automorphism import automorphism_group, vertex_orbits
from qlap.symmetry.partition import Partition

from tests.graphs import complete, cycle, petersen, prism, star

SMALL_K1 = {
    "C4": cycle(4),
    "C5": cycle(5),
    "C6": cycle(6),
    "K3": complete(3),
    "K4": complete(4),
    "prism": prism(),
    "star": star(3),
}
SMALL_K2 = dict(SMALL_K1)
# Petersen joins only the refinement check.
WITH_PETERSEN = {1: {**SMALL_K1, "petersen": petersen()}, 2: {**SMALL_K2, "petersen": petersen()}}


class TestBaseCompatible(unittest.TestCase):
    def test_examples(self) -> None:
        self.assertTrue(base_compatible(cycle(4), (0, 1, 2), (0, 1, 2)))
        self.assertTrue(base_compatible(complete(3), (0, 1), (1, 0)))
        self.assertFalse(base_compatible(cycle(4), (0, 1, 2), (0, 1, 0)))

    def test_adjacency_pattern(self) -> None:
        # In the prism 0-1-2 closes a triangle, 0-3-4 does not.
        self.assertFalse(base_compatible(prism(), (0, 1, 2), (0, 3, 4)))

    def test_length_mismatch(self) -> None:
        with self.assertRaises(LengthMismatch):
            base_compatible(cycle(4), (0, 1), (0, 1, 2))


class TestClosure(unittest.TestCase):
    def test_complete_graph_arcs_form_one_class(self) -> None:
        p = closure_partition(complete(4), 1, 1)
        self.assertEqual(p.block_sizes(), [12])

    def test_star_separates_orientations(self) -> None:
        result = closure_fixed_point(star(3), 1)
        arcs = result.partition(1)
        self.assertEqual(arcs.blocks, (((0, 1), (0, 2), (0, 3)), ((1, 0), (2, 0), (3, 0))))
        self.assertEqual(result.partition(0).blocks, (((0,),), ((1,), (2,), (3,))))
        self.assertEqual(result.killing_rule((1, 0), (0, 1)), "extension")

    def test_cycle_backtracking_separated(self) -> None:
        p = closure_partition(cycle(4), 1, 2)
        self.assertFalse(p.same_block((0, 1, 0), (0, 1, 2)))
        for block in p.blocks:
            kinds = {q[0] == q[2] for q in block}
            self.assertEqual(len(kinds), 1)

    def test_window(self) -> None:
        with self.assertRaises(WindowError):
            closure_partition(cycle(4), 1, 4)
        result = closure_fixed_point(cycle(4), 3, max_window=5)
        self.assertEqual(result.window, 5)
        with self.assertRaises(WindowError):
            result.partition(6)
        with self.assertRaises(ValueError):
            closure_fixed_point(cycle(4), 0)

    def test_order_independence(self) -> None:
        for k, graphs in ((1, SMALL_K1), (2, SMALL_K2)):
            for name, g in graphs.items():
                with self.subTest(graph=name, k=k):
                    fwd = closure_fixed_point(g, k, order="forward")
                    rev = closure_fixed_point(g, k, order="reverse")
                    self.assertEqual(fwd.partitions, rev.partitions)

    def test_reversal_and_restriction_coherence(self) -> None:
        for k, graphs in ((1, SMALL_K1), (2, SMALL_K2)):
            for name, g in graphs.items():
                result = closure_fixed_point(g, k)
                for length in range(result.window + 1):
                    part = result.partition(length)
                    for block in part.blocks:
                        head = block[0]
                        for q in block[1:]:
                            with self.subTest(graph=name, k=k, length=length, q=q):
                                self.assertTrue(part.same_block(reverse(head), reverse(q)))
                                if length >= 1:
                                    shorter = result.partition(length - 1)
                                    self.assertTrue(shorter.same_block(head[:-1], q[:-1]))
                                    self.assertTrue(shorter.same_block(head[1:], q[1:]))


class TestBracket(unittest.TestCase):
    def test_lower_refines_upper_everywhere(self) -> None:
        for k, graphs in WITH_PETERSEN.items():
            for name, g in graphs.items():
                group = automorphism_group(g)
                closure = closure_fixed_point(g, k)
                for alpha in range(closure.window + 1):
                    with self.subTest(graph=name, k=k, alpha=alpha):
                        br = bracket(g, k, alpha, group=group, closure=closure)
                        self.assertTrue(br.lower.refines(br.upper))

    def test_petersen_edges_exact(self) -> None:
        br = bracket(petersen(), 1, 1)
        self.assertTrue(br.exact)
        self.assertEqual(br.upper.block_sizes(), [30])

    def test_star_edges_exact(self) -> None:
        br = bracket(star(3), 1, 1)
        self.assertTrue(br.exact)
        self.assertEqual(len(br.upper), 2)

    def test_prism_edges_exact(self) -> None:
        br = bracket(prism(), 1, 1)
        self.assertTrue(br.exact)
        self.assertEqual(sorted(br.upper.block_sizes()), [6, 12])

    def test_vertices_at_length_zero(self) -> None:
        g = star(3)
        br = bracket(g, 1, 0)
        expected = vertex_orbits(automorphism_group(g)).map_elements(lambda v: (v,), "paths:0")
        self.assertEqual(br.lower, expected)

    def test_rejects_inconsistent_sides(self) -> None:
        fine = Partition("paths:0", (((0,),), ((1,),)))
        coarse = Partition("paths:0", (((0,), (1,)),))
        with self.assertRaises(BracketError):
            PartitionBracket(k=1, ground="paths:0", lower=coarse, upper=fine)

    def test_alpha_beyond_window(self) -> None:
        with self.assertRaises(WindowError):
            bracket(cycle(4), 1, 4)


class TestWitnesses(unittest.TestCase):
    def test_star_orientation_pairs(self) -> None:
        found = witnesses(star(3), 1, 1)
        self.assertEqual(len(found), 9)
        for w in found:
            self.assertEqual(w.status, "closure-killed")
            self.assertIn(w.rule, ("reversal", "extension"))
            self.assertNotEqual(w.p[0] == 0, w.q[0] == 0)
        first = [w for w in found if (w.p, w.q) == ((0, 1), (1, 0))]
        self.assertEqual(len(first), 1)
        self.assertEqual(first[0].rule, "extension")

    def test_exact_transitive_graph_has_none(self) -> None:
        self.assertEqual(witnesses(complete(4), 1, 1), [])


class TestRk(unittest.TestCase):
    def test_directed(self) -> None:
        self.assertEqual(r_k_bracket(cycle(6), 1), (12, 12))
        self.assertEqual(r_k_bracket(complete(4), 1), (12, 12))
        self.assertEqual(r_k_bracket(prism(), 1), (6, 6))
        self.assertEqual(r_k_bracket(star(3), 1), (6, 6))

    def test_unordered(self) -> None:
        self.assertEqual(r_k_bracket(cycle(6), 1, convention="unordered"), (6, 6))
        self.assertEqual(r_k_bracket(prism(), 1, convention="unordered"), (3, 3))
        self.assertEqual(r_k_bracket(star(3), 1, convention="unordered"), (3, 3))

    def test_unknown_convention(self) -> None:
        with self.assertRaises(BracketError):
            r_k_bracket(cycle(6), 1, convention="sideways")  # type: ignore[arg-type]


class TestMonotonicity(unittest.TestCase):
    def test_cycle_and_complete(self) -> None:
        for g in (cycle(6), complete(4)):
            report = monotonicity_check(g, 2)
            self.assertTrue(report.ok, report.violations)
            self.assertEqual([row[1:] for row in report.ind_intervals], [(Fraction(1), Fraction(1))] * 2)

    def test_prism(self) -> None:
        report = monotonicity_check(prism(), 1)
        self.assertTrue(report.ok)
        self.assertEqual(report.r_intervals, ((1, 6, 6),))


if __name__ == "__main__":
    unittest.main()
