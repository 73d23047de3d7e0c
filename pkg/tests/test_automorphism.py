import itertools
import math
import unittest
from fractions import Fraction

from qlap.graph.core import Graph
from qlap.symmetry.automorphism import (
    BudgetExceeded,
    LimitExceeded,
    automorphism_group,
    classical_index,
    compose,
    edge_orbits,
    identity,
    inverse,
    is_vertex_transitive,
    orbit_summary,
    path_orbits,
    vertex_orbits,
)
from qlap.symmetry.partition import Partition, merge_orientations

from tests.graphs import complete, cycle, path_graph, petersen, prism, star


def brute_force_automorphisms(g: Graph) -> set[tuple[int, ...]]:
    edges = set(g.edges)
    out = set()
    for perm in itertools.permutations(range(g.n)):
        if all(tuple(sorted((perm[i], perm[j]))) in edges for i, j in g.edges):
            out.add(perm)
    return out


class TestPermutations(unittest.TestCase):
    def test_compose_and_inverse(self) -> None:
        a = (1, 2, 0)
        self.assertEqual(compose(a, inverse(a)), identity(3))
        self.assertEqual(compose(a, a), (2, 0, 1))


class TestAutomorphismGroup(unittest.TestCase):
    def test_cycle_orders(self) -> None:
        for n in range(4, 9):
            with self.subTest(n=n):
                group = automorphism_group(cycle(n))
                self.assertEqual(group.order, 2 * n)
                self.assertEqual(set(group.elements), brute_force_automorphisms(cycle(n)))

    def test_complete_orders(self) -> None:
        for n in range(3, 6):
            with self.subTest(n=n):
                self.assertEqual(automorphism_group(complete(n)).order, math.factorial(n))

    def test_small_graphs_match_brute_force(self) -> None:
        for g in (prism(), star(3), path_graph(5), complete(4)):
            group = automorphism_group(g)
            self.assertEqual(set(group.elements), brute_force_automorphisms(g))
            self.assertTrue(group.preserves(g))

    def test_petersen(self) -> None:
        group = automorphism_group(petersen())
        self.assertEqual(group.order, 120)
        self.assertTrue(group.preserves(petersen()))
        self.assertEqual(group.elements[0], identity(10))

    def test_group_axioms(self) -> None:
        for name, g in (("C5", cycle(5)), ("prism", prism()), ("petersen", petersen()), ("star", star(3))):
            with self.subTest(graph=name):
                elements = set(automorphism_group(g).elements)
                self.assertIn(identity(g.n), elements)
                for a in elements:
                    self.assertIn(inverse(a), elements)
                    for b in elements:
                        self.assertIn(compose(a, b), elements)

    def test_orbit_stabilizer(self) -> None:
        for name, g in (("C6", cycle(6)), ("prism", prism()), ("petersen", petersen()), ("star", star(3))):
            group = automorphism_group(g)
            for orbit in vertex_orbits(group).blocks:
                v = orbit[0]
                with self.subTest(graph=name, vertex=v):
                    stabilizer = [s for s in group.elements if s[v] == v]
                    self.assertEqual(group.order % len(orbit), 0)
                    self.assertEqual(group.order, len(orbit) * len(stabilizer))

    def test_limits(self) -> None:
        with self.assertRaises(LimitExceeded):
            automorphism_group(complete(5), limit=10)
        with self.assertRaises(BudgetExceeded):
            automorphism_group(petersen(), budget=5)


class TestOrbits(unittest.TestCase):
    def test_vertex_orbits(self) -> None:
        self.assertEqual(vertex_orbits(automorphism_group(star(3))).blocks, ((0,), (1, 2, 3)))
        self.assertEqual(len(vertex_orbits(automorphism_group(prism()))), 1)

    def test_edge_orbits_are_length_one_path_orbits(self) -> None:
        for g in (prism(), star(3), cycle(5)):
            group = automorphism_group(g)
            self.assertEqual(edge_orbits(g, group), path_orbits(g, group, 1))

    def test_prism_classes(self) -> None:
        g = prism()
        arcs = edge_orbits(g, automorphism_group(g))
        self.assertEqual(sorted(arcs.block_sizes()), [6, 12])
        self.assertEqual(sorted(merge_orientations(arcs).block_sizes()), [3, 6])

    def test_star_orientations_split(self) -> None:
        arcs = edge_orbits(star(3), automorphism_group(star(3)))
        self.assertEqual(len(arcs), 2)
        self.assertEqual(len(merge_orientations(arcs)), 1)

    def test_merge_orientations_joins_reverse_blocks(self) -> None:
        forward = tuple((i, (i + 1) % 6) for i in range(6))
        backward = tuple(((i + 1) % 6, i) for i in range(6))
        merged = merge_orientations(Partition("paths:1", (forward, backward)))
        self.assertEqual(merged.ground, "undirected-edges")
        self.assertEqual(merged.block_sizes(), [6])

    def test_path_orbits_of_cycle(self) -> None:
        g = cycle(4)
        orbits = path_orbits(g, automorphism_group(g), 2)
        self.assertEqual(sorted(orbits.block_sizes()), [8, 8])
        self.assertFalse(orbits.same_block((0, 1, 0), (0, 1, 2)))

    def test_transitivity_and_index(self) -> None:
        self.assertTrue(is_vertex_transitive(petersen()))
        self.assertFalse(is_vertex_transitive(star(3)))
        self.assertEqual(classical_index(cycle(6)), Fraction(1))
        self.assertEqual(classical_index(petersen()), Fraction(1))
        self.assertEqual(classical_index(prism()), Fraction(3))
        self.assertEqual(classical_index(star(3)), Fraction(1))

    def test_orbit_summary(self) -> None:
        s = orbit_summary(petersen())
        self.assertEqual(s.aut_order, 120)
        self.assertTrue(s.vertex_transitive)
        self.assertTrue(s.arc_transitive)
        self.assertEqual(len(s.edge_classes), 1)
        self.assertFalse(orbit_summary(star(3)).vertex_transitive)


class TestPartition(unittest.TestCase):
    def test_canonical_form(self) -> None:
        a = Partition("vertices", ((3, 1), (2,), (0,)))
        b = Partition.from_labels("vertices", {0: "x", 1: "y", 2: "z", 3: "y"})
        self.assertEqual(a, b)
        self.assertEqual(a.blocks, ((0,), (1, 3), (2,)))

    def test_refines(self) -> None:
        fine = Partition.discrete("vertices", range(4))
        coarse = Partition("vertices", ((0, 1), (2, 3)))
        self.assertTrue(fine.refines(coarse))
        self.assertFalse(coarse.refines(fine))
        self.assertFalse(fine.refines(Partition.discrete("vertices", range(3))))

    def test_rejects_overlap(self) -> None:
        with self.assertRaises(ValueError):
            Partition("vertices", ((0, 1), (1, 2)))


if __name__ == "__main__":
    unittest.main()
